//! Writing a field with divergence as a sum of overshear and shear fields.

use std::collections::BTreeMap;

use super::{OvershearSpec, ShearSpec};
use crate::bidegree::{bf_to_binomial, binomial_to_bf, is_bf, s_poly, BfDecomposition};
use crate::calc::has_divergence;
use crate::error::{Error, Result};
use crate::mat2::QuatMatrix2;
use crate::ncalg::VectorField;
use crate::quat::{int, Quaternion};

fn padded(d: usize, c: Quaternion) -> Vec<Quaternion> {
    let mut v = vec![Quaternion::zero(); d + 1];
    v[d] = c;
    v
}

/// A field `Y_{p,q}` with `div Y_{p,q} = S_{p,q}`, together with its
/// overshear summands.
///
/// For `p = 0` this is the single overshear `(z w^q, 0)`. Otherwise write
/// `S_{p,q} = sum_n (z - n w)^m r_n` (`m = p + q`) and take, for every
/// `r_n != 0`, the overshear with `A = [[n, 1], [1, -n]]` and
/// `f(x) = x^m r_n`, i.e. the field `(n, 1) (n z + w) (z - n w)^m r_n / (n^2 + 1)`,
/// whose divergence is `(z - n w)^m r_n`.
pub fn overshear_div_rep(p: usize, q: usize) -> Result<(VectorField, Vec<OvershearSpec>)> {
    let m = p + q;
    let specs = if p == 0 {
        vec![OvershearSpec::new(QuatMatrix2::identity(), padded(m, Quaternion::one()))?]
    } else {
        let mut target = vec![Quaternion::zero(); m + 1];
        target[q] = Quaternion::one();
        let r = bf_to_binomial(m, &target)?;
        let mut specs = Vec::new();
        for (n, rn) in r.into_iter().enumerate() {
            if rn.is_zero() {
                continue;
            }
            let n = n as i64;
            specs.push(OvershearSpec::new(QuatMatrix2::real_ints(n, 1, 1, -n), padded(m, rn))?);
        }
        specs
    };
    let field: VectorField = specs.iter().map(|s| s.field()).sum();
    let div = has_divergence(&field).into_result()?;
    if div != s_poly(p, q) {
        return Err(Error::Inconsistent(format!("divergence representative for ({p},{q}) has divergence {div}")));
    }
    Ok((field, specs))
}

/// Overshear and shear summands of a field with divergence.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ShearDecomposition {
    pub overshears: Vec<OvershearSpec>,
    pub shears: Vec<ShearSpec>,
}

impl ShearDecomposition {
    pub fn reconstruct(&self) -> VectorField {
        let a: VectorField = self.overshears.iter().map(|s| s.field()).sum();
        let b: VectorField = self.shears.iter().map(|s| s.field()).sum();
        &a + &b
    }
}

fn bf_component(p: &crate::ncalg::NCPoly, which: &str) -> Result<BfDecomposition> {
    is_bf(p).map_err(|e| Error::Inconsistent(format!("divergence-free part has a non-BF {which} component: {e}")))
}

/// Decompose `X` into overshear fields carrying its divergence plus shear
/// fields with divergence 0.
///
/// The divergence `sum S_{p,q} c_{p,q}` is first removed with
/// `overshear_div_rep(p, q) c_{p,q}`. Each homogeneous piece `(f_d, g_d)` of
/// the remainder is expanded as `f_d = sum (z - n w)^d a_n`,
/// `g_d = sum (z - n w)^d b_n`; then `sum (z - n w)^d (a_n - n b_n) = w^d q_d`
/// and the remainder equals `sum_n (n, 1)(z - n w)^d b_n + (w^d q_d, 0)`.
///
/// Shears come out with nodes in increasing order (coefficients of all
/// degrees merged per node) and the vertical shear last.
pub fn shear_decompose(x: &VectorField, require_zero_div: bool) -> Result<ShearDecomposition> {
    let div = has_divergence(x).into_result()?;
    if require_zero_div && !div.is_zero() {
        return Err(Error::NonzeroDivergence(div.to_string()));
    }
    let div_bf = is_bf(&div).map_err(|e| Error::NotBf(format!("divergence {div}: {e}")))?;

    let mut out = ShearDecomposition::default();
    let mut remainder = x.clone();
    for (&(p, q), c) in &div_bf.coeffs {
        let (field, specs) = overshear_div_rep(p, q)?;
        remainder = &remainder - &field.mul_quat_right(c);
        for s in specs {
            let coeffs = s.coeffs.iter().map(|a| a * c).collect();
            out.overshears.push(OvershearSpec { matrix: s.matrix, coeffs });
        }
    }

    let fd = bf_component(&remainder.f, "first")?;
    let gd = bf_component(&remainder.g, "second")?;
    let mut degrees = fd.degrees();
    degrees.extend(gd.degrees());
    degrees.sort_unstable();
    degrees.dedup();

    // node -> degree -> b_{n,d}
    let mut directional: BTreeMap<usize, BTreeMap<usize, Quaternion>> = BTreeMap::new();
    let mut vertical: BTreeMap<usize, Quaternion> = BTreeMap::new();
    for d in degrees {
        let a = bf_to_binomial(d, &fd.degree_row(d))?;
        let b = bf_to_binomial(d, &gd.degree_row(d))?;
        let e: Vec<Quaternion> = a.iter().zip(&b).enumerate().map(|(n, (an, bn))| an - &bn.scale(&int(n as i64))).collect();
        let bf = binomial_to_bf(d, &e);
        if bf[..d].iter().any(|c| !c.is_zero()) {
            return Err(Error::Inconsistent(format!("degree {d}: a_n - n b_n does not combine to a multiple of w^{d}")));
        }
        if !bf[d].is_zero() {
            vertical.insert(d, bf[d].clone());
        }
        for (n, bn) in b.into_iter().enumerate() {
            if !bn.is_zero() {
                directional.entry(n).or_default().insert(d, bn);
            }
        }
    }
    let series = |per_degree: &BTreeMap<usize, Quaternion>| {
        let top = per_degree.keys().next_back().copied().unwrap_or(0);
        let mut v = vec![Quaternion::zero(); top + 1];
        for (&d, c) in per_degree {
            v[d] = c.clone();
        }
        v
    };
    for (n, per_degree) in &directional {
        out.shears.push(ShearSpec::directional(int(*n as i64), series(per_degree)));
    }
    if !vertical.is_empty() {
        out.shears.push(ShearSpec::vertical(series(&vertical)));
    }

    if &out.reconstruct() != x {
        return Err(Error::Inconsistent("summands do not add up to the field".into()));
    }
    for s in &out.shears {
        let d = has_divergence(&s.field()).into_result()?;
        if !d.is_zero() {
            return Err(Error::Inconsistent(format!("shear summand {s} has divergence {d}")));
        }
    }
    Ok(out)
}
