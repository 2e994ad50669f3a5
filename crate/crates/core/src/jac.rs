//! Derivatives of polynomial maps, the ⋄ chain rule and pointwise
//! determinants.
//!
//! The entries of a derivative matrix are polynomials with one increment
//! letter per word (`h1` in the first column, `h2` in the second). Since ⋄ is
//! not a matrix product, determinants are only taken after binding the
//! variables and increments to numeric quaternions.

use nalgebra::{Complex, SMatrix};

use crate::calc::dhat;
use crate::error::{Error, Result};
use crate::flow::MapJet;
use crate::mat2::{Mat2, QuatMatrix2F};
use crate::ncalg::{Bindings, Letter, NCPoly, Truncation};
use crate::quat::QuaternionF;

const VARS: [Letter; 2] = [Letter::Z, Letter::W];
const HOLES: [Letter; 2] = [Letter::H1, Letter::H2];

/// `DF[h1, h2]`: entry `(r, c)` is the slot derivative of `F_r` in the `c`-th
/// variable with increment `h_c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivMatrix {
    pub entries: [[NCPoly; 2]; 2],
}

impl DerivMatrix {
    pub fn identity() -> Self {
        DerivMatrix { entries: [[NCPoly::var(Letter::H1), NCPoly::zero()], [NCPoly::zero(), NCPoly::var(Letter::H2)]] }
    }

    /// Replace `z, w` by the components of `g` (increments untouched).
    pub fn at(&self, g: &MapJet) -> DerivMatrix {
        let images = [(Letter::Z, g.f.clone()), (Letter::W, g.g.clone())];
        let tr = Truncation::degree(g.max_degree);
        DerivMatrix { entries: self.entries.clone().map(|row| row.map(|p| p.substitute_many(&images, &tr))) }
    }

    /// Numeric value with `z, w` and both increments bound.
    pub fn eval(&self, z: QuaternionF, w: QuaternionF, h1: QuaternionF, h2: QuaternionF) -> Result<QuatMatrix2F> {
        let at = Bindings::zw(z, w).with(Letter::H1, h1).with(Letter::H2, h2);
        let [[a, b], [c, d]] = &self.entries;
        Ok(Mat2::new(a.eval(&at)?, b.eval(&at)?, c.eval(&at)?, d.eval(&at)?))
    }
}

/// Derivative matrix of a polynomial map.
pub fn jet_derivative(f: &MapJet) -> Result<DerivMatrix> {
    let comps = [&f.f, &f.g];
    let mut entries: [[NCPoly; 2]; 2] = Default::default();
    for r in 0..2 {
        for c in 0..2 {
            entries[r][c] = dhat(comps[r], VARS[c], HOLES[c])?;
        }
    }
    Ok(DerivMatrix { entries })
}

/// `DF(G) ⋄ DG`: entry `(r, c)` is `sum_m DF(G)_{r,m}` with `h_m` replaced by
/// `DG_{m,c}`.
pub fn diamond_compose(df_at_g: &DerivMatrix, dg: &DerivMatrix) -> DerivMatrix {
    let mut entries: [[NCPoly; 2]; 2] = Default::default();
    for (r, row) in entries.iter_mut().enumerate() {
        for (c, e) in row.iter_mut().enumerate() {
            *e = (0..2).map(|m| df_at_g.entries[r][m].substitute(HOLES[m], &dg.entries[m][c])).sum();
        }
    }
    DerivMatrix { entries }
}

/// Both sides of `D(F ∘ G) = DF(G) ⋄ DG`.
pub fn chain_rule_sides(f: &MapJet, g: &MapJet) -> Result<(DerivMatrix, DerivMatrix)> {
    let direct = jet_derivative(&f.compose(g))?;
    let composed = diamond_compose(&jet_derivative(f)?.at(g), &jet_derivative(g)?);
    let d = f.max_degree.min(g.max_degree);
    let tr = Truncation::degree(d);
    let cut = |m: DerivMatrix| DerivMatrix { entries: m.entries.map(|row| row.map(|p| p.truncate(&tr))) };
    Ok((cut(direct), cut(composed)))
}

/// Real 8x8 matrix of `x -> M x` on `H^2 = R^8`.
pub fn real_embedding(m: &QuatMatrix2F) -> SMatrix<f64, 8, 8> {
    let mut out = SMatrix::<f64, 8, 8>::zeros();
    for (bi, row) in m.rows().iter().enumerate() {
        for (bj, q) in row.iter().enumerate() {
            let l = q.left_matrix();
            for r in 0..4 {
                for c in 0..4 {
                    out[(4 * bi + r, 4 * bj + c)] = l[r][c];
                }
            }
        }
    }
    out
}

/// Complex 4x4 matrix of `x -> M x` with `H = C + jC` as a right `C`-space:
/// `α + jβ` acts as `[[α, -conj β], [β, conj α]]`.
pub fn complex_embedding(m: &QuatMatrix2F) -> SMatrix<Complex<f64>, 4, 4> {
    let mut out = SMatrix::<Complex<f64>, 4, 4>::zeros();
    for (bi, row) in m.rows().iter().enumerate() {
        for (bj, q) in row.iter().enumerate() {
            let alpha = Complex::new(q.r, q.i);
            let beta = Complex::new(q.j, -q.k);
            out[(2 * bi, 2 * bj)] = alpha;
            out[(2 * bi, 2 * bj + 1)] = -beta.conj();
            out[(2 * bi + 1, 2 * bj)] = beta;
            out[(2 * bi + 1, 2 * bj + 1)] = alpha.conj();
        }
    }
    out
}

pub fn real_det(m: &QuatMatrix2F) -> f64 {
    real_embedding(m).determinant()
}

/// Modulus of the complex determinant (which is real and nonnegative).
pub fn complex_det(m: &QuatMatrix2F) -> f64 {
    complex_embedding(m).determinant().norm()
}

/// One pointwise determinant sample.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct VolumeSample {
    pub z: QuaternionF,
    pub w: QuaternionF,
    pub det_d: f64,
}

/// Dieudonné determinant of `DF(z, w)[h, h]` at each point. `h` must be a
/// unit quaternion.
pub fn jacobian_volume_check(f: &MapJet, points: &[(QuaternionF, QuaternionF)], h: QuaternionF) -> Result<Vec<VolumeSample>> {
    if (h.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("increment must have norm 1, got {}", h.norm())));
    }
    let df = jet_derivative(f)?;
    points.iter().map(|&(z, w)| Ok(VolumeSample { z, w, det_d: df.eval(z, w, h, h)?.dieudonne_det() })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::flow::shear_flow;
    use crate::quat::{rat, Quaternion};
    use crate::vfield::ShearSpec;

    fn p(s: &str) -> NCPoly {
        parse(s).unwrap()
    }

    fn map(f: &str, g: &str) -> MapJet {
        MapJet::new(p(f), p(g), 9)
    }

    #[test]
    fn derivatives() {
        assert_eq!(jet_derivative(&MapJet::identity(3)).unwrap(), DerivMatrix::identity());
        let d = jet_derivative(&map("z*w", "0")).unwrap();
        assert_eq!(d.entries, [[p("h1*w"), p("z*h2")], [NCPoly::zero(), NCPoly::zero()]]);
    }

    #[test]
    fn chain_rule() {
        let f = map("z*w", "0");
        let composed = diamond_compose(&jet_derivative(&f).unwrap(), &DerivMatrix::identity());
        assert_eq!(composed, jet_derivative(&f).unwrap());
        for (f, g) in [(map("z", "w + z^2"), map("z + w^2", "w")), (map("z^2", "w"), map("z^2", "w"))] {
            let (a, b) = chain_rule_sides(&f, &g).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn shear_determinants() {
        let pts = [
            (QuaternionF::new(0.3, -0.2, 0.5, 0.1), QuaternionF::new(-0.4, 0.7, 0.2, -0.3)),
            (QuaternionF::new(1.1, 0.0, -0.6, 0.4), QuaternionF::new(0.2, -0.9, 0.0, 0.5)),
        ];
        let sq = vec![Quaternion::zero(), Quaternion::zero(), Quaternion::one()];
        for mu in [0, 1, -2] {
            let phi = shear_flow(&ShearSpec::along(Quaternion::from_ints(mu, 0, 0, 0), sq.clone()), 1);
            let (f, g) = phi.at_time(&rat(1, 1));
            for s in jacobian_volume_check(&MapJet::new(f, g, 4), &pts, QuaternionF::ONE).unwrap() {
                assert!((s.det_d - 1.0).abs() < 1e-9);
            }
        }
        let phi = shear_flow(&ShearSpec::along(Quaternion::unit_i(), sq), 1);
        let (f, g) = phi.at_time(&rat(1, 1));
        let s = jacobian_volume_check(&MapJet::new(f, g, 4), &[(QuaternionF::J, QuaternionF::ZERO)], QuaternionF::ONE).unwrap();
        assert!((s[0].det_d - 5f64.sqrt()).abs() < 1e-9);
        assert!(jacobian_volume_check(&MapJet::identity(2), &pts, QuaternionF::real(2.0)).is_err());
    }

    #[test]
    fn embeddings() {
        let m = Mat2::new(
            QuaternionF::new(0.5, 1.0, -0.3, 0.2),
            QuaternionF::new(0.1, 0.0, 0.7, -1.2),
            QuaternionF::new(-0.8, 0.4, 0.3, 0.0),
            QuaternionF::new(0.2, -0.5, 0.1, 0.9),
        );
        let dd = m.dieudonne_det();
        assert!((real_det(&m) - dd.powi(4)).abs() < 1e-9);
        assert!((complex_det(&m) - dd.powi(2)).abs() < 1e-9);
        let n = Mat2::new(QuaternionF::I, QuaternionF::J, QuaternionF::K, QuaternionF::ONE);
        let (a, b) = (complex_embedding(&m.mul(&n)), complex_embedding(&m) * complex_embedding(&n));
        assert!((a - b).norm() < 1e-12);
    }
}
