//! Shear and overshear vector fields.
//!
//! A shear field is `v f(Λ(z, w))` with `Λ(v) = 0`; an overshear field is
//! `A^{-1} (u f(v), 0)` evaluated at `(u, v) = A (z, w)`. In both cases `f` is
//! a one-variable series `f(x) = sum x^d a_d` with right coefficients.

mod decompose;
mod divspace;

use std::fmt;

pub use decompose::{overshear_div_rep, shear_decompose, ShearDecomposition};
pub use divspace::{
    c1_generators, divergence_space_basis, divergence_zero_basis, field_coordinates, linear_independence_as_functions, real_span,
    DIVSPACE_MAX_DEGREE,
};

use crate::error::{Error, Result};
use crate::mat2::QuatMatrix2;
use crate::ncalg::{NCPoly, Truncation, VectorField};
use crate::quat::{Quaternion, Rational};

/// `sum x^d a_d` with `x` replaced by `arg`.
pub fn series(arg: &NCPoly, coeffs: &[Quaternion], tr: &Truncation) -> NCPoly {
    let mut out = NCPoly::zero();
    let mut power = NCPoly::one();
    for (d, a) in coeffs.iter().enumerate() {
        if d > 0 {
            power = power.mul_truncated(arg, tr);
        }
        if !a.is_zero() {
            out += &power.mul_quat_right(a);
        }
    }
    out
}

/// `a z + b w` for quaternions `a, b` (left coefficients).
pub fn linear_form(a: &Quaternion, b: &Quaternion) -> NCPoly {
    &NCPoly::z().mul_quat_left(a) + &NCPoly::w().mul_quat_left(b)
}

fn series_text(coeffs: &[Quaternion]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(d, a)| match d {
            0 => format!("({a})"),
            1 => format!("x*({a})"),
            _ => format!("x^{d}*({a})"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ShearKind {
    /// `(r, 1) f(z - r w)`.
    DirectionalReal(Rational),
    /// `(f(w), 0)`.
    Vertical,
    /// `(v1, v2) f(λ1 z + λ2 w)` with `λ1 v1 + λ2 v2 = 0`.
    GeneralizedDirection { v: [Quaternion; 2], functional: [Quaternion; 2] },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShearSpec {
    pub kind: ShearKind,
    pub coeffs: Vec<Quaternion>,
}

impl ShearSpec {
    /// Checks `v != 0` and `Λ(v) = 0` for the generalized kind.
    pub fn new(kind: ShearKind, coeffs: Vec<Quaternion>) -> Result<Self> {
        if let ShearKind::GeneralizedDirection { v, functional } = &kind {
            if v[0].is_zero() && v[1].is_zero() {
                return Err(Error::InvalidArgument("shear direction must be nonzero".into()));
            }
            if !(&(&functional[0] * &v[0]) + &(&functional[1] * &v[1])).is_zero() {
                return Err(Error::InvalidArgument("shear direction must lie in the kernel of the functional".into()));
            }
            if functional[0].is_zero() && functional[1].is_zero() {
                return Err(Error::InvalidArgument("functional must be nonzero".into()));
            }
        }
        Ok(ShearSpec { kind, coeffs })
    }

    pub fn directional(r: Rational, coeffs: Vec<Quaternion>) -> Self {
        ShearSpec { kind: ShearKind::DirectionalReal(r), coeffs }
    }

    pub fn vertical(coeffs: Vec<Quaternion>) -> Self {
        ShearSpec { kind: ShearKind::Vertical, coeffs }
    }

    /// `(mu, 1) f(z - mu w)`.
    pub fn along(mu: Quaternion, coeffs: Vec<Quaternion>) -> Self {
        let functional = [Quaternion::one(), -&mu];
        ShearSpec { kind: ShearKind::GeneralizedDirection { v: [mu, Quaternion::one()], functional }, coeffs }
    }

    pub fn direction(&self) -> [Quaternion; 2] {
        match &self.kind {
            ShearKind::DirectionalReal(r) => [Quaternion::real(r.clone()), Quaternion::one()],
            ShearKind::Vertical => [Quaternion::one(), Quaternion::zero()],
            ShearKind::GeneralizedDirection { v, .. } => v.clone(),
        }
    }

    pub fn functional(&self) -> [Quaternion; 2] {
        match &self.kind {
            ShearKind::DirectionalReal(r) => [Quaternion::one(), Quaternion::real(-r.clone())],
            ShearKind::Vertical => [Quaternion::zero(), Quaternion::one()],
            ShearKind::GeneralizedDirection { functional, .. } => functional.clone(),
        }
    }

    /// `Λ(z, w)`.
    pub fn argument(&self) -> NCPoly {
        let [l1, l2] = self.functional();
        linear_form(&l1, &l2)
    }

    /// `f(Λ(z, w))`.
    pub fn profile(&self, tr: &Truncation) -> NCPoly {
        series(&self.argument(), &self.coeffs, tr)
    }

    pub fn is_real(&self) -> bool {
        let [v1, v2] = self.direction();
        let [l1, l2] = self.functional();
        [v1, v2, l1, l2].iter().all(|q| q.is_real())
    }

    pub fn field(&self) -> VectorField {
        let f = self.profile(&Truncation::NONE);
        let [v1, v2] = self.direction();
        VectorField { f: f.mul_quat_left(&v1), g: f.mul_quat_left(&v2) }
    }
}

impl fmt::Display for ShearSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [v1, v2] = self.direction();
        write!(f, "shear ({v1}, {v2}) f({}), f(x) = {}", self.argument(), series_text(&self.coeffs))
    }
}

pub fn shear_field(spec: &ShearSpec) -> VectorField {
    spec.field()
}

/// `A^{-1} (u f(v), 0)` with `(u, v) = A (z, w)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OvershearSpec {
    pub matrix: QuatMatrix2,
    pub coeffs: Vec<Quaternion>,
}

impl OvershearSpec {
    pub fn new(matrix: QuatMatrix2, coeffs: Vec<Quaternion>) -> Result<Self> {
        matrix.inverse()?;
        Ok(OvershearSpec { matrix, coeffs })
    }

    /// `u = a z + b w`.
    pub fn multiplier(&self) -> NCPoly {
        linear_form(&self.matrix.a, &self.matrix.b)
    }

    /// `v = c z + d w`.
    pub fn argument(&self) -> NCPoly {
        linear_form(&self.matrix.c, &self.matrix.d)
    }

    /// First column of `A^{-1}`.
    pub fn direction(&self) -> [Quaternion; 2] {
        let inv = self.matrix.inverse().expect("checked at construction");
        [inv.a, inv.c]
    }

    pub fn is_real(&self) -> bool {
        self.matrix.is_real()
    }

    pub fn field(&self) -> VectorField {
        let core = &self.multiplier() * &series(&self.argument(), &self.coeffs, &Truncation::NONE);
        let [e1, e2] = self.direction();
        VectorField { f: core.mul_quat_left(&e1), g: core.mul_quat_left(&e2) }
    }

    /// `f(v)`, which is the divergence of the field when `A` is real.
    pub fn expected_divergence(&self) -> NCPoly {
        series(&self.argument(), &self.coeffs, &Truncation::NONE)
    }
}

impl fmt::Display for OvershearSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "overshear A = {}, f(x) = {}", self.matrix, series_text(&self.coeffs))
    }
}

pub fn overshear_field(spec: &OvershearSpec) -> VectorField {
    spec.field()
}

/// Apply a constant matrix to a pair of polynomials: `M (p, q)`.
pub fn apply_matrix(m: &QuatMatrix2, p: &NCPoly, q: &NCPoly) -> (NCPoly, NCPoly) {
    (&p.mul_quat_left(&m.a) + &q.mul_quat_left(&m.b), &p.mul_quat_left(&m.c) + &q.mul_quat_left(&m.d))
}

/// `A^{-1} X(A (z, w))`.
pub fn conjugate_field(a: &QuatMatrix2, x: &VectorField) -> Result<VectorField> {
    let inv = a.inverse()?;
    let (u, v) = apply_matrix(a, &NCPoly::z(), &NCPoly::w());
    let (f, g) = x.compose(&u, &v, &Truncation::NONE);
    let (f, g) = apply_matrix(&inv, &f, &g);
    Ok(VectorField { f, g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calc::{has_divergence, DivResult};
    use crate::expr::{parse, parse_field};
    use crate::quat::int;

    fn q(n: i64) -> Quaternion {
        Quaternion::from_ints(n, 0, 0, 0)
    }

    fn square() -> Vec<Quaternion> {
        vec![q(0), q(0), q(1)]
    }

    #[test]
    fn shear_examples() {
        let x = ShearSpec::vertical(square()).field();
        assert_eq!(x, parse_field("w^2 ; 0").unwrap());
        assert_eq!(has_divergence(&x), DivResult::HasDivergence(NCPoly::zero()));

        let x = ShearSpec::directional(int(1), square()).field();
        assert_eq!(x, parse_field("(z - w)^2 ; (z - w)^2").unwrap());
        assert_eq!(has_divergence(&x), DivResult::HasDivergence(NCPoly::zero()));

        // a linear profile along (i, 1) still has divergence 0; the
        // obstruction starts at degree 2, where Div X[h] = (i u - u i) h
        let x = ShearSpec::along(Quaternion::unit_i(), vec![q(0), q(1)]).field();
        assert_eq!(x, parse_field("i*(z - i*w) ; z - i*w").unwrap());
        assert_eq!(has_divergence(&x), DivResult::HasDivergence(NCPoly::zero()));
        let x = ShearSpec::along(Quaternion::unit_i(), square()).field();
        assert!(matches!(has_divergence(&x), DivResult::NotLeftLinear { .. }));
        let u = parse("z - i*w").unwrap();
        let bracket = &(&NCPoly::unit(crate::ncalg::Unit::I) * &u) - &(&u * &NCPoly::unit(crate::ncalg::Unit::I));
        assert_eq!(crate::calc::div_op(&x), &bracket * &NCPoly::var(crate::ncalg::Letter::H1));
    }

    #[test]
    fn generalized_validation() {
        let bad = ShearKind::GeneralizedDirection { v: [q(1), q(1)], functional: [q(1), q(0)] };
        assert!(ShearSpec::new(bad, vec![]).is_err());
        let ok = ShearKind::GeneralizedDirection { v: [q(2), q(1)], functional: [q(1), q(-2)] };
        assert!(ShearSpec::new(ok, vec![]).is_ok());
    }

    #[test]
    fn overshear_examples() {
        let y = OvershearSpec::new(QuatMatrix2::identity(), square()).unwrap().field();
        assert_eq!(y, parse_field("z*w^2 ; 0").unwrap());
        assert_eq!(has_divergence(&y), DivResult::HasDivergence(parse("w^2").unwrap()));

        let y = OvershearSpec::new(QuatMatrix2::real_ints(0, 1, 1, 0), square()).unwrap().field();
        assert_eq!(y, parse_field("0 ; w*z^2").unwrap());
        assert_eq!(has_divergence(&y), DivResult::HasDivergence(parse("z^2").unwrap()));

        // A = [[conj(mu), 1], [1, -mu]] / (1 + |mu|^2) with mu = i
        let mu = Quaternion::unit_i();
        let half = crate::quat::rat(1, 2);
        let a = QuatMatrix2::new(mu.conj().scale(&half), q(1).scale(&half), q(1).scale(&half), (-&mu).scale(&half));
        let y = OvershearSpec::new(a, vec![q(0), q(1)]).unwrap().field();
        assert!(matches!(has_divergence(&y), DivResult::NotLeftLinear { .. }));
    }

    #[test]
    fn conjugation_examples() {
        let x = parse_field("w ; 0").unwrap();
        assert_eq!(conjugate_field(&QuatMatrix2::identity(), &x).unwrap(), x);
        assert_eq!(conjugate_field(&QuatMatrix2::real_ints(1, 1, 0, 1), &x).unwrap(), x);
        let x = parse_field("w^2 ; 0").unwrap();
        assert_eq!(conjugate_field(&QuatMatrix2::real_ints(0, 1, 1, 0), &x).unwrap(), parse_field("0 ; z^2").unwrap());
        assert!(conjugate_field(&QuatMatrix2::real_ints(1, 1, 1, 1), &x).is_err());
    }
}
