//! Formal flow jets.
//!
//! A flow jet is a pair of polynomials in `z, w` and the central time `t`,
//! truncated at a fixed power of `t`. Completeness of a flow is an analytic
//! property and is not decided here; every identity below holds modulo the
//! stated truncation only.

use crate::bidegree::{is_bf, NotBf};
use crate::calc::{has_divergence, DivResult};
use crate::error::{Error, Result};
use crate::mat2::QuatMatrix2;
use crate::ncalg::{Central, Letter, NCPoly, Truncation, VectorField, Word};
use crate::quat::{int, Rational};
use crate::vfield::{apply_matrix, conjugate_field, series, OvershearSpec, ShearSpec};

/// Default truncation order in `t`.
pub const DEFAULT_ORDER: u32 = 8;

/// A polynomial map `(z, w) -> (f, g)` known up to total degree `max_degree`
/// in `z, w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MapJet {
    pub f: NCPoly,
    pub g: NCPoly,
    pub max_degree: usize,
}

impl MapJet {
    pub fn new(f: NCPoly, g: NCPoly, max_degree: usize) -> Self {
        let tr = Truncation::degree(max_degree);
        MapJet { f: f.truncate(&tr), g: g.truncate(&tr), max_degree }
    }

    pub fn identity(max_degree: usize) -> Self {
        MapJet::new(NCPoly::z(), NCPoly::w(), max_degree)
    }

    /// `self ∘ inner`, known up to the smaller of the two degrees.
    pub fn compose(&self, inner: &MapJet) -> MapJet {
        let d = self.max_degree.min(inner.max_degree);
        let images = [(Letter::Z, inner.f.clone()), (Letter::W, inner.g.clone())];
        let tr = Truncation::degree(d);
        MapJet { f: self.f.substitute_many(&images, &tr), g: self.g.substitute_many(&images, &tr), max_degree: d }
    }

    /// Terms of total degree `d` in `z, w`.
    pub fn homogeneous(&self, d: usize) -> (NCPoly, NCPoly) {
        (self.f.homogeneous(d), self.g.homogeneous(d))
    }

    /// The part without central symbols of degree 0 and 1 must be `(z, w)`.
    pub fn check_identity_linear_part(&self) -> Result<()> {
        let low = |p: &NCPoly| p.filter(|w| w.degree() <= 1 && w.central_degree() == 0);
        let (f, g) = (low(&self.f), low(&self.g));
        if f != NCPoly::z() || g != NCPoly::w() {
            return Err(Error::NonIdentityLinearPart(format!("({f}, {g})")));
        }
        // constant terms carrying a central symbol are just as bad
        let bad = |p: &NCPoly| p.terms().any(|(w, _)| w.degree() == 0);
        if bad(&self.f) || bad(&self.g) {
            return Err(Error::NonIdentityLinearPart("constant term present".into()));
        }
        Ok(())
    }
}

/// Inverse of a jet with identity linear part, by the fixed-point iteration
/// `G <- id - P ∘ G` where `F = id + P`. Words may carry central symbols as
/// long as no term has degree 0; each pass fixes at least one more degree.
pub fn invert_jet(f: &MapJet) -> Result<MapJet> {
    f.check_identity_linear_part()?;
    let d = f.max_degree;
    let p = MapJet { f: &f.f - &NCPoly::z(), g: &f.g - &NCPoly::w(), max_degree: d };
    let mut g = MapJet::identity(d);
    for _ in 0..=d + 1 {
        let pg = p.compose(&g);
        let next = MapJet { f: &NCPoly::z() - &pg.f, g: &NCPoly::w() - &pg.g, max_degree: d };
        if next == g {
            return Ok(g);
        }
        g = next;
    }
    Err(Error::Inconsistent("jet inversion did not stabilise".into()))
}

/// Flow jet of a field: `Φ(z, w, t)` through `t^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlowJet {
    pub f: NCPoly,
    pub g: NCPoly,
    pub order: u32,
    pub field: VectorField,
}

impl FlowJet {
    /// `Φ(z, w, value)` for a rational time.
    pub fn at_time(&self, value: &Rational) -> (NCPoly, NCPoly) {
        (self.f.eval_central(Central::T, value), self.g.eval_central(Central::T, value))
    }

    /// Coefficient of `t^n`.
    pub fn t_coeff(&self, n: u32) -> (NCPoly, NCPoly) {
        (self.f.t_coeff(n), self.g.t_coeff(n))
    }
}

fn flow_residual(x: &VectorField, f: &NCPoly, g: &NCPoly, order: u32) -> (NCPoly, NCPoly) {
    if order == 0 {
        return (NCPoly::zero(), NCPoly::zero());
    }
    let tr = Truncation::central(order - 1);
    let (a, b) = x.compose(f, g, &tr);
    (&f.d_dt().truncate(&tr) - &a, &g.d_dt().truncate(&tr) - &b)
}

/// Graded Picard iteration `Φ <- id + ∫_0^t X(Φ)`. Pass `k` evaluates `X(Φ)`
/// modulo `t^{k+1}`, which is exact because `Φ` is already right through
/// `t^k`; after `order` passes `Φ` is right through `t^order`.
pub fn flow_jet(x: &VectorField, order: u32) -> FlowJet {
    let (mut f, mut g) = (NCPoly::z(), NCPoly::w());
    for k in 0..order {
        let (a, b) = x.compose(&f, &g, &Truncation::central(k));
        f = &NCPoly::z() + &a.integrate_dt();
        g = &NCPoly::w() + &b.integrate_dt();
    }
    debug_assert!({
        let (r1, r2) = flow_residual(x, &f, &g, order);
        r1.is_zero() && r2.is_zero()
    });
    FlowJet { f, g, order, field: x.clone() }
}

/// `dΦ/dt - X(Φ)` modulo `t^order`.
pub fn verify_flow(x: &VectorField, phi: &FlowJet) -> (NCPoly, NCPoly) {
    flow_residual(x, &phi.f, &phi.g, phi.order)
}

/// `sum_{n <= order} p^n / n!`, dropping powers of the central symbols above
/// `order`. `p` must not have a term free of both letters and central symbols.
pub fn exp_series(p: &NCPoly, order: u32) -> Result<NCPoly> {
    if p.terms().any(|(w, _)| w.degree() == 0 && w.central_degree() == 0) {
        return Err(Error::InvalidArgument(format!("exp_series needs a zero constant term, got {p}")));
    }
    let tr = Truncation::central(order);
    let mut out = NCPoly::one();
    let mut power = NCPoly::one();
    let mut fact = Rational::from_integer(1.into());
    for n in 1..=order {
        power = power.mul_truncated(p, &tr);
        if power.is_zero() {
            break;
        }
        fact *= int(n as i64);
        out += &power.scale(&(Rational::from_integer(1.into()) / &fact));
    }
    Ok(out)
}

/// Specs whose flows are known in closed form.
pub trait ClosedFormFlow {
    fn field(&self) -> VectorField;
    fn flow(&self, order: u32) -> FlowJet;
}

impl ClosedFormFlow for ShearSpec {
    fn field(&self) -> VectorField {
        ShearSpec::field(self)
    }

    /// `(z, w) + t v f(Λ)`: `Λ` is constant along the flow since `Λ(v) = 0`.
    fn flow(&self, order: u32) -> FlowJet {
        let x = ShearSpec::field(self);
        let (f, g) = if order == 0 {
            (NCPoly::z(), NCPoly::w())
        } else {
            (&NCPoly::z() + &x.f.mul_central(1, 0), &NCPoly::w() + &x.g.mul_central(1, 0))
        };
        FlowJet { f, g, order, field: x }
    }
}

impl ClosedFormFlow for OvershearSpec {
    fn field(&self) -> VectorField {
        OvershearSpec::field(self)
    }

    /// `(z, w) + A^{-1} (u (e^{t f(v)} - 1), 0)`.
    fn flow(&self, order: u32) -> FlowJet {
        let tf = series(&self.argument(), &self.coeffs, &Truncation::NONE).mul_central(1, 0);
        let e = exp_series(&tf, order).expect("t f(v) has no constant term");
        let core = self.multiplier().mul_truncated(&(&e - &NCPoly::one()), &Truncation::central(order));
        let [e1, e2] = self.direction();
        FlowJet {
            f: &NCPoly::z() + &core.mul_quat_left(&e1),
            g: &NCPoly::w() + &core.mul_quat_left(&e2),
            order,
            field: OvershearSpec::field(self),
        }
    }
}

/// Closed-form flow of a shear or overshear spec, truncated at `t^order`.
pub fn shear_flow<S: ClosedFormFlow + ?Sized>(spec: &S, order: u32) -> FlowJet {
    spec.flow(order)
}

/// Check `A^{-1} Φ^X(A (z, w)) = Φ^{A^{-1} X ∘ A}` modulo `t^{order+1}`.
pub fn conjugate_flow_check(a: &QuatMatrix2, x: &VectorField, order: u32) -> Result<bool> {
    let inv = a.inverse()?;
    let phi = flow_jet(x, order);
    let (u, v) = apply_matrix(a, &NCPoly::z(), &NCPoly::w());
    let images = [(Letter::Z, u), (Letter::W, v)];
    let (p, q) = (phi.f.substitute_many(&images, &Truncation::NONE), phi.g.substitute_many(&images, &Truncation::NONE));
    let lhs = apply_matrix(&inv, &p, &q);
    let rhs = flow_jet(&conjugate_field(a, x)?, order);
    Ok(lhs.0 == rhs.f && lhs.1 == rhs.g)
}

/// `Φ(Φ(·, s), t) - Φ(·, t + s)` with both sides truncated at total central
/// degree `order`. Zero for a flow of an autonomous field.
pub fn group_law_residual(phi: &FlowJet) -> (NCPoly, NCPoly) {
    let tr = Truncation::central(phi.order);
    let s = NCPoly::central(Central::S, 1);
    let t_plus_s = &NCPoly::t() + &s;
    let inner = [(Letter::Z, phi.f.substitute_t(&s, &tr)), (Letter::W, phi.g.substitute_t(&s, &tr))];
    let lhs_f = phi.f.substitute_many(&inner, &tr);
    let lhs_g = phi.g.substitute_many(&inner, &tr);
    (&lhs_f - &phi.f.substitute_t(&t_plus_s, &tr), &lhs_g - &phi.g.substitute_t(&t_plus_s, &tr))
}

/// One coefficient `X_n` of the time-dependent field of a family, with the
/// evidence gathered about it.
#[derive(Clone, Debug)]
pub struct FamilyTerm {
    pub n: usize,
    pub field: VectorField,
    pub divergence: DivResult,
    pub bf: [std::result::Result<(), NotBf>; 2],
}

impl FamilyTerm {
    pub fn is_bf(&self) -> bool {
        self.bf.iter().all(|r| r.is_ok())
    }
}

/// `Ψ(z, w, t) = F(t z, t w) / t`.
pub fn family_flow(f: &MapJet) -> Result<MapJet> {
    f.check_identity_linear_part()?;
    let lift = |p: &NCPoly| {
        NCPoly::from_terms(p.terms().map(|(w, c)| {
            let k = w.degree() as u32 - 1;
            (Word::new(w.letters().to_vec(), w.units().to_vec()).with_central(w.t_power() + k, w.s_power()), c.clone())
        }))
    };
    Ok(MapJet { f: lift(&f.f), g: lift(&f.g), max_degree: f.max_degree })
}

/// The time-dependent field `X(z, w, t) = sum X_n t^n` defined by
/// `dΨ/dt = X(Ψ, t)` for `Ψ = F(t z, t w) / t`, returned as `X_0 ..= X_order`.
/// `X_n` is homogeneous of degree `n + 2`, so the jet must be known through
/// degree `order + 2`. The result is evidence about this family only.
pub fn field_from_family(f: &MapJet, order: usize) -> Result<Vec<FamilyTerm>> {
    if order + 2 > f.max_degree {
        return Err(Error::InvalidArgument(format!(
            "X_{order} needs the jet through degree {}, it is known through {}",
            order + 2,
            f.max_degree
        )));
    }
    let psi = family_flow(f)?;
    let inv = invert_jet(&psi)?;
    let images = [(Letter::Z, inv.f.clone()), (Letter::W, inv.g.clone())];
    let tr = Truncation::degree(f.max_degree);
    let xf = psi.f.d_dt().substitute_many(&images, &tr);
    let xg = psi.g.d_dt().substitute_many(&images, &tr);
    (0..=order)
        .map(|n| {
            let x = VectorField { f: xf.t_coeff(n as u32), g: xg.t_coeff(n as u32) };
            if x.f.terms().chain(x.g.terms()).any(|(w, _)| w.degree() != n + 2) {
                return Err(Error::Inconsistent(format!("X_{n} is not homogeneous of degree {}", n + 2)));
            }
            let divergence = has_divergence(&x);
            let bf = [is_bf(&x.f).map(|_| ()), is_bf(&x.g).map(|_| ())];
            Ok(FamilyTerm { n, field: x, divergence, bf })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, parse_field};
    use crate::quat::{rat, Quaternion};

    fn p(s: &str) -> NCPoly {
        parse(s).unwrap()
    }

    #[test]
    fn basic_flows() {
        let x = parse_field("w^2 ; 0").unwrap();
        let phi = flow_jet(&x, 5);
        assert_eq!((phi.f.clone(), phi.g.clone()), (p("z + t*w^2"), p("w")));
        let phi = flow_jet(&VectorField::zero(), 4);
        assert_eq!((phi.f, phi.g), (p("z"), p("w")));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(exp_series(&NCPoly::zero(), 4).unwrap(), NCPoly::one());
        assert_eq!(exp_series(&p("t*w"), 3).unwrap(), p("1 + t*w + 1/2*t^2*w^2 + 1/6*t^3*w^3"));
        let a = exp_series(&p("t*z*w"), 6).unwrap();
        let b = exp_series(&p("-t*z*w"), 6).unwrap();
        assert_eq!(a.mul_truncated(&b, &Truncation::central(6)), NCPoly::one());
        assert!(exp_series(&p("1 + z"), 3).is_err());
    }

    #[test]
    fn complete_example_flow() {
        let x = parse_field("z^2*w ; -z*w^2").unwrap();
        let phi = flow_jet(&x, 8);
        let e = exp_series(&p("t*z*w"), 8).unwrap();
        let em = exp_series(&p("-t*z*w"), 8).unwrap();
        assert_eq!(phi.f, &NCPoly::z() * &e);
        assert_eq!(phi.g, &em * &NCPoly::w());
        let (r1, r2) = verify_flow(&x, &phi);
        assert!(r1.is_zero() && r2.is_zero());

        let mut bad = phi.clone();
        bad.f += &p("t^3*z");
        let (r1, _) = verify_flow(&x, &bad);
        assert!((0..2).all(|n| r1.t_coeff(n).is_zero()));
        assert_eq!(r1.t_coeff(2), p("3*z"));
    }

    #[test]
    fn closed_forms() {
        let spec = ShearSpec::directional(int(1), vec![Quaternion::zero(), Quaternion::zero(), Quaternion::one()]);
        let phi = shear_flow(&spec, 2);
        assert_eq!(phi.f, p("z + t*(z - w)^2"));
        assert_eq!(phi.g, p("w + t*(z - w)^2"));
        assert_eq!(phi, flow_jet(&spec.field(), 2));

        let over = OvershearSpec::new(QuatMatrix2::identity(), vec![Quaternion::zero(), Quaternion::zero(), Quaternion::one()]).unwrap();
        let phi = shear_flow(&over, 6);
        let e = exp_series(&p("t*w^2"), 6).unwrap();
        assert_eq!(phi.f, &NCPoly::z() + &(&NCPoly::z() * &(&e - &NCPoly::one())));
        assert_eq!(phi.g, p("w"));
        assert_eq!(phi, flow_jet(&over.field(), 6));

        let gen = ShearSpec::along(Quaternion::unit_i(), vec![Quaternion::zero(), Quaternion::one()]);
        let phi = shear_flow(&gen, 3);
        assert_eq!(phi.f, p("z + t*i*(z - i*w)"));
        assert_eq!(phi.g, p("w + t*(z - i*w)"));
        assert_eq!(phi, flow_jet(&gen.field(), 3));
    }

    #[test]
    fn conjugation_and_group_law() {
        let x = parse_field("w^2 ; 0").unwrap();
        assert!(conjugate_flow_check(&QuatMatrix2::identity(), &x, 5).unwrap());
        assert!(conjugate_flow_check(&QuatMatrix2::real_ints(1, 1, 0, 1), &x, 5).unwrap());
        assert!(conjugate_flow_check(&QuatMatrix2::real_ints(0, 1, 1, 0), &parse_field("w^3 + w ; 0").unwrap(), 5).unwrap());

        let over = OvershearSpec::new(QuatMatrix2::real_ints(1, 2, 0, 1), vec![Quaternion::zero(), Quaternion::one()]).unwrap();
        let (a, b) = group_law_residual(&shear_flow(&over, 5));
        assert!(a.is_zero() && b.is_zero());
        let (a, b) = group_law_residual(&flow_jet(&parse_field("z^2*w ; -z*w^2").unwrap(), 5));
        assert!(a.is_zero() && b.is_zero());
        assert_eq!(shear_flow(&over, 5).at_time(&rat(0, 1)), (p("z"), p("w")));
    }

    #[test]
    fn inversion() {
        let inv = invert_jet(&MapJet::new(p("z"), p("w + z^2"), 6)).unwrap();
        assert_eq!((inv.f, inv.g), (p("z"), p("w - z^2")));
        assert_eq!(invert_jet(&MapJet::identity(4)).unwrap(), MapJet::identity(4));
        let f = MapJet::new(p("z"), p("w + z^2"), 6).compose(&MapJet::new(p("z + w^2"), p("w"), 6));
        let inv = invert_jet(&f).unwrap();
        assert_eq!(f.compose(&inv), MapJet::identity(6));
        assert_eq!(inv.compose(&f), MapJet::identity(6));
        assert!(matches!(invert_jet(&MapJet::new(p("2*z"), p("w"), 3)), Err(Error::NonIdentityLinearPart(_))));
        assert!(matches!(invert_jet(&MapJet::new(p("z + 1"), p("w"), 3)), Err(Error::NonIdentityLinearPart(_))));
    }

    #[test]
    fn family_of_two_shears() {
        let f = MapJet::new(p("z"), p("w + z^2"), 6).compose(&MapJet::new(p("z + w^2"), p("w"), 6));
        let psi = family_flow(&f).unwrap();
        assert_eq!(psi.f, p("z + t*w^2"));
        assert_eq!(psi.g, p("w + t*z^2 + t^2*(z*w^2 + w^2*z) + t^3*w^4"));
        let xs = field_from_family(&f, 3).unwrap();
        assert_eq!(xs[0].field, parse_field("w^2 ; z^2").unwrap());
        assert!(xs[0].is_bf());
        // X_1 = 2 (0, z w^2 + w^2 z) - [t^1] X_0(Ψ)
        assert_eq!(xs[1].field, parse_field("-w*z^2 - z^2*w ; z*w^2 + w^2*z").unwrap());
        assert!(!xs[1].is_bf());
        assert!(field_from_family(&f, 5).is_err());
    }
}
