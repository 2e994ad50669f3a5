//! Why a map with a non-BF cubic term is not reached by compositions of real
//! shears.
//!
//! Compose real shears `S^m = id + (μ_m, 1)(u_m^2 a_{m,2} + u_m^3 a_{m,3})`,
//! `u_m = z - μ_m w`. The quadratic part of the composition is BF. In the
//! cubic part, the bidegree-(2,1) piece of the first component lives in the
//! span of `z^2 w + w z^2` and `z w z`, so a target whose piece is not in that
//! span stays at positive distance. The analysis checks the expansion
//! identities behind this, computes the achievable span from random
//! compositions and projects the target onto it, all in exact arithmetic.

use num::Zero;
use quatshear::bidegree::is_bf;
use quatshear::expr::{format, format_field};
use quatshear::flow::{exp_series, MapJet};
use quatshear::linalg::{self, Matrix};
use quatshear::ncalg::{Bindings, NCPoly, Truncation, VectorField};
use quatshear::quat::{int, Quaternion, QuaternionF, Rational};
use quatshear::sample::{self, SampleRng};
use quatshear::vfield::{linear_form, linear_independence_as_functions};
use quatshear::{Error, Result};
use rand::Rng;

/// Words spanning the bidegree-(2,1) block of the first component.
pub const CUBIC_WORDS: [&str; 3] = ["z^2*w", "z*w*z", "w*z^2"];

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub order: usize,
    /// Homogeneous part of the target at `order`.
    pub order_term: VectorField,
    /// Which part of `order_term` is tested for membership.
    pub examined: String,
    pub examined_coords: Vec<Rational>,
    pub achievable_rank: usize,
    pub residual: Vec<Rational>,
    pub residual_labels: Vec<String>,
    pub blocking_words: Vec<String>,
    pub identity_checks: Vec<IdentityCheck>,
    /// Sign conventions of the hand computation that do not hold as written.
    pub printed_forms: Vec<IdentityCheck>,
    /// Rank of `{z^2 w, z w z, w z^2}` as functions at random points.
    pub function_rank: usize,
    /// Largest deviation of the target jet from a reference map at float
    /// points, when a reference was supplied.
    pub reference_error: Option<f64>,
}

impl ObstructionReport {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.iter().all(|r| r.is_zero())
    }

    pub fn identities_hold(&self) -> bool {
        self.identity_checks.iter().all(|c| c.passed)
    }
}

fn u(mu: &Rational) -> NCPoly {
    linear_form(&Quaternion::one(), &Quaternion::real(-mu.clone()))
}

/// The composition `S^k ∘ ... ∘ S^1` as a jet of degree `max_degree`.
pub fn shear_composition(mus: &[Rational], coeffs: &[[Quaternion; 2]], max_degree: usize) -> MapJet {
    let mut out = MapJet::identity(max_degree);
    for (mu, [a2, a3]) in mus.iter().zip(coeffs) {
        let um = u(mu);
        let p = &um.pow(2).mul_quat_right(a2) + &um.pow(3).mul_quat_right(a3);
        let s = MapJet::new(&NCPoly::z() + &p.scale(mu), &NCPoly::w() + &p, max_degree);
        out = s.compose(&out);
    }
    out
}

/// Jet of `(z e^{zw}, e^{-zw} w)` through total degree `2 k + 1`.
pub fn exponential_target(k: u32) -> MapJet {
    let zw = &NCPoly::z() * &NCPoly::w();
    let e = exp_series(&zw.mul_central(1, 0), k).expect("no constant term").eval_central(quatshear::ncalg::Central::T, &int(1));
    let em = exp_series(&(-&zw).mul_central(1, 0), k).expect("no constant term").eval_central(quatshear::ncalg::Central::T, &int(1));
    MapJet::new(&NCPoly::z() * &e, &em * &NCPoly::w(), 2 * k as usize + 1)
}

fn bidegree_part(p: &NCPoly, pq: (usize, usize)) -> NCPoly {
    p.bidegree_split().ok().and_then(|mut m| m.remove(&pq)).unwrap_or_default()
}

fn cubic_words() -> Vec<NCPoly> {
    CUBIC_WORDS.iter().map(|s| quatshear::expr::parse(s).expect("fixed words")).collect()
}

/// Real coordinates of a bidegree-(2,1) polynomial on `CUBIC_WORDS`, or
/// `None` if it has imaginary coefficients.
fn cubic_coords(p: &NCPoly) -> Option<Vec<Rational>> {
    let words = cubic_words();
    let mut left = p.clone();
    let mut out = Vec::new();
    for w in &words {
        let (word, _) = w.terms().next().expect("one word");
        let c = p.coeff(word);
        left -= &w.scale(&c);
        out.push(c);
    }
    left.is_zero().then_some(out)
}

fn check(name: impl Into<String>, passed: bool) -> IdentityCheck {
    IdentityCheck { name: name.into(), passed }
}

/// Expansion identities for one instantiation `μ_1..μ_k`, `a_1..a_k` and
/// every choice of the outer index `m`.
pub fn expansion_identities(mus: &[Rational], a: &[Quaternion]) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let tr = Truncation::degree(3);
    let us: Vec<NCPoly> = mus.iter().map(u).collect();
    let mut inner_f = NCPoly::z();
    let mut inner_g = NCPoly::w();
    for ((un, mun), an) in us.iter().zip(mus).zip(a) {
        let sq = un.pow(2).mul_quat_right(an);
        inner_f += &sq.scale(mun);
        inner_g += &sq;
    }
    let images = [(quatshear::Letter::Z, inner_f), (quatshear::Letter::W, inner_g)];
    let parse = |s: &str| quatshear::expr::parse(s).expect("fixed expression");
    let (zw_wz, zzw, wzz, zwz) = (parse("z*w + w*z"), parse("z^2*w"), parse("w*z^2"), parse("z*w*z"));
    let (z, w) = (NCPoly::z(), NCPoly::w());

    for (m, (um, mum)) in us.iter().zip(mus).enumerate() {
        let composed = um.substitute_many(&images, &Truncation::NONE);
        let r: NCPoly = us.iter().zip(mus).zip(a).map(|((un, mun), an)| un.pow(2).mul_quat_right(an).scale(&(mun - mum))).sum();
        out.push(check(format!("m={m}: u_m after the quadratic shears is u_m + sum u_n^2 (mu_n - mu_m) a_n"), composed == um + &r));

        let square = composed.mul_truncated(&composed, &tr);
        let expanded = (&um.pow(2) + &(&um.mul_truncated(&r, &tr) + &r.mul_truncated(um, &tr))).truncate(&tr);
        out.push(check(format!("m={m}: square expands to u_m^2 + u_m R + R u_m through degree 3"), square == expanded));

        let mut bracket_sum = NCPoly::zero();
        let mut part_sum = NCPoly::zero();
        for ((un, mun), an) in us.iter().zip(mus).zip(a) {
            let un2a = un.pow(2).mul_quat_right(an);
            let bracket = &(um * &un2a) + &(&un2a * um);
            bracket_sum += &bracket.scale(&(mun - mum));
            let part = bidegree_part(&bracket, (2, 1));
            let qa = NCPoly::quaternion(an);
            let printed = &(&(&w * &z.pow(2)).scale(&-mum.clone()) - &(&z * &zw_wz).scale(mun)) * &qa
                + (&(&(&z.pow(2) * &qa) * &w).scale(&-mum.clone()) - &(&(&zw_wz * &qa) * &z).scale(mun));
            let regrouped = -(&(&wzz.scale(mum) + &zzw.scale(mun)) + &zwz.scale(mun)) * qa.clone()
                - (&(&(&z.pow(2) * &qa) * &w).scale(mum) + &(&(&(&(&z * &w) * &qa) * &z) + &(&(&(&w * &z) * &qa) * &z)).scale(mun));
            out.push(check(
                format!("m={m}: bidegree (2,1) part of the bracket, both printed groupings"),
                part == printed && part == regrouped,
            ));
            part_sum += &part;
        }
        out.push(check(
            format!("m={m}: R u_m + u_m R equals the bracket sum"),
            (&um.mul_truncated(&r, &tr) + &r.mul_truncated(um, &tr)) == bracket_sum.truncate(&tr),
        ));

        // summed over n with α = sum μ_m a_n, β = sum μ_n a_n
        let alpha: Quaternion = a.iter().fold(Quaternion::zero(), |acc, an| acc + an.scale(mum));
        let beta: Quaternion = a.iter().zip(mus).fold(Quaternion::zero(), |acc, (an, mun)| acc + an.scale(mun));
        let (qa, qb) = (NCPoly::quaternion(&alpha), NCPoly::quaternion(&beta));
        let summed = -(&wzz * &qa) - &(&zzw + &zwz) * &qb - &(&z.pow(2) * &qa) * &w - &(&(&z * &w) * &qb) * &z - &(&(&w * &z) * &qb) * &z;
        out.push(check(format!("m={m}: summed (2,1) terms in alpha, beta form"), part_sum == summed));

        if alpha.is_real() && beta.is_real() {
            let (al, be) = (alpha.r.clone(), beta.r.clone());
            let corrected = &(&wzz + &zzw).scale(&-(&al + &be)) - &zwz.scale(&(int(2) * &be));
            out.push(check(format!("m={m}: real sums give -(alpha+beta)(w z^2 + z^2 w) - 2 beta z w z"), part_sum == corrected));
        }
    }
    out
}

/// The hand-written forms with `z - sum` in the inner substitution and
/// `(alpha - beta)(w z^2 + z^2 w) - 2 alpha z w z` for the real sums. Both
/// differ in sign from the expansion; reported, never required.
pub fn printed_forms(mus: &[Rational], a: &[Rational]) -> Vec<IdentityCheck> {
    let parse = |s: &str| quatshear::expr::parse(s).expect("fixed expression");
    let (wz2_z2w, zwz) = (parse("w*z^2 + z^2*w"), parse("z*w*z"));
    let us: Vec<NCPoly> = mus.iter().map(u).collect();
    let mut out = Vec::new();
    for (m, (um, mum)) in us.iter().zip(mus).enumerate() {
        let sum_f: NCPoly = us.iter().zip(mus).zip(a).map(|((un, mun), an)| un.pow(2).scale(&(mun * an))).sum();
        let sum_g: NCPoly = us.iter().zip(a).map(|(un, an)| un.pow(2).scale(an)).sum();
        let images = [(quatshear::Letter::Z, &NCPoly::z() + &sum_f), (quatshear::Letter::W, &NCPoly::w() + &sum_g)];
        let composed = um.substitute_many(&images, &Truncation::NONE);
        let printed = &(&NCPoly::z() - &sum_f) - &(&NCPoly::w() + &sum_g).scale(mum);
        out.push(check(format!("m={m}: inner substitution written with z - sum"), composed == printed));

        let alpha: Rational = a.iter().map(|an| mum * an).sum();
        let beta: Rational = a.iter().zip(mus).map(|(an, mun)| mun * an).sum();
        let mut part_sum = NCPoly::zero();
        for (un, an) in us.iter().zip(a) {
            let un2a = un.pow(2).scale(an);
            part_sum += &bidegree_part(&(&(um * &un2a) + &(&un2a * um)), (2, 1));
        }
        let printed = &wz2_z2w.scale(&(&alpha - &beta)) - &zwz.scale(&(int(2) * &alpha));
        out.push(check(format!("m={m}: real sums written as (alpha-beta)(w z^2 + z^2 w) - 2 alpha z w z"), part_sum == printed));
    }
    out
}

fn random_tuple(rng: &mut SampleRng, k: usize, real: bool) -> (Vec<Rational>, Vec<Quaternion>) {
    let mus = (0..k).map(|_| sample::rational(rng, 5)).collect();
    let a = (0..k).map(|_| if real { Quaternion::real(sample::rational(rng, 5)) } else { sample::quaternion(rng, 4) }).collect();
    (mus, a)
}

/// Coordinates of the first-component (2,1) cubic piece for random real
/// shear compositions.
pub fn achievable_cubic_span(samples: usize, rng: &mut SampleRng) -> Matrix {
    (0..samples)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            let mus: Vec<Rational> = (0..k).map(|_| sample::rational(rng, 5)).collect();
            let coeffs: Vec<[Quaternion; 2]> =
                (0..k).map(|_| [Quaternion::real(sample::rational(rng, 5)), Quaternion::real(sample::rational(rng, 5))]).collect();
            let s = shear_composition(&mus, &coeffs, 3);
            cubic_coords(&bidegree_part(&s.f.homogeneous(3), (2, 1))).expect("real compositions have real coefficients")
        })
        .collect()
}

/// Residual of one component against the BF span, per bidegree and unit.
fn bf_residual(p: &NCPoly, label: &str) -> (Vec<String>, Vec<Rational>) {
    let mut labels = Vec::new();
    let mut values = Vec::new();
    let Ok(parts) = p.bidegree_split() else {
        return (vec![format!("{label}: {p}")], vec![int(1)]);
    };
    for ((pz, qw), part) in parts {
        let rc = part.right_coefficients();
        let words = quatshear::bidegree::words(pz, qw);
        let n = int(words.len() as i64);
        let mut mean = Quaternion::zero();
        for w in &words {
            mean += &rc.get(w).cloned().unwrap_or_else(Quaternion::zero);
        }
        let mean = mean.scale(&(int(1) / n));
        for w in &words {
            let c = rc.get(w).cloned().unwrap_or_else(Quaternion::zero);
            let d = &c - &mean;
            if !d.is_zero() {
                labels.push(format!("{label}: {}", format(&NCPoly::term(w.clone(), int(1)))));
                values.push(d.norm_sq());
            }
        }
        // words outside right-coefficient form are never BF
        if rc.keys().any(|w| !words.contains(w)) {
            labels.push(format!("{label}: interior units in bidegree ({pz},{qw})"));
            values.push(int(1));
        }
    }
    (labels, values)
}

/// Analyse `target` at `order` (2 or 3) against compositions of real shears.
pub fn obstruction_analysis(
    target: &MapJet,
    order: usize,
    seed: u64,
    reference: Option<&dyn Fn(QuaternionF, QuaternionF) -> (QuaternionF, QuaternionF)>,
) -> Result<ObstructionReport> {
    target.check_identity_linear_part()?;
    if target.max_degree < order {
        return Err(Error::InvalidArgument(format!("target jet only known through degree {}", target.max_degree)));
    }
    let mut rng = sample::rng(seed);
    let (f, g) = target.homogeneous(order);
    let order_term = VectorField { f, g };

    let mut identity_checks = Vec::new();
    for n in 0..5 {
        let (mus, a) = random_tuple(&mut rng, 3, n % 2 == 1);
        identity_checks.extend(expansion_identities(&mus, &a));
    }
    // quadratic parts of single shears are BF
    for _ in 0..3 {
        let (mus, a) = random_tuple(&mut rng, 1, false);
        let s = shear_composition(&mus, &[[a[0].clone(), Quaternion::zero()]], 3);
        let (f2, g2) = s.homogeneous(2);
        identity_checks.push(check("quadratic shear terms are BF", is_bf(&f2).is_ok() && is_bf(&g2).is_ok()));
    }

    let printed = {
        let (mus, a) = random_tuple(&mut rng, 3, true);
        printed_forms(&mus, &a.iter().map(|q| q.r.clone()).collect::<Vec<_>>())
    };

    let function_rank = linear_independence_as_functions(&cubic_words(), 6, seed ^ 0x5eed)?;

    let reference_error = reference.map(|r| {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let mut q = || {
                let v = sample::quaternion(&mut rng, 9).to_f64();
                v.scale(0.3 / v.norm().max(1e-12) * rng.gen_range(0.2..1.0))
            };
            let (z, w) = (q(), q());
            let at = Bindings::zw(z, w);
            let (ef, eg) = r(z, w);
            let df = (target.f.eval(&at).expect("z, w only") - ef).norm();
            let dg = (target.g.eval(&at).expect("z, w only") - eg).norm();
            worst = worst.max(df).max(dg);
        }
        worst
    });

    let (examined, examined_coords, achievable_rank, residual, residual_labels) = match order {
        2 => {
            let (mut labels, mut values) = bf_residual(&order_term.f, "first");
            let (l2, v2) = bf_residual(&order_term.g, "second");
            labels.extend(l2);
            values.extend(v2);
            ("BF projection of both components".to_string(), Vec::new(), 0, values, labels)
        }
        3 => {
            let part = bidegree_part(&order_term.f, (2, 1));
            let coords = cubic_coords(&part)
                .ok_or_else(|| Error::InvalidArgument(format!("bidegree (2,1) part {part} has non-real coefficients")))?;
            let span = achievable_cubic_span(12, &mut rng);
            let rank = linalg::rank(&span);
            let residual = linalg::projection_residual(&span, &coords);
            (
                format!("bidegree (2,1) part of the first component: {}", format(&part)),
                coords,
                rank,
                residual,
                CUBIC_WORDS.iter().map(|s| s.to_string()).collect(),
            )
        }
        _ => return Err(Error::InvalidArgument(format!("order {order} is not analysed; use 2 or 3"))),
    };
    let blocking_words = residual_labels.iter().zip(&residual).filter(|(_, r)| !r.is_zero()).map(|(l, _)| l.clone()).collect();
    Ok(ObstructionReport {
        order,
        order_term,
        examined,
        examined_coords,
        achievable_rank,
        residual,
        residual_labels,
        blocking_words,
        identity_checks,
        printed_forms: printed,
        function_rank,
        reference_error,
    })
}

/// `(z e^{zw}, e^{-zw} w)` at float points.
pub fn exponential_reference(z: QuaternionF, w: QuaternionF) -> (QuaternionF, QuaternionF) {
    (z * (z * w).exp(), (-(z * w)).exp() * w)
}

pub fn render(report: &ObstructionReport) -> String {
    let mut s = String::new();
    s.push_str("scope: exact algebra on jets; uniform approximation on compacts is not checked\n");
    s.push_str(&format!("order: {}\n", report.order));
    s.push_str(&format!("order term: {}\n", format_field(&report.order_term)));
    s.push_str(&format!("examined: {}\n", report.examined));
    if report.order == 3 {
        let coords: Vec<String> = report.examined_coords.iter().map(|c| c.to_string()).collect();
        s.push_str(&format!("coordinates on [{}]: [{}]\n", CUBIC_WORDS.join(", "), coords.join(", ")));
        s.push_str(&format!("achievable span rank: {}\n", report.achievable_rank));
    }
    let res: Vec<String> = report.residual.iter().map(|c| c.to_string()).collect();
    s.push_str(&format!("membership residual: [{}]\n", res.join(", ")));
    if report.residual_is_zero() {
        s.push_str("verdict: reachable at this order\n");
    } else {
        s.push_str(&format!("verdict: not reachable at this order; blocking words: {}\n", report.blocking_words.join(", ")));
    }
    let passed = report.identity_checks.iter().filter(|c| c.passed).count();
    s.push_str(&format!("expansion identities: {passed}/{} hold\n", report.identity_checks.len()));
    for c in report.identity_checks.iter().filter(|c| !c.passed) {
        s.push_str(&format!("  failed: {}\n", c.name));
    }
    for c in &report.printed_forms {
        s.push_str(&format!("  as written, {}: {}\n", c.name, if c.passed { "holds" } else { "does not hold" }));
    }
    s.push_str(&format!("function rank of {{{}}}: {}\n", CUBIC_WORDS.join(", "), report.function_rank));
    if let Some(e) = report.reference_error {
        s.push_str(&format!("jet vs reference map, max deviation: {e:.3e}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use quatshear::quat::rat;

    #[test]
    fn exponential_target_is_blocked() {
        let target = exponential_target(6);
        let r = obstruction_analysis(&target, 3, 7, Some(&exponential_reference)).unwrap();
        assert_eq!(r.order_term, quatshear::expr::parse_field("z^2*w ; -z*w^2").unwrap());
        assert_eq!(r.achievable_rank, 2);
        assert_eq!(r.residual, vec![rat(1, 2), rat(0, 1), rat(-1, 2)]);
        assert_eq!(r.blocking_words, vec!["z^2*w".to_string(), "w*z^2".to_string()]);
        assert!(r.identities_hold(), "{:?}", r.identity_checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        assert_eq!(r.function_rank, 3);
        assert!(r.reference_error.unwrap() < 1e-9);
    }

    #[test]
    fn compositions_are_not_blocked() {
        let mus = [rat(1, 2), int(-2), int(3)];
        let coeffs = [
            [Quaternion::real(int(1)), Quaternion::real(rat(2, 3))],
            [Quaternion::real(int(-3)), Quaternion::real(int(1))],
            [Quaternion::real(rat(1, 5)), Quaternion::real(int(2))],
        ];
        let target = shear_composition(&mus, &coeffs, 5);
        for order in [2, 3] {
            let r = obstruction_analysis(&target, order, 3, None).unwrap();
            assert!(r.residual_is_zero(), "order {order}: {:?}", r.residual);
        }
        assert!(obstruction_analysis(&MapJet::new(NCPoly::z().scale(&int(2)), NCPoly::w(), 3), 3, 1, None).is_err());
    }
}
