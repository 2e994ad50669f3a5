use quatshear::bidegree::s_poly;
use quatshear::calc::{dhat, div_op, dtilde, has_divergence, has_rotor, rot_op, rotor_potential, DivResult};
use quatshear::ncalg::{Bindings, Letter, NCPoly, VectorField};
use quatshear::quat::{int, Quaternion, QuaternionF};
use quatshear::sample;
use quatshear::vfield::linear_form;

#[test]
fn mixed_slot_identity() {
    for d in 0..=6 {
        for p in 0..=d {
            let q = d - p;
            let a = dhat(&s_poly(p + 1, q), Letter::Z, Letter::H1).unwrap();
            let b = dhat(&s_poly(p, q + 1), Letter::W, Letter::H1).unwrap();
            assert_eq!(a, b, "p = {p}, q = {q}");
        }
    }
}

fn directional_identity(mu: &Quaternion, d: u32) -> NCPoly {
    let u = linear_form(&Quaternion::one(), &-mu).pow(d);
    let dw = dhat(&u, Letter::W, Letter::H1).unwrap();
    let dz = dhat(&u, Letter::Z, Letter::H1).unwrap();
    &dw + &dz.mul_quat_left(mu)
}

#[test]
fn directional_derivative_relation_iff_real() {
    for mu in [int(0), int(1), int(2), quatshear::quat::rat(-3, 2), quatshear::quat::rat(5, 7)] {
        for d in 0..=5 {
            assert!(directional_identity(&Quaternion::real(mu.clone()), d).is_zero());
        }
    }
    let witness = directional_identity(&Quaternion::unit_i(), 2);
    assert!(!witness.is_zero());
}

#[test]
fn leibniz_rule() {
    let mut rng = sample::rng(201);
    for _ in 0..100 {
        let p = sample::poly(&mut rng, 4, 4, true);
        let q = sample::poly(&mut rng, 4, 4, true);
        for var in [Letter::Z, Letter::W] {
            let lhs = dhat(&(&p * &q), var, Letter::H1).unwrap();
            let rhs = &dhat(&p, var, Letter::H1).unwrap() * &q + &p * &dhat(&q, var, Letter::H1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

fn test_fields(seed: u64, n: usize) -> Vec<VectorField> {
    let mut rng = sample::rng(seed);
    let mut out = Vec::new();
    for k in 0..n {
        out.push(match k % 3 {
            0 => sample::field_with_divergence(&mut rng, 3),
            1 => VectorField { f: sample::right_coefficient_poly(&mut rng, 3, 3), g: sample::right_coefficient_poly(&mut rng, 3, 3) },
            _ => sample::gradient_field(&mut rng, 4).1,
        });
    }
    out
}

/// Pointwise left-linearity: `E(u) = u E(1)` at random points for random `u`.
fn numerically_left_linear(e: &NCPoly, seed: u64) -> bool {
    let mut rng = sample::rng(seed);
    let mut rand_q = || sample::quaternion(&mut rng, 9).to_f64();
    for _ in 0..20 {
        let (z, w, u) = (rand_q(), rand_q(), rand_q());
        let at = |h: QuaternionF| Bindings::zw(z, w).with(Letter::H1, h);
        let eu = e.eval(&at(u)).unwrap();
        let e1 = e.eval(&at(QuaternionF::ONE)).unwrap();
        if (eu - u * e1).norm() > 1e-9 * (1.0 + eu.norm()) {
            return false;
        }
    }
    true
}

#[test]
fn divergence_test_agrees_with_pointwise_oracle() {
    for (n, x) in test_fields(202, 45).iter().enumerate() {
        let e = div_op(x);
        let pointwise = numerically_left_linear(&e, n as u64);
        assert_eq!(has_divergence(x).divergence().is_some(), pointwise);
        let e = rot_op(x);
        assert_eq!(has_rotor(x).rotor().is_some(), numerically_left_linear(&e, n as u64 + 1000));
    }
}

#[test]
fn rotor_is_a_rotated_divergence() {
    let mut rng = sample::rng(203);
    for _ in 0..50 {
        let x = VectorField { f: sample::poly(&mut rng, 4, 4, true), g: sample::poly(&mut rng, 4, 4, true) };
        let turned = VectorField { f: -&x.g, g: x.f.clone() };
        assert_eq!(rot_op(&x), div_op(&turned));
    }
}

#[test]
fn rotor_potentials() {
    let mut rng = sample::rng(204);
    for _ in 0..20 {
        let (_, x) = sample::gradient_field(&mut rng, 5);
        let chi = rotor_potential(&x).unwrap();
        assert_eq!(dtilde(&chi, Letter::Z).unwrap(), x.f);
        assert_eq!(dtilde(&chi, Letter::W).unwrap(), x.g);
    }
}

#[test]
fn worked_divergences() {
    let p = |s: &str| quatshear::expr::parse(s).unwrap();
    let x = VectorField::new(p("z*w + w*z"), p("-w^2")).unwrap();
    assert_eq!(div_op(&x), NCPoly::zero());
    assert_eq!(has_divergence(&x), DivResult::HasDivergence(NCPoly::zero()));
    let x = VectorField::new(p("z^2*w"), p("-z*w^2")).unwrap();
    assert_eq!(div_op(&x), p("h1*z*w - z*w*h1"));
    assert!(matches!(has_divergence(&x), DivResult::NotLeftLinear { .. }));
}
