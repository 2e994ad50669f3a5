use proptest::prelude::*;
use quatshear::expr::{format, parse};
use quatshear::ncalg::{Bindings, ExactBindings, Letter, NCPoly, Unit};
use quatshear::quat::{rat, Quaternion, QuaternionF};
use quatshear::sample;

fn small_quaternion() -> impl Strategy<Value = Quaternion> {
    let r = (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d));
    (r.clone(), r.clone(), r.clone(), r).prop_map(|(a, b, c, d)| Quaternion::new(a, b, c, d))
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in small_quaternion(), b in small_quaternion()) {
        prop_assert_eq!((&a * &b).norm_sq(), a.norm_sq() * b.norm_sq());
    }

    #[test]
    fn multiplication_is_associative(a in small_quaternion(), b in small_quaternion(), c in small_quaternion()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}

#[test]
fn unit_table_closes() {
    for a in Unit::ALL {
        for b in Unit::ALL {
            let (neg, u) = a.mul(b);
            let direct = &a.to_quaternion() * &b.to_quaternion();
            let expect = if neg { -u.to_quaternion() } else { u.to_quaternion() };
            assert_eq!(direct, expect);
        }
    }
}

#[test]
fn inverse_is_two_sided() {
    let mut rng = sample::rng(101);
    for _ in 0..1000 {
        let q = sample::nonzero_quaternion(&mut rng, 9);
        let inv = q.inv().unwrap();
        assert_eq!(&q * &inv, Quaternion::one());
        assert_eq!(&inv * &q, Quaternion::one());
    }
    assert!(Quaternion::zero().inv().is_err());
}

#[test]
fn poly_product_is_associative() {
    let mut rng = sample::rng(102);
    for _ in 0..60 {
        let a = sample::poly(&mut rng, 4, 4, true);
        let b = sample::poly(&mut rng, 4, 4, true);
        let c = sample::poly(&mut rng, 4, 4, true);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}

#[test]
fn canonical_form_is_stable_under_printing() {
    let mut rng = sample::rng(103);
    let cycle = |p: &NCPoly| parse(&format(p)).unwrap();
    for _ in 0..1000 {
        let a = sample::poly(&mut rng, 3, 1, true);
        let b = sample::poly(&mut rng, 3, 1, true);
        assert_eq!(cycle(&a) * cycle(&b), cycle(&(&a * &b)));
    }
}

#[test]
fn identity_substitution() {
    let mut rng = sample::rng(104);
    for _ in 0..100 {
        let p = sample::poly(&mut rng, 5, 6, true);
        for l in [Letter::Z, Letter::W] {
            assert_eq!(p.substitute(l, &NCPoly::var(l)), p);
        }
    }
}

fn float_quaternion(rng: &mut sample::SampleRng) -> QuaternionF {
    sample::quaternion(rng, 9).to_f64()
}

#[test]
fn evaluation_is_multiplicative() {
    let mut rng = sample::rng(105);
    for _ in 0..200 {
        let a = sample::poly(&mut rng, 4, 5, true);
        let b = sample::poly(&mut rng, 4, 5, true);
        let at = Bindings::zw(float_quaternion(&mut rng), float_quaternion(&mut rng));
        let lhs = (&a * &b).eval(&at).unwrap();
        let rhs = a.eval(&at).unwrap() * b.eval(&at).unwrap();
        assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));

        let (z, w) = (sample::quaternion(&mut rng, 4), sample::quaternion(&mut rng, 4));
        let at = ExactBindings::new().with(Letter::Z, z).with(Letter::W, w);
        assert_eq!((&a * &b).eval_exact(&at).unwrap(), &a.eval_exact(&at).unwrap() * &b.eval_exact(&at).unwrap());
    }
}

#[test]
fn round_trip_through_text() {
    let mut rng = sample::rng(106);
    for _ in 0..1000 {
        let p = sample::poly(&mut rng, 5, 6, true);
        assert_eq!(parse(&format(&p)).unwrap(), p, "{}", format(&p));
    }
    assert!(parse(&format(&NCPoly::zero())).unwrap().is_zero());
}

#[test]
fn precedence() {
    assert_eq!(parse("-z^2").unwrap(), -(NCPoly::z().pow(2)));
    assert_eq!(parse("2*z^2*w - w").unwrap(), &NCPoly::z().pow(2).scale(&rat(2, 1)) * &NCPoly::w() - NCPoly::w());
    assert_eq!(parse("(z + w)^2").unwrap(), (NCPoly::z() + NCPoly::w()).pow(2));
    assert!(parse("z w").is_err());
    assert!(parse("2z").is_err());
}
