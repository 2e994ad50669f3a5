use num::Zero;
use quatshear::bidegree::{bf_to_binomial, binomial_poly, binomial_to_bf, is_bf, s_poly, words};
use quatshear::expr::parse;
use quatshear::linalg;
use quatshear::ncalg::{Bindings, NCPoly};
use quatshear::quat::{int, rat, Quaternion, QuaternionF};
use quatshear::sample;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn word_counts() {
    for d in 0..=10usize {
        for p in 0..=d {
            let ws = words(p, d - p);
            assert_eq!(ws.len() as u64, binom(d as u64, p as u64));
            let mut sorted = ws.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), ws.len());
        }
    }
}

#[test]
fn binomial_round_trip() {
    let mut rng = sample::rng(301);
    for d in 0..=8 {
        let a: Vec<Quaternion> = (0..=d).map(|_| sample::quaternion(&mut rng, 6)).collect();
        let c = bf_to_binomial(d, &a).unwrap();
        assert_eq!(binomial_to_bf(d, &c), a);
        let direct: NCPoly = c.iter().enumerate().map(|(n, cn)| binomial_poly(&int(n as i64), d as u32).mul_quat_right(cn)).sum();
        let bf: NCPoly = a.iter().enumerate().map(|(q, aq)| s_poly(d - q, q).mul_quat_right(aq)).sum();
        assert_eq!(direct, bf);
    }
}

#[test]
fn powers_of_linear_forms_are_bidegree_full() {
    for mu in [int(0), int(1), int(2), rat(-3, 2)] {
        for d in 0..=5usize {
            let lhs = binomial_poly(&mu, d as u32);
            let rhs: NCPoly = (0..=d).map(|q| s_poly(d - q, q).scale(&num::pow(-mu.clone(), q))).sum();
            assert_eq!(lhs, rhs);
            assert!(is_bf(&lhs).is_ok());
        }
    }
}

#[test]
fn cubic_words_are_independent_functions() {
    let polys = [parse("z^2*w").unwrap(), parse("z*w*z").unwrap(), parse("w*z^2").unwrap()];
    let mut rng = sample::rng(302);
    let mut rows = Vec::new();
    for _ in 0..3 {
        let at = Bindings::zw(sample::quaternion(&mut rng, 9).to_f64(), sample::quaternion(&mut rng, 9).to_f64());
        let vals: Vec<QuaternionF> = polys.iter().map(|p| p.eval(&at).unwrap()).collect();
        for r in 0..4 {
            rows.push(vals.iter().flat_map(|v| v.left_matrix()[r]).collect::<Vec<f64>>());
        }
    }
    assert_eq!(linalg::numeric_rank(&rows, 1e-6), 12);
    assert!(is_bf(&(&polys[0] + &polys[2])).is_err());
    assert!(is_bf(&(&(&polys[0] + &polys[1]) + &polys[2])).is_ok());
    assert!(s_poly(2, 1).terms().all(|(_, c)| !c.is_zero()));
}
