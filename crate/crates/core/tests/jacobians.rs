use quatshear::flow::{shear_flow, MapJet};
use quatshear::jac::{chain_rule_sides, complex_det, jacobian_volume_check, real_det, real_embedding};
use quatshear::linalg;
use quatshear::mat2::{Mat2, QuatMatrix2F};
use quatshear::quat::{rat, Quaternion, QuaternionF};
use quatshear::sample::{self, SampleRng};
use quatshear::vfield::ShearSpec;
use rand::Rng;

fn rand_qf(rng: &mut SampleRng) -> QuaternionF {
    QuaternionF::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn rand_matrix(rng: &mut SampleRng) -> QuatMatrix2F {
    Mat2::new(rand_qf(rng), rand_qf(rng), rand_qf(rng), rand_qf(rng))
}

#[test]
fn chain_rule_on_random_pairs() {
    let mut rng = sample::rng(601);
    for _ in 0..20 {
        let (f, g) = (sample::map(&mut rng, 3), sample::map(&mut rng, 3));
        let (a, b) = chain_rule_sides(&f, &g).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn dieudonne_determinant_is_multiplicative() {
    let mut rng = sample::rng(602);
    for _ in 0..100 {
        let (m, n) = (rand_matrix(&mut rng), rand_matrix(&mut rng));
        let lhs = m.mul(&n).dieudonne_det();
        let rhs = m.dieudonne_det() * n.dieudonne_det();
        assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1e-300));
        let d = m.dieudonne_det();
        assert!((real_det(&m) - d.powi(4)).abs() <= 1e-6 * d.powi(4).max(1.0));
        assert!((complex_det(&m) - d.powi(2)).abs() <= 1e-6 * d.powi(2).max(1.0));
    }
}

fn kernel_dimension(m: &QuatMatrix2F) -> usize {
    let e = real_embedding(m);
    let rows: Vec<Vec<f64>> = (0..8).map(|r| (0..8).map(|c| e[(r, c)]).collect()).collect();
    8 - linalg::numeric_rank(&rows, 1e-9)
}

#[test]
fn zero_determinant_iff_singular() {
    let mut rng = sample::rng(603);
    for n in 0..100 {
        let m = if n % 2 == 0 {
            // second column = first column * q
            let (a, c, q) = (rand_qf(&mut rng), rand_qf(&mut rng), rand_qf(&mut rng));
            Mat2::new(a, a * q, c, c * q)
        } else {
            rand_matrix(&mut rng)
        };
        let singular = kernel_dimension(&m) > 0;
        assert_eq!(singular, n % 2 == 0);
        assert_eq!(m.dieudonne_det() < 1e-9, singular);
    }
}

fn shear_map(mu: Quaternion) -> MapJet {
    let spec = ShearSpec::along(mu, vec![Quaternion::zero(), Quaternion::zero(), Quaternion::one()]);
    let (f, g) = shear_flow(&spec, 1).at_time(&rat(1, 1));
    MapJet::new(f, g, 4)
}

#[test]
fn shear_determinant_formula() {
    let mus = [
        Quaternion::zero(),
        Quaternion::one(),
        Quaternion::from_ints(-2, 0, 0, 0),
        Quaternion::unit_i(),
        Quaternion::new(rat(7071, 10000), rat(0, 1), rat(7071, 10000), rat(0, 1)),
    ];
    let mut rng = sample::rng(604);
    for mu in mus {
        let muf = mu.to_f64();
        let pts: Vec<_> = (0..20).map(|_| (rand_qf(&mut rng), rand_qf(&mut rng))).collect();
        for s in jacobian_volume_check(&shear_map(mu), &pts, QuaternionF::ONE).unwrap() {
            let u = s.z - muf * s.w;
            let expect = (QuaternionF::ONE - (muf * u - u * muf)).norm();
            assert!((s.det_d - expect).abs() < 1e-9, "{} vs {}", s.det_d, expect);
        }
    }
}
