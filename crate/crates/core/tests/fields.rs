use quatshear::bidegree::{is_bf, s_poly};
use quatshear::calc::has_divergence;
use quatshear::linalg;
use quatshear::ncalg::VectorField;
use quatshear::sample::{self, DivZeroSampler};
use quatshear::vfield::{
    c1_generators, divergence_space_basis, divergence_zero_basis, field_coordinates, overshear_div_rep, real_span, shear_decompose,
};

#[test]
fn real_shears_and_overshears() {
    let mut rng = sample::rng(401);
    for _ in 0..30 {
        let s = sample::real_shear(&mut rng, 4);
        assert_eq!(has_divergence(&s.field()).divergence(), Some(&quatshear::NCPoly::zero()));
        let o = sample::real_overshear(&mut rng, 4);
        assert_eq!(has_divergence(&o.field()).divergence(), Some(&o.expected_divergence()));
    }
}

#[test]
fn divergence_representatives() {
    for d in 0..=6 {
        for p in 0..=d {
            let (field, specs) = overshear_div_rep(p, d - p).unwrap();
            assert_eq!(has_divergence(&field).divergence(), Some(&s_poly(p, d - p)));
            for s in specs {
                assert_eq!(has_divergence(&s.field()).divergence(), Some(&s.expected_divergence()));
            }
        }
    }
}

fn rank(fields: &[VectorField]) -> usize {
    linalg::rank(&field_coordinates(&[fields])[0])
}

#[test]
fn divergence_space_matches_generators() {
    for d in 0..=5 {
        let basis = divergence_space_basis(d).unwrap();
        let gens = real_span(&c1_generators(d));
        let joint: Vec<VectorField> = basis.iter().chain(&gens).cloned().collect();
        let r = rank(&joint);
        assert_eq!(rank(&basis), r, "degree {d}");
        assert_eq!(rank(&gens), r, "degree {d}");
        for x in &basis {
            let div = has_divergence(x).into_result().unwrap();
            assert!(is_bf(&div).is_ok());
        }
        for x in divergence_zero_basis(d).unwrap() {
            assert!(is_bf(&x.f).is_ok() && is_bf(&x.g).is_ok());
        }
    }
}

#[test]
fn divergence_free_fields_split_into_shears() {
    let sampler = DivZeroSampler::new(5).unwrap();
    let mut rng = sample::rng(402);
    for _ in 0..50 {
        let x = sampler.field(&mut rng);
        let dec = shear_decompose(&x, true).unwrap();
        assert!(dec.overshears.is_empty());
        assert_eq!(dec.reconstruct(), x);
        for s in &dec.shears {
            assert!(s.is_real());
            assert_eq!(has_divergence(&s.field()).divergence(), Some(&quatshear::NCPoly::zero()));
        }
    }
}

#[test]
fn fields_with_divergence_split_into_overshears_and_shears() {
    let mut rng = sample::rng(403);
    for _ in 0..20 {
        let x = sample::field_with_divergence(&mut rng, 4);
        let dec = shear_decompose(&x, false).unwrap();
        assert_eq!(dec.reconstruct(), x);
    }
}
