//! Seeded random generators for tests and verification suites.
//!
//! Every generator takes an explicit RNG; use [`rng`] to make one from a seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bidegree::s_poly;
use crate::calc::dtilde;
use crate::error::Result;
use crate::flow::MapJet;
use crate::mat2::QuatMatrix2;
use crate::ncalg::{Letter, NCPoly, Unit, VectorField, Word};
use crate::quat::{rat, Quaternion, Rational};
use crate::vfield::{c1_generators, divergence_zero_basis, OvershearSpec, ShearSpec};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n / d` with `|n| <= bound`, `1 <= d <= bound`.
pub fn rational(rng: &mut SampleRng, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound.max(1)))
}

pub fn nonzero_rational(rng: &mut SampleRng, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound);
        if r != rat(0, 1) {
            return r;
        }
    }
}

pub fn quaternion(rng: &mut SampleRng, bound: i64) -> Quaternion {
    Quaternion::new(rational(rng, bound), rational(rng, bound), rational(rng, bound), rational(rng, bound))
}

pub fn nonzero_quaternion(rng: &mut SampleRng, bound: i64) -> Quaternion {
    loop {
        let q = quaternion(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

fn unit(rng: &mut SampleRng, units: bool) -> Unit {
    if units {
        Unit::ALL[rng.gen_range(0..4)]
    } else {
        Unit::One
    }
}

/// Random polynomial in `z, w` of degree at most `max_degree` with up to
/// `max_terms` words. With `units` the words carry random interior units.
pub fn poly(rng: &mut SampleRng, max_degree: usize, max_terms: usize, units: bool) -> NCPoly {
    let n = rng.gen_range(0..=max_terms);
    NCPoly::from_terms((0..n).map(|_| {
        let d = rng.gen_range(0..=max_degree);
        let letters: Vec<Letter> = (0..d).map(|_| if rng.gen_bool(0.5) { Letter::Z } else { Letter::W }).collect();
        let us: Vec<Unit> = (0..=d).map(|_| unit(rng, units)).collect();
        (Word::new(letters, us), nonzero_rational(rng, 5))
    }))
}

/// Random homogeneous polynomial of degree `d` in right-coefficient form.
pub fn right_coefficient_poly(rng: &mut SampleRng, d: usize, max_terms: usize) -> NCPoly {
    let n = rng.gen_range(1..=max_terms);
    (0..n)
        .map(|_| {
            let letters: Vec<Letter> = (0..d).map(|_| if rng.gen_bool(0.5) { Letter::Z } else { Letter::W }).collect();
            NCPoly::monomial(&letters).mul_quat_right(&quaternion(rng, 4))
        })
        .sum()
}

/// Random combination of the quaternionic generator family of degrees
/// `1..=max_degree`. Such fields have a divergence.
pub fn field_with_divergence(rng: &mut SampleRng, max_degree: usize) -> VectorField {
    (1..=max_degree).flat_map(c1_generators).filter_map(|x| rng.gen_bool(0.5).then(|| x.mul_quat_right(&quaternion(rng, 3)))).sum()
}

/// Random divergence-free fields drawn from the brute-force bases, which are
/// computed once per degree.
pub struct DivZeroSampler {
    bases: Vec<Vec<VectorField>>,
}

impl DivZeroSampler {
    pub fn new(max_degree: usize) -> Result<Self> {
        let bases = (0..=max_degree).map(divergence_zero_basis).collect::<Result<_>>()?;
        Ok(DivZeroSampler { bases })
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    /// Homogeneous of degree `d`, nonzero unless the space is trivial.
    pub fn homogeneous(&self, rng: &mut SampleRng, d: usize) -> VectorField {
        let basis = &self.bases[d];
        loop {
            let mut x = VectorField::zero();
            for b in basis {
                if rng.gen_bool(0.3) {
                    x = &x + &b.scale(&nonzero_rational(rng, 4));
                }
            }
            if !x.is_zero() || basis.is_empty() {
                return x;
            }
        }
    }

    /// Sum of homogeneous pieces of random degrees in `1..=max_degree`.
    pub fn field(&self, rng: &mut SampleRng) -> VectorField {
        let top = rng.gen_range(1..=self.max_degree());
        let mut x = VectorField::zero();
        for d in 1..=top {
            if d == top || rng.gen_bool(0.5) {
                x = &x + &self.homogeneous(rng, d);
            }
        }
        x
    }
}

/// Random bidegree-full potential `chi` of degree `2..=max_degree` and its
/// gradient field `(dtilde_z chi, dtilde_w chi)`, which has rotor 0.
pub fn gradient_field(rng: &mut SampleRng, max_degree: usize) -> (NCPoly, VectorField) {
    let mut chi = NCPoly::zero();
    for d in 2..=max_degree.max(2) {
        for p in 0..=d {
            if rng.gen_bool(0.4) {
                chi += &s_poly(p, d - p).mul_quat_right(&quaternion(rng, 3));
            }
        }
    }
    let x = VectorField { f: dtilde(&chi, Letter::Z).expect("z, w only"), g: dtilde(&chi, Letter::W).expect("z, w only") };
    (chi, x)
}

/// Random polynomial map of degree at most `max_degree` (quaternionic
/// coefficients, arbitrary linear part).
pub fn map(rng: &mut SampleRng, max_degree: usize) -> MapJet {
    MapJet::new(poly(rng, max_degree, 4, true), poly(rng, max_degree, 4, true), max_degree * max_degree)
}

/// Profile coefficients `a_0 ..= a_top` with `a_0 = 0`.
fn profile(rng: &mut SampleRng, max_degree: usize) -> Vec<Quaternion> {
    let top = rng.gen_range(1..=max_degree.max(1));
    (0..=top).map(|d| if d == 0 { Quaternion::zero() } else { quaternion(rng, 3) }).collect()
}

/// Real shear spec: directional with a random rational node, or vertical.
pub fn real_shear(rng: &mut SampleRng, max_degree: usize) -> ShearSpec {
    let coeffs = profile(rng, max_degree);
    if rng.gen_bool(0.2) {
        ShearSpec::vertical(coeffs)
    } else {
        ShearSpec::directional(rational(rng, 4), coeffs)
    }
}

/// Shear along a random quaternionic direction `(mu, 1)`.
pub fn generalized_shear(rng: &mut SampleRng, max_degree: usize) -> ShearSpec {
    let coeffs = profile(rng, max_degree);
    ShearSpec::along(quaternion(rng, 3), coeffs)
}

/// Overshear with a random invertible real matrix.
pub fn real_overshear(rng: &mut SampleRng, max_degree: usize) -> OvershearSpec {
    loop {
        let m = QuatMatrix2::real(rational(rng, 3), rational(rng, 3), rational(rng, 3), rational(rng, 3));
        if m.real_det().is_some_and(|d| d != rat(0, 1)) {
            let top = rng.gen_range(0..max_degree.max(1));
            let coeffs = (0..=top).map(|_| quaternion(rng, 3)).collect();
            return OvershearSpec::new(m, coeffs).expect("invertible");
        }
    }
}
