//! Bidegree combinatorics: the symmetric sums `S_{p,q}`, bidegree-full (BF)
//! detection, and the basis `(z - n w)^d`, `n = 0..d`, of BF polynomials of
//! degree `d`.
//!
//! A polynomial is BF when it can be written `sum S_{p,q} a_{p,q}` with
//! quaternion right coefficients. Since
//! `(z - n w)^d = sum_q S_{d-q,q} (-n)^q`, converting between the two
//! descriptions is a Vandermonde solve at the nodes `0, -1, ..., -d`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::ncalg::{Bindings, Letter, NCPoly, Unit, Word};
use crate::quat::{int, Quaternion, QuaternionF, Rational};

/// All words with `p` letters `z` and `q` letters `w`, in canonical order.
pub fn words(p: usize, q: usize) -> Vec<Word> {
    fn go(p: usize, q: usize, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if p == 0 && q == 0 {
            out.push(Word::plain(prefix));
            return;
        }
        if p > 0 {
            prefix.push(Letter::Z);
            go(p - 1, q, prefix, out);
            prefix.pop();
        }
        if q > 0 {
            prefix.push(Letter::W);
            go(p, q - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(p, q, &mut Vec::with_capacity(p + q), &mut out);
    out.sort();
    out
}

/// `S_{p,q}`: the sum of all words of bidegree `(p, q)`.
pub fn s_poly(p: usize, q: usize) -> NCPoly {
    NCPoly::from_terms(words(p, q).into_iter().map(|w| (w, int(1))))
}

/// `S_{p,q}` with the convention that a negative index gives 0.
pub fn s_poly_signed(p: i64, q: i64) -> NCPoly {
    if p < 0 || q < 0 {
        NCPoly::zero()
    } else {
        s_poly(p as usize, q as usize)
    }
}

/// Right coefficients `a_{p,q}` of a BF polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BfDecomposition {
    pub coeffs: BTreeMap<(usize, usize), Quaternion>,
}

impl BfDecomposition {
    pub fn reconstruct(&self) -> NCPoly {
        self.coeffs.iter().map(|(&(p, q), a)| s_poly(p, q).mul_quat_right(a)).sum()
    }

    pub fn get(&self, p: usize, q: usize) -> Quaternion {
        self.coeffs.get(&(p, q)).cloned().unwrap_or_else(Quaternion::zero)
    }

    /// Coefficients of the degree-`d` part indexed by `q = 0..=d`.
    pub fn degree_row(&self, d: usize) -> Vec<Quaternion> {
        (0..=d).map(|q| self.get(d - q, q)).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.coeffs.keys().map(|&(p, q)| p + q).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

/// Why a polynomial is not BF.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NotBf {
    /// A letter other than `z`, `w`, or a central symbol, occurs.
    ForeignWord(Word),
    /// A unit sits between letters, so the word has no right coefficient.
    NotRightCoefficient(Word),
    /// `word` has coefficient 0 while `reference` of the same bidegree does not.
    Missing { word: Word, reference: Word },
    /// Two words of the same bidegree carry different coefficients.
    Mismatch { word: Word, coeff: Quaternion, reference: Word, reference_coeff: Quaternion },
}

impl NotBf {
    pub fn words(&self) -> Vec<String> {
        match self {
            NotBf::ForeignWord(w) | NotBf::NotRightCoefficient(w) => vec![w.to_string()],
            NotBf::Missing { word, reference } | NotBf::Mismatch { word, reference, .. } => {
                vec![reference.to_string(), word.to_string()]
            }
        }
    }
}

impl fmt::Display for NotBf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotBf::ForeignWord(w) => write!(f, "word {w} uses letters other than z and w"),
            NotBf::NotRightCoefficient(w) => write!(f, "word {w} has a unit between letters"),
            NotBf::Missing { word, reference } => write!(f, "missing word {word} (present: {reference})"),
            NotBf::Mismatch { word, coeff, reference, reference_coeff } => {
                write!(f, "word {word} has coefficient {coeff} but {reference} has {reference_coeff}")
            }
        }
    }
}

/// Decide whether `p` is BF and, if so, return its coefficients.
pub fn is_bf(p: &NCPoly) -> std::result::Result<BfDecomposition, NotBf> {
    for (w, _) in p.terms() {
        if w.letters().iter().any(|l| l.is_hole()) || w.central_degree() > 0 {
            return Err(NotBf::ForeignWord(w.clone()));
        }
        if !w.is_right_coefficient() {
            return Err(NotBf::NotRightCoefficient(w.clone()));
        }
    }
    let rc = p.right_coefficients();
    let mut classes: BTreeMap<(usize, usize), Vec<(&Word, &Quaternion)>> = BTreeMap::new();
    for (w, q) in &rc {
        classes.entry((w.count(Letter::Z), w.count(Letter::W))).or_default().push((w, q));
    }
    let mut out = BfDecomposition::default();
    for ((pz, qw), present) in classes {
        let (reference, a) = present[0];
        for w in words(pz, qw) {
            match rc.get(&w) {
                None => return Err(NotBf::Missing { word: w, reference: reference.clone() }),
                Some(c) if c != a => {
                    return Err(NotBf::Mismatch { word: w, coeff: c.clone(), reference: reference.clone(), reference_coeff: a.clone() })
                }
                Some(_) => {}
            }
        }
        out.coeffs.insert((pz, qw), a.clone());
    }
    Ok(out)
}

/// `(z - n w)^d`.
pub fn binomial_poly(n: &Rational, d: u32) -> NCPoly {
    (&NCPoly::z() - &NCPoly::w().scale(n)).pow(d)
}

fn vandermonde(d: usize) -> Matrix {
    (0..=d).map(|q| (0..=d).map(|n| num::pow(int(-(n as i64)), q)).collect()).collect()
}

/// Solve `sum_n (-n)^q c_n = a_q` for `q = 0..=d`, where `a_q` is the
/// coefficient of `S_{d-q,q}`. Returns `c_0..=c_d`.
pub fn bf_to_binomial(d: usize, coeffs: &[Quaternion]) -> Result<Vec<Quaternion>> {
    if coeffs.len() != d + 1 {
        return Err(Error::InvalidArgument(format!("expected {} coefficients, got {}", d + 1, coeffs.len())));
    }
    let rhs: Matrix = coeffs.iter().map(|q| q.components().into_iter().cloned().collect()).collect();
    let x = linalg::solve_bareiss(&vandermonde(d), &rhs)?;
    Ok(x.into_iter().map(|row| Quaternion::from_components([row[0].clone(), row[1].clone(), row[2].clone(), row[3].clone()])).collect())
}

/// Inverse of [`bf_to_binomial`]: `a_q = sum_n (-n)^q c_n`.
pub fn binomial_to_bf(d: usize, c: &[Quaternion]) -> Vec<Quaternion> {
    let v = vandermonde(d);
    v.iter().map(|row| row.iter().zip(c).fold(Quaternion::zero(), |acc, (m, cn)| acc + cn.scale(m))).collect()
}

/// `lambda_n` with `w^d = sum_n (z - n w)^d lambda_n`.
pub fn lambda_coeffs(d: usize) -> Vec<Rational> {
    let mut target = vec![Quaternion::zero(); d + 1];
    target[d] = Quaternion::one();
    bf_to_binomial(d, &target).expect("Vandermonde at distinct nodes").into_iter().map(|q| q.r).collect()
}

/// Per-degree coefficients `c_n` with `P_d = sum_n (z - n w)^d c_n`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BinomialDecomposition {
    pub per_degree: BTreeMap<usize, Vec<Quaternion>>,
}

impl BinomialDecomposition {
    pub fn from_bf(bf: &BfDecomposition) -> Result<Self> {
        let mut per_degree = BTreeMap::new();
        for d in bf.degrees() {
            per_degree.insert(d, bf_to_binomial(d, &bf.degree_row(d))?);
        }
        Ok(BinomialDecomposition { per_degree })
    }

    pub fn reconstruct(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (&d, cs) in &self.per_degree {
            for (n, c) in cs.iter().enumerate() {
                out += &binomial_poly(&int(n as i64), d as u32).mul_quat_right(c);
            }
        }
        out
    }
}

/// `a_0 u a_1 u ... u a_d` with `u = z - n w`.
pub fn gen_bf_generator(a: &[Quaternion], n: &Rational, d: usize) -> Result<NCPoly> {
    if a.len() != d + 1 {
        return Err(Error::InvalidArgument(format!("expected {} coefficients, got {}", d + 1, a.len())));
    }
    let u = &NCPoly::z() - &NCPoly::w().scale(n);
    let mut out = NCPoly::quaternion(&a[0]);
    for coeff in &a[1..] {
        out = &(&out * &u) * &NCPoly::quaternion(coeff);
    }
    Ok(out)
}

pub(crate) fn random_quaternion_f(rng: &mut impl Rng) -> QuaternionF {
    QuaternionF::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Numerically test `f((z, w) + (mu, 1) s) = f(z, w)` at random points.
pub fn check_right_invariance(f: &NCPoly, mu: &Quaternion, samples: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let muf = mu.to_f64();
    for _ in 0..samples {
        let (z, w, s) = (random_quaternion_f(&mut rng), random_quaternion_f(&mut rng), random_quaternion_f(&mut rng));
        let base = f.eval(&Bindings::zw(z, w))?;
        let moved = f.eval(&Bindings::zw(z + muf * s, w + s))?;
        let scale = base.norm().max(1.0);
        if (moved - base).norm() > 1e-9 * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Right-coefficient words, used by linear-algebra code that needs a basis
/// of a bidegree block: every word of `words(p, q)` with each unit.
pub fn block_basis(p: usize, q: usize) -> Vec<(Word, Unit)> {
    words(p, q).into_iter().flat_map(|w| Unit::ALL.into_iter().map(move |u| (w.clone(), u))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::quat::rat;

    fn p(s: &str) -> NCPoly {
        parse(s).unwrap()
    }

    #[test]
    fn s_examples() {
        assert_eq!(s_poly(1, 1), p("z*w + w*z"));
        assert_eq!(s_poly(2, 1), p("z^2*w + z*w*z + w*z^2"));
        assert_eq!(s_poly(0, 3), p("w^3"));
        assert_eq!(s_poly(0, 0), NCPoly::one());
    }

    #[test]
    fn bf_examples() {
        let d = is_bf(&s_poly(2, 1).mul_quat_right(&Quaternion::unit_j())).unwrap();
        assert_eq!(d.coeffs.len(), 1);
        assert_eq!(d.get(2, 1), Quaternion::unit_j());

        let err = is_bf(&p("w*z^2 + z^2*w")).unwrap_err();
        assert_eq!(
            err,
            NotBf::Missing {
                word: Word::plain(&[Letter::Z, Letter::W, Letter::Z]),
                reference: Word::plain(&[Letter::Z, Letter::Z, Letter::W])
            }
        );
        assert!(err.to_string().starts_with("missing word z*w*z"));

        let d = is_bf(&p("(z - 3*w)^2")).unwrap();
        assert_eq!(d.get(2, 0), Quaternion::one());
        assert_eq!(d.get(1, 1), Quaternion::from_ints(-3, 0, 0, 0));
        assert_eq!(d.get(0, 2), Quaternion::from_ints(9, 0, 0, 0));

        assert!(matches!(is_bf(&p("i*z")), Err(NotBf::NotRightCoefficient(_))));
        assert!(matches!(is_bf(&p("z*h1")), Err(NotBf::ForeignWord(_))));
        assert!(matches!(is_bf(&p("z*w + 2*w*z")), Err(NotBf::Mismatch { .. })));
        assert_eq!(is_bf(&NCPoly::zero()).unwrap().coeffs.len(), 0);
    }

    fn reals(v: &[Rational]) -> Vec<Quaternion> {
        v.iter().map(|r| Quaternion::real(r.clone())).collect()
    }

    #[test]
    fn binomial_examples() {
        let w = bf_to_binomial(1, &reals(&[int(0), int(1)])).unwrap();
        assert_eq!(w, reals(&[int(1), int(-1)]));
        let w2 = bf_to_binomial(2, &reals(&[int(0), int(0), int(1)])).unwrap();
        assert_eq!(w2, reals(&[rat(1, 2), int(-1), rat(1, 2)]));
        let zw2 = bf_to_binomial(2, &reals(&[int(1), int(-1), int(1)])).unwrap();
        assert_eq!(zw2, reals(&[int(0), int(1), int(0)]));
        assert_eq!(lambda_coeffs(0), vec![int(1)]);
        assert_eq!(lambda_coeffs(2), vec![rat(1, 2), int(-1), rat(1, 2)]);
        assert!(bf_to_binomial(2, &reals(&[int(1)])).is_err());
    }

    #[test]
    fn generators() {
        let one = Quaternion::one();
        assert_eq!(gen_bf_generator(&[one.clone(), one.clone()], &int(0), 1).unwrap(), p("z"));
        assert_eq!(gen_bf_generator(&[Quaternion::unit_i(), Quaternion::unit_j()], &int(1), 1).unwrap(), p("i*(z - w)*j"));
        assert_eq!(gen_bf_generator(&[one.clone(), one.clone(), one], &int(2), 2).unwrap(), p("(z - 2*w)^2"));
    }

    #[test]
    fn right_invariance() {
        assert!(check_right_invariance(&p("(z - w)^2"), &Quaternion::one(), 20, 1).unwrap());
        assert!(check_right_invariance(&p("(z - i*w)^2"), &Quaternion::unit_i(), 20, 2).unwrap());
        assert!(!check_right_invariance(&p("z*w"), &Quaternion::one(), 20, 3).unwrap());
    }
}
