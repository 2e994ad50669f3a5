//! Quaternions over exact rationals, and an `f64` mirror for numeric evaluation.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact quaternion `r + i*i + j*j + k*k` with rational components.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Quaternion {
    pub r: Rational,
    pub i: Rational,
    pub j: Rational,
    pub k: Rational,
}

impl Quaternion {
    pub fn new(r: Rational, i: Rational, j: Rational, k: Rational) -> Self {
        Quaternion { r, i, j, k }
    }

    pub fn from_ints(r: i64, i: i64, j: i64, k: i64) -> Self {
        Quaternion::new(int(r), int(i), int(j), int(k))
    }

    pub fn real(r: Rational) -> Self {
        Quaternion::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn unit_i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn unit_j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn unit_k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.r, &self.i, &self.j, &self.k]
    }

    pub fn from_components(c: [Rational; 4]) -> Self {
        let [r, i, j, k] = c;
        Quaternion { r, i, j, k }
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.r.clone(), -&self.i, -&self.j, -&self.k)
    }

    pub fn norm_sq(&self) -> Rational {
        &self.r * &self.r + &self.i * &self.i + &self.j * &self.j + &self.k * &self.k
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Quaternion::new(&self.r * s, &self.i * s, &self.j * s, &self.k * s)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn to_f64(&self) -> QuaternionF {
        QuaternionF::new(rat_to_f64(&self.r), rat_to_f64(&self.i), rat_to_f64(&self.j), rat_to_f64(&self.k))
    }
}

impl<'a> Add<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.r + &o.r, &self.i + &o.i, &self.j + &o.j, &self.k + &o.k)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        &self + &o
    }
}

impl AddAssign<&Quaternion> for Quaternion {
    fn add_assign(&mut self, o: &Quaternion) {
        self.r += &o.r;
        self.i += &o.i;
        self.j += &o.j;
        self.k += &o.k;
    }
}

impl<'a> Sub<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.r - &o.r, &self.i - &o.i, &self.j - &o.j, &self.k - &o.k)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        &self - &o
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.r, -&self.i, -&self.j, -&self.k)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn mul(self, o: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.r, &self.i, &self.j, &self.k);
        let (a2, b2, c2, d2) = (&o.r, &o.i, &o.j, &o.k);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        &self * &o
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Quaternion {
    /// Writes `a + b*i + c*j + d*k`, omitting zero parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [(&self.r, ""), (&self.i, "i"), (&self.j, "j"), (&self.k, "k")];
        let mut first = true;
        for (c, u) in parts {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (u.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", fmt_rational(&mag))?,
                (false, true) => write!(f, "{u}")?,
                (false, false) => write!(f, "{}*{u}", fmt_rational(&mag))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Floating-point quaternion used by the numeric checks.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct QuaternionF {
    pub r: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl QuaternionF {
    pub const ZERO: QuaternionF = QuaternionF { r: 0.0, i: 0.0, j: 0.0, k: 0.0 };
    pub const ONE: QuaternionF = QuaternionF { r: 1.0, i: 0.0, j: 0.0, k: 0.0 };
    pub const I: QuaternionF = QuaternionF { r: 0.0, i: 1.0, j: 0.0, k: 0.0 };
    pub const J: QuaternionF = QuaternionF { r: 0.0, i: 0.0, j: 1.0, k: 0.0 };
    pub const K: QuaternionF = QuaternionF { r: 0.0, i: 0.0, j: 0.0, k: 1.0 };

    pub const fn new(r: f64, i: f64, j: f64, k: f64) -> Self {
        QuaternionF { r, i, j, k }
    }

    pub fn real(r: f64) -> Self {
        QuaternionF::new(r, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        QuaternionF::new(self.r, -self.i, -self.j, -self.k)
    }

    pub fn norm_sq(self) -> f64 {
        self.r * self.r + self.i * self.i + self.j * self.j + self.k * self.k
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        QuaternionF::new(self.r * s, self.i * s, self.j * s, self.k * s)
    }

    pub fn inv(self) -> Result<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.r.is_finite() && self.i.is_finite() && self.j.is_finite() && self.k.is_finite()
    }

    pub fn exp(self) -> Self {
        let v = (self.i * self.i + self.j * self.j + self.k * self.k).sqrt();
        let e = self.r.exp();
        if v == 0.0 {
            return QuaternionF::real(e);
        }
        let s = e * v.sin() / v;
        QuaternionF::new(e * v.cos(), self.i * s, self.j * s, self.k * s)
    }

    /// Real 4x4 matrix of `x ↦ self * x` in the basis `1, i, j, k`.
    pub fn left_matrix(self) -> [[f64; 4]; 4] {
        let QuaternionF { r: a, i: b, j: c, k: d } = self;
        [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.r, self.i, self.j, self.k]
    }
}

impl Add for QuaternionF {
    type Output = QuaternionF;
    fn add(self, o: Self) -> Self {
        QuaternionF::new(self.r + o.r, self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl AddAssign for QuaternionF {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for QuaternionF {
    type Output = QuaternionF;
    fn sub(self, o: Self) -> Self {
        QuaternionF::new(self.r - o.r, self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl Neg for QuaternionF {
    type Output = QuaternionF;
    fn neg(self) -> Self {
        QuaternionF::new(-self.r, -self.i, -self.j, -self.k)
    }
}

impl Mul for QuaternionF {
    type Output = QuaternionF;
    fn mul(self, o: Self) -> Self {
        QuaternionF::new(
            self.r * o.r - self.i * o.i - self.j * o.j - self.k * o.k,
            self.r * o.i + self.i * o.r + self.j * o.k - self.k * o.j,
            self.r * o.j - self.i * o.k + self.j * o.r + self.k * o.i,
            self.r * o.k + self.i * o.j - self.j * o.i + self.k * o.r,
        )
    }
}

impl fmt::Display for QuaternionF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}*i {:+}*j {:+}*k", self.r, self.i, self.j, self.k)
    }
}

/// Operations shared by the exact and the floating-point quaternion, so the
/// 2x2 matrix code can be written once.
pub trait QuatScalar: Clone + PartialEq + fmt::Debug {
    fn q_zero() -> Self;
    fn q_one() -> Self;
    fn q_add(&self, o: &Self) -> Self;
    fn q_sub(&self, o: &Self) -> Self;
    fn q_mul(&self, o: &Self) -> Self;
    fn q_neg(&self) -> Self;
    fn q_inv(&self) -> Result<Self>;
    fn q_is_zero(&self) -> bool;
    fn q_norm(&self) -> f64;
    fn q_to_f64(&self) -> QuaternionF;
}

impl QuatScalar for Quaternion {
    fn q_zero() -> Self {
        Quaternion::zero()
    }
    fn q_one() -> Self {
        Quaternion::one()
    }
    fn q_add(&self, o: &Self) -> Self {
        self + o
    }
    fn q_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn q_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn q_neg(&self) -> Self {
        -self
    }
    fn q_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn q_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn q_norm(&self) -> f64 {
        rat_to_f64(&self.norm_sq()).sqrt()
    }
    fn q_to_f64(&self) -> QuaternionF {
        self.to_f64()
    }
}

impl QuatScalar for QuaternionF {
    fn q_zero() -> Self {
        QuaternionF::ZERO
    }
    fn q_one() -> Self {
        QuaternionF::ONE
    }
    fn q_add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn q_sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn q_mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn q_neg(&self) -> Self {
        -*self
    }
    fn q_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn q_is_zero(&self) -> bool {
        *self == QuaternionF::ZERO
    }
    fn q_norm(&self) -> f64 {
        self.norm()
    }
    fn q_to_f64(&self) -> QuaternionF {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(r: i64, i: i64, j: i64, k: i64) -> Quaternion {
        Quaternion::from_ints(r, i, j, k)
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(q(0, 1, 0, 0) * q(0, 0, 1, 0), q(0, 0, 0, 1));
        assert_eq!(q(0, 0, 1, 0) * q(0, 1, 0, 0), q(0, 0, 0, -1));
        assert_eq!(q(1, 1, 0, 0) * q(1, 0, 1, 0), q(1, 1, 1, 1));
        let basis = [q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1)];
        for a in &basis {
            for b in &basis {
                let p = a * b;
                let closed = basis.iter().any(|e| p == *e || p == -e);
                assert!(closed, "{a} * {b} = {p}");
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(q(1, 0, 0, 0).inv().unwrap(), q(1, 0, 0, 0));
        assert_eq!(q(0, 1, 0, 0).inv().unwrap(), q(0, -1, 0, 0));
        let expect = Quaternion::new(rat(1, 2), rat(-1, 2), int(0), int(0));
        assert_eq!(q(1, 1, 0, 0).inv().unwrap(), expect);
        assert_eq!(Quaternion::zero().inv(), Err(Error::DivisionByZero));
    }

    fn random_q(rng: &mut ChaCha8Rng) -> Quaternion {
        let mut c = || rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        Quaternion::new(c(), c(), c(), c())
    }

    #[test]
    fn seeded_inverse_and_norm_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut tested = 0;
        while tested < 1000 {
            let a = random_q(&mut rng);
            let b = random_q(&mut rng);
            assert_eq!((&a * &b).norm_sq(), a.norm_sq() * b.norm_sq());
            assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
            if a.is_zero() {
                continue;
            }
            let ai = a.inv().unwrap();
            assert_eq!(&a * &ai, Quaternion::one());
            assert_eq!(&ai * &a, Quaternion::one());
            tested += 1;
        }
    }

    #[test]
    fn display() {
        assert_eq!(q(1, 1, 0, -3).to_string(), "1 + i - 3*k");
        assert_eq!(Quaternion::new(int(0), int(0), rat(-1, 2), int(0)).to_string(), "-1/2*j");
        assert_eq!(Quaternion::zero().to_string(), "0");
    }

    #[test]
    fn float_exp_matches_series() {
        let x = QuaternionF::new(0.3, -0.2, 0.5, 0.1);
        let mut term = QuaternionF::ONE;
        let mut sum = QuaternionF::ONE;
        for n in 1..30 {
            term = term * x;
            term = term.scale(1.0 / n as f64);
            sum += term;
        }
        assert!((sum - x.exp()).norm() < 1e-14);
    }
}
