//! 2x2 matrices over the quaternions (exact or floating point).

use std::fmt;

use crate::error::{Error, Result};
use crate::quat::{QuatScalar, Quaternion, QuaternionF, Rational};

/// `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub type QuatMatrix2 = Mat2<Quaternion>;
pub type QuatMatrix2F = Mat2<QuaternionF>;

impl<T: QuatScalar + Clone> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_rows(rows: [[T; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = rows;
        Mat2 { a, b, c, d }
    }

    pub fn rows(&self) -> [[T; 2]; 2] {
        [[self.a.clone(), self.b.clone()], [self.c.clone(), self.d.clone()]]
    }

    pub fn identity() -> Self {
        Mat2::new(T::q_one(), T::q_zero(), T::q_zero(), T::q_one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.q_mul(&o.a).q_add(&self.b.q_mul(&o.c)),
            b: self.a.q_mul(&o.b).q_add(&self.b.q_mul(&o.d)),
            c: self.c.q_mul(&o.a).q_add(&self.d.q_mul(&o.c)),
            d: self.c.q_mul(&o.b).q_add(&self.d.q_mul(&o.d)),
        }
    }

    /// Two-sided inverse by block elimination; fails on singular input.
    pub fn inverse(&self) -> Result<Self> {
        if self.a.q_is_zero() {
            if self.b.q_is_zero() || self.c.q_is_zero() {
                return Err(Error::Singular);
            }
            let (bi, ci) = (self.b.q_inv()?, self.c.q_inv()?);
            return Ok(Mat2 { a: ci.q_mul(&self.d).q_mul(&bi).q_neg(), b: ci, c: bi, d: T::q_zero() });
        }
        let ai = self.a.q_inv()?;
        let s = self.d.q_sub(&self.c.q_mul(&ai).q_mul(&self.b));
        if s.q_is_zero() {
            return Err(Error::Singular);
        }
        let si = s.q_inv()?;
        let aib = ai.q_mul(&self.b);
        let cai = self.c.q_mul(&ai);
        Ok(Mat2 { a: ai.q_add(&aib.q_mul(&si).q_mul(&cai)), b: aib.q_mul(&si).q_neg(), c: si.q_mul(&cai).q_neg(), d: si })
    }

    /// `ad - cb`.
    pub fn cayley_det(&self) -> T {
        self.a.q_mul(&self.d).q_sub(&self.c.q_mul(&self.b))
    }

    /// Representative of the Dieudonné determinant:
    /// `-cb` if `a = 0`, else `ad - a c a^{-1} b`.
    pub fn dieudonne_representative(&self) -> T {
        if self.a.q_is_zero() {
            return self.c.q_mul(&self.b).q_neg();
        }
        let ai = self.a.q_inv().expect("nonzero");
        self.a.q_mul(&self.d).q_sub(&self.a.q_mul(&self.c).q_mul(&ai).q_mul(&self.b))
    }

    /// Dieudonné determinant as a nonnegative real (the norm of the
    /// representative; the quotient group is the positive reals).
    pub fn dieudonne_det(&self) -> f64 {
        self.dieudonne_representative().q_norm()
    }

    pub fn to_f64(&self) -> QuatMatrix2F {
        Mat2 { a: self.a.q_to_f64(), b: self.b.q_to_f64(), c: self.c.q_to_f64(), d: self.d.q_to_f64() }
    }
}

impl QuatMatrix2 {
    pub fn real(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2::new(Quaternion::real(a), Quaternion::real(b), Quaternion::real(c), Quaternion::real(d))
    }

    pub fn real_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(
            Quaternion::from_ints(a, 0, 0, 0),
            Quaternion::from_ints(b, 0, 0, 0),
            Quaternion::from_ints(c, 0, 0, 0),
            Quaternion::from_ints(d, 0, 0, 0),
        )
    }

    pub fn is_real(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|q| q.is_real())
    }

    /// `ad - bc` for a real matrix.
    pub fn real_det(&self) -> Option<Rational> {
        self.is_real().then(|| &self.a.r * &self.d.r - &self.b.r * &self.c.r)
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::int;

    #[test]
    fn inverses() {
        let i = Quaternion::unit_i();
        let j = Quaternion::unit_j();
        let k = Quaternion::unit_k();
        let one = Quaternion::one();
        for m in [
            QuatMatrix2::real_ints(1, 2, 3, 4),
            Mat2::new(one.clone(), i.clone(), j.clone(), k.clone()),
            Mat2::new(Quaternion::zero(), i.clone(), j.clone(), Quaternion::from_ints(1, 1, 0, 0)),
            Mat2::new(Quaternion::from_ints(1, 1, 0, 0), j.clone(), k.clone(), one.clone()),
        ] {
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv), Mat2::identity());
            assert_eq!(inv.mul(&m), Mat2::identity());
        }
        assert_eq!(QuatMatrix2::real_ints(1, 1, 1, 1).inverse(), Err(Error::Singular));
        assert_eq!(QuatMatrix2::real_ints(0, 1, 0, 1).inverse(), Err(Error::Singular));
    }

    #[test]
    fn determinants() {
        let i = Quaternion::unit_i();
        let j = Quaternion::unit_j();
        let k = Quaternion::unit_k();
        let m = Mat2::new(i.clone(), i.clone(), j.clone(), j.clone());
        assert_eq!(m.cayley_det(), Quaternion::from_ints(0, 0, 0, 2));
        assert_eq!(QuatMatrix2::identity().cayley_det(), Quaternion::one());
        assert_eq!(QuatMatrix2::real_ints(1, 2, 3, 4).cayley_det(), Quaternion::from_ints(-2, 0, 0, 0));

        let m = Mat2::new(Quaternion::zero(), i.clone(), j.clone(), Quaternion::zero());
        assert_eq!(m.dieudonne_representative(), Quaternion::unit_k());
        assert!((m.dieudonne_det() - 1.0).abs() < 1e-12);
        let m = Mat2::new(Quaternion::one(), i, j, k);
        assert_eq!(m.dieudonne_representative(), Quaternion::from_ints(0, 0, 0, 2));
        assert!((m.dieudonne_det() - 2.0).abs() < 1e-12);
        assert_eq!(QuatMatrix2::real_ints(1, 1, 1, 1).dieudonne_det(), 0.0);
        assert_eq!(QuatMatrix2::real_ints(1, 2, 3, 4).real_det(), Some(int(-2)));
    }
}
