use std::ops::{Add, Neg, Sub};

use super::{Letter, NCPoly, Truncation};
use crate::error::{Error, Result};
use crate::quat::{Quaternion, Rational};

/// A polynomial vector field `(f, g)` on pairs of quaternions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct VectorField {
    pub f: NCPoly,
    pub g: NCPoly,
}

impl VectorField {
    /// Components may only use `z` and `w`.
    pub fn new(f: NCPoly, g: NCPoly) -> Result<Self> {
        for p in [&f, &g] {
            p.check_letters(&[Letter::Z, Letter::W], "vector field component")?;
            if p.has_central() {
                return Err(Error::InvalidArgument("vector field components cannot contain t or s".into()));
            }
        }
        Ok(VectorField { f, g })
    }

    pub fn zero() -> Self {
        VectorField::default()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn components(&self) -> [&NCPoly; 2] {
        [&self.f, &self.g]
    }

    pub fn degree(&self) -> i64 {
        self.f.degree().max(self.g.degree())
    }

    pub fn homogeneous(&self, d: usize) -> VectorField {
        VectorField { f: self.f.homogeneous(d), g: self.g.homogeneous(d) }
    }

    pub fn mul_quat_right(&self, q: &Quaternion) -> VectorField {
        VectorField { f: self.f.mul_quat_right(q), g: self.g.mul_quat_right(q) }
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField { f: self.f.scale(c), g: self.g.scale(c) }
    }

    /// `X ∘ (u, v)`: substitute `z ↦ u`, `w ↦ v` in both components.
    pub fn compose(&self, u: &NCPoly, v: &NCPoly, tr: &Truncation) -> (NCPoly, NCPoly) {
        let images = [(Letter::Z, u.clone()), (Letter::W, v.clone())];
        (self.f.substitute_many(&images, tr), self.g.substitute_many(&images, tr))
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, o: &VectorField) -> VectorField {
        VectorField { f: &self.f + &o.f, g: &self.g + &o.g }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, o: &VectorField) -> VectorField {
        VectorField { f: &self.f - &o.f, g: &self.g - &o.g }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField { f: -&self.f, g: -&self.g }
    }
}

impl std::iter::Sum for VectorField {
    fn sum<I: Iterator<Item = VectorField>>(iter: I) -> VectorField {
        iter.fold(VectorField::zero(), |a, b| &a + &b)
    }
}
