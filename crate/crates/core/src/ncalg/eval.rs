use super::{Letter, NCPoly};
use crate::error::{Error, Result};
use crate::quat::{rat_to_f64, QuatScalar, Quaternion, QuaternionF, Rational};

/// Numeric values for the letters and the central symbols.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bindings {
    letters: [Option<QuaternionF>; 4],
    t: Option<f64>,
    s: Option<f64>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zw(z: QuaternionF, w: QuaternionF) -> Self {
        Self::new().with(Letter::Z, z).with(Letter::W, w)
    }

    pub fn with(mut self, l: Letter, v: QuaternionF) -> Self {
        self.letters[l.index()] = Some(v);
        self
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_s(mut self, s: f64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn get(&self, l: Letter) -> Option<QuaternionF> {
        self.letters[l.index()]
    }
}

/// Exact values for the letters and the central symbols.
#[derive(Clone, Debug, Default)]
pub struct ExactBindings {
    letters: [Option<Quaternion>; 4],
    t: Option<Rational>,
    s: Option<Rational>,
}

impl ExactBindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, l: Letter, v: Quaternion) -> Self {
        self.letters[l.index()] = Some(v);
        self
    }

    pub fn with_t(mut self, t: Rational) -> Self {
        self.t = Some(t);
        self
    }
}

fn eval_with<T: QuatScalar>(
    p: &NCPoly,
    letter: impl Fn(Letter) -> Option<T>,
    t: Option<T>,
    s: Option<T>,
    coeff: impl Fn(&Rational) -> T,
    unit: impl Fn(super::Unit) -> T,
) -> Result<T> {
    let mut sum = T::q_zero();
    for (w, c) in p.terms() {
        let mut acc = coeff(c);
        for (name, val, pow) in [("t", &t, w.t_power()), ("s", &s, w.s_power())] {
            if pow == 0 {
                continue;
            }
            let v = val.as_ref().ok_or_else(|| Error::UnboundLetter(name.into()))?;
            for _ in 0..pow {
                acc = acc.q_mul(v);
            }
        }
        acc = acc.q_mul(&unit(w.units()[0]));
        for (pos, l) in w.letters().iter().enumerate() {
            let v = letter(*l).ok_or_else(|| Error::UnboundLetter(l.name().into()))?;
            acc = acc.q_mul(&v).q_mul(&unit(w.units()[pos + 1]));
        }
        sum = sum.q_add(&acc);
    }
    Ok(sum)
}

impl NCPoly {
    /// Numeric evaluation, multiplying left to right within each word.
    pub fn eval(&self, at: &Bindings) -> Result<QuaternionF> {
        eval_with(
            self,
            |l| at.get(l),
            at.t.map(QuaternionF::real),
            at.s.map(QuaternionF::real),
            |c| QuaternionF::real(rat_to_f64(c)),
            |u| u.to_quaternion().to_f64(),
        )
    }

    /// Exact evaluation over rational quaternions.
    pub fn eval_exact(&self, at: &ExactBindings) -> Result<Quaternion> {
        eval_with(
            self,
            |l| at.letters[l.index()].clone(),
            at.t.clone().map(Quaternion::real),
            at.s.clone().map(Quaternion::real),
            |c| Quaternion::real(c.clone()),
            |u| u.to_quaternion(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let zw = &NCPoly::z() * &NCPoly::w();
        let wz = &NCPoly::w() * &NCPoly::z();
        let b = Bindings::zw(QuaternionF::I, QuaternionF::J);
        assert_eq!(zw.eval(&b).unwrap(), QuaternionF::K);
        assert_eq!((&zw - &wz).eval(&b).unwrap(), QuaternionF::K.scale(2.0));
        let x = QuaternionF::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!((&zw - &wz).eval(&Bindings::zw(x, x)).unwrap(), QuaternionF::ZERO);
        assert!(zw.eval(&Bindings::new()).is_err());
    }
}
