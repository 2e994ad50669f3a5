//! The free algebra over the quaternions in the letters `z, w, h1, h2`,
//! with two central time symbols `t` and `s`.
//!
//! Every monomial is stored in a canonical form: an alternating sequence
//! `b0 x1 b1 ... xn bn` where each `b` is one of the basis units `1, i, j, k`
//! and each `x` is a letter. Quaternion coefficients are spread over the four
//! units and the remaining sign goes into a rational coefficient, so two
//! polynomials are formally equal exactly when their term maps are equal.

mod eval;
mod field;
mod poly;

use std::cmp::Ordering;
use std::fmt;

pub use eval::{Bindings, ExactBindings};
pub use field::VectorField;
pub use poly::{NCPoly, Truncation};

use crate::quat::Quaternion;

/// A noncommuting variable. The central symbols are kept as exponents on
/// [`Word`] instead.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    Z,
    W,
    H1,
    H2,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::Z, Letter::W, Letter::H1, Letter::H2];

    pub fn name(self) -> &'static str {
        match self {
            Letter::Z => "z",
            Letter::W => "w",
            Letter::H1 => "h1",
            Letter::H2 => "h2",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_hole(self) -> bool {
        matches!(self, Letter::H1 | Letter::H2)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Central (commuting, real) symbols.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Central {
    T,
    S,
}

/// Quaternion basis unit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Unit {
    One,
    I,
    J,
    K,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::J, Unit::K];
    pub const IMAGINARY: [Unit; 3] = [Unit::I, Unit::J, Unit::K];

    /// Product of two units as `(negative, unit)`.
    pub fn mul(self, o: Unit) -> (bool, Unit) {
        use Unit::*;
        match (self, o) {
            (One, u) | (u, One) => (false, u),
            (I, I) | (J, J) | (K, K) => (true, One),
            (I, J) => (false, K),
            (J, K) => (false, I),
            (K, I) => (false, J),
            (J, I) => (true, K),
            (K, J) => (true, I),
            (I, K) => (true, J),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Unit::One => '1',
            Unit::I => 'i',
            Unit::J => 'j',
            Unit::K => 'k',
        }
    }

    pub fn to_quaternion(self) -> Quaternion {
        match self {
            Unit::One => Quaternion::one(),
            Unit::I => Quaternion::unit_i(),
            Unit::J => Quaternion::unit_j(),
            Unit::K => Quaternion::unit_k(),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Canonical monomial `t^t s^s b0 x1 b1 ... xn bn`.
///
/// Invariant: `units.len() == letters.len() + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    letters: Vec<Letter>,
    units: Vec<Unit>,
    t: u32,
    s: u32,
}

impl Word {
    pub fn scalar(unit: Unit) -> Self {
        Word { letters: Vec::new(), units: vec![unit], t: 0, s: 0 }
    }

    pub fn one() -> Self {
        Self::scalar(Unit::One)
    }

    /// Word with all interior and boundary units equal to one.
    pub fn plain(letters: &[Letter]) -> Self {
        Word { letters: letters.to_vec(), units: vec![Unit::One; letters.len() + 1], t: 0, s: 0 }
    }

    pub fn new(letters: Vec<Letter>, units: Vec<Unit>) -> Self {
        assert_eq!(units.len(), letters.len() + 1, "word needs one more unit than letters");
        Word { letters, units, t: 0, s: 0 }
    }

    pub fn with_central(mut self, t: u32, s: u32) -> Self {
        self.t = t;
        self.s = s;
        self
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    pub fn t_power(&self) -> u32 {
        self.t
    }

    pub fn s_power(&self) -> u32 {
        self.s
    }

    pub fn central_degree(&self) -> u32 {
        self.t + self.s
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn terminal_unit(&self) -> Unit {
        *self.units.last().expect("units never empty")
    }

    /// All units except the terminal one are `1`.
    pub fn is_right_coefficient(&self) -> bool {
        self.units[..self.units.len() - 1].iter().all(|&u| u == Unit::One)
    }

    /// Same word with the terminal unit replaced by `1` and no central part.
    pub fn letter_skeleton(&self) -> Word {
        let mut w = Word::plain(&self.letters);
        w.units[..self.units.len() - 1].copy_from_slice(&self.units[..self.units.len() - 1]);
        w
    }

    /// Concatenation with unit reduction at the junction. Returns the sign flag.
    pub fn mul(&self, o: &Word) -> (bool, Word) {
        let mut letters = Vec::with_capacity(self.letters.len() + o.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&o.letters);
        let mut units = Vec::with_capacity(self.units.len() + o.units.len() - 1);
        units.extend_from_slice(&self.units[..self.units.len() - 1]);
        let (neg, mid) = self.terminal_unit().mul(o.units[0]);
        units.push(mid);
        units.extend_from_slice(&o.units[1..]);
        (neg, Word { letters, units, t: self.t + o.t, s: self.s + o.s })
    }

    /// Left multiplication by a unit.
    pub fn unit_mul_left(&self, u: Unit) -> (bool, Word) {
        let mut w = self.clone();
        let (neg, b0) = u.mul(w.units[0]);
        w.units[0] = b0;
        (neg, w)
    }

    /// Right multiplication by a unit.
    pub fn unit_mul_right(&self, u: Unit) -> (bool, Word) {
        let mut w = self.clone();
        let last = w.units.len() - 1;
        let (neg, b) = w.units[last].mul(u);
        w.units[last] = b;
        (neg, w)
    }

    pub(crate) fn set_central(&mut self, t: u32, s: u32) {
        self.t = t;
        self.s = s;
    }
}

impl Ord for Word {
    /// Graded order: letter count, then central degree, then the letter
    /// sequence, then the unit sequence.
    fn cmp(&self, o: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&o.letters.len())
            .then_with(|| self.central_degree().cmp(&o.central_degree()))
            .then_with(|| self.t.cmp(&o.t))
            .then_with(|| self.letters.cmp(&o.letters))
            .then_with(|| self.units.cmp(&o.units))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_products_match_quaternions() {
        for a in Unit::ALL {
            for b in Unit::ALL {
                let (neg, u) = a.mul(b);
                let mut expect = u.to_quaternion();
                if neg {
                    expect = -expect;
                }
                assert_eq!(&a.to_quaternion() * &b.to_quaternion(), expect);
            }
        }
    }

    #[test]
    fn junction_reduction() {
        let a = Word::new(vec![Letter::Z], vec![Unit::One, Unit::I]);
        let b = Word::new(vec![Letter::W], vec![Unit::I, Unit::One]);
        let (neg, c) = a.mul(&b);
        assert!(neg);
        assert_eq!(c, Word::plain(&[Letter::Z, Letter::W]));
    }
}
