use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{Central, Letter, Unit, Word};
use crate::error::{Error, Result};
use crate::quat::{int, Quaternion, Rational};

/// Degree bounds applied while multiplying, substituting and composing.
/// `None` means unbounded.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Truncation {
    pub max_degree: Option<usize>,
    pub max_central: Option<u32>,
}

impl Truncation {
    pub const NONE: Truncation = Truncation { max_degree: None, max_central: None };

    pub fn degree(d: usize) -> Self {
        Truncation { max_degree: Some(d), max_central: None }
    }

    pub fn central(n: u32) -> Self {
        Truncation { max_degree: None, max_central: Some(n) }
    }

    pub fn keeps(&self, w: &Word) -> bool {
        self.max_degree.is_none_or(|d| w.degree() <= d) && self.max_central.is_none_or(|n| w.central_degree() <= n)
    }
}

/// Finite rational combination of canonical words.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        NCPoly::term(Word::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        NCPoly::scalar(int(n))
    }

    pub fn unit(u: Unit) -> Self {
        NCPoly::term(Word::scalar(u), Rational::one())
    }

    pub fn quaternion(q: &Quaternion) -> Self {
        let mut p = NCPoly::zero();
        for (u, c) in Unit::ALL.iter().zip(q.components()) {
            p.add_term(Word::scalar(*u), c.clone());
        }
        p
    }

    pub fn var(l: Letter) -> Self {
        NCPoly::term(Word::plain(&[l]), Rational::one())
    }

    pub fn z() -> Self {
        NCPoly::var(Letter::Z)
    }

    pub fn w() -> Self {
        NCPoly::var(Letter::W)
    }

    pub fn central(c: Central, power: u32) -> Self {
        let w = match c {
            Central::T => Word::one().with_central(power, 0),
            Central::S => Word::one().with_central(0, power),
        };
        NCPoly::term(w, Rational::one())
    }

    pub fn t() -> Self {
        NCPoly::central(Central::T, 1)
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    /// Product of plain letters.
    pub fn monomial(letters: &[Letter]) -> Self {
        NCPoly::term(Word::plain(letters), Rational::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Maximal letter count; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|w| w.degree() as i64).max().unwrap_or(-1)
    }

    pub fn max_central_degree(&self) -> u32 {
        self.terms.keys().map(Word::central_degree).max().unwrap_or(0)
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        self.terms.keys().flat_map(|w| w.letters().iter().copied()).collect()
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        self.terms.keys().any(|w| w.letters().contains(&l))
    }

    pub fn has_central(&self) -> bool {
        self.terms.keys().any(|w| w.central_degree() > 0)
    }

    /// Only letters from `allowed` and no central symbols.
    pub fn check_letters(&self, allowed: &[Letter], context: &'static str) -> Result<()> {
        for w in self.terms.keys() {
            if let Some(&l) = w.letters().iter().find(|l| !allowed.contains(l)) {
                return Err(Error::UnexpectedLetter { letter: l, context });
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn mul_truncated(&self, o: &NCPoly, tr: &Truncation) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if let Some(d) = tr.max_degree {
                    if a.degree() + b.degree() > d {
                        continue;
                    }
                }
                if let Some(n) = tr.max_central {
                    if a.central_degree() + b.central_degree() > n {
                        continue;
                    }
                }
                let (neg, w) = a.mul(b);
                let c = ca * cb;
                out.add_term(w, if neg { -c } else { c });
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        self.pow_truncated(n, &Truncation::NONE)
    }

    pub fn pow_truncated(&self, n: u32, tr: &Truncation) -> NCPoly {
        let mut acc = NCPoly::one().truncate(tr);
        for _ in 0..n {
            acc = acc.mul_truncated(self, tr);
        }
        acc
    }

    pub fn mul_quat_right(&self, q: &Quaternion) -> NCPoly {
        self * &NCPoly::quaternion(q)
    }

    pub fn mul_quat_left(&self, q: &Quaternion) -> NCPoly {
        &NCPoly::quaternion(q) * self
    }

    /// Left multiplication by a single basis unit.
    pub fn unit_mul_left(&self, u: Unit) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| {
            let (neg, w2) = w.unit_mul_left(u);
            (w2, if neg { -c } else { c.clone() })
        }))
    }

    pub fn truncate(&self, tr: &Truncation) -> NCPoly {
        NCPoly { terms: self.terms.iter().filter(|(w, _)| tr.keeps(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Drop words with more than `max_total_degree` letters or a central
    /// degree above `max_t_degree`.
    pub fn truncated(&self, max_total_degree: Option<usize>, max_t_degree: Option<u32>) -> NCPoly {
        self.truncate(&Truncation { max_degree: max_total_degree, max_central: max_t_degree })
    }

    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> NCPoly {
        NCPoly { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Homogeneous component of letter degree `d`.
    pub fn homogeneous(&self, d: usize) -> NCPoly {
        self.filter(|w| w.degree() == d)
    }

    /// Coefficient of `t^n` (with `s^0`), as a polynomial without central part.
    pub fn t_coeff(&self, n: u32) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().filter(|(w, _)| w.t_power() == n && w.s_power() == 0).map(|(w, c)| {
            let mut w = w.clone();
            w.set_central(0, 0);
            (w, c.clone())
        }))
    }

    /// Multiply by `t^a s^b`.
    pub fn mul_central(&self, a: u32, b: u32) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| {
            let mut w = w.clone();
            let (t, s) = (w.t_power(), w.s_power());
            w.set_central(t + a, s + b);
            (w, c.clone())
        }))
    }

    /// `d/dt`.
    pub fn d_dt(&self) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().filter(|(w, _)| w.t_power() > 0).map(|(w, c)| {
            let mut w2 = w.clone();
            let n = w.t_power();
            w2.set_central(n - 1, w.s_power());
            (w2, c * int(n as i64))
        }))
    }

    /// `∫_0^t ... dt`.
    pub fn integrate_dt(&self) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| {
            let mut w2 = w.clone();
            let n = w.t_power();
            w2.set_central(n + 1, w.s_power());
            (w2, c / int(n as i64 + 1))
        }))
    }

    /// Replace the central symbol `c` by a rational value.
    pub fn eval_central(&self, which: Central, value: &Rational) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| {
            let mut w2 = w.clone();
            let (t, s) = (w.t_power(), w.s_power());
            let p = match which {
                Central::T => {
                    w2.set_central(0, s);
                    t
                }
                Central::S => {
                    w2.set_central(t, 0);
                    s
                }
            };
            (w2, c * num::pow(value.clone(), p as usize))
        }))
    }

    /// Replace the central symbol `t` by the polynomial `value`.
    pub fn substitute_t(&self, value: &NCPoly, tr: &Truncation) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut base = w.clone();
            let n = w.t_power();
            base.set_central(0, w.s_power());
            let factor = value.pow_truncated(n, tr);
            out += &factor.mul_truncated(&NCPoly::term(base, c.clone()), tr);
        }
        out
    }

    /// Replace every occurrence of `letter` by `value` in a single pass, so
    /// `value` may itself mention `letter` (`z ↦ z + w^2` is fine).
    pub fn substitute(&self, letter: Letter, value: &NCPoly) -> NCPoly {
        self.substitute_many(&[(letter, value.clone())], &Truncation::NONE)
    }

    pub fn substitute_quat(&self, letter: Letter, value: &Quaternion) -> NCPoly {
        self.substitute_many(&[(letter, NCPoly::quaternion(value))], &Truncation::NONE)
    }

    /// Simultaneous substitution of several letters. Images may mention the
    /// letters being replaced; each occurrence is replaced exactly once.
    ///
    /// Words are grouped by their leading unit and letter and the remaining
    /// suffixes are substituted recursively, so `P = sum b x R` becomes
    /// `sum b img(x) R(img)`. Each `R(img)` is simplified before it is
    /// multiplied, which keeps cancellations (such as `Λ(v) = 0` along a
    /// shear) from blowing up the intermediate sums.
    pub fn substitute_many(&self, images: &[(Letter, NCPoly)], tr: &Truncation) -> NCPoly {
        let mut table: [Option<&NCPoly>; 4] = [None; 4];
        for (l, p) in images {
            table[l.index()] = Some(p);
        }
        self.substitute_table(&table, tr)
    }

    fn substitute_table(&self, table: &[Option<&NCPoly>; 4], tr: &Truncation) -> NCPoly {
        let mut out = NCPoly::zero();
        let mut groups: BTreeMap<(Unit, Letter), NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            if w.degree() == 0 {
                if tr.keeps(w) {
                    out.add_term(w.clone(), c.clone());
                }
                continue;
            }
            let rest = Word::new(w.letters()[1..].to_vec(), w.units()[1..].to_vec()).with_central(w.t_power(), w.s_power());
            groups.entry((w.units()[0], w.letters()[0])).or_default().add_term(rest, c.clone());
        }
        for ((b0, l), rest) in groups {
            let tail = rest.substitute_table(table, tr);
            if tail.is_zero() {
                continue;
            }
            let head = match table[l.index()] {
                Some(img) => img.unit_mul_left(b0),
                None => NCPoly::term(Word::new(vec![l], vec![b0, Unit::One]), Rational::one()),
            };
            out += &head.mul_truncated(&tail, tr);
        }
        out
    }

    /// Partition by `(#z, #w)`. Only `z` and `w` may occur.
    pub fn bidegree_split(&self) -> Result<BTreeMap<(usize, usize), NCPoly>> {
        let mut parts: BTreeMap<(usize, usize), NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            if let Some(&l) = w.letters().iter().find(|l| l.is_hole()) {
                return Err(Error::UnexpectedLetter { letter: l, context: "bidegree split" });
            }
            if w.central_degree() > 0 {
                return Err(Error::InvalidArgument("bidegree split of a polynomial with central symbols".into()));
            }
            let key = (w.count(Letter::Z), w.count(Letter::W));
            parts.entry(key).or_default().add_term(w.clone(), c.clone());
        }
        Ok(parts)
    }

    /// Words whose coefficients are negative come with a sign; handy for
    /// display code that wants magnitudes.
    pub fn signed_terms(&self) -> impl Iterator<Item = (&Word, bool, Rational)> {
        self.terms.iter().map(|(w, c)| (w, c.is_negative(), c.abs()))
    }

    /// Group words by their letter skeleton (everything but the terminal
    /// unit) and fold the terminal units into a quaternion right coefficient.
    pub fn right_coefficients(&self) -> BTreeMap<Word, Quaternion> {
        let mut out: BTreeMap<Word, Quaternion> = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut key = w.letter_skeleton();
            key.set_central(w.t_power(), w.s_power());
            let e = out.entry(key).or_insert_with(Quaternion::zero);
            let add = Unit::to_quaternion(w.terminal_unit()).scale(c);
            *e += &add;
        }
        out.retain(|_, q| !q.is_zero());
        out
    }

    /// Inverse of [`right_coefficients`](Self::right_coefficients).
    pub fn from_right_coefficients<'a>(it: impl IntoIterator<Item = (&'a Word, &'a Quaternion)>) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, q) in it {
            out += &NCPoly::term(w.clone(), Rational::one()).mul_quat_right(q);
        }
        out
    }
}

impl std::ops::AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, o: &NCPoly) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&NCPoly> for NCPoly {
    fn sub_assign(&mut self, o: &NCPoly) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, o: NCPoly) -> NCPoly {
        self += &o;
        self
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(mut self, o: NCPoly) -> NCPoly {
        self -= &o;
        self
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, o: &NCPoly) -> NCPoly {
        self.mul_truncated(o, &Truncation::NONE)
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, o: NCPoly) -> NCPoly {
        &self * &o
    }
}

impl std::iter::Sum for NCPoly {
    fn sum<I: Iterator<Item = NCPoly>>(iter: I) -> NCPoly {
        let mut acc = NCPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::rat;

    fn z() -> NCPoly {
        NCPoly::z()
    }
    fn w() -> NCPoly {
        NCPoly::w()
    }

    #[test]
    fn junction_units_reduce() {
        let zi = &z() * &NCPoly::unit(Unit::I);
        let iw = &NCPoly::unit(Unit::I) * &w();
        assert_eq!(&zi * &iw, -(&z() * &w()));
    }

    #[test]
    fn noncommutative_expansion() {
        let lhs = &(&z() + &w()) * &(&z() - &w());
        let rhs = &(&(&z() * &z()) - &(&z() * &w())) + &(&(&w() * &z()) - &(&w() * &w()));
        assert_eq!(lhs, rhs);
        let d = &z() - &w();
        let sq = &d * &d;
        let expect = &(&(&z() * &z()) - &(&z() * &w())) - &(&(&w() * &z()) - &(&w() * &w()));
        assert_eq!(sq, expect);
    }

    #[test]
    fn substitution_examples() {
        // z*h1*k with h1 -> i gives z*i*k = -z*j
        let p = &(&z() * &NCPoly::var(Letter::H1)) * &NCPoly::unit(Unit::K);
        let got = p.substitute(Letter::H1, &NCPoly::unit(Unit::I));
        assert_eq!(got, -(&z() * &NCPoly::unit(Unit::J)));

        let zw = &z() * &w();
        let got = zw.substitute(Letter::Z, &(&z() + &w().pow(2)));
        assert_eq!(got, &zw + &w().pow(3));

        let h = NCPoly::var(Letter::H1);
        let p = &(&h * &zw) - &(&zw * &h);
        assert!(p.substitute(Letter::H1, &NCPoly::one()).is_zero());

        assert_eq!(zw.substitute(Letter::Z, &(&z() + &w())), &zw + &(&w() * &w()));
        assert_eq!(zw.substitute(Letter::Z, &z()), zw);
    }

    #[test]
    fn truncation_examples() {
        let p = &z() + &(&z().pow(2) * &w());
        assert_eq!(p.truncated(Some(2), None), z());
        let tw = &NCPoly::t().pow(2) * &w();
        assert!(tw.truncated(None, Some(1)).is_zero());
        assert_eq!(p.truncated(Some(p.degree() as usize), None), p);
        assert_eq!(NCPoly::zero().degree(), -1);
    }

    #[test]
    fn bidegree_split_examples() {
        let p = &(&z().pow(2) * &w()) + &w();
        let parts = p.bidegree_split().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&(2, 1)], &z().pow(2) * &w());
        assert_eq!(parts[&(0, 1)], w());
        assert!(NCPoly::zero().bidegree_split().unwrap().is_empty());
        assert!(NCPoly::var(Letter::H1).bidegree_split().is_err());
    }

    #[test]
    fn right_coefficient_roundtrip() {
        let q = Quaternion::new(rat(1, 2), int(0), int(-3), int(1));
        let p = (&z() * &w()).mul_quat_right(&q);
        let rc = p.right_coefficients();
        assert_eq!(rc.len(), 1);
        assert_eq!(rc.values().next().unwrap(), &q);
        assert_eq!(NCPoly::from_right_coefficients(rc.iter()), p);
    }

    #[test]
    fn time_calculus() {
        let p = &NCPoly::t().pow(3) * &z();
        assert_eq!(p.d_dt(), (&NCPoly::t().pow(2) * &z()).scale(&int(3)));
        assert_eq!(p.d_dt().integrate_dt(), p);
        assert_eq!(p.eval_central(Central::T, &rat(1, 2)), z().scale(&rat(1, 8)));
    }
}
