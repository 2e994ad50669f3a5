use std::fmt;

use num::One;

use crate::ncalg::{NCPoly, Unit, VectorField, Word};
use crate::quat::{Quaternion, Rational};

fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn power(base: &str, n: u32) -> String {
    if n == 1 {
        base.to_string()
    } else {
        format!("{base}^{n}")
    }
}

/// Factors of one word, in order, e.g. `["t^2", "i", "z^2", "w", "k"]`.
fn word_factors(w: &Word) -> Vec<String> {
    let mut out = Vec::new();
    if w.t_power() > 0 {
        out.push(power("t", w.t_power()));
    }
    if w.s_power() > 0 {
        out.push(power("s", w.s_power()));
    }
    let (letters, units) = (w.letters(), w.units());
    if units[0] != Unit::One {
        out.push(units[0].symbol().to_string());
    }
    let mut pos = 0;
    while pos < letters.len() {
        let mut end = pos;
        while end + 1 < letters.len() && letters[end + 1] == letters[pos] && units[end + 1] == Unit::One {
            end += 1;
        }
        out.push(power(letters[pos].name(), (end - pos + 1) as u32));
        if units[end + 1] != Unit::One {
            out.push(units[end + 1].symbol().to_string());
        }
        pos = end + 1;
    }
    out
}

/// Canonical text of a polynomial: graded order, `*` between all factors.
pub fn format(p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (w, neg, mag)) in p.signed_terms().enumerate() {
        match (idx, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let mut factors = word_factors(w);
        if !mag.is_one() || factors.is_empty() {
            factors.insert(0, rational(&mag));
        }
        s.push_str(&factors.join("*"));
    }
    s
}

pub fn format_field(x: &VectorField) -> String {
    format!("{} ; {}", format(&x.f), format(&x.g))
}

pub fn format_quaternion(q: &Quaternion) -> String {
    q.to_string()
}

pub fn format_matrix(m: &[[Quaternion; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_field(self))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = word_factors(self);
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}
