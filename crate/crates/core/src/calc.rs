//! Slot derivatives, divergence and rotor.
//!
//! `dhat(p, z, h)` replaces one occurrence of `z` by the hole letter `h` and
//! sums over all occurrences. Div and Rot are sums of such derivatives; a
//! field *has* divergence when `Div X[h]` is left linear in `h`, i.e.
//! `Div X[h] = h * div X`.
//!
//! Every word of `Div X[h]` carries exactly one hole, so `Div X[h]` is real
//! linear in `h`. Left linearity therefore only needs checking on the real
//! basis `1, i, j, k`: with `E(u) = Div X[u]`, the field has divergence iff
//! `E(u) = u E(1)` for `u = i, j, k`, and then `div X = E(1)`.

use std::fmt;

use num::Zero;

use crate::bidegree::{is_bf, s_poly};
use crate::error::{Error, Result};
use crate::ncalg::{Letter, NCPoly, Unit, VectorField, Word};
use crate::quat::{int, Quaternion};

fn check_slot(p: &NCPoly, var: Letter, hole: Letter) -> Result<()> {
    if var.is_hole() {
        return Err(Error::UnexpectedLetter { letter: var, context: "derivative variable must be z or w" });
    }
    if !hole.is_hole() {
        return Err(Error::UnexpectedLetter { letter: hole, context: "hole must be h1 or h2" });
    }
    if p.contains_letter(hole) {
        return Err(Error::HoleOccupied(hole));
    }
    Ok(())
}

/// Replace each occurrence of `var` by `hole`, summed over occurrences,
/// without validating the letters.
fn dhat_raw(p: &NCPoly, var: Letter, hole: Letter) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        for (pos, &l) in w.letters().iter().enumerate() {
            if l != var {
                continue;
            }
            let mut letters = w.letters().to_vec();
            letters[pos] = hole;
            let word = Word::new(letters, w.units().to_vec()).with_central(w.t_power(), w.s_power());
            out.add_term(word, c.clone());
        }
    }
    out
}

/// Slot derivative of `p` in `var` with increment letter `hole`.
pub fn dhat(p: &NCPoly, var: Letter, hole: Letter) -> Result<NCPoly> {
    check_slot(p, var, hole)?;
    Ok(dhat_raw(p, var, hole))
}

/// `dhat` followed by setting the increment to 1.
pub fn dtilde(p: &NCPoly, var: Letter) -> Result<NCPoly> {
    let d = dhat(p, var, Letter::H1)?;
    Ok(d.substitute_quat(Letter::H1, &Quaternion::one()))
}

/// `Div X[h1] = dhat_z f[h1] + dhat_w g[h1]`.
pub fn div_op(x: &VectorField) -> NCPoly {
    &dhat_raw(&x.f, Letter::Z, Letter::H1) + &dhat_raw(&x.g, Letter::W, Letter::H1)
}

/// `Rot X[h1] = -dhat_z g[h1] + dhat_w f[h1]`.
pub fn rot_op(x: &VectorField) -> NCPoly {
    let rot = &dhat_raw(&x.f, Letter::W, Letter::H1) - &dhat_raw(&x.g, Letter::Z, Letter::H1);
    debug_assert_eq!(rot, div_op(&VectorField { f: -&x.g, g: x.f.clone() }));
    rot
}

/// Outcome of the left-linearity test on an expression with one hole per word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Linearity {
    /// `E(h) = h * value`.
    Linear(NCPoly),
    /// `E(unit) - unit * E(1) = residual != 0`.
    NotLeftLinear { unit: Unit, residual: NCPoly },
}

/// Decide whether `expr` (one `h1` per word) equals `h1 * E(1)`.
pub fn left_linearity(expr: &NCPoly) -> Linearity {
    let e1 = expr.substitute_quat(Letter::H1, &Quaternion::one());
    for u in Unit::IMAGINARY {
        let eu = expr.substitute_quat(Letter::H1, &u.to_quaternion());
        let residual = &eu - &e1.unit_mul_left(u);
        if !residual.is_zero() {
            return Linearity::NotLeftLinear { unit: u, residual };
        }
    }
    Linearity::Linear(e1)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DivResult {
    HasDivergence(NCPoly),
    NotLeftLinear { unit: Unit, residual: NCPoly },
}

impl DivResult {
    pub fn divergence(&self) -> Option<&NCPoly> {
        match self {
            DivResult::HasDivergence(d) => Some(d),
            DivResult::NotLeftLinear { .. } => None,
        }
    }

    /// The divergence, or a [`Error::NotLeftLinear`] carrying the witness.
    pub fn into_result(self) -> Result<NCPoly> {
        match self {
            DivResult::HasDivergence(d) => Ok(d),
            DivResult::NotLeftLinear { unit, residual } => {
                Err(Error::NotLeftLinear { unit: unit.symbol(), residual: residual.to_string() })
            }
        }
    }
}

impl fmt::Display for DivResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivResult::HasDivergence(d) => write!(f, "{d}"),
            DivResult::NotLeftLinear { unit, residual } => {
                write!(f, "not left linear: h = {} gives residual {residual}", unit.symbol())
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RotResult {
    HasRotor(NCPoly),
    NotLeftLinear { unit: Unit, residual: NCPoly },
}

impl RotResult {
    pub fn rotor(&self) -> Option<&NCPoly> {
        match self {
            RotResult::HasRotor(r) => Some(r),
            RotResult::NotLeftLinear { .. } => None,
        }
    }

    pub fn into_result(self) -> Result<NCPoly> {
        match self {
            RotResult::HasRotor(r) => Ok(r),
            RotResult::NotLeftLinear { unit, residual } => Err(Error::NoRotor { unit: unit.symbol(), residual: residual.to_string() }),
        }
    }
}

impl fmt::Display for RotResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotResult::HasRotor(r) => write!(f, "{r}"),
            RotResult::NotLeftLinear { unit, residual } => {
                write!(f, "not left linear: h = {} gives residual {residual}", unit.symbol())
            }
        }
    }
}

pub fn has_divergence(x: &VectorField) -> DivResult {
    match left_linearity(&div_op(x)) {
        Linearity::Linear(d) => DivResult::HasDivergence(d),
        Linearity::NotLeftLinear { unit, residual } => DivResult::NotLeftLinear { unit, residual },
    }
}

pub fn has_rotor(x: &VectorField) -> RotResult {
    match left_linearity(&rot_op(x)) {
        Linearity::Linear(r) => RotResult::HasRotor(r),
        Linearity::NotLeftLinear { unit, residual } => RotResult::NotLeftLinear { unit, residual },
    }
}

/// Potential `chi` with `(dtilde_z chi, dtilde_w chi) = X` for a rotor-free
/// field of the form
///
/// `X = sum (S_{p-1,q}, S_{p,q-1}) a_{p,q} + (sum z^p a_p, sum w^q b_q)`.
///
/// The integration constant is 0.
pub fn rotor_potential(x: &VectorField) -> Result<NCPoly> {
    let rot = has_rotor(x).into_result()?;
    if !rot.is_zero() {
        return Err(Error::NonzeroRotor(rot.to_string()));
    }
    let not_normal = |reason: &str, words: Vec<String>| Error::NotNormalForm { reason: reason.to_string(), words };
    let fd = is_bf(&x.f).map_err(|e| not_normal("first component is not bidegree full", e.words()))?;
    let gd = is_bf(&x.g).map_err(|e| not_normal("second component is not bidegree full", e.words()))?;

    let mut chi = NCPoly::zero();
    // mixed part, read off f: S_{p-1,q} a_{p,q} with q >= 1
    for (&(m, n), a) in &fd.coeffs {
        if n == 0 {
            chi += &NCPoly::z().pow(m as u32 + 1).mul_quat_right(&a.scale(&(int(1) / int(m as i64 + 1))));
        } else {
            let (p, q) = (m + 1, n);
            chi += &s_poly(p, q).mul_quat_right(&a.scale(&(int(1) / int((p + q) as i64))));
        }
    }
    let mut mismatched = Vec::new();
    for (&(m, n), b) in &gd.coeffs {
        if m == 0 {
            chi += &NCPoly::w().pow(n as u32 + 1).mul_quat_right(&b.scale(&(int(1) / int(n as i64 + 1))));
        } else {
            // S_{p,q-1} a_{p,q}: must match the coefficient read off f
            let expected = fd.coeffs.get(&(m - 1, n + 1)).cloned().unwrap_or_else(Quaternion::zero);
            if &expected != b {
                mismatched.push(s_poly(m, n).to_string());
            }
        }
    }
    if !mismatched.is_empty() {
        return Err(not_normal("mixed coefficients of the two components disagree", mismatched));
    }

    let back = VectorField { f: dtilde(&chi, Letter::Z)?, g: dtilde(&chi, Letter::W)? };
    if &back != x {
        let diff = &back - x;
        let words = diff.f.terms().chain(diff.g.terms()).map(|(w, _)| w.to_string()).collect();
        return Err(not_normal("potential does not reproduce the field", words));
    }
    debug_assert!(chi.coeff(&Word::one()).is_zero());
    Ok(chi)
}
