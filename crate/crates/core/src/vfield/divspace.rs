//! Brute-force description of all fields of a given degree that have a
//! divergence, and the closed-form generator family it should match.

use std::collections::BTreeMap;

use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bidegree::{random_quaternion_f, s_poly_signed, words};
use crate::calc::div_op;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::ncalg::{Bindings, Letter, NCPoly, Unit, VectorField, Word};
use crate::quat::{int, Quaternion, Rational};

/// Largest degree accepted by [`divergence_space_basis`].
pub const DIVSPACE_MAX_DEGREE: usize = 6;

/// One real unknown: component (0 = f, 1 = g), letter word, terminal unit.
type Unknown = (usize, Word, Unit);

fn unknown_field(u: &Unknown) -> VectorField {
    let (comp, w, unit) = u;
    let mut units = vec![Unit::One; w.degree() + 1];
    units[w.degree()] = *unit;
    let p = NCPoly::term(Word::new(w.letters().to_vec(), units), int(1));
    if *comp == 0 {
        VectorField { f: p, g: NCPoly::zero() }
    } else {
        VectorField { f: NCPoly::zero(), g: p }
    }
}

fn unknowns(comp: usize, p: usize, q: usize) -> Vec<Unknown> {
    words(p, q).into_iter().flat_map(|w| Unit::ALL.into_iter().map(move |u| (comp, w.clone(), u))).collect()
}

/// Constraint coordinates of one unknown: for `u = i, j, k` the words of
/// `E(u) - u E(1)`, and with `zero_div` also the words of `E(1)`.
fn constraints(x: &VectorField, zero_div: bool) -> BTreeMap<(usize, Word), Rational> {
    let e = div_op(x);
    let e1 = e.substitute_quat(Letter::H1, &Quaternion::one());
    let mut out = BTreeMap::new();
    for (k, u) in Unit::IMAGINARY.into_iter().enumerate() {
        let r = &e.substitute_quat(Letter::H1, &u.to_quaternion()) - &e1.unit_mul_left(u);
        for (w, c) in r.terms() {
            out.insert((k, w.clone()), c.clone());
        }
    }
    if zero_div {
        for (w, c) in e1.terms() {
            out.insert((3, w.clone()), c.clone());
        }
    }
    out
}

fn block_nullspace(cols: &[Unknown], zero_div: bool) -> Vec<VectorField> {
    let columns: Vec<BTreeMap<(usize, Word), Rational>> = cols.iter().map(|u| constraints(&unknown_field(u), zero_div)).collect();
    let mut row_index: BTreeMap<(usize, Word), usize> = BTreeMap::new();
    for col in &columns {
        for key in col.keys() {
            let n = row_index.len();
            row_index.entry(key.clone()).or_insert(n);
        }
    }
    let mut m: Matrix = linalg::zeros(row_index.len(), cols.len());
    for (j, col) in columns.iter().enumerate() {
        for (key, c) in col {
            m[row_index[key]][j] = c.clone();
        }
    }
    linalg::nullspace(&m, cols.len())
        .into_iter()
        .map(|v| v.iter().zip(cols).filter(|(c, _)| !c.is_zero()).map(|(c, u)| unknown_field(u).scale(c)).sum())
        .collect()
}

fn space_basis(d: usize, zero_div: bool) -> Result<Vec<VectorField>> {
    if d > DIVSPACE_MAX_DEGREE {
        return Err(Error::InvalidArgument(format!("degree {d} exceeds the bound {DIVSPACE_MAX_DEGREE}")));
    }
    let mut out = Vec::new();
    // f-words without z and g-words without w never reach the divergence
    for u in unknowns(0, 0, d).into_iter().chain(unknowns(1, d, 0)) {
        out.push(unknown_field(&u));
    }
    // block (p, q): f-words of bidegree (p+1, q) and g-words of bidegree (p, q+1)
    if d > 0 {
        for p in 0..d {
            let q = d - 1 - p;
            let mut cols = unknowns(0, p + 1, q);
            cols.extend(unknowns(1, p, q + 1));
            out.extend(block_nullspace(&cols, zero_div));
        }
    }
    Ok(out)
}

/// Real basis of all homogeneous degree-`d` fields in right-coefficient form
/// that have a divergence, from the exact nullspace of the left-linearity
/// conditions.
pub fn divergence_space_basis(d: usize) -> Result<Vec<VectorField>> {
    space_basis(d, false)
}

/// Real basis of the divergence-free subspace.
pub fn divergence_zero_basis(d: usize) -> Result<Vec<VectorField>> {
    space_basis(d, true)
}

/// Quaternionic generators of degree `d`:
/// `z (S_{p,q}, -S_{p-1,q+1})` and `w (S_{p+1,q-1}, -S_{p,q})` for
/// `p + q = d - 1`, `p, q >= 0` (an `S` with a negative index is 0), plus
/// `(w^d, 0)` and `(0, z^d)`.
pub fn c1_generators(d: usize) -> Vec<VectorField> {
    let mut out = Vec::new();
    let (z, w) = (NCPoly::z(), NCPoly::w());
    if d > 0 {
        for p in 0..d as i64 {
            let q = d as i64 - 1 - p;
            out.push(VectorField { f: &z * &s_poly_signed(p, q), g: -(&z * &s_poly_signed(p - 1, q + 1)) });
        }
        for q in 0..d as i64 {
            let p = d as i64 - 1 - q;
            out.push(VectorField { f: &w * &s_poly_signed(p + 1, q - 1), g: -(&w * &s_poly_signed(p, q)) });
        }
    }
    out.push(VectorField { f: w.pow(d as u32), g: NCPoly::zero() });
    out.push(VectorField { f: NCPoly::zero(), g: z.pow(d as u32) });
    out
}

/// Each field times `1, i, j, k`: a real spanning set of the right
/// quaternionic span.
pub fn real_span(fields: &[VectorField]) -> Vec<VectorField> {
    fields.iter().flat_map(|x| Unit::ALL.into_iter().map(move |u| x.mul_quat_right(&u.to_quaternion()))).collect()
}

/// Coordinates of several families of fields in one shared word index.
pub fn field_coordinates(families: &[&[VectorField]]) -> Vec<Matrix> {
    let mut index: BTreeMap<(usize, Word), usize> = BTreeMap::new();
    for fam in families {
        for x in fam.iter() {
            for (comp, p) in x.components().into_iter().enumerate() {
                for (w, _) in p.terms() {
                    let n = index.len();
                    index.entry((comp, w.clone())).or_insert(n);
                }
            }
        }
    }
    families
        .iter()
        .map(|fam| {
            fam.iter()
                .map(|x| {
                    let mut row = vec![Rational::zero(); index.len()];
                    for (comp, p) in x.components().into_iter().enumerate() {
                        for (w, c) in p.terms() {
                            row[index[&(comp, w.clone())]] = c.clone();
                        }
                    }
                    row
                })
                .collect()
        })
        .collect()
}

/// Right-quaternionic rank of `polys` as functions, estimated from their
/// values at `trials` random points (real rank of the left-multiplication
/// embedding, divided by 4).
pub fn linear_independence_as_functions(polys: &[NCPoly], trials: usize, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for _ in 0..trials {
        let at = Bindings::zw(random_quaternion_f(&mut rng), random_quaternion_f(&mut rng));
        let values = polys.iter().map(|p| p.eval(&at)).collect::<Result<Vec<_>>>()?;
        for r in 0..4 {
            rows.push(values.iter().flat_map(|v| v.left_matrix()[r]).collect());
        }
    }
    let real = linalg::numeric_rank(&rows, 1e-6);
    Ok((real + 2) / 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bidegree::is_bf;
    use crate::calc::has_divergence;
    use crate::expr::parse;

    fn rank_of(fields: &[VectorField]) -> usize {
        linalg::rank(&field_coordinates(&[fields])[0])
    }

    #[test]
    fn degree_one() {
        let basis = divergence_space_basis(1).unwrap();
        let gens = real_span(&c1_generators(1));
        assert_eq!(basis.len(), 16);
        assert_eq!(rank_of(&gens), 16);
        let joint: Vec<VectorField> = basis.iter().chain(&gens).cloned().collect();
        assert_eq!(rank_of(&joint), 16);
        for x in &basis {
            assert!(has_divergence(x).divergence().is_some());
        }
    }

    #[test]
    fn degree_two_matches_generators() {
        let basis = divergence_space_basis(2).unwrap();
        let gens = real_span(&c1_generators(2));
        let joint: Vec<VectorField> = basis.iter().chain(&gens).cloned().collect();
        assert_eq!(rank_of(&basis), rank_of(&joint));
        assert_eq!(rank_of(&gens), rank_of(&joint));
        for x in divergence_zero_basis(2).unwrap() {
            assert!(is_bf(&x.f).is_ok() && is_bf(&x.g).is_ok());
        }
    }

    #[test]
    fn independence() {
        let p = |s: &str| parse(s).unwrap();
        let fam: Vec<NCPoly> = (0..=3).map(|n| &(&NCPoly::z().pow(n) * &NCPoly::w()) * &NCPoly::z().pow(3 - n)).collect();
        assert_eq!(linear_independence_as_functions(&fam, 8, 1).unwrap(), 4);
        assert_eq!(linear_independence_as_functions(&[p("w*z^2"), p("z*w*z"), p("z^2*w")], 6, 2).unwrap(), 3);
        assert_eq!(linear_independence_as_functions(&[p("z*w"), p("z*w")], 6, 3).unwrap(), 1);
        assert!(divergence_space_basis(DIVSPACE_MAX_DEGREE + 1).is_err());
    }
}
