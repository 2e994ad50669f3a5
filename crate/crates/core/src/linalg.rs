//! Small dense linear algebra: exact over the rationals, plus a numeric rank.

use nalgebra::DMatrix;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::quat::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `a x = b` for square `a` and several right-hand sides (columns of
/// `b`) by fraction-free Bareiss elimination followed by back substitution.
pub fn solve_bareiss(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    let mut m: Matrix = a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb).cloned().collect()).collect();
    let mut prev = Rational::one();
    for p in 0..n {
        let Some(piv) = (p..n).find(|&i| !m[i][p].is_zero()) else {
            return Err(Error::Singular);
        };
        m.swap(p, piv);
        for i in p + 1..n {
            for j in p + 1..n + k {
                let v = (&m[p][p] * &m[i][j] - &m[i][p] * &m[p][j]) / &prev;
                m[i][j] = v;
            }
            m[i][p] = Rational::zero();
        }
        prev = m[p][p].clone();
    }
    let mut x = zeros(n, k);
    for col in 0..k {
        for i in (0..n).rev() {
            let mut acc = m[i][n + col].clone();
            for j in i + 1..n {
                acc -= &m[i][j] * &x[j][col];
            }
            x[i][col] = acc / &m[i][i];
        }
    }
    Ok(x)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `target` minus its orthogonal projection onto the row span of `span`.
pub fn projection_residual(span: &Matrix, target: &[Rational]) -> Vec<Rational> {
    let mut basis = span.clone();
    let r = rref(&mut basis).len();
    basis.truncate(r);
    if basis.is_empty() {
        return target.to_vec();
    }
    let gram: Matrix = basis.iter().map(|u| basis.iter().map(|v| dot(u, v)).collect()).collect();
    let rhs: Matrix = basis.iter().map(|u| vec![dot(u, target)]).collect();
    let coef = solve_bareiss(&gram, &rhs).expect("independent rows have an invertible Gram matrix");
    let mut res = target.to_vec();
    for (c, u) in coef.iter().zip(&basis) {
        for (x, y) in res.iter_mut().zip(u) {
            *x -= &c[0] * y;
        }
    }
    res
}

/// Whether every row of `b` lies in the row span of `a`.
pub fn row_span_contains(a: &Matrix, b: &Matrix) -> bool {
    let mut joined = a.clone();
    joined.extend(b.iter().cloned());
    rank(a) == rank(&joined)
}

/// Numeric rank: singular values above `rel_tol` times the largest one.
pub fn numeric_rank(rows: &[Vec<f64>], rel_tol: f64) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn vandermonde_solve() {
        // nodes 0, -1, -2; rows are powers q = 0, 1, 2
        let a = m(&[&[1, 1, 1], &[0, -1, -2], &[0, 1, 4]]);
        let b = m(&[&[0], &[0], &[1]]);
        let x = solve_bareiss(&a, &b).unwrap();
        assert_eq!(x, vec![vec![rat(1, 2)], vec![int(-1)], vec![rat(1, 2)]]);
        assert_eq!(solve_bareiss(&m(&[&[1, 1], &[1, 1]]), &m(&[&[1], &[0]])), Err(Error::Singular));
    }

    #[test]
    fn projection() {
        let span = m(&[&[1, 0, 1]]);
        let res = projection_residual(&span, &[int(1), int(0), int(-1)]);
        assert_eq!(res, vec![int(1), int(0), int(-1)]);
        let res = projection_residual(&span, &[int(1), int(0), int(0)]);
        assert_eq!(res, vec![rat(1, 2), int(0), rat(-1, 2)]);
        assert!(row_span_contains(&span, &m(&[&[2, 0, 2]])));
        assert!(!row_span_contains(&span, &m(&[&[1, 0, 0]])));
    }

    #[test]
    fn numeric() {
        assert_eq!(numeric_rank(&[vec![1.0, 2.0], vec![2.0, 4.0]], 1e-9), 1);
        assert_eq!(numeric_rank(&[vec![1.0, 0.0], vec![0.0, 1.0]], 1e-9), 2);
    }
}
