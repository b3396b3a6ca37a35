//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};

pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

/// Reduced row echelon form in place. Returns the pivot columns in order.
/// Pivots are chosen as the first nonzero entry scanning columns left to right.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
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

/// Basis of the right nullspace `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A solution of `m x = b` with free variables set to zero, if one exists.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (a, pivots) = bareiss_echelon(integer_rows(&aug));
    if pivots.last().is_some_and(|&(_, c)| c == cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for &(r, pc) in pivots.iter().rev() {
        let mut acc = Rational::from_integer(a[r][cols].clone());
        for j in pc + 1..cols {
            if !a[r][j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from_integer(a[r][j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Rational::from_integer(a[r][pc].clone());
    }
    Some(x)
}

/// Fraction-free row echelon form; returns the matrix and its `(row, column)` pivots.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                row[j] = if v.is_zero() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    (a, pivots)
}

/// Rows scaled to primitive integer vectors (rank and row space unchanged).
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let d = rational::common_denominator(row.iter());
            row.iter()
                .map(|q| (q * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination with first-nonzero pivoting.
pub fn rank(m: &Matrix) -> usize {
    bareiss_echelon(integer_rows(m)).1.len()
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let denoms: Vec<BigInt> = m
        .iter()
        .map(|row| rational::common_denominator(row.iter()))
        .collect();
    let mut a = integer_rows(m);
    // each row was multiplied by its common denominator
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let scale = denoms.iter().fold(BigInt::one(), |acc, d| acc * d);
    let det = Rational::new(a[n - 1][n - 1].clone(), scale);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Greedy pivot positions (row, column) from Gaussian elimination with
/// first-nonzero pivoting, in elimination order.
pub fn pivot_positions(m: &Matrix) -> Vec<(usize, usize)> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..rows).collect();
    let mut out = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        order.swap(r, p);
        let piv = a[r][c].clone();
        let pivot_row = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &piv;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        out.push((order[r], c));
        r += 1;
    }
    out
}

pub fn submatrix(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
