//! Row-style Hermite normal form and integer kernels.


use super::matrix::{identity, Matrix};
use crate::scalar::Scalar;

/// Brings `rows` to row echelon form using unimodular row operations, applying
/// the same operations to `companion` (same number of rows). Returns the rank.
/// Pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`, so the nonzero rows form the Hermite normal form.
fn echelon<T: Scalar>(rows: &mut Matrix<T>, companion: &mut Matrix<T>) -> usize {
    let m = rows.len();
    let cols = if m == 0 { 0 } else { rows[0].len() };
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        loop {
            // Smallest nonzero entry in this column at or below row r.
            let mut best: Option<usize> = None;
            for i in r..m {
                if !rows[i][c].is_zero() {
                    match best {
                        Some(b) if rows[b][c].abs() <= rows[i][c].abs() => {}
                        _ => best = Some(i),
                    }
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            if !companion.is_empty() {
                companion.swap(r, b);
            }
            let mut done = true;
            for i in r + 1..m {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                sub_row(rows, i, r, &q);
                sub_row(companion, i, r, &q);
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            negate_row(rows, r);
            negate_row(companion, r);
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                sub_row(rows, i, r, &q);
                sub_row(companion, i, r, &q);
            }
        }
        r += 1;
    }
    r
}

fn sub_row<T: Scalar>(m: &mut Matrix<T>, target: usize, source: usize, q: &T) {
    if m.is_empty() || q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(src) {
        if !s.is_zero() {
            *x = x.clone() - q.clone() * s;
        }
    }
}

fn negate_row<T: Scalar>(m: &mut Matrix<T>, r: usize) {
    if m.is_empty() {
        return;
    }
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Hermite normal form of the row lattice generated by `rows`; only the
/// nonzero rows are returned, so the result is a basis of that lattice.
pub fn row_hnf<T: Scalar>(rows: &[Vec<T>]) -> Matrix<T> {
    let mut a = rows.to_vec();
    let mut none: Matrix<T> = Vec::new();
    let rank = echelon(&mut a, &mut none);
    a.truncate(rank);
    a
}

/// A basis of `{x ∈ Zⁿ : M·x = 0}` for an `m × n` matrix `M`, computed from the
/// unimodular transform that puts `Mᵀ` into Hermite normal form.
pub fn integer_kernel<T: Scalar>(m: &[Vec<T>], n: usize) -> Matrix<T> {
    let mut t: Matrix<T> = (0..n).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect();
    let mut u = identity::<T>(n);
    let rank = echelon(&mut t, &mut u);
    u.split_off(rank)
}
