//! Small dense-matrix helpers over [`Scalar`]. Matrices are row-major
//! `Vec<Vec<T>>`; vectors are plain `Vec<T>`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Matrix<T> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Matrix<T> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix product dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut acc = T::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc + row[k].clone() * b[k][j].clone();
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Scalar>(a: &[Vec<T>], v: &[T]) -> Vec<T> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

/// `rows · G · rowsᵀ`, the Gram matrix of vectors given in the basis of `G`.
pub fn congruence<T: Scalar>(rows: &[Vec<T>], g: &[Vec<T>]) -> Matrix<T> {
    let rg = mat_mul(rows, g);
    let n = rows.len();
    let mut out = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = dot(&rg[i], &rows[j]);
            out[j][i] = v.clone();
            out[i][j] = v;
        }
    }
    out
}

/// Fraction-free Gaussian elimination. Returns the determinant together with
/// the leading principal minors encountered as pivots; the minors list stops
/// early at the first vanishing pivot.
pub fn bareiss<T: Scalar>(m: &[Vec<T>]) -> (T, Vec<T>) {
    let n = m.len();
    if n == 0 {
        return (T::one(), Vec::new());
    }
    let mut a: Matrix<T> = m.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    let mut minors = Vec::with_capacity(n);
    let mut leading_ok = true;
    for k in 0..n {
        if a[k][k].is_zero() {
            leading_ok = false;
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return (T::zero(), minors),
            }
        }
        if leading_ok {
            minors.push(a[k][k].clone());
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    (sign * a[n - 1][n - 1].clone(), minors)
}

pub fn determinant<T: Scalar>(m: &[Vec<T>]) -> T {
    bareiss(m).0
}

/// Exact inverse over the rationals; `None` for singular input.
pub fn rational_inverse<T: Scalar>(m: &[Vec<T>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| x.to_rational()).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let d = &f * &a[c][j];
                    a[r][j] = &a[r][j] - d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse<T: Scalar>(m: &[Vec<T>]) -> Option<Matrix<T>> {
    let inv = rational_inverse(m)?;
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|x| if x.is_integer() { T::from_bigint(&x.to_integer()) } else { None })
                .collect()
        })
        .collect()
}
