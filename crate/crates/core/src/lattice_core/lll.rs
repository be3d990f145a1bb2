//! LLL reduction driven by a floating-point Gram–Schmidt process while every
//! basis change is applied exactly to the integer Gram matrix.
//!
//! Rounding in the floating-point part can only make the output less reduced,
//! never wrong: the returned Gram matrix is always `B·G·Bᵀ` for the returned
//! unimodular `B`.


use super::matrix::{identity, Matrix};
use crate::scalar::Scalar;

/// Result of a reduction. Row `i` of `basis` expresses the `i`-th reduced basis
/// vector in the original basis; `inverse` is its integer inverse.
#[derive(Clone, Debug)]
pub struct Reduced<T> {
    pub gram: Matrix<T>,
    pub basis: Matrix<T>,
    pub inverse: Matrix<T>,
}

const DELTA: f64 = 0.99;

pub fn lll_gram<T: Scalar>(gram: &[Vec<T>]) -> Reduced<T> {
    let n = gram.len();
    let mut g: Matrix<T> = gram.to_vec();
    let mut b = identity::<T>(n);
    let mut binv = identity::<T>(n);
    if n <= 1 {
        return Reduced { gram: g, basis: b, inverse: binv };
    }
    let mut mu = vec![vec![0.0f64; n]; n];
    let mut bs = vec![0.0f64; n];
    let gs_row = |g: &Matrix<T>, mu: &mut Vec<Vec<f64>>, bs: &mut Vec<f64>, k: usize| {
        for j in 0..k {
            let mut v = g[k][j].to_f64_lossy();
            for l in 0..j {
                v -= mu[j][l] * mu[k][l] * bs[l];
            }
            mu[k][j] = v / bs[j];
        }
        let mut v = g[k][k].to_f64_lossy();
        for l in 0..k {
            v -= mu[k][l] * mu[k][l] * bs[l];
        }
        bs[k] = v;
    };
    gs_row(&g, &mut mu, &mut bs, 0);
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 10_000_000, "LLL failed to terminate");
        gs_row(&g, &mut mu, &mut bs, k);
        for j in (0..k).rev() {
            let r = mu[k][j].round();
            if r != 0.0 {
                let rt = T::int(r as i64);
                reduce(&mut g, &mut b, &mut binv, k, j, &rt);
                for l in 0..j {
                    mu[k][l] -= r * mu[j][l];
                }
                mu[k][j] -= r;
            }
        }
        gs_row(&g, &mut mu, &mut bs, k);
        if bs[k] < (DELTA - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1] {
            swap(&mut g, &mut b, &mut binv, k);
            if k > 1 {
                k -= 1;
            } else {
                gs_row(&g, &mut mu, &mut bs, 0);
            }
        } else {
            k += 1;
        }
    }
    Reduced { gram: g, basis: b, inverse: binv }
}

/// b_k ← b_k − r·b_j.
fn reduce<T: Scalar>(g: &mut Matrix<T>, b: &mut Matrix<T>, binv: &mut Matrix<T>, k: usize, j: usize, r: &T) {
    let n = g.len();
    let gkj = g[k][j].clone();
    let gjj = g[j][j].clone();
    for l in 0..n {
        if l != k {
            let v = g[k][l].clone() - r.clone() * g[j][l].clone();
            g[k][l] = v.clone();
            g[l][k] = v;
        }
    }
    // ⟨b_k − r b_j, b_k − r b_j⟩ = g_kk − 2r g_kj + r² g_jj, with g_kj the old value.
    g[k][k] = g[k][k].clone() - (r.clone() + r.clone()) * gkj + r.clone() * r.clone() * gjj;
    let bj = b[j].clone();
    for (x, y) in b[k].iter_mut().zip(bj) {
        if !y.is_zero() {
            *x = x.clone() - r.clone() * y;
        }
    }
    for row in binv.iter_mut() {
        let v = row[k].clone();
        if !v.is_zero() {
            row[j] = row[j].clone() + r.clone() * v;
        }
    }
}

fn swap<T: Scalar>(g: &mut Matrix<T>, b: &mut Matrix<T>, binv: &mut Matrix<T>, k: usize) {
    g.swap(k, k - 1);
    for row in g.iter_mut() {
        row.swap(k, k - 1);
    }
    b.swap(k, k - 1);
    for row in binv.iter_mut() {
        row.swap(k, k - 1);
    }
}
