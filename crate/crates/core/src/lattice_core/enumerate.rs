//! Fincke–Pohst enumeration of lattice points in an ellipsoid.
//!
//! The `LDLᵀ` factorisation is computed exactly over the rationals and only then
//! rounded to `f64`. Coordinate ranges are widened by a small slack so that no
//! point inside the ellipsoid can be missed; callers re-check every candidate
//! with exact integer arithmetic.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::scalar::Scalar;

/// `Q(x) = Σᵢ dᵢ·(xᵢ + Σ_{j>i} μᵢⱼ·xⱼ)²`.
#[derive(Clone, Debug)]
pub struct Ldl {
    pub d: Vec<f64>,
    pub mu: Vec<Vec<f64>>,
}

impl Ldl {
    pub fn new<T: Scalar>(gram: &[Vec<T>]) -> Ldl {
        let n = gram.len();
        let mut a: Vec<Vec<BigRational>> =
            gram.iter().map(|r| r.iter().map(|x| x.to_rational()).collect()).collect();
        let mut d = vec![0.0; n];
        let mut mu = vec![vec![0.0; n]; n];
        for i in 0..n {
            let piv = a[i][i].clone();
            assert!(!piv.is_zero(), "Gram matrix is not positive definite");
            d[i] = piv.to_f64().unwrap_or(f64::INFINITY);
            let row: Vec<BigRational> = (0..n).map(|j| if j > i { &a[i][j] / &piv } else { BigRational::zero() }).collect();
            for j in i + 1..n {
                mu[i][j] = row[j].to_f64().unwrap_or(0.0);
            }
            for k in i + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for l in k..n {
                    let v = &a[k][l] - &f * &row[l];
                    a[k][l] = v.clone();
                    a[l][k] = v;
                }
            }
        }
        Ldl { d, mu }
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

/// Calls `visit` for every integer `z` with `Q(z − center) ≤ bound` (up to the
/// floating slack). Enumeration order is deterministic but unspecified.
pub fn enumerate_ellipsoid(ldl: &Ldl, center: &[f64], bound: f64, mut visit: impl FnMut(&[i64])) {
    let n = ldl.rank();
    if n == 0 {
        visit(&[]);
        return;
    }
    let slack = 1e-7 * (1.0 + bound.abs());
    let bound = bound + slack;
    if bound < 0.0 {
        return;
    }
    let mut z = vec![0i64; n];
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    let mut rem = vec![0.0f64; n + 1];
    let mut ctr = vec![0.0f64; n];
    rem[n] = bound;

    let setup = |i: usize, z: &[i64], rem: &[f64], ctr: &mut [f64], lo: &mut [i64], hi: &mut [i64]| -> bool {
        let mut c = center[i];
        for j in i + 1..n {
            c -= ldl.mu[i][j] * (z[j] as f64 - center[j]);
        }
        ctr[i] = c;
        let r = rem[i + 1];
        if r < 0.0 {
            return false;
        }
        let w = (r / ldl.d[i]).sqrt() + 1e-9;
        lo[i] = (c - w).ceil() as i64;
        hi[i] = (c + w).floor() as i64;
        lo[i] <= hi[i]
    };

    let mut i = n - 1;
    if !setup(i, &z, &rem, &mut ctr, &mut lo, &mut hi) {
        return;
    }
    z[i] = lo[i];
    loop {
        if z[i] > hi[i] {
            if i == n - 1 {
                return;
            }
            i += 1;
            z[i] += 1;
            continue;
        }
        let t = z[i] as f64 - ctr[i];
        rem[i] = rem[i + 1] - ldl.d[i] * t * t;
        if i == 0 {
            if rem[0] >= -slack {
                visit(&z);
            }
            z[0] += 1;
            continue;
        }
        i -= 1;
        if setup(i, &z, &rem, &mut ctr, &mut lo, &mut hi) {
            z[i] = lo[i];
        } else {
            i += 1;
            z[i] += 1;
        }
    }
}
