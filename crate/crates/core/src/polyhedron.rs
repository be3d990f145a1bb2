//! Exact feasibility of small systems `A·x ≤ b`, `x ≥ 0` over the rationals,
//! by phase one of the simplex method with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One inequality `coeffs · x ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

impl Inequality {
    pub fn le(coeffs: Vec<i64>, rhs: i64) -> Self {
        Inequality { coeffs, rhs }
    }

    pub fn ge(coeffs: Vec<i64>, rhs: i64) -> Self {
        Inequality { coeffs: coeffs.into_iter().map(|c| -c).collect(), rhs: -rhs }
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A rational point satisfying every inequality with `x ≥ 0`, or `None` if
/// the system is infeasible.
pub fn feasible_point(dim: usize, rows: &[Inequality]) -> Option<Vec<BigRational>> {
    let m = rows.len();
    // Columns: x (dim), slacks (m), artificials (one per row with negative rhs).
    let negative: Vec<usize> = (0..m).filter(|&i| rows[i].rhs < 0).collect();
    let n_art = negative.len();
    let cols = dim + m + n_art;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    let mut basis = vec![0usize; m];
    let mut art_of_row = vec![usize::MAX; m];
    for (k, &i) in negative.iter().enumerate() {
        art_of_row[i] = dim + m + k;
    }
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.coeffs.len(), dim);
        let mut t = vec![BigRational::zero(); cols + 1];
        let sign = if row.rhs < 0 { -1 } else { 1 };
        for (c, &a) in row.coeffs.iter().enumerate() {
            t[c] = q(sign * a);
        }
        t[dim + i] = q(sign);
        t[cols] = q(sign * row.rhs);
        if row.rhs < 0 {
            t[art_of_row[i]] = BigRational::one();
            basis[i] = art_of_row[i];
        } else {
            basis[i] = dim + i;
        }
        tab.push(t);
    }
    // Objective: minimise the sum of artificials, stored as reduced costs.
    let mut obj = vec![BigRational::zero(); cols + 1];
    for &i in &negative {
        for c in 0..=cols {
            if c < dim + m || c == cols {
                obj[c] = &obj[c] - &tab[i][c];
            }
        }
    }
    tab.push(obj);
    loop {
        let enter = (0..cols).find(|&c| tab[m][c].is_negative());
        let Some(enter) = enter else { break };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][cols] / &tab[i][enter];
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        let cur = &tab[l][cols] / &tab[l][enter];
                        if ratio < cur || (ratio == cur && basis[i] < basis[l]) {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        let leave = leave.expect("phase one objective is bounded below");
        pivot(&mut tab, leave, enter);
        basis[leave] = enter;
    }
    if !tab[m][cols].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); dim];
    for (i, &b) in basis.iter().enumerate() {
        if b < dim {
            x[b] = tab[i][cols].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<BigRational>], r: usize, c: usize) {
    let p = tab[r][c].clone();
    for v in tab[r].iter_mut() {
        *v = &*v / &p;
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v = &*v - &f * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_systems() {
        // x + y ≤ 1, x ≥ 2 is infeasible.
        let rows = vec![Inequality::le(vec![1, 1], 1), Inequality::ge(vec![1, 0], 2)];
        assert!(feasible_point(2, &rows).is_none());
        // x + y ≤ 3, x ≥ 2, y ≥ 1 is feasible at (2, 1).
        let rows = vec![Inequality::le(vec![1, 1], 3), Inequality::ge(vec![1, 0], 2), Inequality::ge(vec![0, 1], 1)];
        let p = feasible_point(2, &rows).unwrap();
        assert_eq!(p, vec![q(2), q(1)]);
        // Degenerate but feasible.
        let rows = vec![Inequality::le(vec![1, -1], 0), Inequality::le(vec![-1, 1], 0), Inequality::ge(vec![1, 1], 4)];
        let p = feasible_point(2, &rows).unwrap();
        assert_eq!(&p[0] + &p[1] >= q(4), true);
        assert_eq!(p[0], p[1]);
    }
}
