//! Isometry search by backtracking over images of a reduced basis.
//!
//! Candidate images are the vectors of the first lattice whose norm matches
//! the corresponding diagonal entry. Before searching, each candidate is
//! filtered by a fingerprint in the spirit of Plesken–Souvignier: for every
//! basis position `k` it must see the same number of norm-`G₂[k][k]` vectors at
//! pairing `G₂[i][k]` as the basis vector it replaces. When there are many
//! short vectors the fingerprint only counts those of the smallest basis norm,
//! which keeps its cost linear in the number of candidates. During the search
//! the remaining domains are pruned by the partial Gram agreement.

use std::collections::HashMap;

use super::matrix::{dot, mat_mul, transpose, Matrix};
use super::GramLattice;
use crate::scalar::Scalar;

/// Above this many short vectors the fingerprint is restricted to the
/// smallest norm.
const FULL_PROFILE_LIMIT: usize = 2000;

pub fn find_isometry<T: Scalar>(l1: &GramLattice<T>, l2: &GramLattice<T>) -> Option<Matrix<T>> {
    let n = l1.rank();
    if n != l2.rank() || l1.discriminant() != l2.discriminant() {
        return None;
    }
    let red2 = l2.lll();
    let g2 = &red2.gram;
    let bound = (0..n).map(|i| g2[i][i].clone()).max()?;
    let red1 = l1.lll();
    let r1 = GramLattice::from_trusted(red1.gram.clone());
    let r2 = GramLattice::from_trusted(g2.clone());
    if r1.norm_counts(&bound) != r2.norm_counts(&bound) {
        return None;
    }
    let v1 = r1.short_vectors(&bound);
    let v2 = r2.short_vectors(&bound);
    let n1: Vec<T> = v1.iter().map(|v| r1.pair(v, v)).collect();
    let n2: Vec<T> = v2.iter().map(|v| r2.pair(v, v)).collect();

    let min_norm = (0..n).map(|i| g2[i][i].clone()).min()?;
    let restrict = v1.len() > FULL_PROFILE_LIMIT;
    let counted = |nu: &T| !restrict || *nu == min_norm;
    let profile = |vs: &[Vec<T>], ns: &[T], f: &[T]| -> HashMap<(T, T), usize> {
        let mut m = HashMap::new();
        for (u, nu) in vs.iter().zip(ns).filter(|(_, nu)| counted(nu)) {
            *m.entry((nu.clone(), dot(u, f))).or_insert(0) += 1;
        }
        m
    };
    let unit = |i: usize| -> Vec<T> {
        let mut e = vec![T::zero(); n];
        e[i] = T::one();
        e
    };
    // Fingerprint of basis vector i of the second lattice.
    let fp2: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let prof = profile(&v2, &n2, &r2.functional(&unit(i)));
            (0..n).map(|k| prof.get(&(g2[k][k].clone(), g2[i][k].clone())).copied().unwrap_or(0)).collect()
        })
        .collect();

    // Candidates ordered by ascending norm, then lexicographically.
    let mut order: Vec<usize> = (0..v1.len()).collect();
    order.sort_by(|&a, &b| n1[a].cmp(&n1[b]).then_with(|| v1[a].cmp(&v1[b])));
    let funcs1: Vec<Vec<T>> = v1.iter().map(|v| r1.functional(v)).collect();
    let mut profiles: HashMap<usize, HashMap<(T, T), usize>> = HashMap::new();
    let mut domains: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut dom = Vec::new();
        for &c in order.iter().filter(|&&c| n1[c] == g2[i][i]) {
            let prof = profiles.entry(c).or_insert_with(|| profile(&v1, &n1, &funcs1[c]));
            let matches = (0..n).filter(|&k| counted(&g2[k][k])).all(|k| {
                prof.get(&(g2[k][k].clone(), g2[i][k].clone())).copied().unwrap_or(0) == fp2[i][k]
            });
            if matches {
                dom.push(c);
            }
        }
        if dom.is_empty() {
            return None;
        }
        domains.push(dom);
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let images = search(&v1, &funcs1, g2, domains, &mut chosen)?;
    // Rows: images of the reduced basis of l2 in reduced coordinates of l1.
    let rows: Matrix<T> = images.iter().map(|&c| v1[c].clone()).collect();
    // Back to original coordinates: image of reduced b2_i in l1 coordinates.
    let rows = mat_mul(&rows, &red1.basis);
    // Original basis of l2 is inverse · reduced basis.
    let rows = mat_mul(&red2.inverse, &rows);
    let u = transpose(&rows);
    debug_assert_eq!(mat_mul(&mat_mul(&transpose(&u), l1.gram()), &u), *l2.gram());
    Some(u)
}

fn search<T: Scalar>(
    v1: &[Vec<T>],
    funcs1: &[Vec<T>],
    g2: &Matrix<T>,
    domains: Vec<Vec<usize>>,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let i = chosen.len();
    let n = g2.len();
    if i == n {
        return Some(chosen.clone());
    }
    for &c in &domains[i] {
        // Forward check: prune every later domain against this choice.
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(n);
        next.extend(domains[..=i].iter().cloned());
        let mut ok = true;
        for k in i + 1..n {
            let d: Vec<usize> = domains[k]
                .iter()
                .copied()
                .filter(|&u| u != c && dot(&v1[u], &funcs1[c]) == g2[i][k])
                .collect();
            if d.is_empty() {
                ok = false;
                break;
            }
            next.push(d);
        }
        if !ok {
            continue;
        }
        chosen.push(c);
        if let Some(r) = search(v1, funcs1, g2, next, chosen) {
            return Some(r);
        }
        chosen.pop();
    }
    None
}

