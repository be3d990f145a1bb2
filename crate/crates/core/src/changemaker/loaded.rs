//! Pairings of short E8 vectors against loaded extension-set vectors.
//!
//! A loaded vector has E8 part `w = −eⱼ + r` with `j ∈ {2, 3, 4}`. For every
//! shape of `r` that the construction of the extension set can produce, and
//! every `z` of norm 2 or 4 meeting the numeric hypothesis of a clause, the
//! negation of the clause's conclusion is added to the conditions under which
//! the shape arises. The resulting linear system in `(s*₁, …, s*₈, |σ|₁)` must
//! have no rational solution. Conditions are refined lazily: a case is first
//! tried with the coarse conditions and only split into the exact branching
//! of the construction when that is not enough.

use std::fmt;

use num_rational::BigRational;

use crate::e8::{self, E8Vector};
use crate::polyhedron::{feasible_point, Inequality};

const DIM: usize = 9;

/// A case whose conclusion could not be certified, with a rational point that
/// satisfies all the conditions together with the negated conclusion.
#[derive(Clone, Debug)]
pub struct LoadedViolation {
    pub clause: u8,
    /// 1-based index of the loaded vector.
    pub j: usize,
    /// Simple-root coordinates.
    pub r: [i64; 8],
    pub z: [i64; 8],
    /// Values of `s*₁, …, s*₈, |σ|₁`.
    pub witness: Vec<BigRational>,
}

impl fmt::Display for LoadedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(|x| x.to_string()).collect();
        write!(f, "clause {} j={} r={:?} z={:?} at ({})", self.clause, self.j, self.r, self.z, w.join(", "))
    }
}

/// Number of `(shape, z)` cases examined per clause, and the failures.
#[derive(Clone, Debug, Default)]
pub struct LoadedReport {
    pub cases: [usize; 3],
    pub violations: Vec<LoadedViolation>,
}

/// Every case of the three clauses; empty when all of them certify.
pub fn check_loaded_pairings() -> Vec<LoadedViolation> {
    loaded_pairings_report().violations
}

pub fn loaded_pairings_report() -> LoadedReport {
    let mut report = LoadedReport::default();
    let short = e8::lattice().short_vectors(&4);
    let positive: Vec<[i64; 8]> = e8::positive_roots().iter().map(|r| r.coords).collect();
    let norm4: Vec<[i64; 8]> =
        short.iter().map(|v| to_arr(v)).filter(|v| E8Vector::from_simple(*v).norm() == 4).collect();
    for shape in loaded_shapes() {
        let w = shape.w();
        for (clause, zs) in [(1u8, &positive), (2, &positive), (3, &norm4)] {
            for z in zs.iter() {
                let wz = add(&w, z);
                let hyp = -pair(&wz, z);
                let wanted = if clause == 1 { 0 } else { -1 };
                if hyp != wanted {
                    continue;
                }
                report.cases[(clause - 1) as usize] += 1;
                let negation = negated_conclusion(clause, z, &wz);
                if let Some(witness) = shape.find_counterexample(&negation) {
                    report.violations.push(LoadedViolation { clause, j: shape.j, r: shape.r, z: *z, witness });
                }
            }
        }
    }
    report
}

fn to_arr(v: &[i64]) -> [i64; 8] {
    let mut a = [0; 8];
    a.copy_from_slice(v);
    a
}

fn add(a: &[i64; 8], b: &[i64; 8]) -> [i64; 8] {
    std::array::from_fn(|i| a[i] + b[i])
}

fn pair(a: &[i64; 8], b: &[i64; 8]) -> i64 {
    E8Vector::from_simple(*a).pairing(&E8Vector::from_simple(*b))
}

fn unit(i: usize) -> [i64; 8] {
    let mut e = [0; 8];
    e[i] = 1;
    e
}

/// Coefficients of `⟨v, s⟩ + c·|σ|₁` for `v` in simple-root coordinates.
fn form(v: &[i64; 8], c: i64) -> Vec<i64> {
    let mut out = v.to_vec();
    out.push(c);
    out
}

fn coord(i: usize) -> [i64; 8] {
    unit(i)
}

/// `⟨v, s⟩ ≤ k·|σ|₁ + c`.
fn le(v: &[i64; 8], k: i64, c: i64) -> Inequality {
    Inequality::le(form(v, -k), c)
}

/// `⟨v, s⟩ ≥ k·|σ|₁ + c`.
fn ge(v: &[i64; 8], k: i64, c: i64) -> Inequality {
    Inequality::ge(form(v, -k), c)
}

fn negated_conclusion(clause: u8, z: &[i64; 8], wz: &[i64; 8]) -> Vec<Inequality> {
    match clause {
        1 => vec![le(z, 1, 1)],
        2 => vec![ge(z, 0, 1), le(z, 1, 1), le(wz, 0, 0)],
        _ => {
            let cap = if E8Vector::from_simple(*wz).norm() == 2 { -1 } else { 0 };
            vec![ge(z, 0, 1), le(z, 1, 1), le(wz, 0, cap)]
        }
    }
}

/// A disjunction of conjunctions.
type Dnf = Vec<Vec<Inequality>>;

fn and(a: &Dnf, b: &Dnf) -> Dnf {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut c = x.clone();
            c.extend(y.iter().cloned());
            out.push(c);
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Shape {
    j: usize,
    r: [i64; 8],
    /// Conditions that hold whenever this shape arises.
    coarse: Vec<Inequality>,
    /// Exact branching of the construction, used when the coarse conditions
    /// do not suffice.
    exact: Dnf,
}

impl Shape {
    fn w(&self) -> [i64; 8] {
        let mut w = self.r;
        w[self.j - 1] -= 1;
        w
    }

    fn find_counterexample(&self, negation: &[Inequality]) -> Option<Vec<BigRational>> {
        let bounds = bound_branches(self.j);
        let mut coarse = self.coarse.clone();
        coarse.extend(negation.iter().cloned());
        let coarse_cases = and(&bounds, &vec![coarse]);
        let open: Vec<&Vec<Inequality>> =
            coarse_cases.iter().filter(|c| feasible_point(DIM, c).is_some()).collect();
        if open.is_empty() {
            return None;
        }
        for c in open {
            for e in &self.exact {
                let mut sys = c.clone();
                sys.extend(e.iter().cloned());
                if let Some(p) = feasible_point(DIM, &sys) {
                    return Some(p);
                }
            }
        }
        None
    }
}

/// Necessary inequalities on `s*` split by which of `s*₂, s*₃, s*₄` exceed
/// `|σ|₁ + 1`; the loaded index is always among them.
fn bound_branches(j: usize) -> Dnf {
    let mut out = Vec::new();
    for mask in 0..8u8 {
        let big = |k: usize| mask & (1 << (k - 2)) != 0;
        if !big(j) || (big(2) && big(3)) {
            continue;
        }
        let mut sys = Vec::new();
        for i in [0, 4, 5, 6, 7] {
            sys.push(le(&coord(i), 1, 1));
        }
        for k in 2..=4 {
            if big(k) {
                sys.push(ge(&coord(k - 1), 1, 2));
            } else {
                sys.push(le(&coord(k - 1), 1, 1));
            }
        }
        let v = |pairs: &[(usize, i64)]| -> [i64; 8] {
            let mut a = [0; 8];
            for &(i, c) in pairs {
                a[i - 1] += c;
            }
            a
        };
        if big(2) {
            sys.push(le(&v(&[(2, 1), (3, -1), (4, -1)]), 1, 1));
            sys.push(le(&v(&[(2, 1), (5, -1), (6, -2), (7, -2), (8, -1)]), 1, 1));
        }
        if big(3) {
            sys.push(le(&v(&[(3, 1), (2, -1)]), 1, 1));
            sys.push(le(&v(&[(3, 1), (5, -1), (6, -1), (7, -1), (8, -1)]), 1, 1));
        }
        if big(4) {
            sys.push(le(&v(&[(4, 1), (1, -1), (2, -1), (5, -1), (6, -1), (7, -1), (8, -1)]), 1, 1));
        }
        if big(2) && big(4) {
            sys.push(le(&v(&[(2, 1), (3, -1)]), 1, 1));
            sys.push(le(&v(&[(4, 1), (1, -1), (5, -1), (6, -1), (7, -1), (8, -1)]), 1, 1));
        }
        out.push(sys);
    }
    out
}

/// The E8 part must be changeable by the tail: `−(|σ|₁+1) ≤ ⟨w, s⟩ ≤ 0`.
fn changeable(w: &[i64; 8]) -> Vec<Inequality> {
    vec![ge(w, -1, -1), le(w, 0, 0)]
}

fn loaded_shapes() -> Vec<Shape> {
    let e = unit;
    let mut shapes = Vec::new();
    let mut push = |j: usize, r: [i64; 8], mut coarse: Vec<Inequality>, exact: Dnf| {
        let mut w = r;
        w[j - 1] -= 1;
        coarse.extend(changeable(&w));
        shapes.push(Shape { j, r, coarse, exact });
    };
    // w₃ = −e₃ + e₂ + …
    push(3, e(1), vec![], vec![vec![]]);
    // w₂ = −e₂ + e₄ + … when s*₃ = 0.
    push(2, e(3), vec![le(&e(2), 0, 0)], vec![vec![]]);
    // w₂ = −e₂ + e₃ + … when s*₃ > 0 and (s*₄ = 0 or s*₂ < s*₃ + s*₄).
    let d234 = [0, 1, -1, -1, 0, 0, 0, 0];
    push(2, e(2), vec![ge(&e(2), 0, 1)], vec![vec![le(&e(3), 0, 0)], vec![le(&d234, 0, -1)]]);
    // w₂ = −e₂ + e₃ + e₄ + … when s*₃, s*₄ > 0 and s*₂ ≥ s*₃ + s*₄.
    push(2, add(&e(2), &e(3)), vec![ge(&e(2), 0, 1), ge(&e(3), 0, 1), ge(&d234, 0, 0)], vec![vec![]]);
    // w₄ by the stepwise recipe.
    for with_e2 in [false, true] {
        for k in 0..=5 {
            if !with_e2 && k == 0 {
                continue;
            }
            let (r, exact) = w4_branches(with_e2, k);
            let coarse = if with_e2 {
                vec![ge(&e(1), 0, 1), le(&e(1), 1, 1)]
            } else {
                vec![]
            };
            push(4, r, coarse, exact);
        }
    }
    shapes
}

const CHAIN: [usize; 5] = [0, 4, 5, 6, 7];

/// Root `r` and exact conditions for the recipe ending with `e₂` present or
/// not and the first `k` members of `(e₁, e₅, e₆, e₇, e₈)` added.
fn w4_branches(with_e2: bool, k: usize) -> ([i64; 8], Dnf) {
    let mut w = [0i64; 8];
    w[3] = -1;
    let mut cond: Dnf = if with_e2 {
        w[1] += 1;
        vec![vec![ge(&unit(1), 0, 1), le(&unit(1), 1, 1)]]
    } else {
        vec![vec![le(&unit(1), 0, 0)], vec![ge(&unit(1), 1, 2)]]
    };
    // `⟨w, s⟩ < ⟨w + eᵢ, s⟩ ≤ 0`.
    let rises = |w: &[i64; 8], i: usize| -> Vec<Inequality> { vec![ge(&unit(i), 0, 1), le(&add(w, &unit(i)), 0, 0)] };
    for t in 0..=k.min(4) {
        let candidates: Vec<usize> =
            if E8Vector::from_simple(w).norm() == 4 { CHAIN[t..].to_vec() } else { vec![CHAIN[t]] };
        if t < k {
            let step: Dnf = candidates.iter().map(|&i| rises(&w, i)).collect();
            cond = and(&cond, &step);
            w[CHAIN[t]] += 1;
        } else {
            // None of the candidates rises.
            for &i in &candidates {
                let alt: Dnf = vec![vec![le(&unit(i), 0, 0)], vec![ge(&add(&w, &unit(i)), 0, 1)]];
                cond = and(&cond, &alt);
            }
        }
    }
    let mut r = w;
    r[3] += 1;
    (r, cond)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_are_roots_of_the_right_norm() {
        for s in loaded_shapes() {
            let r = E8Vector::from_simple(s.r);
            assert_eq!(r.norm(), 2, "{:?}", s.r);
            assert!(s.r.iter().all(|&c| c >= 0));
            assert_eq!(E8Vector::from_simple(s.w()).norm(), 4, "{:?}", s.r);
        }
    }

    #[test]
    fn every_shape_can_arise() {
        for s in loaded_shapes() {
            let arises = s.exact.iter().any(|e| {
                bound_branches(s.j).iter().any(|l| {
                    let mut sys = l.clone();
                    sys.extend(s.coarse.iter().cloned());
                    sys.extend(e.iter().cloned());
                    feasible_point(DIM, &sys).is_some()
                })
            });
            assert!(arises, "j={} r={:?}", s.j, s.r);
        }
    }

    #[test]
    fn a_weaker_conclusion_is_refuted() {
        // Drop the last alternative of clause (2): some case must then fail.
        let mut refuted = false;
        for s in loaded_shapes() {
            let w = s.w();
            for r in e8::positive_roots() {
                let z = r.coords;
                let wz = add(&w, &z);
                if -pair(&wz, &z) == -1 {
                    let negation = vec![ge(&z, 0, 1), le(&z, 1, 1)];
                    refuted |= s.find_counterexample(&negation).is_some();
                }
            }
        }
        assert!(refuted);
    }
}
