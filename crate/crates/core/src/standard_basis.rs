//! The standard basis of an E8-changemaker lattice `(τ)⊥ ⊂ E8 ⊕ Zⁿ⁺¹`.
//!
//! Vectors are written in the ambient basis `e₁, …, e₈, d₀, …, d_n` (simple
//! roots, then the diagonal summand). The basis consists of the changemaker
//! basis `v₁, …, v_n`, which lives in `Zⁿ⁺¹`, and the extension set
//! `w₁, …, w₈`, one vector per simple root.

use std::fmt;

use crate::changemaker::{ambient_lattice, is_changemaker_unchecked, Tau};
use crate::e8::E8Vector;
use crate::error::{Error, Result};
use crate::lattice_core::matrix::{congruence, Matrix};
use crate::lattice_core::GramLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Tight,
    Gappy,
    JustRight,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Tight => "tight",
            Kind::Gappy => "gappy",
            Kind::JustRight => "just_right",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub kind: Kind,
    pub loaded: bool,
    pub gappy_indices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct StandardBasis {
    pub tau: Tau,
    /// `v₁, …, v_n`.
    pub v_list: Vec<Vec<i64>>,
    /// `w₁, …, w₈`.
    pub w_list: Vec<Vec<i64>>,
    /// Classes of `v₁, …, v_n` followed by `w₁, …, w₈`.
    pub classes: Vec<Class>,
}

impl StandardBasis {
    /// `v₁, …, v_n, w₁, …, w₈` as rows.
    pub fn rows(&self) -> Matrix<i64> {
        self.v_list.iter().chain(&self.w_list).cloned().collect()
    }

    /// Gram matrix of [`rows`](Self::rows) in the ambient lattice.
    pub fn gram(&self) -> Matrix<i64> {
        congruence(&self.rows(), ambient_lattice(self.tau.sigma().len()).gram())
    }

    /// Display name of row `k`: `v1`, …, `w8`.
    pub fn label(&self, k: usize) -> String {
        let n = self.v_list.len();
        if k < n {
            format!("v{}", k + 1)
        } else {
            format!("w{}", k - n + 1)
        }
    }
}

/// Largest subset `A ⊆ {0, …, limit−1}` (under the order comparing
/// `Σ_{i∈A} 2ⁱ`) with `Σ_{i∈A} σᵢ = target`, for a changemaker `σ`.
pub fn maximal_subset(sigma: &[i64], limit: usize, target: i64) -> Option<Vec<usize>> {
    let mut prefix = vec![0i64; limit + 1];
    for i in 0..limit {
        prefix[i + 1] = prefix[i] + sigma[i];
    }
    if target < 0 || target > prefix[limit] {
        return None;
    }
    let mut rem = target;
    let mut a = Vec::new();
    for i in (0..limit).rev() {
        // Every value up to a prefix sum of a changemaker is a subset sum.
        if sigma[i] <= rem && rem - sigma[i] <= prefix[i] {
            rem -= sigma[i];
            a.push(i);
        }
    }
    if rem != 0 {
        return None;
    }
    a.reverse();
    Some(a)
}

fn check_input(sigma: &[i64]) -> Result<()> {
    if sigma.len() < 3 {
        return Err(Error::Invalid("the standard basis needs n ≥ 2".into()));
    }
    if sigma[0] != 1 || !is_changemaker_unchecked(sigma) {
        return Err(Error::Invalid(format!("{sigma:?} is not a changemaker with σ₀ = 1")));
    }
    Ok(())
}

/// `v₁, …, v_n` as vectors in `Zⁿ⁺¹`.
pub fn changemaker_basis(sigma: &[i64]) -> Result<Vec<Vec<i64>>> {
    if sigma.len() < 2 || sigma[0] != 1 || !is_changemaker_unchecked(sigma) {
        return Err(Error::Invalid(format!("{sigma:?} is not a changemaker of length ≥ 2 with σ₀ = 1")));
    }
    let m = sigma.len();
    let mut out = Vec::with_capacity(m - 1);
    let mut prefix = sigma[0];
    for j in 1..m {
        let mut v = vec![0i64; m];
        v[j] = -1;
        if sigma[j] == prefix + 1 {
            v[0] += 2;
            for x in v.iter_mut().take(j).skip(1) {
                *x += 1;
            }
        } else {
            let a = maximal_subset(sigma, j, sigma[j]).expect("changemakers make change");
            for i in a {
                v[i] += 1;
            }
        }
        out.push(v);
        prefix += sigma[j];
    }
    Ok(out)
}

fn unit8(i: usize) -> [i64; 8] {
    let mut e = [0; 8];
    e[i] = 1;
    e
}

fn pair_s(v: &[i64; 8], s_star: &[i64; 8]) -> i64 {
    v.iter().zip(s_star).map(|(a, b)| a * b).sum()
}

/// `w₄|_{E8}` by the stepwise recipe, for `s*₄ > |σ|₁ + 1`. Each step tests
/// the vector accumulated so far, and the first failing step ends the chain.
pub fn loaded_w4_e8_part(s_star: &[i64; 8], total: i64) -> [i64; 8] {
    let mut w = [0i64; 8];
    w[3] = -1;
    // Step 1.
    if 0 < s_star[1] && s_star[1] <= total + 1 {
        w[1] += 1;
    }
    // Steps 2–6 add e₁, e₅, e₆, e₇, e₈ in turn.
    const CHAIN: [usize; 5] = [0, 4, 5, 6, 7];
    for t in 0..5 {
        let cur = pair_s(&w, s_star);
        let rises = |i: usize| cur < cur + s_star[i] && cur + s_star[i] <= 0;
        let ahead = E8Vector::from_simple(w).norm() == 4;
        let go = rises(CHAIN[t]) || (ahead && CHAIN[t..].iter().any(|&i| rises(i)));
        if !go {
            break;
        }
        w[CHAIN[t]] += 1;
    }
    w
}

/// `wⱼ|_{E8} = −eⱼ + r` for a loaded index `j`.
fn loaded_e8_part(j: usize, s: &[i64; 8], total: i64) -> Result<[i64; 8]> {
    let b = total + 1;
    let mut w = [0i64; 8];
    match j {
        3 => {
            w[2] = -1;
            w[1] = 1;
        }
        2 => {
            w[1] = -1;
            if s[2] == 0 {
                w[3] = 1;
            } else if s[3] == 0 || s[1] - s[2] - s[3] < 0 {
                w[2] = 1;
            } else {
                w[2] = 1;
                w[3] = 1;
            }
        }
        4 => w = loaded_w4_e8_part(s, total),
        _ => {
            return Err(Error::Invalid(format!("s*{} = {} exceeds {b}; no loaded recipe for this index", j, s[j - 1])))
        }
    }
    Ok(w)
}

/// `w₁, …, w₈`.
pub fn extension_set(t: &Tau) -> Result<Vec<Vec<i64>>> {
    let sigma = t.sigma();
    check_input(sigma)?;
    let s = t.s_star();
    let total = t.sigma_sum();
    let m = sigma.len();
    let mut out = Vec::with_capacity(8);
    for j in 1..=8 {
        let e8_part = if s[j - 1] > total + 1 { loaded_e8_part(j, &s, total)? } else { unit8(j - 1).map(|x| -x) };
        let need = -pair_s(&e8_part, &s);
        let mut v = e8_part.to_vec();
        v.extend(std::iter::repeat(0).take(m));
        if need == total + 1 {
            v[8] = 2;
            for x in v.iter_mut().skip(9) {
                *x = 1;
            }
        } else {
            let a = maximal_subset(sigma, m, need).ok_or_else(|| {
                Error::Invalid(format!("w{j}: E8 part pairs to {} with τ, outside [-{}, 0]", -need, total + 1))
            })?;
            for i in a {
                v[8 + i] += 1;
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Tight, gappy or just right, from the projection onto `Zⁿ⁺¹` of a vector
/// written in the ambient basis. A `vⱼ` is recognised by its `−dⱼ` entry.
pub fn classify(v: &[i64], tail_len: usize) -> Class {
    let tail = &v[v.len() - tail_len..];
    let j = tail.iter().position(|&x| x < 0);
    if tail.first() == Some(&2) {
        return Class { kind: Kind::Tight, loaded: false, gappy_indices: Vec::new() };
    }
    let a: Vec<usize> = (0..tail_len).filter(|&i| tail[i] > 0).collect();
    let in_a = |k: usize| tail.get(k).is_some_and(|&x| x > 0);
    let n = tail_len - 1;
    let gappy_indices: Vec<usize> =
        a.iter().copied().filter(|&k| k < n && !in_a(k + 1) && Some(k + 1) != j).collect();
    let consecutive = a.windows(2).all(|w| w[1] == w[0] + 1);
    let kind = if consecutive { Kind::JustRight } else { Kind::Gappy };
    Class { kind, loaded: false, gappy_indices: if consecutive { Vec::new() } else { gappy_indices } }
}

pub fn standard_basis(t: &Tau) -> Result<StandardBasis> {
    let sigma = t.sigma();
    check_input(sigma)?;
    let m = sigma.len();
    let v_list: Vec<Vec<i64>> = changemaker_basis(sigma)?
        .into_iter()
        .map(|tail| {
            let mut v = vec![0i64; 8];
            v.extend(tail);
            v
        })
        .collect();
    let w_list = extension_set(t)?;
    let s = t.s_star();
    let total = t.sigma_sum();
    let mut classes: Vec<Class> = v_list.iter().map(|v| classify(v, m)).collect();
    for (j, w) in w_list.iter().enumerate() {
        let mut c = classify(w, m);
        c.loaded = s[j] > total + 1;
        classes.push(c);
    }
    Ok(StandardBasis { tau: t.clone(), v_list, w_list, classes })
}

/// A basis of `(τ)⊥` for any `n`: the standard basis when `n ≥ 2` and
/// `σ₀ = 1`, otherwise an LLL-reduced basis of the orthogonal complement.
pub fn complement_basis(t: &Tau) -> Result<(GramLattice<i64>, Matrix<i64>)> {
    if let Ok(sb) = standard_basis(t) {
        let rows = sb.rows();
        return Ok((GramLattice::new(sb.gram())?, rows));
    }
    ambient_lattice(t.sigma().len()).orthogonal_complement(&t.ambient_vector())
}

#[derive(Clone, Debug, Default)]
pub struct BasisReport {
    pub pairs_to_zero: bool,
    pub spans: bool,
    /// Labels of elements that failed irreducibility.
    pub reducible: Vec<String>,
    /// Labels of non-tight elements that are breakable.
    pub breakable: Vec<String>,
    pub tight_v_count: usize,
    pub tight_w_with_tight_v: bool,
    pub loaded_ok: bool,
    pub failures: Vec<String>,
    /// Violated tight-vector conditions. These hold whenever `(τ)⊥` is a sum
    /// of linear lattices but not in general (`σ = (1, 2, 4)` already has two
    /// tight `vᵢ`), so they are kept apart from `failures`.
    pub linear_only: Vec<String>,
}

impl BasisReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// Verdict for a `τ` whose complement is known to be a sum of linear
    /// lattices.
    pub fn pass_if_linear(&self) -> bool {
        self.pass() && self.linear_only.is_empty()
    }
}

/// Checks the arithmetic properties only: pairing with `τ`, span, and the
/// tight and loaded counts. Much cheaper than [`verify_standard_basis`].
/// The tight counts go to `linear_only`.
pub fn verify_structure(sb: &StandardBasis) -> BasisReport {
    let t = &sb.tau;
    let amb = ambient_lattice(t.sigma().len());
    let tv = t.ambient_vector();
    let mut r = BasisReport::default();
    let rows = sb.rows();
    r.pairs_to_zero = rows.iter().all(|v| amb.pairing(v, &tv).map(|x| x == 0).unwrap_or(false));
    if !r.pairs_to_zero {
        r.failures.push("some basis vector does not pair to zero with τ".into());
    }
    let det = crate::lattice_core::matrix::determinant(&sb.gram());
    r.spans = det == t.norm();
    if !r.spans {
        r.failures.push(format!("Gram determinant {det} differs from ⟨τ, τ⟩ = {}", t.norm()));
    }
    let n = sb.v_list.len();
    r.tight_v_count = sb.classes[..n].iter().filter(|c| c.kind == Kind::Tight).count();
    if r.tight_v_count > 1 {
        r.linear_only.push(format!("{} tight vectors in the changemaker basis", r.tight_v_count));
    }
    r.tight_w_with_tight_v = r.tight_v_count > 0 && sb.classes[n..].iter().any(|c| c.kind == Kind::Tight);
    if r.tight_w_with_tight_v {
        r.linear_only.push("a tight vᵢ together with a tight wⱼ".into());
    }
    let loaded: Vec<usize> = (0..8).filter(|&j| sb.classes[n + j].loaded).collect();
    r.loaded_ok = loaded.iter().all(|&j| (1..=3).contains(&j)) && !(loaded.contains(&1) && loaded.contains(&2));
    if !r.loaded_ok {
        let names: Vec<String> = loaded.iter().map(|j| format!("w{}", j + 1)).collect();
        r.failures.push(format!("loaded vectors {}", names.join(", ")));
    }
    r
}

/// All checks, including irreducibility of every element and unbreakability
/// of every non-tight element inside `(τ)⊥`.
pub fn verify_standard_basis(t: &Tau) -> Result<BasisReport> {
    let sb = standard_basis(t)?;
    let mut r = verify_structure(&sb);
    if !r.spans || !r.pairs_to_zero {
        return Ok(r);
    }
    let lat = GramLattice::new(sb.gram())?;
    let k = lat.rank();
    for i in 0..k {
        let mut e = vec![0i64; k];
        e[i] = 1;
        if !lat.is_irreducible(&e)? {
            r.reducible.push(sb.label(i));
        }
        if sb.classes[i].kind != Kind::Tight && lat.is_breakable(&e)? {
            r.breakable.push(sb.label(i));
        }
    }
    if !r.reducible.is_empty() {
        r.failures.push(format!("reducible: {}", r.reducible.join(", ")));
    }
    if !r.breakable.is_empty() {
        r.failures.push(format!("breakable and not tight: {}", r.breakable.join(", ")));
    }
    Ok(r)
}
