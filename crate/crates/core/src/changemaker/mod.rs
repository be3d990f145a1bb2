//! Changemakers, E8-changemakers and the combinatorics around them.
//!
//! A candidate is `τ = (s, σ) ∈ E8 ⊕ Zⁿ⁺¹`, always held in normal form: `s` in
//! the fundamental Weyl chamber and `σ` nonnegative and ascending. The ambient
//! lattice is positive definite, so the short characteristic vectors are
//! `{0} ⊕ {±1}ⁿ⁺¹` and the nearly short ones are `{2R} ⊕ {±1}ⁿ⁺¹` together with
//! `{0} ⊕` (one entry `±3`, the rest `±1`).

pub mod enumerate;
pub mod loaded;

use std::fmt;

use crate::e8::{self, E8Vector};
use crate::error::{Error, Result};
use crate::lattice_core::GramLattice;

pub use enumerate::{
    census, changemaker_tails, enumerate_e8_changemakers, enumerate_with_options, for_each_e8_changemaker,
    max_norm_small_n, stream_e8_changemakers, Census, EnumerateOptions, Enumeration, DEFAULT_NORM_CAP,
};
pub use loaded::{check_loaded_pairings, loaded_pairings_report, LoadedReport, LoadedViolation};

/// `PI(a, b) = {a, a+2, …, b}`.
pub fn parity_interval(a: i64, b: i64) -> Result<Vec<i64>> {
    if b < a || (b - a) % 2 != 0 {
        return Err(Error::Invalid(format!("PI({a}, {b}) needs b ≥ a and b ≡ a mod 2")));
    }
    Ok((a..=b).step_by(2).collect())
}

fn check_tail(sigma: &[i64]) -> Result<()> {
    if sigma.iter().any(|&x| x < 0) {
        return Err(Error::Invalid("tail entries must be nonnegative".into()));
    }
    if sigma.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invalid("tail must be sorted ascending".into()));
    }
    Ok(())
}

/// `σᵢ ≤ 1 + Σ_{j<i} σⱼ` for every `i`, including `σ₀ ≤ 1`.
pub fn is_changemaker(sigma: &[i64]) -> Result<bool> {
    check_tail(sigma)?;
    Ok(is_changemaker_unchecked(sigma))
}

pub(crate) fn is_changemaker_unchecked(sigma: &[i64]) -> bool {
    let mut total = 0i64;
    for &x in sigma {
        if x > total + 1 {
            return false;
        }
        total += x;
    }
    true
}

/// A normalised vector `τ = (s, σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tau {
    s_star: [i64; 8],
    sigma: Vec<i64>,
}

impl Tau {
    /// Normalises an arbitrary presentation: Weyl-reduces `s`, replaces tail
    /// entries by absolute values and sorts them.
    pub fn new(s: E8Vector, sigma: Vec<i64>) -> Tau {
        let (r, _) = e8::weyl_reduce(&s);
        let mut sigma: Vec<i64> = sigma.into_iter().map(i64::abs).collect();
        sigma.sort_unstable();
        Tau { s_star: r.dual(), sigma }
    }

    /// As [`Tau::new`] with `s` given by dual coordinates.
    pub fn from_dual(s_star: [i64; 8], sigma: Vec<i64>) -> Tau {
        Tau::new(E8Vector::from_dual(s_star), sigma)
    }

    /// Builds from data already in normal form.
    pub fn normalized(s_star: [i64; 8], sigma: Vec<i64>) -> Result<Tau> {
        if s_star.iter().any(|&x| x < 0) {
            return Err(Error::Invalid("s is not in the fundamental Weyl chamber".into()));
        }
        check_tail(&sigma)?;
        Ok(Tau { s_star, sigma })
    }

    pub(crate) fn from_parts_unchecked(s_star: [i64; 8], sigma: Vec<i64>) -> Tau {
        Tau { s_star, sigma }
    }

    pub fn s_star(&self) -> [i64; 8] {
        self.s_star
    }

    pub fn s(&self) -> E8Vector {
        E8Vector::from_dual(self.s_star)
    }

    pub fn sigma(&self) -> &[i64] {
        &self.sigma
    }

    /// `n` with `σ ∈ Zⁿ⁺¹`; `−1` for an empty tail.
    pub fn n(&self) -> i64 {
        self.sigma.len() as i64 - 1
    }

    /// `|σ|₁`.
    pub fn sigma_sum(&self) -> i64 {
        self.sigma.iter().sum()
    }

    pub fn s_norm(&self) -> i64 {
        e8::norm_from_dual(&self.s_star)
    }

    /// `p = ⟨τ, τ⟩ = |s| + Σσᵢ²`.
    pub fn norm(&self) -> i64 {
        self.s_norm() + self.sigma.iter().map(|x| x * x).sum::<i64>()
    }

    pub fn is_zero(&self) -> bool {
        self.s_star == [0; 8] && self.sigma.iter().all(|&x| x == 0)
    }

    /// Coordinates in the ambient basis `e₁,…,e₈, d₀,…,d_n`.
    pub fn ambient_vector(&self) -> Vec<i64> {
        let mut v = self.s().simple().to_vec();
        v.extend_from_slice(&self.sigma);
        v
    }

    /// `⟨R, s⟩` for every positive root, in table order.
    pub fn root_pairings(&self) -> Vec<i64> {
        e8::POSITIVE_ROOT_TABLE.iter().map(|r| e8::pair_simple_dual(r, &self.s_star)).collect()
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s*={:?} σ={:?}", self.s_star, self.sigma)
    }
}

/// `E8 ⊕ Zⁿ⁺¹` in the basis `e₁,…,e₈, d₀,…,d_n`.
pub fn ambient_lattice(tail_len: usize) -> GramLattice<i64> {
    let m = 8 + tail_len;
    let mut g = vec![vec![0i64; m]; m];
    for i in 0..8 {
        for j in 0..8 {
            g[i][j] = e8::GRAM[i][j];
        }
    }
    for i in 8..m {
        g[i][i] = 1;
    }
    GramLattice::new(g).expect("ambient lattice is positive definite")
}

/// Pairing sets of `τ` against short and nearly short characteristic vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingProfile {
    /// `c(τ)`, the largest short pairing.
    pub c: i64,
    /// `C(τ)`, the largest nearly short pairing.
    pub big_c: i64,
    /// Pairings with short characteristic vectors, ascending.
    pub short_set: Vec<i64>,
    /// Pairings with nearly short characteristic vectors, ascending.
    pub big_short_set: Vec<i64>,
}

/// Values `Σ εᵢσᵢ` with `εᵢ ∈ {±1}`, plus (when `with_three`) the values where
/// exactly one coefficient is `±3` instead.
fn signed_sums(sigma: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let total: i64 = sigma.iter().sum();
    let off = 3 * total;
    let width = (2 * off + 1) as usize;
    // plain[v] : reachable with all coefficients ±1; three[v] : exactly one ±3.
    let mut plain = vec![false; width];
    let mut three = vec![false; width];
    plain[off as usize] = true;
    for &x in sigma {
        let mut np = vec![false; width];
        let mut nt = vec![false; width];
        for v in 0..width {
            let base = v as i64;
            if plain[v] {
                for d in [x, -x] {
                    np[(base + d) as usize] = true;
                }
                for d in [3 * x, -3 * x] {
                    nt[(base + d) as usize] = true;
                }
            }
            if three[v] {
                for d in [x, -x] {
                    nt[(base + d) as usize] = true;
                }
            }
        }
        plain = np;
        three = nt;
    }
    let collect = |b: &[bool]| -> Vec<i64> {
        b.iter().enumerate().filter(|(_, &t)| t).map(|(v, _)| v as i64 - off).collect()
    };
    (collect(&plain), collect(&three))
}

/// Computes the profile by subset-sum dynamic programming.
pub fn pairing_profile(t: &Tau) -> PairingProfile {
    let (short, threes) = signed_sums(&t.sigma);
    let mut heights: Vec<i64> = vec![0];
    for h in t.root_pairings() {
        heights.push(h);
        heights.push(-h);
    }
    heights.sort_unstable();
    heights.dedup();
    let mut big: Vec<i64> = Vec::with_capacity(heights.len() * short.len() + threes.len());
    for &h in &heights {
        for &m in &short {
            big.push(2 * h + m);
        }
    }
    big.extend_from_slice(&threes);
    big.sort_unstable();
    big.dedup();
    PairingProfile {
        c: *short.iter().max().expect("short set is never empty"),
        big_c: *big.iter().max().expect("nearly short set is never empty"),
        short_set: short,
        big_short_set: big,
    }
}

/// Both defining conditions, checked literally on the profile.
pub fn is_e8_changemaker(t: &Tau) -> bool {
    let prof = pairing_profile(t);
    let c = prof.c;
    if prof.short_set != parity_interval(-c, c).expect("c ≥ 0") {
        return false;
    }
    if prof.big_c < c + 2 {
        return true;
    }
    parity_interval(c + 2, prof.big_c)
        .expect("same parity")
        .into_iter()
        .all(|v| prof.big_short_set.binary_search(&v).is_ok())
}

/// Equivalent fast test used by the enumerator.
///
/// For a changemaker tail, the nearly short pairings above `|σ|₁` that come
/// from a `±3` coefficient fill exactly `PI(|σ|₁+2, |σ|₁+2σ_n)`, and a value
/// `|σ|₁ + 2u` comes from a root `R` exactly when `u ≤ ⟨R, s⟩ ≤ u + |σ|₁`.
/// Condition (2) therefore fails precisely when two consecutive distinct
/// values of `{0} ∪ {⟨R, s⟩}` differ by at least `|σ|₁ + 2` and the larger is at
/// least `|σ|₁ + σ_n + 2`.
pub fn is_e8_changemaker_fast(s_star: &[i64; 8], sigma: &[i64]) -> bool {
    if !is_changemaker_unchecked(sigma) {
        return false;
    }
    let total: i64 = sigma.iter().sum();
    let top = sigma.last().copied().unwrap_or(0);
    let mut vals: Vec<i64> = e8::POSITIVE_ROOT_TABLE.iter().map(|r| e8::pair_simple_dual(r, s_star)).collect();
    vals.push(0);
    vals.sort_unstable();
    gaps_ok(&vals, total, top)
}

pub(crate) fn gaps_ok(sorted: &[i64], total: i64, top: i64) -> bool {
    sorted.windows(2).all(|w| w[1] - w[0] <= total + 1 || w[1] <= total + top + 1)
}

/// One clause of the necessary inequalities on `s*` for an E8-changemaker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundClause {
    /// `s*ᵢ ≤ |σ|₁ + 1` for the given 1-based index `i ∈ {1,5,6,7,8}`.
    Bounded(usize),
    /// `s*₂ ≤ |σ|₁ + 1` or `s*₃ ≤ |σ|₁ + 1`.
    TwoOrThree,
    ThreeA,
    ThreeB,
    FourA,
    FourB,
    Five,
    SixA,
    SixB,
}

impl fmt::Display for BoundClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundClause::Bounded(i) => write!(f, "1(s*{i})"),
            BoundClause::TwoOrThree => write!(f, "2"),
            BoundClause::ThreeA => write!(f, "3a"),
            BoundClause::ThreeB => write!(f, "3b"),
            BoundClause::FourA => write!(f, "4a"),
            BoundClause::FourB => write!(f, "4b"),
            BoundClause::Five => write!(f, "5"),
            BoundClause::SixA => write!(f, "6a"),
            BoundClause::SixB => write!(f, "6b"),
        }
    }
}

/// Violated clauses for dual coordinates `s` and `|σ|₁ = total`.
pub fn bound_violations(s: &[i64; 8], total: i64) -> Vec<BoundClause> {
    let b = total + 1;
    let [s1, s2, s3, s4, s5, s6, s7, s8] = *s;
    let mut out = Vec::new();
    for (i, v) in [(1, s1), (5, s5), (6, s6), (7, s7), (8, s8)] {
        if v > b {
            out.push(BoundClause::Bounded(i));
        }
    }
    if s2 > b && s3 > b {
        out.push(BoundClause::TwoOrThree);
    }
    if s2 > b {
        if s2 > s3 + s4 + b {
            out.push(BoundClause::ThreeA);
        }
        if s2 > s5 + 2 * s6 + 2 * s7 + s8 + b {
            out.push(BoundClause::ThreeB);
        }
    }
    if s3 > b {
        if s3 > s2 + b {
            out.push(BoundClause::FourA);
        }
        if s3 > s5 + s6 + s7 + s8 + b {
            out.push(BoundClause::FourB);
        }
    }
    if s4 > b && s4 > s1 + s2 + s5 + s6 + s7 + s8 + b {
        out.push(BoundClause::Five);
    }
    if s2 > b && s4 > b {
        if s2 > s3 + b {
            out.push(BoundClause::SixA);
        }
        if s4 > s1 + s5 + s6 + s7 + s8 + b {
            out.push(BoundClause::SixB);
        }
    }
    out
}

pub fn violated_bounds(t: &Tau) -> Vec<BoundClause> {
    bound_violations(&t.s_star, t.sigma_sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_intervals() {
        assert_eq!(parity_interval(0, 0).unwrap(), vec![0]);
        assert_eq!(parity_interval(-4, 4).unwrap(), vec![-4, -2, 0, 2, 4]);
        assert_eq!(parity_interval(3, 7).unwrap(), vec![3, 5, 7]);
        assert!(parity_interval(0, 3).is_err());
    }

    #[test]
    fn changemaker_examples() {
        assert!(is_changemaker(&[1, 1, 2]).unwrap());
        assert!(!is_changemaker(&[1, 3]).unwrap());
        assert!(is_changemaker(&[]).unwrap());
        assert!(is_changemaker(&[2, 1]).is_err());
    }

    #[test]
    fn profiles() {
        let t = Tau::normalized([0; 8], vec![1, 1, 2]).unwrap();
        let p = pairing_profile(&t);
        assert_eq!((p.c, p.big_c), (4, 8));
        let r = Tau::new(e8::highest_root().vector(), vec![1]);
        let p = pairing_profile(&r);
        assert_eq!((p.c, p.big_c), (1, 5));
        let t = Tau::normalized([0, 0, 1, 0, 0, 0, 0, 0], vec![]).unwrap();
        let p = pairing_profile(&t);
        assert_eq!((p.c, p.big_c), (0, 8));
    }

    #[test]
    fn e8_changemaker_examples() {
        let t = Tau::normalized([0; 8], vec![1, 1, 2]).unwrap();
        assert!(is_e8_changemaker(&t));
        let r = Tau::new(e8::highest_root().vector(), vec![1]);
        assert_eq!(r.s_star(), [0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(is_e8_changemaker(&r));
        let bad = Tau::normalized([3, 0, 0, 0, 0, 0, 0, 0], vec![1]).unwrap();
        assert!(!is_e8_changemaker(&bad));
        for t in [&r, &bad] {
            assert_eq!(is_e8_changemaker(t), is_e8_changemaker_fast(&t.s_star(), t.sigma()));
        }
    }

    #[test]
    fn bound_examples() {
        assert!(bound_violations(&[0, 1, 3, 0, 0, 0, 0, 0], 2).is_empty());
        assert_eq!(bound_violations(&[3, 0, 0, 0, 0, 0, 0, 0], 1), vec![BoundClause::Bounded(1)]);
        assert!(bound_violations(&[2, 0, 0, 0, 0, 0, 0, 0], 1).is_empty());
    }
}
