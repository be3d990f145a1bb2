//! Exhaustive enumeration of E8-changemakers with a tail of fixed length.
//!
//! For each changemaker tail `σ` the search runs over dual coordinates `s*`
//! inside the box cut out by the necessary inequalities (see
//! [`bound_violations`](super::bound_violations)), visiting `s*₁, s*₅, …, s*₈,
//! s*₂, s*₃` in nested loops and `s*₄` innermost. Root pairings are maintained
//! incrementally; at the innermost level the set of values is assembled as a
//! bitset from three shifted pieces (roots with `e₄`-coefficient 0, 1, 2) and
//! scanned for a forbidden gap.

use std::thread;

use super::{gaps_ok, is_changemaker_unchecked, Tau};
use crate::e8::POSITIVE_ROOT_TABLE;
use crate::error::{Error, Result};

/// Default cap on `Σσᵢ²` for enumerated tails.
pub const DEFAULT_NORM_CAP: i64 = 2000;

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Tails with `Σσᵢ²` above this are skipped and reported.
    pub norm_cap: i64,
    /// Restrict to a single tail.
    pub sigma_filter: Option<Vec<i64>>,
    /// Worker threads; results do not depend on it.
    pub jobs: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { norm_cap: DEFAULT_NORM_CAP, sigma_filter: None, jobs: 1 }
    }
}

/// Outcome of an enumeration. `skipped_tails` lists changemaker tails that the
/// norm cap excluded; the result is complete iff it is empty.
#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub taus: Vec<Tau>,
    pub skipped_tails: Vec<Vec<i64>>,
}

impl Enumeration {
    pub fn is_complete(&self) -> bool {
        self.skipped_tails.is_empty()
    }
}

/// All ascending changemaker tails of length `len`, in lexicographic order,
/// split into those within the norm cap and those above it.
pub fn changemaker_tails(len: usize, norm_cap: i64) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut kept = Vec::new();
    let mut skipped = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, cap: i64, cur: &mut Vec<i64>, total: i64, sq: i64, kept: &mut Vec<Vec<i64>>, skipped: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            if sq <= cap {
                kept.push(cur.clone());
            } else {
                skipped.push(cur.clone());
            }
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for x in lo..=total + 1 {
            cur.push(x);
            rec(len, cap, cur, total + x, sq + x * x, kept, skipped);
            cur.pop();
        }
    }
    rec(len, norm_cap, &mut cur, 0, 0, &mut kept, &mut skipped);
    (kept, skipped)
}

/// Nonzero E8-changemakers with `σ ∈ Zⁿ⁺¹` under the default norm cap.
/// A tail excluded by the cap turns the call into [`Error::Partial`].
pub fn enumerate_e8_changemakers(n: i64, sigma_filter: Option<&[i64]>) -> Result<Vec<Tau>> {
    let opts = EnumerateOptions { sigma_filter: sigma_filter.map(|s| s.to_vec()), ..Default::default() };
    enumerate_complete(n, &opts)
}

/// Like [`enumerate_with_options`], but a tail excluded by the norm cap is an
/// error rather than a note in the result.
pub fn enumerate_complete(n: i64, opts: &EnumerateOptions) -> Result<Vec<Tau>> {
    let e = enumerate_with_options(n, opts)?;
    if !e.is_complete() {
        return Err(Error::Partial(format!(
            "{} tails exceed the norm cap {}; {} vectors found below it",
            e.skipped_tails.len(),
            opts.norm_cap,
            e.taus.len()
        )));
    }
    Ok(e.taus)
}

pub fn enumerate_with_options(n: i64, opts: &EnumerateOptions) -> Result<Enumeration> {
    let (tails, skipped) = select_tails(n, opts)?;
    let per_unit = run_units(&tails, opts.jobs, |sigma, s1| {
        let mut found = Vec::new();
        visit_tail(sigma, Some(s1), |s| found.push(*s));
        found
    });
    let mut taus: Vec<Tau> = Vec::new();
    for ((k, _), mut found) in per_unit {
        found.sort_unstable();
        taus.extend(
            found
                .into_iter()
                .filter(|s| s.iter().any(|&x| x != 0))
                .map(|s| Tau::from_parts_unchecked(s, tails[k].clone())),
        );
    }
    Ok(Enumeration { taus, skipped_tails: skipped })
}

/// Number of nonzero E8-changemakers per tail, without storing them.
#[derive(Clone, Debug, Default)]
pub struct Census {
    pub per_tail: Vec<(Vec<i64>, u64)>,
    pub skipped_tails: Vec<Vec<i64>>,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.per_tail.iter().map(|(_, c)| c).sum()
    }
}

pub fn census(n: i64, opts: &EnumerateOptions) -> Result<Census> {
    let (tails, skipped) = select_tails(n, opts)?;
    let per_unit = run_units(&tails, opts.jobs, |sigma, s1| {
        let mut count = 0u64;
        visit_tail(sigma, Some(s1), |_| count += 1);
        count
    });
    let mut per_tail: Vec<(Vec<i64>, u64)> = tails.iter().map(|t| (t.clone(), 0)).collect();
    for ((k, _), c) in per_unit {
        per_tail[k].1 += c;
    }
    // The zero vector is an E8-changemaker for every tail.
    for entry in per_tail.iter_mut() {
        entry.1 -= 1;
    }
    Ok(Census { per_tail, skipped_tails: skipped })
}

/// Calls `f` on every nonzero E8-changemaker with tail length `n + 1`, tail by
/// tail and within a tail in search order. Single-threaded.
pub fn for_each_e8_changemaker(n: i64, opts: &EnumerateOptions, mut f: impl FnMut(&Tau)) -> Result<Vec<Vec<i64>>> {
    let (tails, skipped) = select_tails(n, opts)?;
    for sigma in &tails {
        visit_tail(sigma, None, |s| {
            if s.iter().any(|&x| x != 0) {
                f(&Tau::from_parts_unchecked(*s, sigma.clone()));
            }
        });
    }
    Ok(skipped)
}

fn select_tails(n: i64, opts: &EnumerateOptions) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    if n < -1 {
        return Err(Error::Invalid("n must be at least -1".into()));
    }
    let len = (n + 1) as usize;
    match &opts.sigma_filter {
        Some(f) => {
            if f.len() != len {
                return Err(Error::Dimension { expected: len, got: f.len() });
            }
            super::check_tail(f)?;
            if !is_changemaker_unchecked(f) {
                return Err(Error::Invalid(format!("{f:?} is not a changemaker")));
            }
            if f.iter().map(|x| x * x).sum::<i64>() > opts.norm_cap {
                Ok((Vec::new(), vec![f.clone()]))
            } else {
                Ok((vec![f.clone()], Vec::new()))
            }
        }
        None => Ok(changemaker_tails(len, opts.norm_cap)),
    }
}

/// The `(tail index, s*₁)` work units, in output order.
fn units_of(tails: &[Vec<i64>]) -> Vec<(usize, i64)> {
    tails
        .iter()
        .enumerate()
        .flat_map(|(k, t)| (0..=t.iter().sum::<i64>() + 1).map(move |s1| (k, s1)))
        .collect()
}

/// Runs `work` on every `(tail, s*₁)` unit and returns the results in unit order.
fn run_units<R: Send>(
    tails: &[Vec<i64>],
    jobs: usize,
    work: impl Fn(&[i64], i64) -> R + Sync,
) -> Vec<((usize, i64), R)> {
    let units = units_of(tails);
    run_unit_slice(tails, &units, jobs, &work)
}

fn run_unit_slice<U: Copy + Sync, R: Send>(
    tails: &[Vec<i64>],
    units: &[(usize, U)],
    jobs: usize,
    work: &(impl Fn(&[i64], U) -> R + Sync),
) -> Vec<((usize, U), R)> {
    let jobs = jobs.clamp(1, units.len().max(1));
    if jobs == 1 {
        return units.iter().map(|&(k, u)| ((k, u), work(&tails[k], u))).collect();
    }
    let mut out: Vec<(usize, R)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                scope.spawn(move || {
                    (j..units.len())
                        .step_by(jobs)
                        .map(|i| {
                            let (k, u) = units[i];
                            (i, work(&tails[k], u))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("enumeration worker panicked")).collect()
    });
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(i, r)| (units[i], r)).collect()
}

/// Streams nonzero E8-changemakers in the order of
/// [`enumerate_with_options`] while holding only a few work units in memory.
/// `f` returns `false` to stop early. Returns the tails skipped by the cap.
pub fn stream_e8_changemakers(
    n: i64,
    opts: &EnumerateOptions,
    mut f: impl FnMut(&Tau) -> bool,
) -> Result<Vec<Vec<i64>>> {
    let (tails, skipped) = select_tails(n, opts)?;
    // Units fix (s*₁, s*₂, s*₃). Concatenating them in that order gives the
    // lexicographic order that the per-s*₁ sort produces.
    let units: Vec<(usize, [i64; 3])> = tails
        .iter()
        .enumerate()
        .flat_map(|(k, t)| {
            let b = t.iter().sum::<i64>() + 1;
            (0..=b).flat_map(move |s1| (0..=3 * b).flat_map(move |s2| (0..=2 * b).map(move |s3| (k, [s1, s2, s3]))))
        })
        .collect();
    let work = |sigma: &[i64], prefix: [i64; 3]| {
        let mut found = Vec::new();
        visit_slice(sigma, prefix.map(Some), |s| found.push(*s));
        found.sort_unstable();
        found
    };
    let batch = opts.jobs.max(1) * 16;
    for chunk in units.chunks(batch) {
        for ((k, _), found) in run_unit_slice(&tails, chunk, opts.jobs, &work) {
            for s in found.into_iter().filter(|s| s.iter().any(|&x| x != 0)) {
                if !f(&Tau::from_parts_unchecked(s, tails[k].clone())) {
                    return Ok(skipped);
                }
            }
        }
    }
    Ok(skipped)
}

/// Largest `⟨τ, τ⟩` over E8-changemakers with `n ∈ {−1, 0, 1}`; ties are broken
/// towards the lexicographically smallest `(σ, s*)`.
pub fn max_norm_small_n() -> (i64, Tau) {
    let mut best: Option<(i64, Tau)> = None;
    for n in -1..=1 {
        for_each_e8_changemaker(n, &EnumerateOptions::default(), |t| {
            let p = t.norm();
            let better = match &best {
                None => true,
                Some((bp, bt)) => p > *bp || (p == *bp && (t.sigma(), t.s_star()) < (bt.sigma(), bt.s_star())),
            };
            if better {
                best = Some((p, t.clone()));
            }
        })
        .expect("short tails are within the default cap");
    }
    best.expect("nonempty enumeration")
}

/// Positive-root coefficients per coordinate, in table order.
struct RootColumns {
    col: [[i64; 120]; 8],
}

impl RootColumns {
    fn new() -> Self {
        let mut col = [[0i64; 120]; 8];
        for (r, row) in POSITIVE_ROOT_TABLE.iter().enumerate() {
            for c in 0..8 {
                col[c][r] = row[c];
            }
        }
        RootColumns { col }
    }
}

/// Upper bounds on `s*` for the search box.
fn box_bounds(b: i64) -> [i64; 8] {
    [b, 3 * b, 2 * b, 7 * b, b, b, b, b]
}

/// All E8-changemakers for one tail, the zero vector included, collected and
/// sorted by `s*`.
pub fn search_tail(sigma: &[i64], only_s1: Option<i64>) -> Vec<Tau> {
    let mut found = Vec::new();
    visit_tail(sigma, only_s1, |s| found.push(*s));
    found.sort_unstable();
    found.into_iter().map(|s| Tau::from_parts_unchecked(s, sigma.to_vec())).collect()
}

/// Calls `f` with `s*` for every E8-changemaker `(s, σ)` with the given tail,
/// the zero vector included. With `only_s1` the search is restricted to one
/// value of `s*₁`.
pub fn visit_tail(sigma: &[i64], only_s1: Option<i64>, f: impl FnMut(&[i64; 8])) {
    visit_slice(sigma, [only_s1, None, None], f)
}

/// `lo..=hi`, or just `v` when `only = Some(v)` lies in that range.
fn pick(lo: i64, hi: i64, only: Option<i64>) -> std::ops::RangeInclusive<i64> {
    match only {
        Some(v) if lo <= v && v <= hi => v..=v,
        Some(_) => 1..=0,
        None => lo..=hi,
    }
}

/// [`visit_tail`] restricted to fixed values of any of `s*₁, s*₂, s*₃`.
fn visit_slice(sigma: &[i64], only: [Option<i64>; 3], mut f: impl FnMut(&[i64; 8])) {
    assert!(is_changemaker_unchecked(sigma));
    let total: i64 = sigma.iter().sum();
    let top = sigma.last().copied().unwrap_or(0);
    let b = total + 1;
    let rc = RootColumns::new();
    let bounds = box_bounds(b);
    let max_val: i64 = (0..8).map(|c| rc.col[c].iter().max().unwrap() * bounds[c]).sum();
    let words = (max_val as usize) / 64 + 2;

    let add = |base: &[i64; 120], c: usize, v: i64| -> [i64; 120] {
        let mut out = *base;
        if v != 0 {
            for r in 0..120 {
                out[r] += rc.col[c][r] * v;
            }
        }
        out
    };
    let mut bits0 = vec![0u64; words];
    let mut bits1 = vec![0u64; words];
    let mut bits2 = vec![0u64; words];
    let mut x = vec![0u64; words];
    let zero = [0i64; 120];
    for s1 in pick(0, b, only[0]) {
        let p1 = add(&zero, 0, s1);
        for s5 in 0..=b {
            let p5 = add(&p1, 4, s5);
            for s6 in 0..=b {
                let p6 = add(&p5, 5, s6);
                for s7 in 0..=b {
                    let p7 = add(&p6, 6, s7);
                    for s8 in 0..=b {
                        let p8 = add(&p7, 7, s8);
                        let tail_sum = s5 + s6 + s7 + s8;
                        let s2_max = (3 * b).min(s5 + 2 * s6 + 2 * s7 + s8 + b).max(b);
                        for s2 in pick(0, s2_max, only[1]) {
                            let p2 = add(&p8, 1, s2);
                            let s3_max = if s2 > b {
                                b
                            } else {
                                (2 * b).min(s2 + b).min(tail_sum + b).max(b)
                            };
                            for s3 in pick(0, s3_max, only[2]) {
                                let p3 = add(&p2, 2, s3);
                                let mut s4_min = 0;
                                let mut s4_max = (7 * b).min((s1 + s2 + tail_sum + b).max(b));
                                if s2 > b {
                                    if s2 > s3 + b {
                                        s4_max = s4_max.min(b);
                                    }
                                    s4_min = (s2 - s3 - b).max(0);
                                    s4_max = s4_max.min((s1 + tail_sum + b).max(b));
                                }
                                if s4_min > s4_max {
                                    continue;
                                }
                                for w in bits0.iter_mut().chain(bits1.iter_mut()).chain(bits2.iter_mut()) {
                                    *w = 0;
                                }
                                bits0[0] |= 1;
                                for r in 0..120 {
                                    let v = p3[r] as usize;
                                    let target = match rc.col[3][r] {
                                        0 => &mut bits0,
                                        1 => &mut bits1,
                                        _ => &mut bits2,
                                    };
                                    target[v >> 6] |= 1u64 << (v & 63);
                                }
                                for s4 in s4_min..=s4_max {
                                    x.copy_from_slice(&bits0);
                                    or_shifted(&mut x, &bits1, s4 as usize);
                                    or_shifted(&mut x, &bits2, 2 * s4 as usize);
                                    if bitset_gaps_ok(&x, total, top) {
                                        f(&[s1, s2, s3, s4, s5, s6, s7, s8]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift >> 6;
    let bs = shift & 63;
    let n = dst.len();
    if ws >= n {
        return;
    }
    if bs == 0 {
        for i in (ws..n).rev() {
            dst[i] |= src[i - ws];
        }
    } else {
        for i in (ws..n).rev() {
            let lo = src[i - ws] << bs;
            let hi = if i > ws { src[i - ws - 1] >> (64 - bs) } else { 0 };
            dst[i] |= lo | hi;
        }
    }
}

/// The gap test of [`is_e8_changemaker_fast`](super::is_e8_changemaker_fast)
/// on a bitset of values.
fn bitset_gaps_ok(x: &[u64], total: i64, top: i64) -> bool {
    let limit = total + 1;
    let exempt = total + top + 1;
    let mut prev: i64 = -1;
    for (wi, &w) in x.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let v = (wi as i64) * 64 + w.trailing_zeros() as i64;
            if prev >= 0 && v - prev > limit && v > exempt {
                return false;
            }
            prev = v;
            w &= w - 1;
        }
    }
    true
}

/// Reference implementation: every `s*` in the generous box
/// `[b, 3b, 2b, 7b, b, b, b, b]`, `b = |σ|₁ + 1`, tested one by one without any
/// use of the inequalities. Slow; kept for cross-checking the pruned search.
pub fn search_tail_unpruned(sigma: &[i64], scale: i64) -> Vec<Tau> {
    let total: i64 = sigma.iter().sum();
    let top = sigma.last().copied().unwrap_or(0);
    let b = total + 1;
    let bounds = box_bounds(b).map(|x| x * scale);
    let mut out = Vec::new();
    let mut s = [0i64; 8];
    loop {
        let mut vals: Vec<i64> = POSITIVE_ROOT_TABLE.iter().map(|r| crate::e8::pair_simple_dual(r, &s)).collect();
        vals.push(0);
        vals.sort_unstable();
        if gaps_ok(&vals, total, top) {
            out.push(Tau::from_parts_unchecked(s, sigma.to_vec()));
        }
        let mut i = 7;
        loop {
            if s[i] < bounds[i] {
                s[i] += 1;
                break;
            }
            s[i] = 0;
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
        }
    }
}
