//! Invariant suites that back the property claim, including one pass over
//! all `n = 2` E8-changemakers shared by the suites that need it.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use e8cm::changemaker::{
    ambient_lattice, census, enumerate_e8_changemakers, for_each_e8_changemaker, is_changemaker, EnumerateOptions, Tau,
};
use e8cm::lattice_core::GramLattice;
use e8cm::linear::{all_intervals, interval_index, lambda_gram, lens_equivalent};
use e8cm::standard_basis::{standard_basis, verify_standard_basis, verify_structure};
use e8cm::surgery::{alexander_from_torsion, genus_from_tau, torsion_from_alexander, vanishing_torsion_indices};
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x00e8_c0de;

/// Every `STRUCTURE_STRIDE`-th `n = 2` vector gets the arithmetic basis
/// checks, every `FULL_STRIDE`-th the irreducibility checks as well.
pub const STRUCTURE_STRIDE: u64 = 5_000;
pub const FULL_STRIDE: u64 = 500_000;

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

impl SuiteResult {
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        format!("{verdict} {} ({} ms): {}", self.name, self.millis, self.detail)
    }
}

fn timed(name: &'static str, f: impl FnOnce() -> (bool, String)) -> SuiteResult {
    let start = Instant::now();
    let (pass, detail) = f();
    SuiteResult { name, pass, detail, millis: start.elapsed().as_millis() }
}

/// Tally of the basis checks over one class of vectors.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }
}

/// Results of the `n = 2` pass.
#[derive(Clone, Debug, Default)]
pub struct SweepN2 {
    pub per_tail: BTreeMap<Vec<i64>, u64>,
    pub zero_pattern: Tally,
    pub structure: Tally,
    pub full: Tally,
    /// Sampled vectors violating a tight-vector condition that only binds
    /// linear complements.
    pub linear_only: u64,
    /// Vectors with `σ₀ = 0`, for which the standard basis is not defined.
    pub outside_basis_scope: u64,
    pub millis: u128,
}

impl SweepN2 {
    pub fn total(&self) -> u64 {
        self.per_tail.values().sum()
    }
}

fn zero_pattern_ok(t: &Tau) -> bool {
    match (genus_from_tau(t), vanishing_torsion_indices(t)) {
        (Ok(g), Ok(z)) => z == vec![g],
        _ => false,
    }
}

fn run_sweep_n2() -> SweepN2 {
    let start = Instant::now();
    let mut out = SweepN2::default();
    let mut index = 0u64;
    for_each_e8_changemaker(2, &EnumerateOptions::default(), |t| {
        *out.per_tail.entry(t.sigma().to_vec()).or_insert(0) += 1;
        out.zero_pattern.record(zero_pattern_ok(t), || t.to_string());
        if t.sigma()[0] != 1 {
            out.outside_basis_scope += 1;
            return;
        }
        index += 1;
        if index % STRUCTURE_STRIDE == 0 {
            let ok = standard_basis(t).map(|sb| verify_structure(&sb));
            let msg = |ok: &Result<e8cm::standard_basis::BasisReport, e8cm::Error>| match ok {
                Ok(r) => format!("{t}: {}", r.failures.join("; ")),
                Err(e) => format!("{t}: {e}"),
            };
            out.structure.record(ok.as_ref().is_ok_and(|r| r.pass()), || msg(&ok));
            if ok.as_ref().is_ok_and(|r| !r.linear_only.is_empty()) {
                out.linear_only += 1;
            }
        }
        if index % FULL_STRIDE == 0 {
            let ok = verify_standard_basis(t);
            let pass = ok.as_ref().is_ok_and(|r| r.pass());
            out.full.record(pass, || match &ok {
                Ok(r) => format!("{t}: {}", r.failures.join("; ")),
                Err(e) => format!("{t}: {e}"),
            });
        }
    })
    .expect("every tail of length 3 is under the default cap");
    out.millis = start.elapsed().as_millis();
    out
}

/// The `n = 2` pass, computed once per process.
pub fn sweep_n2() -> &'static SweepN2 {
    static CACHE: OnceLock<SweepN2> = OnceLock::new();
    CACHE.get_or_init(run_sweep_n2)
}

/// Census for `n ∈ {−1, 0, 1, 2}` by tail.
pub fn census_by_n() -> BTreeMap<i64, BTreeMap<Vec<i64>, u64>> {
    (-1..=2)
        .map(|n| {
            let c = census(n, &EnumerateOptions::default()).expect("short tails are under the cap");
            (n, c.per_tail.into_iter().collect())
        })
        .collect()
}

fn sorted_tails(len: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for x in cur.last().copied().unwrap_or(0)..=max {
        cur.push(x);
        sorted_tails(len, max, cur, out);
        cur.pop();
    }
}

fn subset_sums_cover(sigma: &[i64]) -> bool {
    let total: i64 = sigma.iter().sum();
    let mut reach = vec![false; total as usize + 1];
    reach[0] = true;
    for &x in sigma {
        for v in (x as usize..=total as usize).rev() {
            reach[v] |= reach[v - x as usize];
        }
    }
    reach.into_iter().all(|r| r)
}

pub fn changemaker_definition() -> SuiteResult {
    timed("changemaker definition vs subset sums", || {
        let mut checked = 0;
        let mut bad = Vec::new();
        for len in 0..=8 {
            let mut tails = Vec::new();
            sorted_tails(len, 6, &mut Vec::new(), &mut tails);
            for sigma in tails {
                checked += 1;
                if is_changemaker(&sigma).ok() != Some(subset_sums_cover(&sigma)) {
                    bad.push(sigma);
                }
            }
        }
        (bad.is_empty(), format!("{checked} tails of length ≤ 8 with entries ≤ 6, {} disagreements", bad.len()))
    })
}

pub fn complement_discriminants() -> SuiteResult {
    timed("disc of the complement equals the norm", || {
        let mut pool = enumerate_e8_changemakers(-1, None).expect("n = -1");
        pool.extend(enumerate_e8_changemakers(0, None).expect("n = 0"));
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut bad = Vec::new();
        let samples = 150;
        for _ in 0..samples {
            let t = &pool[rng.gen_range(0..pool.len())];
            let amb = ambient_lattice(t.sigma().len());
            let ok = amb
                .orthogonal_complement(&t.ambient_vector())
                .map(|(c, _)| c.discriminant() == t.norm())
                .unwrap_or(false);
            if !ok {
                bad.push(t.to_string());
            }
        }
        (bad.is_empty(), format!("{samples} random vectors with n ≤ 0, {} mismatches{}", bad.len(), first(bad.first())))
    })
}

fn lam(p: i64, q: i64) -> GramLattice<i64> {
    GramLattice::new(lambda_gram(p, q).expect("coprime").gram).expect("path Gram matrices are positive definite")
}

fn coprime(a: i64, b: i64) -> bool {
    a.gcd(&b) == 1
}

pub fn isometry_vs_lens() -> SuiteResult {
    timed("isometry iff lens equivalence, p ≤ 30", || {
        let mut pairs = 0;
        let mut bad = Vec::new();
        for p in 2..=30i64 {
            let qs: Vec<i64> = (1..p).filter(|&q| coprime(p, q)).collect();
            let lats: Vec<_> = qs.iter().map(|&q| lam(p, q)).collect();
            for (a, la) in qs.iter().zip(&lats) {
                for (b, lb) in qs.iter().zip(&lats) {
                    pairs += 1;
                    if la.isometric(lb).is_some() != lens_equivalent(p, *a, p, *b) {
                        bad.push((p, *a, *b));
                    }
                }
            }
        }
        (bad.is_empty(), format!("{pairs} ordered pairs, {} disagreements{}", bad.len(), first(bad.first().map(|x| format!("{x:?}")))))
    })
}

pub fn irreducibles_are_intervals() -> SuiteResult {
    timed("irreducible vectors are intervals, p ≤ 30", || {
        let mut lattices = 0;
        let mut bad = Vec::new();
        for p in 2..=30i64 {
            for q in (1..p).filter(|&q| coprime(p, q)) {
                let ll = lambda_gram(p, q).expect("coprime");
                let n = ll.norms.len();
                let bound = all_intervals(n).iter().map(|t| t.norm(&ll.norms)).max().unwrap_or(0) + 1;
                let mut found = lam(p, q).irreducible_vectors(&bound);
                found.sort();
                let mut expected: Vec<Vec<i64>> = interval_index(n).into_keys().collect();
                expected.sort();
                lattices += 1;
                if found != expected {
                    bad.push((p, q));
                }
            }
        }
        (bad.is_empty(), format!("{lattices} lattices, {} mismatches{}", bad.len(), first(bad.first().map(|x| format!("{x:?}")))))
    })
}

fn first<S: AsRef<str>>(example: Option<S>) -> String {
    example.map(|e| format!(", first at {}", e.as_ref())).unwrap_or_default()
}

pub fn standard_basis_n2() -> SuiteResult {
    timed("standard basis checks, n = 2", || {
        let s = sweep_n2();
        let detail = format!(
            "{} vectors with σ₀ = 1 ({} with σ₀ = 0 are outside the basis construction); \
             arithmetic checks on every {}th: {}/{} failed{}; \
             irreducibility checks on every {}th: {}/{} failed{}; \
             {} sampled vectors break a tight-vector condition that only binds linear complements",
            s.total() - s.outside_basis_scope,
            s.outside_basis_scope,
            STRUCTURE_STRIDE,
            s.structure.failed,
            s.structure.checked,
            first(s.structure.first_failure.as_ref()),
            FULL_STRIDE,
            s.full.failed,
            s.full.checked,
            first(s.full.first_failure.as_ref()),
            s.linear_only,
        );
        (s.structure.failed == 0 && s.full.failed == 0, detail)
    })
}

/// A random torsion sequence of an L-space knot: Alexander coefficients are
/// ±1 with alternating signs and leading coefficient 1.
fn random_realizable_torsion(rng: &mut StdRng) -> Vec<i64> {
    let steps = rng.gen_range(0..30);
    let gaps: Vec<usize> = (0..steps).map(|_| rng.gen_range(1..4)).collect();
    let g = 1 + gaps.iter().sum::<usize>();
    let mut a = vec![0i64; g + 1];
    let (mut deg, mut sign) = (g, 1);
    a[deg] = sign;
    for step in gaps {
        deg -= step;
        sign = -sign;
        a[deg] = sign;
    }
    a[0] = 1 - 2 * a[1..].iter().sum::<i64>();
    torsion_from_alexander(&a).expect("symmetric with Δ(1) = 1")
}

pub fn alexander_round_trip() -> SuiteResult {
    timed("Alexander/torsion round trip", || {
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut bad = 0;
        let samples = 1000;
        for _ in 0..samples {
            let t = random_realizable_torsion(&mut rng);
            let ok = alexander_from_torsion(&t).and_then(|a| torsion_from_alexander(&a)).is_ok_and(|back| back == t);
            if !ok {
                bad += 1;
            }
        }
        (bad == 0, format!("{samples} realizable sequences, {bad} failures"))
    })
}

pub fn torsion_zero_pattern() -> SuiteResult {
    timed("torsion vanishes exactly from the genus on, n ≤ 2", || {
        let mut tally = Tally::default();
        for n in -1..=1 {
            for_each_e8_changemaker(n, &EnumerateOptions::default(), |t| {
                tally.record(zero_pattern_ok(t), || t.to_string());
            })
            .expect("short tails are under the cap");
        }
        let s = sweep_n2();
        let checked = tally.checked + s.zero_pattern.checked;
        let failed = tally.failed + s.zero_pattern.failed;
        let example = tally.first_failure.or_else(|| s.zero_pattern.first_failure.clone());
        (failed == 0, format!("{checked} vectors, {failed} failures{}", first(example.as_ref())))
    })
}

pub fn all_suites() -> Vec<SuiteResult> {
    vec![
        changemaker_definition(),
        complement_discriminants(),
        isometry_vs_lens(),
        irreducibles_are_intervals(),
        standard_basis_n2(),
        alexander_round_trip(),
        torsion_zero_pattern(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_suites_pass() {
        for s in [changemaker_definition(), alexander_round_trip()] {
            assert!(s.pass, "{}", s.line());
        }
    }

    #[test]
    fn random_torsion_is_realizable() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..50 {
            let t = random_realizable_torsion(&mut rng);
            assert_eq!(*t.last().unwrap(), 0);
        }
    }
}
