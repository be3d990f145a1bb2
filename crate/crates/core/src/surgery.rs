//! Knot-side arithmetic recovered from an E8-changemaker `τ`: genus, torsion
//! coefficients and Alexander polynomial, together with the congruence checks
//! and the parametrised lens-space families.
//!
//! Conventions are positive definite throughout. The ambient lattice
//! `E8 ⊕ Zⁿ⁺¹` has rank `n + 9`, and a characteristic covector `c` contributes
//! `(|c|² − (n + 9) + 8) / 8` to the torsion coefficient of its class.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use crate::changemaker::{ambient_lattice, is_e8_changemaker, Tau};
use crate::e8;
use crate::error::{Error, Result};
use crate::lattice_core::enumerate::{enumerate_ellipsoid, Ldl};
use crate::lattice_core::hnf::integer_kernel;
use crate::lattice_core::lll::lll_gram;
use crate::lattice_core::matrix::{congruence, mat_mul, rational_inverse};
use crate::linear::{lens_equivalent, recognize_linear, LinearShape};

/// `g = (p − |σ|₁) / 2`.
pub fn genus_from_tau(t: &Tau) -> Result<i64> {
    let diff = t.norm() - t.sigma_sum();
    if diff < 0 || diff.is_odd() {
        return Err(Error::Invalid(format!("{t}: p − |σ|₁ = {diff} is not a nonnegative even number")));
    }
    Ok(diff / 2)
}

/// Genus, torsion coefficients and symmetrised Alexander polynomial attached
/// to `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotInvariants {
    pub p: i64,
    pub genus: i64,
    /// `t₀, …, t_g`.
    pub torsion: Vec<i64>,
    /// `a₀, …, a_g`, the coefficients of `a₀ + Σ aᵢ(Tⁱ + T⁻ⁱ)`.
    pub alexander: Vec<i64>,
}

pub fn knot_invariants(t: &Tau) -> Result<KnotInvariants> {
    let torsion = torsion_coefficients(t)?;
    let alexander = alexander_from_torsion(&torsion)?;
    Ok(KnotInvariants { p: t.norm(), genus: torsion.len() as i64 - 1, torsion, alexander })
}

const INF: i64 = i64::MAX / 4;

/// Minimal norm of `x ∈ E8` with `⟨x, s⟩ = a`, for every integer `a`.
///
/// Translating by `s` maps the slice `⟨x, s⟩ = a` onto `⟨x, s⟩ = a + |s|`, so
/// `E(a + t|s|) = E(a) + 2ta + t²|s|` and only `0 ≤ a ≤ |s|/2` needs a
/// closest-vector search in `s⊥`.
struct SliceMinima {
    m: i64,
    gcd: i64,
    /// `u` in simple coordinates with `⟨u, s⟩ = gcd`.
    u: [i64; 8],
    /// LLL-reduced basis of `s⊥ ∩ E8` in simple coordinates.
    basis: Vec<[i64; 8]>,
    gram: Vec<Vec<i64>>,
    gram_inv: Vec<Vec<f64>>,
    ldl: Option<Ldl>,
    memo: HashMap<i64, i64>,
}

fn e8_pair(x: &[i64; 8], y: &[i64; 8]) -> i64 {
    let mut acc = 0;
    for i in 0..8 {
        if x[i] == 0 {
            continue;
        }
        for j in 0..8 {
            acc += x[i] * e8::GRAM[i][j] * y[j];
        }
    }
    acc
}

impl SliceMinima {
    fn new(s_star: &[i64; 8]) -> SliceMinima {
        let m = e8::norm_from_dual(s_star);
        let mut slice = SliceMinima {
            m,
            gcd: 0,
            u: [0; 8],
            basis: Vec::new(),
            gram: Vec::new(),
            gram_inv: Vec::new(),
            ldl: None,
            memo: HashMap::new(),
        };
        if m == 0 {
            return slice;
        }
        // ⟨x, s⟩ = Σ xᵢ s*ᵢ in simple coordinates; extended gcd gives `u`.
        let mut g = 0i64;
        let mut u = [0i64; 8];
        for i in 0..8 {
            let e = g.extended_gcd(&s_star[i]);
            for c in u.iter_mut() {
                *c *= e.x;
            }
            u[i] += e.y;
            g = e.gcd;
        }
        if g < 0 {
            g = -g;
            u.iter_mut().for_each(|c| *c = -*c);
        }
        slice.gcd = g;
        slice.u = u;
        let row = vec![s_star.to_vec()];
        let kernel = integer_kernel(&row, 8);
        let gram = congruence(&kernel, &e8::lattice().gram().clone());
        let red = lll_gram(&gram);
        let basis = mat_mul(&red.basis, &kernel);
        slice.basis = basis.iter().map(|r| r.clone().try_into().expect("eight coordinates")).collect();
        slice.gram = red.gram.clone();
        let inv = rational_inverse(&red.gram).expect("s⊥ is positive definite");
        slice.gram_inv =
            inv.iter().map(|r| r.iter().map(|x| num_traits::ToPrimitive::to_f64(x).unwrap_or(0.0)).collect()).collect();
        slice.ldl = Some(Ldl::new(&red.gram));
        slice
    }

    fn get(&mut self, a: i64) -> i64 {
        if self.m == 0 {
            return if a == 0 { 0 } else { INF };
        }
        let m = self.m;
        let mut r = a.rem_euclid(m);
        if 2 * r > m {
            r -= m;
        }
        let t = (a - r) / m;
        let base = self.centered(r.abs());
        if base >= INF {
            return INF;
        }
        base + 2 * t * r + t * t * m
    }

    fn centered(&mut self, a: i64) -> i64 {
        if let Some(&v) = self.memo.get(&a) {
            return v;
        }
        let v = self.solve(a);
        self.memo.insert(a, v);
        v
    }

    fn solve(&self, a: i64) -> i64 {
        if a % self.gcd != 0 {
            return INF;
        }
        let k = self.basis.len();
        let f = a / self.gcd;
        let mut x = self.u.map(|c| c * f);
        // Move `x` close to the slice centre first so that floats stay small.
        for _ in 0..2 {
            let h: Vec<f64> = self.basis.iter().map(|b| e8_pair(&x, b) as f64).collect();
            let c: Vec<f64> = (0..k).map(|i| -(0..k).map(|j| self.gram_inv[i][j] * h[j]).sum::<f64>()).collect();
            for (i, ci) in c.iter().enumerate() {
                let r = ci.round() as i64;
                if r != 0 {
                    for (xj, bj) in x.iter_mut().zip(&self.basis[i]) {
                        *xj += r * bj;
                    }
                }
            }
        }
        let h: Vec<f64> = self.basis.iter().map(|b| e8_pair(&x, b) as f64).collect();
        let c: Vec<f64> = (0..k).map(|i| -(0..k).map(|j| self.gram_inv[i][j] * h[j]).sum::<f64>()).collect();
        let x_norm = e8_pair(&x, &x);
        let quad = |z: &[f64]| -> f64 {
            let mut acc = 0.0;
            for i in 0..k {
                for j in 0..k {
                    acc += z[i] * self.gram[i][j] as f64 * z[j];
                }
            }
            acc
        };
        // |x + Σzᵢbᵢ|² = |x|² − Q(c) + Q(z − c).
        let offset = x_norm as f64 - quad(&c);
        let exact = |z: &[i64]| -> i64 {
            let mut y = x;
            for (i, &zi) in z.iter().enumerate() {
                if zi != 0 {
                    for (yj, bj) in y.iter_mut().zip(&self.basis[i]) {
                        *yj += zi * bj;
                    }
                }
            }
            e8_pair(&y, &y)
        };
        let mut best = x_norm;
        let zero = vec![0i64; k];
        let babai: Vec<i64> = c.iter().map(|v| v.round() as i64).collect();
        best = best.min(exact(&babai)).min(exact(&zero));
        let ldl = self.ldl.as_ref().expect("nonzero s");
        enumerate_ellipsoid(ldl, &c, best as f64 - offset, |z| {
            let v = exact(z);
            if v < best {
                best = v;
            }
        });
        best
    }
}

/// Minimal `Σ yᵢ²` over odd vectors `y` with `⟨y, σ⟩ = b`, exact for all values
/// not exceeding `budget`.
struct OddTailMinima {
    budget: i64,
    radius: i64,
    values: Vec<i64>,
}

impl OddTailMinima {
    fn new(sigma: &[i64], budget: i64) -> OddTailMinima {
        let ymax = (budget as f64).sqrt().floor() as i64 + 1;
        let radius = ymax * sigma.iter().sum::<i64>();
        let width = (2 * radius + 1) as usize;
        let mut values = vec![INF; width];
        values[radius as usize] = 0;
        for &s in sigma {
            let mut next = vec![INF; width];
            let mut y = -ymax + if ymax.is_odd() { 0 } else { 1 };
            while y <= ymax {
                let cost = y * y;
                if cost <= budget {
                    let shift = y * s;
                    for (idx, &v) in values.iter().enumerate() {
                        if v >= INF || v + cost > budget {
                            continue;
                        }
                        let target = idx as i64 + shift;
                        if (0..width as i64).contains(&target) {
                            let slot = &mut next[target as usize];
                            *slot = (*slot).min(v + cost);
                        }
                    }
                }
                y += 2;
            }
            values = next;
        }
        OddTailMinima { budget, radius, values }
    }

    fn get(&self, b: i64) -> i64 {
        if b.abs() > self.radius {
            return INF;
        }
        self.values[(b + self.radius) as usize]
    }
}

/// `G(w) = min |c|²` over characteristic covectors with `⟨c, τ⟩ = w`.
///
/// Writing `c = (2x, y)` with `x ∈ E8` and `y` odd, `G(w) = min_a 4E(a) + Y(w − 2a)`.
struct CharacteristicMinima {
    slice: SliceMinima,
    tail: OddTailMinima,
    sigma: Vec<i64>,
    m: i64,
    sigma_sq: i64,
}

const MAX_BUDGET_FACTOR: i64 = 1 << 12;

impl CharacteristicMinima {
    fn new(t: &Tau) -> CharacteristicMinima {
        let sigma = t.sigma().to_vec();
        let budget = 2 * t.norm() + sigma.len() as i64 + 8;
        CharacteristicMinima {
            slice: SliceMinima::new(&t.s_star()),
            tail: OddTailMinima::new(&sigma, budget),
            m: t.s_norm(),
            sigma_sq: sigma.iter().map(|x| x * x).sum(),
            sigma,
        }
    }

    fn value(&mut self, w: i64, cap: i64) -> Result<i64> {
        loop {
            let budget = self.tail.budget;
            let best = self.scan(w, budget);
            if best <= budget {
                return Ok(best);
            }
            if budget > cap {
                return Err(Error::BoundExhausted(format!("no characteristic covector pairing to {w} within norm {budget}")));
            }
            self.tail = OddTailMinima::new(&self.sigma, budget * 2);
        }
    }

    fn scan(&mut self, w: i64, budget: i64) -> i64 {
        let mut best = budget + 1;
        let try_a = |a: i64, best: &mut i64, slice: &mut SliceMinima, tail: &OddTailMinima| {
            let y = tail.get(w - 2 * a);
            if y >= INF {
                return;
            }
            let e = slice.get(a);
            if e >= INF {
                return;
            }
            *best = (*best).min(4 * e + y);
        };
        if self.m == 0 {
            try_a(0, &mut best, &mut self.slice, &self.tail);
            return best;
        }
        if self.sigma_sq == 0 {
            if w.is_even() {
                try_a(w / 2, &mut best, &mut self.slice, &self.tail);
            }
            return best;
        }
        let (m, s2) = (self.m as f64, self.sigma_sq as f64);
        let lower = |a: i64| 4.0 * (a as f64).powi(2) / m + ((w - 2 * a) as f64).powi(2) / s2;
        let a0 = ((w as f64) * m / (2.0 * (m + s2))).round() as i64;
        let mut a = a0;
        while lower(a) <= best as f64 + 1e-6 {
            try_a(a, &mut best, &mut self.slice, &self.tail);
            a += 1;
        }
        let mut a = a0 - 1;
        while lower(a) <= best as f64 + 1e-6 {
            try_a(a, &mut best, &mut self.slice, &self.tail);
            a -= 1;
        }
        best
    }
}

/// `t₀, …, t_g` where `tᵢ = min (|c|² − rank + 8)/8` over characteristic
/// covectors with `⟨c, τ⟩ ≡ 2i − p (mod 2p)`.
pub fn torsion_coefficients(t: &Tau) -> Result<Vec<i64>> {
    let g = genus_from_tau(t)?;
    let p = t.norm();
    if p == 0 {
        return Err(Error::ZeroVector);
    }
    let content = t.s_star().iter().chain(t.sigma()).fold(0i64, |acc, &x| acc.gcd(&x));
    if content != 1 {
        return Err(Error::Invalid(format!("{t} is not primitive; some torsion classes have no characteristic covector")));
    }
    let short = t.sigma().len() as i64;
    let mut minima = CharacteristicMinima::new(t);
    let cap = MAX_BUDGET_FACTOR * (p + short + 8);
    let mut out = Vec::with_capacity(g as usize + 1);
    for i in 0..=g {
        let w = p - 2 * i;
        let norm = minima.value(w, cap)?;
        let excess = norm - short;
        assert!(excess >= 0 && excess % 8 == 0, "characteristic norm {norm} not congruent to the signature");
        out.push(excess / 8);
    }
    Ok(out)
}

/// The indices `0 ≤ i ≤ g` with `tᵢ = 0`, in increasing order.
///
/// A covector of the minimal characteristic norm `n + 1` is `(0, y)` with
/// `y ∈ {±1}ⁿ⁺¹`, so only the pairings `⟨y, σ⟩` need to be listed.
pub fn vanishing_torsion_indices(t: &Tau) -> Result<Vec<i64>> {
    let g = genus_from_tau(t)?;
    let p = t.norm();
    if p == 0 {
        return Err(Error::ZeroVector);
    }
    let total = t.sigma_sum();
    let mut sums = vec![false; total as usize + 1];
    sums[0] = true;
    for &x in t.sigma() {
        for v in (x as usize..=total as usize).rev() {
            if sums[v - x as usize] {
                sums[v] = true;
            }
        }
    }
    let mut out: Vec<i64> = sums
        .iter()
        .enumerate()
        .filter(|(_, &hit)| hit)
        .map(|(v, _)| ((p + total - 2 * v as i64) / 2).rem_euclid(p))
        .filter(|&i| i <= g)
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Brute-force torsion through explicit characteristic covector enumeration,
/// for small `p` only.
pub fn torsion_by_enumeration(t: &Tau, max_norm: i64) -> Result<Vec<i64>> {
    let g = genus_from_tau(t)?;
    let p = t.norm();
    let lat = ambient_lattice(t.sigma().len());
    let tau = t.ambient_vector();
    let functional = lat.functional(&tau);
    let short = t.sigma().len() as i64;
    let mut best = vec![INF; g as usize + 1];
    for c in lat.characteristic_vectors(&max_norm) {
        let pairing: i64 = c.iter().zip(&functional).map(|(a, b)| a * b).sum();
        let norm = lat.norm(&c)?;
        for i in 0..=g {
            if (pairing + p - 2 * i).rem_euclid(2 * p) == 0 {
                best[i as usize] = best[i as usize].min(norm);
            }
        }
    }
    best.iter()
        .map(|&n| {
            if n >= INF {
                Err(Error::BoundExhausted(format!("raise the norm bound above {max_norm}")))
            } else {
                Ok((n - short) / 8)
            }
        })
        .collect()
}

fn check_torsion(torsion: &[i64]) -> Result<()> {
    match torsion.last() {
        None => return Err(Error::Invalid("empty torsion sequence".into())),
        Some(&0) => {}
        Some(&x) => return Err(Error::Invalid(format!("torsion sequence must end in 0, got {x}"))),
    }
    if torsion.iter().any(|&x| x < 0) {
        return Err(Error::Invalid("torsion coefficients must be nonnegative".into()));
    }
    if torsion.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid(format!("torsion sequence {torsion:?} is not non-increasing")));
    }
    if torsion.len() >= 2 && torsion[torsion.len() - 2] != 1 {
        return Err(Error::Invalid(format!("torsion sequence {torsion:?} does not have t_(g−1) = 1")));
    }
    Ok(())
}

/// Second differences `aᵢ = tᵢ₋₁ − 2tᵢ + tᵢ₊₁` and `a₀ = 1 − 2Σ aᵢ`.
pub fn alexander_from_torsion(torsion: &[i64]) -> Result<Vec<i64>> {
    check_torsion(torsion)?;
    let g = torsion.len() - 1;
    let at = |i: usize| torsion.get(i).copied().unwrap_or(0);
    let mut a = vec![0i64; g + 1];
    for i in 1..=g {
        a[i] = at(i - 1) - 2 * at(i) + at(i + 1);
    }
    a[0] = 1 - 2 * a[1..].iter().sum::<i64>();
    if torsion_from_alexander(&a)? != torsion {
        return Err(Error::Invalid(format!("torsion sequence {torsion:?} is not realised by a symmetric polynomial")));
    }
    Ok(a)
}

/// `tᵢ = Σ_{j ≥ 1} j·a_{i+j}` for `0 ≤ i ≤ g`.
pub fn torsion_from_alexander(alexander: &[i64]) -> Result<Vec<i64>> {
    if alexander.is_empty() {
        return Err(Error::Invalid("empty Alexander polynomial".into()));
    }
    let total: i64 = alexander[0] + 2 * alexander[1..].iter().sum::<i64>();
    if total != 1 {
        return Err(Error::Invalid(format!("Δ(1) = {total}, expected 1")));
    }
    let g = alexander.len() - 1;
    Ok((0..=g).map(|i| (i + 1..=g).map(|k| (k - i) as i64 * alexander[k]).sum()).collect())
}

/// `Δ − (T^{(p−1)/2} + T^{−(p−1)/2}) + (T^{(p+1)/2} + T^{−(p+1)/2})`, on
/// symmetric coefficient lists.
pub fn delta_cable_shift(alexander: &[i64], p: i64) -> Result<Vec<i64>> {
    if p.is_even() || p < 1 {
        return Err(Error::Invalid(format!("cable shift needs an odd positive p, got {p}")));
    }
    let lo = ((p - 1) / 2) as usize;
    let hi = lo + 1;
    let mut out = alexander.to_vec();
    if out.len() <= hi {
        out.resize(hi + 1, 0);
    }
    if lo == 0 {
        out[0] -= 2;
    } else {
        out[lo] -= 1;
    }
    out[hi] += 1;
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    Ok(out)
}

/// Whether `n·a ≡ ±1 (mod p)`.
pub fn distance_surgery_exists(p: i64, a: i64, n: i64) -> bool {
    let r = (n * a).rem_euclid(p);
    r == 1 % p || r == (p - 1) % p
}

/// All residues `x (mod p)` with `x² ≡ ±r`.
pub fn solve_quadratic_congruence(p: i64, r: i64) -> Result<Vec<i64>> {
    if p < 2 {
        return Err(Error::Invalid(format!("modulus must be at least 2, got {p}")));
    }
    let (plus, minus) = (r.rem_euclid(p), (-r).rem_euclid(p));
    Ok((0..p)
        .filter(|&x| {
            let sq = (x as i128 * x as i128).rem_euclid(p as i128) as i64;
            sq == plus || sq == minus
        })
        .collect())
}

/// Solves `2g_K − 1 = 2p + 2(2g_κ − 1) − p` for `g_κ`.
pub fn cable_genus_relation(p: i64, g_k: i64) -> Result<i64> {
    let num = 2 * g_k - p + 1;
    if num.rem_euclid(4) != 0 {
        return Err(Error::Invalid(format!("g(κ) = {num}/4 is not an integer for p = {p}, g(K) = {g_k}")));
    }
    Ok(num / 4)
}

/// Which tail pattern a family table uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailPattern {
    /// `(1, …, 1)` of length `j − 1`.
    Ones,
    /// `(1, …, 1, j)` of length `j`.
    OnesThenJ,
    /// `(1, 2, …, 2)` of length `j`.
    OneThenTwos,
    /// `(1, 1, 2, …, 2)` of length `j`.
    TwoOnesThenTwos,
    /// `(1, 1, 2, …, 2)` of length `j + 1`.
    TwoOnesThenTwosLong,
}

impl TailPattern {
    pub fn instantiate(self, j: i64) -> Vec<i64> {
        let j = j as usize;
        match self {
            TailPattern::Ones => vec![1; j - 1],
            TailPattern::OnesThenJ => {
                let mut v = vec![1; j - 1];
                v.push(j as i64);
                v
            }
            TailPattern::OneThenTwos => {
                let mut v = vec![2; j];
                v[0] = 1;
                v
            }
            TailPattern::TwoOnesThenTwos | TailPattern::TwoOnesThenTwosLong => {
                let len = if self == TailPattern::TwoOnesThenTwos { j } else { j + 1 };
                let mut v = vec![2; len];
                v[0] = 1;
                v[1] = 1;
                v
            }
        }
    }

    pub fn min_j(self) -> i64 {
        match self {
            TailPattern::Ones | TailPattern::OneThenTwos => 1,
            TailPattern::OnesThenJ | TailPattern::TwoOnesThenTwos | TailPattern::TwoOnesThenTwosLong => 2,
        }
    }
}

struct FamilySpec {
    name: &'static str,
    tail: TailPattern,
    /// `p(j) = p2·j² + p1·j + p0`.
    p: [i64; 3],
    /// `k(j) = k1·j + k0`.
    k: [i64; 2],
    /// `s*ᵢ(j) = αᵢ·j + βᵢ`.
    s_star: [[i64; 2]; 8],
}

const fn c(b: i64) -> [i64; 2] {
    [0, b]
}
const J: [i64; 2] = [1, 0];
const JM1: [i64; 2] = [1, -1];
const JP1: [i64; 2] = [1, 1];
const TWO_JM1: [i64; 2] = [2, -2];
const TWO_J_M1: [i64; 2] = [2, -1];
const TWO_J_M3: [i64; 2] = [2, -3];

use TailPattern::*;

// In the J rows the tail length and `s*₁` move together: `J₋` uses
// `(2j − 3, 1, 0, 0, 2, 0, 0, 0)` over `Zʲ` and `J₊` uses
// `(2j − 1, 1, 2, 0, 0, 0, 0, 0)` over `Zʲ⁺¹`, which is what `⟨τ, τ⟩ = p(j)`
// requires.
#[rustfmt::skip]
const FAMILIES: [FamilySpec; 38] = [
    FamilySpec { name: "A1-", tail: Ones, p: [14, -7, 1], k: [-7, 2], s_star: [c(0), c(1), JM1, c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "A1+", tail: Ones, p: [14, 7, 1], k: [7, 2], s_star: [c(0), c(1), JM1, c(1), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "A2-", tail: Ones, p: [20, -15, 3], k: [-5, 2], s_star: [c(0), c(1), c(0), c(0), JM1, c(0), c(0), c(0)] },
    FamilySpec { name: "A2+", tail: Ones, p: [20, 15, 3], k: [5, 2], s_star: [c(0), c(1), c(0), c(0), JM1, c(1), c(0), c(0)] },
    FamilySpec { name: "B-", tail: Ones, p: [30, -9, 1], k: [-6, 1], s_star: [JM1, c(1), c(0), c(1), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "B+", tail: Ones, p: [30, 9, 1], k: [6, 1], s_star: [JM1, c(0), c(0), c(1), c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "C1-", tail: Ones, p: [42, -23, 3], k: [-7, 2], s_star: [c(0), J, JM1, c(1), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "C1+", tail: Ones, p: [42, 23, 3], k: [7, 2], s_star: [c(1), J, JM1, c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "C2-", tail: Ones, p: [42, -47, 13], k: [-7, 4], s_star: [c(0), J, JM1, c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "C2+", tail: Ones, p: [42, 47, 13], k: [7, 4], s_star: [c(1), J, JM1, c(1), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "D1-", tail: Ones, p: [52, -15, 1], k: [-13, 2], s_star: [c(0), J, c(0), c(0), JM1, c(1), c(0), c(0)] },
    FamilySpec { name: "D1+", tail: Ones, p: [52, 15, 1], k: [13, 2], s_star: [c(1), J, c(0), c(0), JM1, c(0), c(0), c(0)] },
    FamilySpec { name: "D2-", tail: Ones, p: [52, -63, 19], k: [-13, 8], s_star: [c(0), J, c(0), c(0), JM1, c(0), c(0), c(0)] },
    FamilySpec { name: "D2+", tail: Ones, p: [52, 63, 19], k: [13, 8], s_star: [c(1), J, c(0), c(0), JM1, c(1), c(0), c(0)] },
    FamilySpec { name: "E1-", tail: Ones, p: [54, -15, 1], k: [-27, 4], s_star: [JM1, c(0), c(0), J, c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "E1+", tail: Ones, p: [54, 15, 1], k: [27, 4], s_star: [JM1, c(1), c(1), J, c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "E2-", tail: Ones, p: [54, -39, 7], k: [-27, 10], s_star: [JM1, c(1), c(0), J, c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "E2+", tail: Ones, p: [54, 39, 7], k: [27, 10], s_star: [JM1, c(0), c(1), J, c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "F1-", tail: OnesThenJ, p: [69, -17, 1], k: [-23, 3], s_star: [JM1, J, c(0), c(0), c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "F1+", tail: OnesThenJ, p: [69, 17, 1], k: [23, 3], s_star: [JM1, JP1, c(1), c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "F2-", tail: OnesThenJ, p: [69, -29, 3], k: [-23, 5], s_star: [JM1, J, c(1), c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "F2+", tail: OnesThenJ, p: [69, 29, 3], k: [23, 5], s_star: [JM1, JP1, c(0), c(0), c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "G1-", tail: OnesThenJ, p: [85, -19, 1], k: [-17, 2], s_star: [JM1, c(0), J, c(0), c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "G1+", tail: OnesThenJ, p: [85, 19, 1], k: [17, 2], s_star: [JM1, c(1), JP1, c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "G2-", tail: OnesThenJ, p: [85, -49, 7], k: [-17, 5], s_star: [JM1, c(1), J, c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "G2+", tail: OnesThenJ, p: [85, 49, 7], k: [17, 5], s_star: [JM1, c(0), JP1, c(0), c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "H1-", tail: OnesThenJ, p: [99, -35, 3], k: [-11, 2], s_star: [JM1, c(0), c(1), c(0), J, c(0), c(0), c(0)] },
    FamilySpec { name: "H1+", tail: OnesThenJ, p: [99, 35, 3], k: [11, 2], s_star: [JM1, c(1), c(0), c(0), JP1, c(0), c(0), c(0)] },
    FamilySpec { name: "H2-", tail: OnesThenJ, p: [99, -53, 7], k: [-11, 3], s_star: [JM1, c(1), c(0), c(0), J, c(0), c(0), c(0)] },
    FamilySpec { name: "H2+", tail: OnesThenJ, p: [99, 53, 7], k: [11, 3], s_star: [JM1, c(0), c(1), c(0), JP1, c(0), c(0), c(0)] },
    FamilySpec { name: "I1-", tail: OneThenTwos, p: [120, -16, 1], k: [-12, 1], s_star: [TWO_JM1, c(1), c(2), c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "I1+", tail: OneThenTwos, p: [120, 16, 1], k: [12, 1], s_star: [TWO_JM1, c(1), c(0), c(0), c(2), c(0), c(0), c(0)] },
    FamilySpec { name: "I2-", tail: OneThenTwos, p: [120, -20, 1], k: [-20, 2], s_star: [TWO_JM1, c(2), c(0), c(0), c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "I2+", tail: OneThenTwos, p: [120, 20, 1], k: [20, 2], s_star: [TWO_JM1, c(0), c(2), c(0), c(1), c(0), c(0), c(0)] },
    FamilySpec { name: "I3-", tail: OneThenTwos, p: [120, -36, 3], k: [-12, 2], s_star: [TWO_JM1, c(2), c(1), c(0), c(0), c(0), c(0), c(0)] },
    FamilySpec { name: "I3+", tail: OneThenTwos, p: [120, 36, 3], k: [12, 2], s_star: [TWO_JM1, c(0), c(1), c(0), c(2), c(0), c(0), c(0)] },
    FamilySpec { name: "J-", tail: TwoOnesThenTwos, p: [120, -104, 22], k: [-12, 5], s_star: [TWO_J_M3, c(1), c(0), c(0), c(2), c(0), c(0), c(0)] },
    FamilySpec { name: "J+", tail: TwoOnesThenTwosLong, p: [120, 104, 22], k: [12, 5], s_star: [TWO_J_M1, c(1), c(2), c(0), c(0), c(0), c(0), c(0)] },
];

/// Names of the 38 families, in table order.
pub fn family_names() -> Vec<&'static str> {
    FAMILIES.iter().map(|f| f.name).collect()
}

/// One family member at parameter `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRow {
    pub family: String,
    pub j: i64,
    pub p: i64,
    pub k: i64,
    pub q: i64,
    pub s_star: [i64; 8],
    pub sigma: Vec<i64>,
}

impl FamilyRow {
    pub fn tau(&self) -> Result<Tau> {
        Tau::normalized(self.s_star, self.sigma.clone())
    }
}

fn normalize_name(name: &str) -> String {
    name.chars()
        .filter_map(|ch| match ch {
            '₁' => Some('1'),
            '₂' => Some('2'),
            '₃' => Some('3'),
            '₋' | '−' => Some('-'),
            '₊' => Some('+'),
            '_' | ' ' => None,
            c => Some(c.to_ascii_uppercase()),
        })
        .collect()
}

pub fn family_row(name: &str, j: i64) -> Result<FamilyRow> {
    let key = normalize_name(name);
    let spec = FAMILIES
        .iter()
        .find(|f| f.name == key)
        .ok_or_else(|| Error::Invalid(format!("unknown family {name:?}")))?;
    if j < spec.tail.min_j() {
        return Err(Error::Invalid(format!("family {} needs j ≥ {}, got {j}", spec.name, spec.tail.min_j())));
    }
    let p = spec.p[0] * j * j + spec.p[1] * j + spec.p[2];
    let k = spec.k[0] * j + spec.k[1];
    let q = (-k * k).rem_euclid(p);
    let s_star = spec.s_star.map(|[a, b]| a * j + b);
    Ok(FamilyRow { family: spec.name.to_string(), j, p, k, q, s_star, sigma: spec.tail.instantiate(j) })
}

/// Outcome of checking one family member end to end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub row: FamilyRow,
    pub norm: i64,
    pub is_e8_changemaker: bool,
    pub summands: Option<LinearShape>,
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} j={}: ", self.row.family, self.row.j)?;
        if self.pass() {
            write!(f, "ok, Λ({}, {})", self.row.p, self.row.q)
        } else {
            write!(f, "{}", self.failures.join("; "))
        }
    }
}

/// The complement of `τ` in its ambient lattice, recognised as a sum of
/// linear lattices when possible.
pub fn complement_shape(t: &Tau) -> Result<Option<LinearShape>> {
    let lat = ambient_lattice(t.sigma().len());
    let (comp, _) = lat.orthogonal_complement(&t.ambient_vector())?;
    recognize_linear(&comp)
}

pub fn verify_family_row(row: &FamilyRow) -> FamilyReport {
    let mut failures = Vec::new();
    let mut report = FamilyReport { row: row.clone(), norm: 0, is_e8_changemaker: false, summands: None, failures: vec![] };
    let t = match row.tau() {
        Ok(t) => t,
        Err(e) => {
            report.failures.push(format!("τ rejected: {e}"));
            return report;
        }
    };
    report.norm = t.norm();
    if report.norm != row.p {
        failures.push(format!("⟨τ, τ⟩ = {} but p = {}", report.norm, row.p));
    }
    report.is_e8_changemaker = is_e8_changemaker(&t);
    if !report.is_e8_changemaker {
        failures.push(format!("{t} is not an E8-changemaker"));
    }
    match complement_shape(&t) {
        Ok(Some(shape)) => {
            let ok = shape.len() == 1 && lens_equivalent(shape[0].0, shape[0].1, row.p, row.q);
            if !ok {
                failures.push(format!("complement is {shape:?}, expected Λ({}, {})", row.p, row.q));
            }
            report.summands = Some(shape);
        }
        Ok(None) => failures.push("complement is not a sum of linear lattices".into()),
        Err(e) => failures.push(format!("recognition failed: {e}")),
    }
    report.failures = failures;
    report
}
