//! Linear lattices `Λ(p, q)`, intervals in their vertex basis, and the
//! intersection-graph obstructions used to rule out linear embeddings.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice_core::matrix::Matrix;
use crate::lattice_core::GramLattice;

/// Hirzebruch–Jung expansion `p/q = [a₁, …, a_n]⁻` with every `aᵢ ≥ 2`.
pub fn hj_expand(p: i64, q: i64) -> Result<Vec<i64>> {
    if !(p > q && q > 0) || p.gcd(&q) != 1 {
        return Err(Error::Invalid(format!("({p}, {q}) needs p > q > 0 coprime")));
    }
    let (mut p, mut q) = (p, q);
    let mut out = Vec::new();
    while q > 0 {
        // a = ⌈p/q⌉, then p/q = a − 1/(p/(aq − p)).
        let a = (p + q - 1) / q;
        out.push(a);
        let r = a * q - p;
        p = q;
        q = r;
    }
    Ok(out)
}

/// `[a₁, …, a_n]⁻` as a reduced fraction `(p, q)`.
pub fn hj_eval(a: &[i64]) -> (i64, i64) {
    // Evaluate from the right: x = a_n, then x = a_i − 1/x.
    let (mut num, mut den) = (1i64, 0i64);
    for &ai in a.iter().rev() {
        let (n2, d2) = (ai * num - den, num);
        num = n2;
        den = d2;
    }
    let g = num.gcd(&den);
    (num / g, den / g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLattice {
    pub p: i64,
    pub q: i64,
    pub norms: Vec<i64>,
    pub gram: Matrix<i64>,
}

pub fn path_gram(norms: &[i64]) -> Matrix<i64> {
    let n = norms.len();
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        g[i][i] = norms[i];
        if i + 1 < n {
            g[i][i + 1] = -1;
            g[i + 1][i] = -1;
        }
    }
    g
}

pub fn lambda_gram(p: i64, q: i64) -> Result<LinearLattice> {
    let norms = hj_expand(p, q)?;
    let gram = path_gram(&norms);
    Ok(LinearLattice { p, q, norms, gram })
}

pub fn lens_equivalent(p: i64, q: i64, p2: i64, q2: i64) -> bool {
    p == p2 && (q.rem_euclid(p) == q2.rem_euclid(p) || (q * q2).rem_euclid(p) == 1 % p)
}

/// Inverse of `q` modulo `p`, if it exists.
pub fn mod_inverse(q: i64, p: i64) -> Option<i64> {
    let e = q.rem_euclid(p).extended_gcd(&p);
    (e.gcd == 1).then(|| e.x.rem_euclid(p))
}

/// `min(q, q⁻¹ mod p)`.
pub fn canonical_q(p: i64, q: i64) -> i64 {
    let q = q.rem_euclid(p);
    match mod_inverse(q, p) {
        Some(inv) if p > 1 => q.min(inv),
        _ => q,
    }
}

/// Summands `(pᵢ, canonical qᵢ)` of a sum of linear lattices, by descending
/// `pᵢ`, then ascending `qᵢ`.
pub type LinearShape = Vec<(i64, i64)>;

/// Recognises `L ≅ ⊕ Λ(pᵢ, qᵢ)`, or returns `None` when some indecomposable
/// summand is not linear.
pub fn recognize_linear(l: &GramLattice<i64>) -> Result<Option<LinearShape>> {
    let mut shape = Vec::new();
    for summand in l.decompose()? {
        match recognize_indecomposable(&summand) {
            Some(pq) => shape.push(pq),
            None => return Ok(None),
        }
    }
    shape.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(Some(shape))
}

/// `(p, canonical q)` with `L ≅ Λ(p, q)`, for an indecomposable `L`.
pub fn recognize_indecomposable(l: &GramLattice<i64>) -> Option<(i64, i64)> {
    let r = l.rank();
    let d = l.discriminant();
    if d < 2 {
        return None;
    }
    let small = 3i64;
    let counts = l.norm_counts(&small);
    let mut tried = BTreeSet::new();
    for q in 1..d {
        if q.gcd(&d) != 1 {
            continue;
        }
        let c = canonical_q(d, q);
        if !tried.insert(c) {
            continue;
        }
        let norms = hj_expand(d, c).ok()?;
        if norms.len() != r {
            continue;
        }
        let cand = GramLattice::from_trusted(path_gram(&norms));
        if cand.norm_counts(&small) != counts {
            continue;
        }
        if l.isometric(&cand).is_some() {
            return Some((d, c));
        }
    }
    None
}

/// A signed interval `ε·(x_lo + … + x_hi)` of vertices, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub sign: i64,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(1 <= lo && lo <= hi, "intervals are nonempty and 1-based");
        Interval { lo, hi, sign: 1 }
    }

    pub fn signed(lo: usize, hi: usize, sign: i64) -> Self {
        Interval { sign, ..Interval::new(lo, hi) }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lo <= i && i <= self.hi
    }

    /// Coefficient vector in the vertex basis of a rank-`n` path.
    pub fn vector(&self, n: usize) -> Vec<i64> {
        (1..=n).map(|i| if self.contains(i) { self.sign } else { 0 }).collect()
    }

    pub fn norm(&self, norms: &[i64]) -> i64 {
        (self.lo..=self.hi).map(|i| norms[i - 1]).sum::<i64>() - 2 * (self.hi - self.lo) as i64
    }

    /// Vertices of norm at least 3.
    pub fn heavy_vertices(&self, norms: &[i64]) -> Vec<usize> {
        (self.lo..=self.hi).filter(|&i| norms[i - 1] >= 3).collect()
    }

    pub fn is_breakable(&self, norms: &[i64]) -> bool {
        self.heavy_vertices(norms).len() >= 2
    }

    /// `T ≺ T′`: a proper subinterval sharing an endpoint.
    pub fn precedes(&self, other: &Interval) -> bool {
        (self.lo, self.hi) != (other.lo, other.hi)
            && other.lo <= self.lo
            && self.hi <= other.hi
            && (self.lo == other.lo || self.hi == other.hi)
    }
}

pub fn interval_sum(t: &Interval, n: usize) -> Vec<i64> {
    t.vector(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    ShareEndpoint,
    /// `T † T′`.
    Consecutive,
    /// One lies strictly inside the other, sharing no endpoint.
    Nested,
    /// `T ⋔ T′`.
    Crossing,
    Distant,
}

/// How two distinct intervals meet.
pub fn relation(a: &Interval, b: &Interval) -> Relation {
    if a.lo == b.lo || a.hi == b.hi {
        Relation::ShareEndpoint
    } else if b.lo == a.hi + 1 || a.lo == b.hi + 1 {
        Relation::Consecutive
    } else if a.hi < b.lo || b.hi < a.lo {
        Relation::Distant
    } else if (a.lo < b.lo && b.hi < a.hi) || (b.lo < a.lo && a.hi < b.hi) {
        Relation::Nested
    } else {
        Relation::Crossing
    }
}

pub fn abut(a: &Interval, b: &Interval) -> bool {
    matches!(relation(a, b), Relation::ShareEndpoint | Relation::Consecutive)
}

fn pair_intervals(a: &Interval, b: &Interval, norms: &[i64]) -> i64 {
    let n = norms.len();
    let g = path_gram(norms);
    let (x, y) = (a.vector(n), b.vector(n));
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            s += x[i] * g[i][j] * y[j];
        }
    }
    s
}

/// Which case of the pairing table for a breakable `T` against an
/// unbreakable `V` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingCase {
    /// `V ≺ T`: `±(|V| − 1)`.
    Precedes,
    /// `V ⋔ T` with the heavy vertex of `V` in `T`: `±(|V| − 2)`.
    CrossingHeavy,
    /// `V` strictly inside `T`: `±(|V| − 2)`.
    Inside,
    /// `V † T`: `∓1`.
    Consecutive,
    /// Distant, or crossing away from the heavy vertex: `0`.
    Zero,
}

/// `⟨ε_T[T], ε_V[V]⟩` together with the case it falls under. Fails if the
/// pairing disagrees with the case table.
pub fn breakable_pairing_case(t: &Interval, v: &Interval, norms: &[i64]) -> Result<(i64, PairingCase)> {
    if !t.is_breakable(norms) || v.is_breakable(norms) {
        return Err(Error::Invalid("need T breakable and V unbreakable".into()));
    }
    let nv = v.norm(norms);
    if nv < 2 {
        return Err(Error::Invalid("|[V]| must be at least 2".into()));
    }
    let actual = pair_intervals(t, v, norms);
    let eps = t.sign * v.sign;
    let rel = relation(v, t);
    // With |[V]| = 2 there is no heavy vertex and the table degenerates to
    // |pairing| ≤ 1 with equality iff the intervals abut.
    let z = v.heavy_vertices(norms).first().copied();
    let (case, base) = match rel {
        Relation::ShareEndpoint if v.precedes(t) => (PairingCase::Precedes, nv - 1),
        Relation::Consecutive => (PairingCase::Consecutive, -1),
        Relation::Nested if v.lo > t.lo && z.is_some() => (PairingCase::Inside, nv - 2),
        Relation::Crossing if z.is_some_and(|z| t.contains(z)) => (PairingCase::CrossingHeavy, nv - 2),
        Relation::Nested | Relation::Crossing | Relation::Distant if v.lo > t.lo || rel != Relation::Nested => {
            (PairingCase::Zero, 0)
        }
        _ => return Err(Error::Invalid(format!("{v:?} and {t:?}: T cannot lie inside an unbreakable V"))),
    };
    if actual != eps * base {
        return Err(Error::Invalid(format!(
            "pairing {actual} of {t:?} and {v:?} disagrees with case {case:?} (expected {})",
            eps * base
        )));
    }
    Ok((actual, case))
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionGraph {
    pub norms: Vec<i64>,
    pub adj: Vec<BTreeSet<usize>>,
}

impl IntersectionGraph {
    pub fn new(norms: Vec<i64>) -> Self {
        let n = norms.len();
        IntersectionGraph { norms, adj: vec![BTreeSet::new(); n] }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    /// Graph with an edge between abutting intervals.
    pub fn from_intervals(intervals: &[Interval], path_norms: &[i64]) -> Self {
        let mut g = IntersectionGraph::new(intervals.iter().map(|t| t.norm(path_norms)).collect());
        for i in 0..intervals.len() {
            for j in i + 1..intervals.len() {
                if abut(&intervals[i], &intervals[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Graph with an edge between vertices of nonzero pairing.
    pub fn from_gram(gram: &[Vec<i64>]) -> Self {
        let mut g = IntersectionGraph::new((0..gram.len()).map(|i| gram[i][i]).collect());
        for i in 0..gram.len() {
            for j in i + 1..gram.len() {
                if gram[i][j] != 0 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// An induced claw `(centre; a, b, c)`, if any.
    pub fn find_claw(&self) -> Option<(usize, usize, usize, usize)> {
        for c in 0..self.len() {
            let nb: Vec<usize> = self.adj[c].iter().copied().collect();
            for x in 0..nb.len() {
                for y in x + 1..nb.len() {
                    if self.adj[nb[x]].contains(&nb[y]) {
                        continue;
                    }
                    for z in y + 1..nb.len() {
                        if !self.adj[nb[x]].contains(&nb[z]) && !self.adj[nb[y]].contains(&nb[z]) {
                            return Some((c, nb[x], nb[y], nb[z]));
                        }
                    }
                }
            }
        }
        None
    }

    fn connected_avoiding(&self, a: usize, b: usize, avoid: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![a];
        seen[a] = true;
        seen[avoid] = true;
        while let Some(u) = stack.pop() {
            if u == b {
                return true;
            }
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Three vertices of norm ≥ 3 in one component, none separating the
    /// other two.
    pub fn find_heavy_triple(&self) -> Option<(usize, usize, usize)> {
        let heavy: Vec<usize> = (0..self.len()).filter(|&i| self.norms[i] >= 3).collect();
        for x in 0..heavy.len() {
            for y in x + 1..heavy.len() {
                for z in y + 1..heavy.len() {
                    let (a, b, c) = (heavy[x], heavy[y], heavy[z]);
                    let all = [a, b, c];
                    let same_component = self.reachable(a, b) && self.reachable(a, c);
                    if !same_component {
                        continue;
                    }
                    let separates = |s: usize, u: usize, v: usize| !self.connected_avoiding(u, v, s);
                    if !all.iter().enumerate().any(|(k, &s)| {
                        let others: Vec<usize> = all.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
                        separates(s, others[0], others[1])
                    }) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    fn reachable(&self, a: usize, b: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(u) = stack.pop() {
            if u == b {
                return true;
            }
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Vertex sets of the biconnected components (blocks) with at least one
    /// edge.
    pub fn blocks(&self) -> Vec<BTreeSet<usize>> {
        let n = self.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Iterative DFS: (vertex, parent, neighbour iterator position).
            let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, usize::MAX, self.adj[root].iter().copied().collect(), 0));
            while let Some(top) = stack.last_mut() {
                let (u, parent) = (top.0, top.1);
                if top.3 < top.2.len() {
                    let w = top.2[top.3];
                    top.3 += 1;
                    if disc[w] == usize::MAX {
                        edge_stack.push((u, w));
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, u, self.adj[w].iter().copied().collect(), 0));
                    } else if w != parent && disc[w] < disc[u] {
                        edge_stack.push((u, w));
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(pt) = stack.last() {
                        let p = pt.0;
                        low[p] = low[p].min(low[u]);
                        if low[u] >= disc[p] {
                            let mut block = BTreeSet::new();
                            while let Some((a, b)) = edge_stack.pop() {
                                block.insert(a);
                                block.insert(b);
                                if (a, b) == (p, u) {
                                    break;
                                }
                            }
                            out.push(block);
                        }
                    }
                }
            }
        }
        out
    }

    /// A block that is not a clique. Every cycle lies in one block, and a
    /// block is a clique iff every cycle through it induces a complete graph.
    pub fn find_incomplete_cycle(&self) -> Option<BTreeSet<usize>> {
        self.blocks().into_iter().find(|b| {
            b.iter().any(|&u| b.iter().any(|&w| u != w && !self.adj[u].contains(&w)))
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Obstructions {
    pub has_claw: bool,
    pub has_heavy_triple: bool,
    pub has_incomplete_cycle: bool,
}

pub fn graph_obstructions(g: &IntersectionGraph) -> Obstructions {
    Obstructions {
        has_claw: g.find_claw().is_some(),
        has_heavy_triple: g.find_heavy_triple().is_some(),
        has_incomplete_cycle: g.find_incomplete_cycle().is_some(),
    }
}

/// All intervals of a rank-`n` path, positively signed.
pub fn all_intervals(n: usize) -> Vec<Interval> {
    let mut out = Vec::new();
    for lo in 1..=n {
        for hi in lo..=n {
            out.push(Interval::new(lo, hi));
        }
    }
    out
}

/// Interval vectors keyed by coefficient vector, both signs.
pub fn interval_index(n: usize) -> HashMap<Vec<i64>, Interval> {
    let mut m = HashMap::new();
    for t in all_intervals(n) {
        for s in [1, -1] {
            let ti = Interval::signed(t.lo, t.hi, s);
            m.insert(ti.vector(n), ti);
        }
    }
    m
}
