//! Exact arithmetic for positive-definite integer lattices.
//!
//! A lattice is presented by its Gram matrix in a fixed working basis, and
//! vectors are integer coordinate vectors in that basis. Everything is
//! positive definite: sign conventions for negative-definite intersection forms
//! are flipped once at the boundary, never inside these routines.

pub mod enumerate;
pub mod hnf;
pub mod isometry;
pub mod lll;
pub mod matrix;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use enumerate::{enumerate_ellipsoid, Ldl};
use matrix::{bareiss, congruence, dot, mat_vec, Matrix};

pub use lll::Reduced;

/// Integer coordinates of a lattice vector in the working basis.
pub type LatticeVector<T> = Vec<T>;

/// A positive-definite integer lattice given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramLattice<T> {
    gram: Matrix<T>,
}

impl<T: Scalar> GramLattice<T> {
    /// Validates symmetry and positive definiteness (all leading principal
    /// minors positive).
    pub fn new(gram: Matrix<T>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Invalid("a lattice needs positive rank".into()));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, got: row.len() });
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invalid(format!("Gram matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let (_, minors) = bareiss(&gram);
        if minors.len() != n || minors.iter().any(|m| !m.is_positive()) {
            return Err(Error::Invalid("Gram matrix is not positive definite".into()));
        }
        Ok(GramLattice { gram })
    }

    /// Skips validation; callers guarantee the matrix is a congruence transform
    /// of a valid Gram matrix.
    pub(crate) fn from_trusted(gram: Matrix<T>) -> Self {
        debug_assert!(!gram.is_empty());
        GramLattice { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn into_gram(self) -> Matrix<T> {
        self.gram
    }

    fn check_len(&self, v: &[T]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    /// `xᵀ·G·y`.
    pub fn pairing(&self, x: &[T], y: &[T]) -> Result<T> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.pair(x, y))
    }

    pub(crate) fn pair(&self, x: &[T], y: &[T]) -> T {
        dot(x, &mat_vec(&self.gram, y))
    }

    pub fn norm(&self, x: &[T]) -> Result<T> {
        self.pairing(x, x)
    }

    /// `G·v`, the functional `x ↦ ⟨x, v⟩` in coordinates.
    pub fn functional(&self, v: &[T]) -> Vec<T> {
        mat_vec(&self.gram, v)
    }

    /// `|det G|`, the index of the lattice in its dual.
    pub fn discriminant(&self) -> T {
        bareiss(&self.gram).0.abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.discriminant().is_one()
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i].is_even())
    }

    pub fn max_diagonal(&self) -> T {
        self.gram.iter().enumerate().map(|(i, r)| r[i].clone()).max().expect("positive rank")
    }

    /// Orthogonal direct sum in block-diagonal form.
    pub fn direct_sum(parts: &[GramLattice<T>]) -> Result<Self> {
        let n: usize = parts.iter().map(|p| p.rank()).sum();
        let mut g = vec![vec![T::zero(); n]; n];
        let mut off = 0;
        for p in parts {
            for i in 0..p.rank() {
                for j in 0..p.rank() {
                    g[off + i][off + j] = p.gram[i][j].clone();
                }
            }
            off += p.rank();
        }
        GramLattice::new(g)
    }

    /// LLL-reduced presentation of the same lattice.
    pub fn lll(&self) -> Reduced<T> {
        lll::lll_gram(&self.gram)
    }

    /// All nonzero vectors of norm at most `max_norm`, each exactly once, in
    /// lexicographic order of coordinates.
    pub fn short_vectors(&self, max_norm: &T) -> Vec<LatticeVector<T>> {
        let mut out = Vec::new();
        if max_norm.is_negative() {
            return out;
        }
        let ldl = Ldl::new(&self.gram);
        let center = vec![0.0; self.rank()];
        enumerate_ellipsoid(&ldl, &center, max_norm.to_f64_lossy(), |z| {
            if z.iter().all(|&c| c == 0) {
                return;
            }
            let v: Vec<T> = z.iter().map(|&c| T::int(c)).collect();
            if self.pair(&v, &v) <= *max_norm {
                out.push(v);
            }
        });
        out.sort();
        out
    }

    /// Basis of `{x : ⟨x, t⟩ = 0}` from the integer kernel of the functional
    /// `x ↦ ⟨x, t⟩`, LLL-reduced, together with its Gram matrix.
    pub fn orthogonal_complement(&self, t: &[T]) -> Result<(GramLattice<T>, Vec<LatticeVector<T>>)> {
        self.check_len(t)?;
        if t.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        if self.rank() == 1 {
            return Err(Error::Invalid("the complement of a vector in a rank-one lattice is zero".into()));
        }
        let f = self.functional(t);
        let kernel = hnf::integer_kernel(&[f], self.rank());
        Ok(self.sublattice(&kernel))
    }

    /// The sublattice spanned by independent `rows`, LLL-reduced; returns its
    /// Gram matrix and the reduced basis in ambient coordinates.
    pub fn sublattice(&self, rows: &[Vec<T>]) -> (GramLattice<T>, Vec<LatticeVector<T>>) {
        let g = congruence(rows, &self.gram);
        let red = lll::lll_gram(&g);
        let basis = matrix::mat_mul(&red.basis, rows);
        (GramLattice::from_trusted(red.gram), basis)
    }

    /// `v` is reducible when `v = x + y` with `x, y ≠ 0` and `⟨x, y⟩ ≥ 0`.
    ///
    /// The search is over `x` with `|x| ≤ |v| − 1`. From
    /// `|v| = |x| + |y| + 2⟨x, y⟩ ≥ |x| + |y|` and `|y| ≥ 1` every witness has
    /// `|x| ≤ |v| − 1`, and such an `x` witnesses reducibility exactly when
    /// `⟨x, v⟩ ≥ |x|`, because `⟨x, y⟩ = ⟨x, v⟩ − |x|`.
    pub fn is_irreducible(&self, v: &[T]) -> Result<bool> {
        self.check_len(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let nv = self.pair(v, v);
        let f = self.functional(v);
        let bound = nv - T::one();
        let reducible = self.short_vectors(&bound).iter().any(|x| dot(x, &f) >= self.pair(x, x));
        Ok(!reducible)
    }

    /// `v` is breakable when `v = x + y` with `|x|, |y| ≥ 3` and `⟨x, y⟩ = −1`.
    ///
    /// Then `|v| = |x| + |y| − 2`, so `|x| = |v| + 2 − |y| ≤ |v| − 1`; the search
    /// covers `3 ≤ |x| ≤ |v| − 1`.
    pub fn is_breakable(&self, v: &[T]) -> Result<bool> {
        self.check_len(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(self.breaking_witness(v).is_some())
    }

    pub fn breaking_witness(&self, v: &[T]) -> Option<(LatticeVector<T>, LatticeVector<T>)> {
        let nv = self.pair(v, v);
        let three = T::int(3);
        let f = self.functional(v);
        for x in self.short_vectors(&(nv - T::one())) {
            let nx = self.pair(&x, &x);
            if nx < three {
                continue;
            }
            // ⟨x, v − x⟩ = ⟨x, v⟩ − |x|.
            if dot(&x, &f) - nx.clone() != -T::one() {
                continue;
            }
            let y: Vec<T> = v.iter().zip(&x).map(|(a, b)| a.clone() - b.clone()).collect();
            if self.pair(&y, &y) >= three {
                return Some((x, y));
            }
        }
        None
    }

    /// Characteristic vectors `c` (with `⟨c, v⟩ ≡ |v| mod 2` for all `v`) of norm
    /// at most `max_norm`, in lexicographic order.
    ///
    /// A representative `χ` solves `G·χ ≡ diag(G) (mod 2)`; the full set is
    /// `χ + L′` with `L′ = {u : G·u ≡ 0 (mod 2)}`, whose basis comes from a
    /// Hermite normal form. Lattices without characteristic vectors in `L`
    /// return an empty list.
    pub fn characteristic_vectors(&self, max_norm: &T) -> Vec<LatticeVector<T>> {
        let n = self.rank();
        let Some((chi, kernel)) = solve_mod2(&self.gram) else {
            return Vec::new();
        };
        let two = T::int(2);
        let mut gens: Vec<Vec<T>> = kernel
            .iter()
            .map(|k| k.iter().map(|&b| if b { T::one() } else { T::zero() }).collect())
            .collect();
        for i in 0..n {
            let mut e = vec![T::zero(); n];
            e[i] = two.clone();
            gens.push(e);
        }
        let basis = hnf::row_hnf(&gens);
        debug_assert_eq!(basis.len(), n);
        let chi: Vec<T> = chi.iter().map(|&b| if b { T::one() } else { T::zero() }).collect();
        let sub_gram = congruence(&basis, &self.gram);
        // Center a0 with a0ᵀ·basis = −χ.
        let inv = matrix::rational_inverse(&basis).expect("basis of a full-rank sublattice");
        let center: Vec<f64> = (0..n)
            .map(|j| {
                let mut acc = num_rational::BigRational::zero();
                for (i, c) in chi.iter().enumerate() {
                    acc = acc - c.to_rational() * inv[i][j].clone();
                }
                acc.to_f64().unwrap_or(0.0)
            })
            .collect();
        let ldl = Ldl::new(&sub_gram);
        let mut out = Vec::new();
        enumerate_ellipsoid(&ldl, &center, max_norm.to_f64_lossy(), |a| {
            let mut c = chi.clone();
            for (k, &ak) in a.iter().enumerate() {
                if ak != 0 {
                    let ak = T::int(ak);
                    for (cj, bj) in c.iter_mut().zip(&basis[k]) {
                        *cj = cj.clone() + ak.clone() * bj.clone();
                    }
                }
            }
            if self.pair(&c, &c) <= *max_norm {
                out.push(c);
            }
        });
        out.sort();
        out
    }

    /// Whether `c` is characteristic.
    pub fn is_characteristic(&self, c: &[T]) -> bool {
        let f = self.functional(c);
        f.iter().enumerate().all(|(i, x)| (x.clone() - self.gram[i][i].clone()).is_even())
    }

    /// Irreducible vectors with norm at most `bound`, in lexicographic order.
    pub fn irreducible_vectors(&self, bound: &T) -> Vec<LatticeVector<T>> {
        let mut vecs: Vec<(T, Vec<T>)> = self.short_vectors(bound).into_iter().map(|v| (self.pair(&v, &v), v)).collect();
        vecs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = Vec::new();
        for (idx, (nv, v)) in vecs.iter().enumerate() {
            let f = self.functional(v);
            let reducible = vecs[..idx]
                .iter()
                .take_while(|(nx, _)| nx < nv)
                .any(|(nx, x)| dot(x, &f) >= *nx);
            if !reducible {
                out.push(v.clone());
            }
        }
        out.sort();
        out
    }

    /// Indecomposable orthogonal summands.
    ///
    /// The irreducible vectors up to a norm bound are collected; once they
    /// generate the lattice, the classes of the "not orthogonal" relation span
    /// the summands. The bound starts at the largest diagonal entry of an LLL
    /// basis and grows until generation, up to a fixed number of rounds.
    pub fn decompose(&self) -> Result<Vec<GramLattice<T>>> {
        Ok(self.decompose_with_bases()?.into_iter().map(|(l, _)| l).collect())
    }

    /// As [`decompose`](Self::decompose), also returning each summand's basis in
    /// the coordinates of `self`.
    pub fn decompose_with_bases(&self) -> Result<Vec<(GramLattice<T>, Vec<LatticeVector<T>>)>> {
        let n = self.rank();
        let red = self.lll();
        let reduced = GramLattice::from_trusted(red.gram.clone());
        let mut bound = reduced.max_diagonal();
        let mut irr = Vec::new();
        let mut generated = false;
        for _ in 0..6 {
            irr = reduced.irreducible_vectors(&bound);
            let h = hnf::row_hnf(&irr);
            if h.len() == n && bareiss(&h).0.abs().is_one() {
                generated = true;
                break;
            }
            bound = bound.clone() + bound.clone();
        }
        if !generated {
            return Err(Error::BoundExhausted(format!(
                "irreducible vectors of norm ≤ {bound} do not generate the lattice"
            )));
        }
        // One representative per ± pair.
        irr.retain(|v| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()));
        let m = irr.len();
        let funcs: Vec<Vec<T>> = irr.iter().map(|v| reduced.functional(v)).collect();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..m {
            for j in i + 1..m {
                if !dot(&irr[j], &funcs[i]).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut classes: Vec<Vec<Vec<T>>> = Vec::new();
        let mut root_index: Vec<Option<usize>> = vec![None; m];
        for i in 0..m {
            let r = find(&mut parent, i);
            let slot = match root_index[r] {
                Some(s) => s,
                None => {
                    classes.push(Vec::new());
                    root_index[r] = Some(classes.len() - 1);
                    classes.len() - 1
                }
            };
            classes[slot].push(irr[i].clone());
        }
        let mut parts = Vec::new();
        for class in classes {
            let span = hnf::row_hnf(&class);
            let (lat, basis) = reduced.sublattice(&span);
            // Back to the coordinates of `self`.
            let basis = matrix::mat_mul(&basis, &red.basis);
            parts.push((lat, basis));
        }
        let total: usize = parts.iter().map(|(l, _)| l.rank()).sum();
        assert_eq!(total, n, "summand ranks must add up to the lattice rank");
        parts.sort_by(|a, b| {
            b.0.rank()
                .cmp(&a.0.rank())
                .then_with(|| b.0.discriminant().cmp(&a.0.discriminant()))
                .then_with(|| a.0.gram.cmp(&b.0.gram))
        });
        Ok(parts)
    }

    /// Number of vectors of each norm `0..=bound` (index = norm).
    pub fn norm_counts(&self, bound: &T) -> Vec<usize> {
        let b = bound.to_usize().unwrap_or(0);
        let mut counts = vec![0usize; b + 1];
        counts[0] = 1;
        for v in self.short_vectors(bound) {
            let nv = self.pair(&v, &v).to_usize().expect("norm fits usize");
            counts[nv] += 1;
        }
        counts
    }

    /// A basis change `U` with `Uᵀ·G₁·U = G₂`, if the lattices are isometric.
    pub fn isometric(&self, other: &GramLattice<T>) -> Option<Matrix<T>> {
        isometry::find_isometry(self, other)
    }
}

/// Solves `G·x ≡ diag(G) (mod 2)`; returns a solution and a basis of the
/// kernel of `G mod 2`.
fn solve_mod2<T: Scalar>(g: &[Vec<T>]) -> Option<(Vec<bool>, Vec<Vec<bool>>)> {
    let n = g.len();
    let mut a: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            let mut r: Vec<bool> = g[i].iter().map(|x| x.is_odd()).collect();
            r.push(g[i][i].is_odd());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| a[r][col]) else { continue };
        a.swap(row, p);
        for r in 0..n {
            if r != row && a[r][col] {
                let src = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| r[n]) {
        return None;
    }
    let mut sol = vec![false; n];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = a[r][n];
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut k = vec![false; n];
            k[f] = true;
            for (r, &c) in pivots.iter().enumerate() {
                k[c] = a[r][f];
            }
            k
        })
        .collect();
    Some((sol, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(norms: &[i64]) -> GramLattice<i64> {
        let n = norms.len();
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = norms[i];
            if i + 1 < n {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
        }
        GramLattice::new(g).unwrap()
    }

    #[test]
    fn rank_one_readoff() {
        let l = GramLattice::new(vec![vec![2i64]]).unwrap();
        assert_eq!(l.pairing(&[1], &[1]).unwrap(), 2);
        assert_eq!(l.discriminant(), 2);
        assert_eq!(l.short_vectors(&2), vec![vec![-1], vec![1]]);
        assert!(l.pairing(&[1, 0], &[1]).is_err());
    }

    #[test]
    fn rejects_bad_gram() {
        assert!(GramLattice::new(vec![vec![1i64, 2], vec![2, 1]]).is_err());
        assert!(GramLattice::new(vec![vec![2i64, 1], vec![0, 2]]).is_err());
    }

    #[test]
    fn path_lattice_roots() {
        let a6 = lam(&[2; 6]);
        assert_eq!(a6.discriminant(), 7);
        assert_eq!(a6.short_vectors(&2).len(), 42);
    }

    #[test]
    fn complement_in_z2() {
        let z2 = GramLattice::new(vec![vec![1i64, 0], vec![0, 1]]).unwrap();
        let (c, basis) = z2.orthogonal_complement(&[1, 1]).unwrap();
        assert_eq!(c.gram(), &vec![vec![2]]);
        assert!(basis == vec![vec![1, -1]] || basis == vec![vec![-1, 1]]);
        assert_eq!(z2.orthogonal_complement(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn irreducibility_and_breakability() {
        let a6 = lam(&[2; 6]);
        assert!(!a6.is_irreducible(&[2, 0, 0, 0, 0, 0]).unwrap());
        assert!(a6.is_irreducible(&[1, 1, 0, 0, 0, 0]).unwrap());
        let l12 = lam(&[3, 2, 3]);
        assert!(l12.is_breakable(&[1, 1, 1]).unwrap());
        let l27 = lam(&[2, 4, 2, 2, 2, 2]);
        assert!(!l27.is_breakable(&[1; 6]).unwrap());
        assert!(!lam(&[2]).is_breakable(&[1]).unwrap());
    }

    #[test]
    fn characteristic_vectors_of_odd_and_even_lattices() {
        let z3 = GramLattice::new(vec![vec![1i64, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let c = z3.characteristic_vectors(&3);
        assert_eq!(c.len(), 8);
        assert!(c.iter().all(|v| v.iter().all(|x| x.abs() == 1)));
        let a2 = lam(&[2, 2]);
        let c = a2.characteristic_vectors(&8);
        assert!(c.iter().all(|v| a2.is_characteristic(v)));
        assert!(c.contains(&vec![0, 0]));
    }

    #[test]
    fn decomposition_of_block_sum() {
        let l = GramLattice::direct_sum(&[lam(&[2]), lam(&[3])]).unwrap();
        let parts = l.decompose().unwrap();
        let grams: Vec<_> = parts.iter().map(|p| p.gram().clone()).collect();
        assert_eq!(grams, vec![vec![vec![3]], vec![vec![2]]]);
        assert_eq!(lam(&[2, 4, 2, 2, 2, 2]).decompose().unwrap().len(), 1);
    }

    #[test]
    fn mod2_solver_handles_even_lattices() {
        let (x, k) = solve_mod2(&[vec![2i64, -1], vec![-1, 2]]).unwrap();
        assert_eq!(x, vec![false, false]);
        assert!(k.is_empty());
    }
}
