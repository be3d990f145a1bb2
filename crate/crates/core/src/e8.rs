//! The E8 lattice in the simple-root basis `e₁,…,e₈`.
//!
//! The Dynkin diagram is the chain `e₄ – e₃ – e₁ – e₅ – e₆ – e₇ – e₈` with `e₂`
//! attached to `e₁`. Coordinates are 0-based in code, so `e₁` is index 0.
//! Dual coordinates `s*ᵢ = ⟨s, eᵢ⟩` are `A·s` for the Gram matrix `A`, and the
//! norm is `s*ᵀ·A⁻¹·s*`.

use std::sync::OnceLock;

use crate::lattice_core::GramLattice;

/// Gram matrix of the simple roots.
pub const GRAM: [[i64; 8]; 8] = [
    [2, -1, -1, 0, -1, 0, 0, 0],
    [-1, 2, 0, 0, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, 0, 0, 0, 0],
    [-1, 0, 0, 0, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

/// Inverse of [`GRAM`]; row `i` holds the simple coordinates of the fundamental
/// weight `e*ᵢ`.
pub const GRAM_INV: [[i64; 8]; 8] = [
    [30, 15, 20, 10, 24, 18, 12, 6],
    [15, 8, 10, 5, 12, 9, 6, 3],
    [20, 10, 14, 7, 16, 12, 8, 4],
    [10, 5, 7, 4, 8, 6, 4, 2],
    [24, 12, 16, 8, 20, 15, 10, 5],
    [18, 9, 12, 6, 15, 12, 8, 4],
    [12, 6, 8, 4, 10, 8, 6, 3],
    [6, 3, 4, 2, 5, 4, 3, 2],
];

/// Twice the simple roots in an orthonormal basis of R⁸ (row `i` is `2eᵢ`).
/// Lattice vectors there have all-integer or all-half-integer coordinates, so
/// doubling keeps everything integral.
pub const DOUBLED_STANDARD: [[i64; 8]; 8] = [
    [0, -2, 2, 0, 0, 0, 0, 0],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [1, -1, -1, -1, -1, -1, -1, 1],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

/// The 120 positive roots in simple coordinates, indexed `R₁ … R₁₂₀`
/// (row `k` is `R_{k+1}`). Rows are in ascending lexicographic order.
pub const POSITIVE_ROOT_TABLE: [[i64; 8]; 120] = [
    [0, 0, 0, 0, 0, 0, 0, 1], // 1
    [0, 0, 0, 0, 0, 0, 1, 0], // 2
    [0, 0, 0, 0, 0, 0, 1, 1], // 3
    [0, 0, 0, 0, 0, 1, 0, 0], // 4
    [0, 0, 0, 0, 0, 1, 1, 0], // 5
    [0, 0, 0, 0, 0, 1, 1, 1], // 6
    [0, 0, 0, 0, 1, 0, 0, 0], // 7
    [0, 0, 0, 0, 1, 1, 0, 0], // 8
    [0, 0, 0, 0, 1, 1, 1, 0], // 9
    [0, 0, 0, 0, 1, 1, 1, 1], // 10
    [0, 0, 0, 1, 0, 0, 0, 0], // 11
    [0, 0, 1, 0, 0, 0, 0, 0], // 12
    [0, 0, 1, 1, 0, 0, 0, 0], // 13
    [0, 1, 0, 0, 0, 0, 0, 0], // 14
    [1, 0, 0, 0, 0, 0, 0, 0], // 15
    [1, 0, 0, 0, 1, 0, 0, 0], // 16
    [1, 0, 0, 0, 1, 1, 0, 0], // 17
    [1, 0, 0, 0, 1, 1, 1, 0], // 18
    [1, 0, 0, 0, 1, 1, 1, 1], // 19
    [1, 0, 1, 0, 0, 0, 0, 0], // 20
    [1, 0, 1, 0, 1, 0, 0, 0], // 21
    [1, 0, 1, 0, 1, 1, 0, 0], // 22
    [1, 0, 1, 0, 1, 1, 1, 0], // 23
    [1, 0, 1, 0, 1, 1, 1, 1], // 24
    [1, 0, 1, 1, 0, 0, 0, 0], // 25
    [1, 0, 1, 1, 1, 0, 0, 0], // 26
    [1, 0, 1, 1, 1, 1, 0, 0], // 27
    [1, 0, 1, 1, 1, 1, 1, 0], // 28
    [1, 0, 1, 1, 1, 1, 1, 1], // 29
    [1, 1, 0, 0, 0, 0, 0, 0], // 30
    [1, 1, 0, 0, 1, 0, 0, 0], // 31
    [1, 1, 0, 0, 1, 1, 0, 0], // 32
    [1, 1, 0, 0, 1, 1, 1, 0], // 33
    [1, 1, 0, 0, 1, 1, 1, 1], // 34
    [1, 1, 1, 0, 0, 0, 0, 0], // 35
    [1, 1, 1, 0, 1, 0, 0, 0], // 36
    [1, 1, 1, 0, 1, 1, 0, 0], // 37
    [1, 1, 1, 0, 1, 1, 1, 0], // 38
    [1, 1, 1, 0, 1, 1, 1, 1], // 39
    [1, 1, 1, 1, 0, 0, 0, 0], // 40
    [1, 1, 1, 1, 1, 0, 0, 0], // 41
    [1, 1, 1, 1, 1, 1, 0, 0], // 42
    [1, 1, 1, 1, 1, 1, 1, 0], // 43
    [1, 1, 1, 1, 1, 1, 1, 1], // 44
    [2, 1, 1, 0, 1, 0, 0, 0], // 45
    [2, 1, 1, 0, 1, 1, 0, 0], // 46
    [2, 1, 1, 0, 1, 1, 1, 0], // 47
    [2, 1, 1, 0, 1, 1, 1, 1], // 48
    [2, 1, 1, 0, 2, 1, 0, 0], // 49
    [2, 1, 1, 0, 2, 1, 1, 0], // 50
    [2, 1, 1, 0, 2, 1, 1, 1], // 51
    [2, 1, 1, 0, 2, 2, 1, 0], // 52
    [2, 1, 1, 0, 2, 2, 1, 1], // 53
    [2, 1, 1, 0, 2, 2, 2, 1], // 54
    [2, 1, 1, 1, 1, 0, 0, 0], // 55
    [2, 1, 1, 1, 1, 1, 0, 0], // 56
    [2, 1, 1, 1, 1, 1, 1, 0], // 57
    [2, 1, 1, 1, 1, 1, 1, 1], // 58
    [2, 1, 1, 1, 2, 1, 0, 0], // 59
    [2, 1, 1, 1, 2, 1, 1, 0], // 60
    [2, 1, 1, 1, 2, 1, 1, 1], // 61
    [2, 1, 1, 1, 2, 2, 1, 0], // 62
    [2, 1, 1, 1, 2, 2, 1, 1], // 63
    [2, 1, 1, 1, 2, 2, 2, 1], // 64
    [2, 1, 2, 1, 1, 0, 0, 0], // 65
    [2, 1, 2, 1, 1, 1, 0, 0], // 66
    [2, 1, 2, 1, 1, 1, 1, 0], // 67
    [2, 1, 2, 1, 1, 1, 1, 1], // 68
    [2, 1, 2, 1, 2, 1, 0, 0], // 69
    [2, 1, 2, 1, 2, 1, 1, 0], // 70
    [2, 1, 2, 1, 2, 1, 1, 1], // 71
    [2, 1, 2, 1, 2, 2, 1, 0], // 72
    [2, 1, 2, 1, 2, 2, 1, 1], // 73
    [2, 1, 2, 1, 2, 2, 2, 1], // 74
    [3, 1, 2, 1, 2, 1, 0, 0], // 75
    [3, 1, 2, 1, 2, 1, 1, 0], // 76
    [3, 1, 2, 1, 2, 1, 1, 1], // 77
    [3, 1, 2, 1, 2, 2, 1, 0], // 78
    [3, 1, 2, 1, 2, 2, 1, 1], // 79
    [3, 1, 2, 1, 2, 2, 2, 1], // 80
    [3, 1, 2, 1, 3, 2, 1, 0], // 81
    [3, 1, 2, 1, 3, 2, 1, 1], // 82
    [3, 1, 2, 1, 3, 2, 2, 1], // 83
    [3, 1, 2, 1, 3, 3, 2, 1], // 84
    [3, 2, 2, 1, 2, 1, 0, 0], // 85
    [3, 2, 2, 1, 2, 1, 1, 0], // 86
    [3, 2, 2, 1, 2, 1, 1, 1], // 87
    [3, 2, 2, 1, 2, 2, 1, 0], // 88
    [3, 2, 2, 1, 2, 2, 1, 1], // 89
    [3, 2, 2, 1, 2, 2, 2, 1], // 90
    [3, 2, 2, 1, 3, 2, 1, 0], // 91
    [3, 2, 2, 1, 3, 2, 1, 1], // 92
    [3, 2, 2, 1, 3, 2, 2, 1], // 93
    [3, 2, 2, 1, 3, 3, 2, 1], // 94
    [4, 2, 2, 1, 3, 2, 1, 0], // 95
    [4, 2, 2, 1, 3, 2, 1, 1], // 96
    [4, 2, 2, 1, 3, 2, 2, 1], // 97
    [4, 2, 2, 1, 3, 3, 2, 1], // 98
    [4, 2, 2, 1, 4, 3, 2, 1], // 99
    [4, 2, 3, 1, 3, 2, 1, 0], // 100
    [4, 2, 3, 1, 3, 2, 1, 1], // 101
    [4, 2, 3, 1, 3, 2, 2, 1], // 102
    [4, 2, 3, 1, 3, 3, 2, 1], // 103
    [4, 2, 3, 1, 4, 3, 2, 1], // 104
    [4, 2, 3, 2, 3, 2, 1, 0], // 105
    [4, 2, 3, 2, 3, 2, 1, 1], // 106
    [4, 2, 3, 2, 3, 2, 2, 1], // 107
    [4, 2, 3, 2, 3, 3, 2, 1], // 108
    [4, 2, 3, 2, 4, 3, 2, 1], // 109
    [5, 2, 3, 1, 4, 3, 2, 1], // 110
    [5, 2, 3, 2, 4, 3, 2, 1], // 111
    [5, 2, 4, 2, 4, 3, 2, 1], // 112
    [5, 3, 3, 1, 4, 3, 2, 1], // 113
    [5, 3, 3, 2, 4, 3, 2, 1], // 114
    [5, 3, 4, 2, 4, 3, 2, 1], // 115
    [6, 3, 4, 2, 4, 3, 2, 1], // 116
    [6, 3, 4, 2, 5, 3, 2, 1], // 117
    [6, 3, 4, 2, 5, 4, 2, 1], // 118
    [6, 3, 4, 2, 5, 4, 3, 1], // 119
    [6, 3, 4, 2, 5, 4, 3, 2], // 120
];

pub fn gram_and_inverse() -> ([[i64; 8]; 8], [[i64; 8]; 8]) {
    (GRAM, GRAM_INV)
}

pub fn lattice() -> GramLattice<i64> {
    GramLattice::new(GRAM.iter().map(|r| r.to_vec()).collect()).expect("E8 Gram matrix is positive definite")
}

/// `A·v` for an 8-vector.
pub fn to_dual(simple: &[i64; 8]) -> [i64; 8] {
    apply(&GRAM, simple)
}

/// `A⁻¹·v*`; integral because E8 is unimodular.
pub fn from_dual(dual: &[i64; 8]) -> [i64; 8] {
    apply(&GRAM_INV, dual)
}

fn apply(m: &[[i64; 8]; 8], v: &[i64; 8]) -> [i64; 8] {
    let mut out = [0i64; 8];
    for i in 0..8 {
        out[i] = (0..8).map(|j| m[i][j] * v[j]).sum();
    }
    out
}

/// Norm computed from dual coordinates, `s*ᵀ·A⁻¹·s*`.
pub fn norm_from_dual(dual: &[i64; 8]) -> i64 {
    let w = apply(&GRAM_INV, dual);
    (0..8).map(|i| dual[i] * w[i]).sum()
}

/// ⟨r, s⟩ for `r` in simple coordinates and `s` in dual coordinates.
pub fn pair_simple_dual(r: &[i64; 8], dual: &[i64; 8]) -> i64 {
    (0..8).map(|i| r[i] * dual[i]).sum()
}

/// A vector of E8, stored by simple-root coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct E8Vector {
    simple: [i64; 8],
}

impl E8Vector {
    pub const ZERO: E8Vector = E8Vector { simple: [0; 8] };

    pub fn from_simple(simple: [i64; 8]) -> Self {
        E8Vector { simple }
    }

    pub fn from_dual(dual: [i64; 8]) -> Self {
        E8Vector { simple: from_dual(&dual) }
    }

    pub fn simple(&self) -> [i64; 8] {
        self.simple
    }

    pub fn dual(&self) -> [i64; 8] {
        to_dual(&self.simple)
    }

    pub fn norm(&self) -> i64 {
        pair_simple_dual(&self.simple, &self.dual())
    }

    pub fn pairing(&self, other: &E8Vector) -> i64 {
        pair_simple_dual(&self.simple, &other.dual())
    }

    pub fn is_zero(&self) -> bool {
        self.simple == [0; 8]
    }

    /// In the fundamental Weyl chamber: every dual coordinate is nonnegative.
    pub fn in_chamber(&self) -> bool {
        self.dual().iter().all(|&x| x >= 0)
    }

    /// Doubled coordinates in the orthonormal model of R⁸.
    pub fn doubled_standard(&self) -> [i64; 8] {
        let mut out = [0i64; 8];
        for (k, row) in DOUBLED_STANDARD.iter().enumerate() {
            for (o, x) in out.iter_mut().zip(row) {
                *o += self.simple[k] * x;
            }
        }
        out
    }

    pub fn add(&self, other: &E8Vector) -> E8Vector {
        let mut s = self.simple;
        for (a, b) in s.iter_mut().zip(other.simple) {
            *a += b;
        }
        E8Vector { simple: s }
    }

    pub fn neg(&self) -> E8Vector {
        E8Vector { simple: self.simple.map(|x| -x) }
    }
}

/// A positive root with its index `1..=120`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PositiveRoot {
    pub index: usize,
    pub coords: [i64; 8],
}

impl PositiveRoot {
    pub fn vector(&self) -> E8Vector {
        E8Vector::from_simple(self.coords)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

/// All 240 roots, regenerated as the norm-2 vectors of the lattice, in
/// lexicographic order of simple coordinates.
pub fn roots() -> Vec<E8Vector> {
    lattice()
        .short_vectors(&2)
        .into_iter()
        .map(|v| E8Vector::from_simple(v.try_into().expect("rank 8")))
        .collect()
}

/// The positive roots with their table indices.
///
/// The set is regenerated from [`roots`], sorted lexicographically, and checked
/// against [`POSITIVE_ROOT_TABLE`]; the table is the source of indices.
pub fn positive_roots() -> &'static [PositiveRoot] {
    static CACHE: OnceLock<Vec<PositiveRoot>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut pos: Vec<[i64; 8]> =
            roots().into_iter().map(|r| r.simple()).filter(|c| c.iter().all(|&x| x >= 0)).collect();
        pos.sort();
        assert_eq!(pos.len(), 120, "E8 has 120 positive roots");
        assert!(pos.iter().zip(POSITIVE_ROOT_TABLE.iter()).all(|(a, b)| a == b), "regenerated roots differ from the table");
        pos.into_iter().enumerate().map(|(i, coords)| PositiveRoot { index: i + 1, coords }).collect()
    })
}

/// `R_index` for `1 ≤ index ≤ 120`.
pub fn positive_root(index: usize) -> PositiveRoot {
    assert!((1..=120).contains(&index), "root index out of range");
    PositiveRoot { index, coords: POSITIVE_ROOT_TABLE[index - 1] }
}

/// The highest root `R₁₂₀`.
pub fn highest_root() -> PositiveRoot {
    positive_root(120)
}

/// Componentwise order on simple coordinates.
pub fn root_leq(a: &PositiveRoot, b: &PositiveRoot) -> bool {
    a.coords.iter().zip(&b.coords).all(|(x, y)| x <= y)
}

/// Covering pairs `(i, j)` (indices) with `Rᵢ < Rⱼ` and nothing strictly
/// between, sorted.
pub fn hasse_edges() -> Vec<(usize, usize)> {
    let pr = positive_roots();
    let mut edges = Vec::new();
    for a in pr {
        for b in pr {
            if a.index == b.index || !root_leq(a, b) {
                continue;
            }
            let between = pr.iter().any(|c| c.index != a.index && c.index != b.index && root_leq(a, c) && root_leq(c, b));
            if !between {
                edges.push((a.index, b.index));
            }
        }
    }
    edges.sort();
    edges
}

/// Minimal elements of a set of positive roots under [`root_leq`].
pub fn minimal_elements(set: &[PositiveRoot]) -> Vec<PositiveRoot> {
    set.iter()
        .filter(|a| !set.iter().any(|b| b.index != a.index && root_leq(b, a)))
        .copied()
        .collect()
}

/// The positive roots not below `R_index`.
pub fn not_below(index: usize) -> Vec<PositiveRoot> {
    let r = positive_root(index);
    positive_roots().iter().filter(|x| !root_leq(x, &r)).copied().collect()
}

/// Reduction into the fundamental Weyl chamber. Reflections
/// `v ↦ v − ⟨v, eᵢ⟩·eᵢ` are applied at the lowest index with a negative dual
/// coordinate until none remain. The returned matrix `M` (acting on simple
/// coordinates) satisfies `M·v = result` and is an isometry.
pub fn weyl_reduce(v: &E8Vector) -> (E8Vector, [[i64; 8]; 8]) {
    let mut m = [[0i64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut cur = v.simple;
    loop {
        let dual = to_dual(&cur);
        let Some(i) = (0..8).find(|&i| dual[i] < 0) else { break };
        cur[i] -= dual[i];
        // Row i of the reflection is e_iᵀ − A_i; apply it to the accumulated matrix.
        let mut new_row = [0i64; 8];
        for j in 0..8 {
            new_row[j] = m[i][j] - (0..8).map(|k| GRAM[i][k] * m[k][j]).sum::<i64>();
        }
        m[i] = new_row;
    }
    (E8Vector::from_simple(cur), m)
}
