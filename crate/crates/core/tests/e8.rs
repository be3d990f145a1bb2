use std::time::Instant;

use e8cm::e8::*;

#[test]
fn root_counts_and_table() {
    let start = Instant::now();
    let all = roots();
    assert_eq!(all.len(), 240);
    assert!(all.iter().all(|r| r.norm() == 2));
    let pos = positive_roots();
    assert_eq!(pos.len(), 120);
    for (k, r) in pos.iter().enumerate() {
        assert_eq!(r.index, k + 1);
        assert_eq!(r.coords, POSITIVE_ROOT_TABLE[k]);
    }
    // Every root is a positive root or the negative of one.
    for r in &all {
        let c = r.simple();
        let p = if c.iter().all(|&x| x >= 0) { c } else { r.neg().simple() };
        assert!(POSITIVE_ROOT_TABLE.contains(&p), "{c:?}");
    }
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn named_roots() {
    assert_eq!(positive_root(1).coords, [0, 0, 0, 0, 0, 0, 0, 1]);
    assert_eq!(positive_root(120).coords, [6, 3, 4, 2, 5, 4, 3, 2]);
    assert_eq!(highest_root().height(), 29);
}

#[test]
fn poset_structure() {
    let pos = positive_roots();
    assert!(root_leq(&positive_root(1), &positive_root(120)));
    let maxima: Vec<_> = pos.iter().filter(|a| !pos.iter().any(|b| b.index != a.index && root_leq(a, b))).collect();
    assert_eq!(maxima.len(), 1);
    assert_eq!(maxima[0].index, 120);
    let mins = minimal_elements(&not_below(113));
    assert_eq!(mins.len(), 1);
    assert_eq!(mins[0].index, 105);
    // Covering steps raise the height by exactly one.
    let edges = hasse_edges();
    assert!(edges.iter().all(|&(a, b)| positive_root(b).height() == positive_root(a).height() + 1));
    // Eight simple roots are the minimal elements of the whole poset.
    assert_eq!(minimal_elements(pos).len(), 8);
}

#[test]
fn gram_identities() {
    let (a, inv) = gram_and_inverse();
    assert_eq!(a[0][0], 2);
    assert_eq!(a[0][1], -1);
    for i in 0..8 {
        for j in 0..8 {
            let s: i64 = (0..8).map(|k| a[i][k] * inv[k][j]).sum();
            assert_eq!(s, i64::from(i == j));
        }
    }
    let diag: Vec<i64> = (0..8).map(|i| inv[i][i]).collect();
    assert_eq!(diag, vec![30, 8, 14, 4, 20, 12, 6, 2]);
    assert_eq!(lattice().discriminant(), 1);
    assert!(lattice().is_even());
}

#[test]
fn dual_coordinates_round_trip() {
    for r in roots() {
        let d = r.dual();
        assert_eq!(from_dual(&d), r.simple());
        assert_eq!(norm_from_dual(&d), 2);
        assert_eq!(pair_simple_dual(&r.simple(), &d), 2);
    }
}

#[test]
fn every_root_reduces_to_the_highest() {
    let top = highest_root().vector();
    for r in roots() {
        let (red, m) = weyl_reduce(&r);
        assert_eq!(red, top, "{:?}", r.simple());
        assert!(red.in_chamber());
        let applied: Vec<i64> = (0..8).map(|i| (0..8).map(|j| m[i][j] * r.simple()[j]).sum()).collect();
        assert_eq!(applied, red.simple().to_vec());
    }
    let (red, _) = weyl_reduce(&top.neg());
    assert_eq!(red, top);
    // A chamber vector is left alone.
    let v = E8Vector::from_dual([1, 0, 2, 0, 0, 3, 0, 0]);
    assert_eq!(weyl_reduce(&v).0, v);
}
