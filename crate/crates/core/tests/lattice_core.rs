use e8cm::changemaker::{ambient_lattice, enumerate_e8_changemakers, Tau};
use e8cm::e8;
use e8cm::lattice_core::GramLattice;
use e8cm::linear::{lambda_gram, recognize_indecomposable};
use e8cm::{BigLattice, Lattice, WideLattice};
use num_bigint::BigInt;
use proptest::prelude::*;

fn lam(p: i64, q: i64) -> Lattice {
    GramLattice::new(lambda_gram(p, q).unwrap().gram).unwrap()
}

fn e8_complement(s_star: [i64; 8]) -> Lattice {
    let t = e8::from_dual(&s_star);
    e8::lattice().orthogonal_complement(&t).unwrap().0
}

#[test]
fn e8_pairings() {
    let l = e8::lattice();
    let mut x = vec![0; 8];
    let mut y = vec![0; 8];
    x[0] = 1;
    y[1] = 1;
    assert_eq!(l.pairing(&x, &y).unwrap(), -1);
    let top = vec![6, 3, 4, 2, 5, 4, 3, 2];
    assert_eq!(l.norm(&top).unwrap(), 2);
    assert_eq!(l.short_vectors(&2).len(), 240);
    assert!(l.is_unimodular());
}

#[test]
fn short_vectors_match_a_box_scan() {
    let l = lam(7, 6);
    let fast = l.short_vectors(&2);
    assert_eq!(fast.len(), 42);
    // Every norm-2 vector of Λ(7,6) has coordinates in {-1, 0, 1}.
    let mut slow = Vec::new();
    for code in 0..3i64.pow(6) {
        let v: Vec<i64> = (0..6).map(|i| (code / 3i64.pow(i)) % 3 - 1).collect();
        if v.iter().any(|&c| c != 0) && l.norm(&v).unwrap() <= 2 {
            slow.push(v);
        }
    }
    slow.sort();
    assert_eq!(fast, slow);
}

#[test]
fn characteristic_vectors_of_e8_and_z() {
    let l = e8::lattice();
    assert_eq!(l.characteristic_vectors(&7), vec![vec![0; 8]]);
    let c = l.characteristic_vectors(&8);
    assert_eq!(c.len(), 241);
    assert!(c.iter().all(|v| v.iter().all(|x| x % 2 == 0)));
    for k in 1..=4usize {
        let z = ambient_lattice(k);
        // Only the Z part varies at norm k; the E8 part must be zero.
        let c = z.characteristic_vectors(&(k as i64));
        assert_eq!(c.len(), 1 << k);
        assert!(c.iter().all(|v| v[..8].iter().all(|&x| x == 0) && v[8..].iter().all(|x| x.abs() == 1)));
    }
}

#[test]
fn discriminants() {
    assert_eq!(lam(7, 6).discriminant(), 7);
    assert_eq!(lam(43, 28).discriminant(), 43);
    let c = e8_complement([0, 0, 1, 0, 0, 0, 0, 0]);
    assert_eq!((c.rank(), c.discriminant()), (7, 14));
    let c = e8_complement([1, 0, 0, 1, 0, 0, 0, 0]);
    assert_eq!((c.rank(), c.discriminant()), (7, 54));
}

#[test]
fn isometry_examples() {
    assert!(lam(7, 3).isometric(&lam(7, 5)).is_some());
    assert!(lam(12, 5).isometric(&lam(12, 7)).is_none());
    let l = lam(27, 16);
    let w = l.isometric(&l).unwrap();
    assert_eq!(w.len(), 6);
    // A witness W satisfies Wᵀ·G·W = G′.
    let (a, b) = (lam(7, 3), lam(7, 5));
    let w = a.isometric(&b).unwrap();
    let g = a.gram();
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0;
            for k in 0..3 {
                for m in 0..3 {
                    s += w[k][i] * g[k][m] * w[m][j];
                }
            }
            assert_eq!(s, b.gram()[i][j]);
        }
    }
}

#[test]
fn decompositions() {
    let parts = e8_complement([0, 0, 1, 0, 0, 0, 0, 0]).decompose().unwrap();
    let mut found: Vec<_> = parts.iter().map(|p| recognize_indecomposable(p).unwrap()).collect();
    found.sort();
    assert_eq!(found, vec![(2, 1), (7, 6)]);
    assert!(parts.iter().any(|p| p.isometric(&lam(7, 6)).is_some()));
    assert_eq!(lam(27, 16).decompose().unwrap().len(), 1);
    assert_eq!(e8::lattice().decompose().unwrap().len(), 1);
}

#[test]
fn wide_scalars_agree() {
    let g: Vec<Vec<i64>> = e8::GRAM.iter().map(|r| r.to_vec()).collect();
    let wide = WideLattice::new(g.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()).unwrap();
    let big = BigLattice::new(g.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
    assert_eq!(wide.short_vectors(&2).len(), 240);
    assert_eq!(big.short_vectors(&BigInt::from(2)).len(), 240);
    let t: Vec<i64> = e8::from_dual(&[1, 0, 0, 1, 0, 0, 0, 0]).to_vec();
    let tw: Vec<i128> = t.iter().map(|&x| x as i128).collect();
    let tb: Vec<BigInt> = t.iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(wide.orthogonal_complement(&tw).unwrap().0.discriminant(), 54);
    assert_eq!(big.orthogonal_complement(&tb).unwrap().0.discriminant(), BigInt::from(54));
}

fn sample_pool() -> Vec<Tau> {
    let mut pool = enumerate_e8_changemakers(-1, None).unwrap();
    pool.extend(enumerate_e8_changemakers(0, None).unwrap().into_iter().filter(|t| t.norm() < 5000));
    pool
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]
    #[test]
    fn complement_discriminant_is_the_norm(seed in any::<prop::sample::Index>()) {
        static POOL: std::sync::OnceLock<Vec<Tau>> = std::sync::OnceLock::new();
        let pool = POOL.get_or_init(sample_pool);
        let t = seed.get(pool);
        let amb = ambient_lattice(t.sigma().len());
        let (c, basis) = amb.orthogonal_complement(&t.ambient_vector()).unwrap();
        prop_assert_eq!(c.rank(), amb.rank() - 1);
        prop_assert_eq!(c.discriminant(), t.norm(), "{}", t);
        for b in &basis {
            prop_assert_eq!(amb.pairing(b, &t.ambient_vector()).unwrap(), 0);
        }
    }

}
