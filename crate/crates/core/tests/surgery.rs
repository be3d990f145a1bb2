use e8cm::changemaker::{enumerate_e8_changemakers, is_e8_changemaker, Tau};
use e8cm::linear::lens_equivalent;
use e8cm::surgery::*;
use proptest::prelude::*;

fn tau(s: [i64; 8], sigma: &[i64]) -> Tau {
    Tau::normalized(s, sigma.to_vec()).unwrap()
}

#[test]
fn genus_examples() {
    assert_eq!(genus_from_tau(&tau([0, 0, 1, 0, 0, 0, 0, 0], &[])).unwrap(), 7);
    assert_eq!(genus_from_tau(&tau([1, 0, 0, 1, 0, 0, 0, 0], &[])).unwrap(), 27);
    let row = family_row("A1-", 2).unwrap();
    assert_eq!(genus_from_tau(&row.tau().unwrap()).unwrap(), 21);
}

#[test]
fn torsion_of_the_unknot_like_vector() {
    let t = tau([0; 8], &[1, 1]);
    assert_eq!(t.norm(), 2);
    assert_eq!(genus_from_tau(&t).unwrap(), 0);
    assert_eq!(torsion_coefficients(&t).unwrap(), vec![0]);
}

#[test]
fn torsion_matches_characteristic_enumeration() {
    let mut checked = 0;
    for n in [-1, 0, 1] {
        let taus = enumerate_e8_changemakers(n, None).unwrap();
        for t in taus.iter().filter(|t| t.norm() <= 36).step_by(3).take(40) {
            let fast = torsion_coefficients(t).unwrap();
            let bound = 8 * fast[0] + t.sigma().len() as i64;
            assert_eq!(torsion_by_enumeration(t, bound).unwrap(), fast, "{t}");
            checked += 1;
        }
    }
    assert!(checked >= 60, "only {checked} vectors compared");
}

#[test]
fn torsion_on_table_instances() {
    let rows = [("A1-", 1), ("A1-", 2), ("A2+", 2), ("B-", 3), ("C2-", 2), ("E1+", 1), ("F1-", 2), ("G2+", 2), ("I1+", 1), ("J-", 2)];
    for (name, j) in rows {
        let row = family_row(name, j).unwrap();
        let t = row.tau().unwrap();
        let k = knot_invariants(&t).unwrap();
        let g = k.genus as usize;
        assert_eq!(k.torsion[g], 0, "{name} {j}");
        assert_eq!(k.torsion[g - 1], 1, "{name} {j}");
        assert!(k.torsion.windows(2).all(|w| w[0] >= w[1]), "{name} {j}: {:?}", k.torsion);
        assert_eq!(torsion_from_alexander(&k.alexander).unwrap(), k.torsion);
        assert_eq!(k.alexander[g], 1, "{name} {j}: leading coefficient");
    }
    // The smallest instances are also checked against explicit enumeration.
    for (name, j) in [("A1-", 1), ("C2-", 1), ("E2-", 1)] {
        let t = family_row(name, j).unwrap().tau().unwrap();
        let fast = torsion_coefficients(&t).unwrap();
        assert_eq!(torsion_by_enumeration(&t, 8 * fast[0] + 8).unwrap(), fast, "{name}");
    }
}

#[test]
fn torsion_can_increase_for_nonlinear_complements() {
    // An E8-changemaker whose torsion sequence is not monotone, confirmed by
    // enumeration; its complement is not a linear lattice.
    let t = tau([0, 0, 0, 2, 0, 0, 0, 1], &[0]);
    assert!(is_e8_changemaker(&t));
    let fast = torsion_coefficients(&t).unwrap();
    assert_eq!(fast, vec![4, 4, 3, 2, 3, 2, 2, 1, 1, 1, 1, 1, 1, 0]);
    assert_eq!(torsion_by_enumeration(&t, 8 * 4 + 1).unwrap(), fast);
    assert!(knot_invariants(&t).is_err());
    assert_eq!(complement_shape(&t).unwrap(), None);
}

#[test]
fn vanishing_indices_agree_with_full_torsion() {
    for n in [-1, 0] {
        for t in enumerate_e8_changemakers(n, None).unwrap().iter().filter(|t| t.norm() <= 300) {
            let tor = torsion_coefficients(t).unwrap();
            let zeros: Vec<i64> = (0..tor.len() as i64).filter(|&i| tor[i as usize] == 0).collect();
            let g = genus_from_tau(t).unwrap();
            assert_eq!(vanishing_torsion_indices(t).unwrap(), zeros, "{t}");
            assert_eq!(zeros, vec![g], "{t}");
        }
    }
}

#[test]
fn alexander_examples() {
    assert_eq!(alexander_from_torsion(&[1, 0]).unwrap(), vec![-1, 1]);
    assert_eq!(alexander_from_torsion(&[0]).unwrap(), vec![1]);
    assert!(alexander_from_torsion(&[0, 1, 0]).is_err());
    assert!(alexander_from_torsion(&[2, 1]).is_err());
    assert!(torsion_from_alexander(&[1, 1]).is_err());
}

/// A random torsion sequence of an L-space knot: Alexander coefficients are
/// ±1 with alternating signs, leading coefficient 1.
fn realizable_torsion() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1usize..4, 0..30).prop_map(|gaps| {
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
        torsion_from_alexander(&a).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn alexander_torsion_round_trip(t in realizable_torsion()) {
        let a = alexander_from_torsion(&t).unwrap();
        prop_assert_eq!(torsion_from_alexander(&a).unwrap(), t);
        prop_assert_eq!(a[0] + 2 * a[1..].iter().sum::<i64>(), 1);
    }

    #[test]
    fn meridional_filling(p in 2i64..200, a in -500i64..500) {
        let unit = a.rem_euclid(p) == 1 || a.rem_euclid(p) == p - 1;
        prop_assert_eq!(distance_surgery_exists(p, a, 1), unit);
    }
}

#[test]
fn cable_shift() {
    assert_eq!(delta_cable_shift(&[1], 7).unwrap(), vec![1, 0, 0, -1, 1]);
    let shifted = delta_cable_shift(&[-1, 1], 7).unwrap();
    assert_eq!(shifted[0] + 2 * shifted[1..].iter().sum::<i64>(), 1);
    // Δ of the (2,7) torus knot has degree 3; the shift raises it to 4.
    let torus = vec![-1, 1, -1, 1];
    let shifted = delta_cable_shift(&torus, 7).unwrap();
    assert_eq!(shifted.len() - 1, 4);
    assert!(delta_cable_shift(&[1], 8).is_err());
}

#[test]
fn distance_and_congruences() {
    assert!(distance_surgery_exists(7, 4, 2));
    assert!(distance_surgery_exists(7, 3, 2));
    assert!(!distance_surgery_exists(5, 1, 2));
    assert_eq!(solve_quadratic_congruence(7, 4).unwrap(), vec![2, 5]);
    assert_eq!(solve_quadratic_congruence(27, 14).unwrap(), vec![11, 16]);
    assert_eq!(solve_quadratic_congruence(5, 1).unwrap(), vec![1, 2, 3, 4]);
    assert!(solve_quadratic_congruence(1, 0).is_err());
}

#[test]
fn cable_genus() {
    assert_eq!(cable_genus_relation(7, 7).unwrap(), 2);
    assert_eq!(cable_genus_relation(27, 27).unwrap(), 7);
    assert_eq!(cable_genus_relation(11, 11).unwrap(), 3);
    assert!(cable_genus_relation(13, 13).is_err());
    assert!(cable_genus_relation(9, 9).is_err());
}

#[test]
fn family_examples() {
    let r = family_row("A1-", 1).unwrap();
    assert_eq!((r.p, r.k, r.q), (8, -5, 7));
    assert_eq!(r.s_star, [0, 1, 0, 0, 0, 0, 0, 0]);
    assert!(r.sigma.is_empty());
    let r = family_row("A₁₋", 2).unwrap();
    assert_eq!((r.p, r.k, r.q), (43, -12, 28));
    assert_eq!(r.s_star, [0, 1, 1, 0, 0, 0, 0, 0]);
    assert_eq!(r.sigma, vec![1]);
    let r = family_row("I1+", 1).unwrap();
    assert_eq!((r.p, r.k, r.q), (137, 13, 105));
    assert_eq!(r.s_star, [0, 1, 0, 0, 2, 0, 0, 0]);
    assert_eq!(r.sigma, vec![1]);
    assert!(family_row("F1-", 1).is_err());
    assert!(family_row("J+", 1).is_err());
    assert!(family_row("A1-", 0).is_err());
    assert!(family_row("Z9", 2).is_err());
    assert_eq!(family_names().len(), 38);
}

#[test]
fn family_rows_verify() {
    for name in family_names() {
        let min = if name.starts_with(['A', 'B', 'C', 'D', 'E']) { 1 } else { 2 };
        for j in min..=3 {
            let row = family_row(name, j).unwrap();
            let q = (-row.k * row.k).rem_euclid(row.p);
            assert_eq!(row.q, q);
            assert!(0 < row.q && row.q < row.p);
            let report = verify_family_row(&row);
            assert!(report.pass(), "{report}");
        }
    }
}

#[test]
fn family_norms_up_to_five() {
    for name in family_names() {
        for j in 2..=5 {
            let row = family_row(name, j).unwrap();
            assert_eq!(row.tau().unwrap().norm(), row.p, "{name} {j}");
        }
    }
}

#[test]
fn table_j_rows_as_printed_do_not_match() {
    // The printed J rows put s* = (2j − 1, 1, 2, 0, …) on J₋ and
    // (2j − 1, 1, 0, 0, 2, …) on J₊; neither tail length reproduces p(j).
    for j in 2..=3i64 {
        for (s, p) in [([2 * j - 1, 1, 2, 0, 0, 0, 0, 0], 120 * j * j - 104 * j + 22), ([2 * j - 1, 1, 0, 0, 2, 0, 0, 0], 120 * j * j + 104 * j + 22)] {
            for len in [j as usize, j as usize + 1] {
                let mut sigma = vec![2; len];
                sigma[0] = 1;
                sigma[1] = 1;
                assert_ne!(tau(s, &sigma).norm(), p);
            }
        }
    }
}

#[test]
fn lambda_191_157() {
    let t = tau([1, 1, 1, 1, 0, 0, 0, 0], &[1]);
    assert_eq!(t.norm(), 191);
    let shape = complement_shape(&t).unwrap().unwrap();
    assert_eq!(shape.len(), 1);
    assert!(lens_equivalent(shape[0].0, shape[0].1, 191, 157));
}

#[test]
fn large_torsion_is_fast_and_consistent() {
    let t = tau([4, 4, 8, 28, 4, 4, 4, 4], &[1, 2]);
    assert_eq!(t.norm(), 25541);
    let tor = torsion_coefficients(&t).unwrap();
    assert_eq!(tor.len() as i64, genus_from_tau(&t).unwrap() + 1);
    assert_eq!(*tor.last().unwrap(), 0);
    assert_eq!(vanishing_torsion_indices(&t).unwrap(), vec![tor.len() as i64 - 1]);
}
