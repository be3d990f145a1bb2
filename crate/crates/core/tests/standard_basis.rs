use e8cm::changemaker::enumerate::changemaker_tails;
use e8cm::changemaker::{
    ambient_lattice, enumerate_e8_changemakers, is_e8_changemaker, stream_e8_changemakers, EnumerateOptions, Tau,
};
use e8cm::standard_basis::*;
use e8cm::surgery::{complement_shape, family_row};

fn amb(e8: [i64; 8], tail: &[i64]) -> Vec<i64> {
    let mut v = e8.to_vec();
    v.extend_from_slice(tail);
    v
}

/// The maximal subset of `σ[..j]` summing to `σⱼ`, by exhaustive search under
/// the order that compares `Σ 2ⁱ`.
fn maximal_subset_by_search(sigma: &[i64], j: usize) -> Vec<usize> {
    let mut best: Option<u64> = None;
    for mask in 0u64..(1 << j) {
        let sum: i64 = (0..j).filter(|&i| mask >> i & 1 == 1).map(|i| sigma[i]).sum();
        if sum == sigma[j] && best.is_none_or(|b| mask > b) {
            best = Some(mask);
        }
    }
    let b = best.expect("changemakers make change");
    (0..j).filter(|&i| b >> i & 1 == 1).collect()
}

#[test]
fn changemaker_basis_against_subset_search() {
    for len in 2..=7 {
        for sigma in changemaker_tails(len, 120).0.iter().filter(|s| s[0] == 1) {
            let basis = changemaker_basis(sigma).unwrap();
            let mut prefix = sigma[0];
            for j in 1..sigma.len() {
                let v = &basis[j - 1];
                let class = classify(v, sigma.len());
                if sigma[j] == prefix + 1 {
                    assert_eq!(class.kind, Kind::Tight, "{sigma:?} v{j}");
                } else {
                    let a = maximal_subset_by_search(sigma, j);
                    let expect: Vec<i64> = (0..sigma.len())
                        .map(|i| if i == j { -1 } else { i64::from(a.contains(&i)) })
                        .collect();
                    assert_eq!(v, &expect, "{sigma:?} v{j}");
                    let consecutive = a.windows(2).all(|w| w[1] == w[0] + 1);
                    assert_eq!(class.kind == Kind::JustRight, consecutive, "{sigma:?} v{j}");
                }
                prefix += sigma[j];
            }
        }
    }
}

#[test]
fn classification_examples() {
    assert_eq!(classify(&[1, 1, -1], 3).kind, Kind::JustRight);
    let c = classify(&[1, 0, 1, -1], 4);
    assert_eq!((c.kind, c.gappy_indices), (Kind::Gappy, vec![0]));
    assert_eq!(classify(&amb([0, -1, 0, 0, 0, 0, 0, 0], &[2, 1, 1]), 3).kind, Kind::Tight);
}

#[test]
fn extension_set_pairs_to_zero() {
    let t = Tau::from_dual([0, 1, 0, 0, 0, 0, 0, 0], vec![1, 1, 1]);
    let w = extension_set(&t).unwrap();
    assert_eq!(w[0], amb([-1, 0, 0, 0, 0, 0, 0, 0], &[0, 0, 0]));
    assert_eq!(w[1], amb([0, -1, 0, 0, 0, 0, 0, 0], &[0, 0, 1]));
    // s*₃ = |σ|₁ + 1 gives the tight form.
    let t = Tau::from_dual([0, 0, 4, 0, 0, 0, 0, 0], vec![1, 1, 1]);
    let w = extension_set(&t).unwrap();
    assert_eq!(w[2], amb([0, 0, -1, 0, 0, 0, 0, 0], &[2, 1, 1]));
    let row = family_row("F1-", 3).unwrap();
    assert_eq!(row.sigma, vec![1, 1, 3]);
    let t = row.tau().unwrap();
    let lat = ambient_lattice(t.sigma().len());
    let w = extension_set(&t).unwrap();
    assert_eq!(w.len(), 8);
    for v in &w {
        assert_eq!(lat.pairing(v, &t.ambient_vector()).unwrap(), 0);
    }
}

#[test]
fn family_instances_pass() {
    // At j = 2 the tail of A₁₋ is σ = (1), below the range of the standard
    // basis; the complement still comes from the generic construction.
    let t = family_row("A1-", 2).unwrap().tau().unwrap();
    assert!(standard_basis(&t).is_err());
    let (lat, _) = complement_basis(&t).unwrap();
    assert_eq!(lat.discriminant(), t.norm());
    for (name, j) in [("A1-", 4), ("A2+", 4), ("C2-", 4), ("F1-", 3), ("I1+", 3), ("J-", 3)] {
        let t = family_row(name, j).unwrap().tau().unwrap();
        let r = verify_standard_basis(&t).unwrap();
        assert!(r.pass_if_linear(), "{name} {j}: {:?} {:?}", r.failures, r.linear_only);
    }
}

#[test]
fn v1_is_tight_for_sigma_one_two() {
    let row = family_row("I1+", 3).unwrap();
    let t = row.tau().unwrap();
    assert_eq!(&t.sigma()[..2], &[1, 2]);
    let sb = standard_basis(&t).unwrap();
    assert_eq!(sb.classes[0].kind, Kind::Tight);
    let r = verify_standard_basis(&t).unwrap();
    assert!(r.pass_if_linear(), "{:?} {:?}", r.failures, r.linear_only);
    assert_eq!(r.tight_v_count, 1);
}

#[test]
fn small_n_falls_back_to_the_complement() {
    let t = Tau::from_dual([1, 0, 0, 1, 0, 0, 0, 0], vec![]);
    assert!(standard_basis(&t).is_err());
    let (lat, rows) = complement_basis(&t).unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(lat.discriminant(), 54);
}

#[test]
fn determinant_matches_norm_on_unloaded_vectors() {
    let mut checked = 0;
    for t in enumerate_e8_changemakers(2, Some(&[1, 1, 2])).unwrap().iter().filter(|t| t.norm() < 400) {
        let total = t.sigma_sum();
        if t.s_star().iter().any(|&x| x > total + 1) {
            continue;
        }
        let r = verify_structure(&standard_basis(t).unwrap());
        assert!(r.pass(), "{t}: {:?}", r.failures);
        checked += 1;
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn stepwise_w4_recipe_misses_some_vectors() {
    // The w₄ recipe, read step by step, produces a vector that does not pair
    // into range for this E8-changemaker.
    let t = Tau::from_dual([0, 0, 0, 5, 0, 0, 0, 1], vec![1, 1, 1]);
    assert!(is_e8_changemaker(&t));
    let outcome = verify_standard_basis(&t);
    let failed = match outcome {
        Err(_) => true,
        Ok(r) => !r.pass(),
    };
    assert!(failed);
}

#[test]
fn tight_counts_only_bind_linear_complements() {
    // Both v₁ and v₂ are tight for σ = (1, 2, 4), whatever s is.
    let opts = EnumerateOptions { sigma_filter: Some(vec![1, 2, 4]), ..Default::default() };
    let mut first = None;
    stream_e8_changemakers(2, &opts, |t| {
        first = Some(t.clone());
        false
    })
    .unwrap();
    let t = first.unwrap();
    assert_eq!(complement_shape(&t).unwrap(), None);
    let r = verify_standard_basis(&t).unwrap();
    assert_eq!(r.tight_v_count, 2);
    assert!(r.pass(), "{t}: {:?}", r.failures);
    assert!(!r.pass_if_linear());
}
