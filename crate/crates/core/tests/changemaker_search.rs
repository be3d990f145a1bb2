use e8cm::changemaker::enumerate::{enumerate_complete, search_tail, search_tail_unpruned};
use e8cm::changemaker::*;

fn lcg(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 33
}

#[test]
fn fast_test_agrees_with_definition() {
    let mut st = 7u64;
    for sigma in [vec![], vec![1], vec![1, 1], vec![1, 2], vec![0, 1], vec![1, 1, 3]] {
        let b = sigma.iter().sum::<i64>() + 2;
        for _ in 0..3000 {
            let s: [i64; 8] = std::array::from_fn(|i| {
                let m = if i == 3 { 4 * b } else { b };
                (lcg(&mut st) % (m as u64 + 1)) as i64
            });
            let t = Tau::from_dual(s, sigma.clone());
            assert_eq!(
                is_e8_changemaker(&t),
                is_e8_changemaker_fast(&t.s_star(), t.sigma()),
                "{t}"
            );
        }
    }
}

#[test]
fn enumerated_vectors_satisfy_definition_and_bounds() {
    for n in -1..=0 {
        let all = enumerate_e8_changemakers(n, None).unwrap();
        for t in &all {
            assert!(is_e8_changemaker(t), "{t}");
            assert!(violated_bounds(t).is_empty(), "{t}");
            assert!(!t.is_zero());
        }
    }
}

#[test]
fn pruned_search_matches_box_scan() {
    // Twice the derived box for n = −1, the box itself for σ = (1).
    assert_eq!(search_tail(&[], None), search_tail_unpruned(&[], 2));
    assert_eq!(search_tail(&[1], None), search_tail_unpruned(&[1], 1));
}

#[test]
fn count_in_e8() {
    assert_eq!(enumerate_e8_changemakers(-1, None).unwrap().len(), 1003);
    let c = census(0, &EnumerateOptions::default()).unwrap();
    assert_eq!(c.per_tail, vec![(vec![0], 1003), (vec![1], 34400)]);
}

#[test]
fn two_summand_candidates_are_enumerated() {
    let all = enumerate_e8_changemakers(-1, None).unwrap();
    for s in [[0, 0, 1, 0, 0, 0, 0, 0], [1, 0, 0, 1, 0, 0, 0, 0]] {
        assert!(all.iter().any(|t| t.s_star() == s));
    }
}

#[test]
fn threads_do_not_change_results() {
    let one = enumerate_with_options(0, &EnumerateOptions::default()).unwrap();
    let three = enumerate_with_options(0, &EnumerateOptions { jobs: 3, ..Default::default() }).unwrap();
    assert_eq!(one.taus, three.taus);
}

#[test]
fn norm_cap_reports_partial() {
    let opts = EnumerateOptions { norm_cap: 3, ..Default::default() };
    let e = enumerate_with_options(1, &opts).unwrap();
    assert_eq!(e.skipped_tails, vec![vec![1, 2]]);
    assert!(!e.is_complete());
    assert!(matches!(enumerate_complete(1, &opts), Err(e8cm::error::Error::Partial(_))));
}

#[test]
fn filter_selects_one_tail() {
    let e = enumerate_e8_changemakers(1, Some(&[1, 1])).unwrap();
    assert_eq!(e.len(), 390577);
    assert!(e.iter().all(|t| t.sigma() == [1, 1]));
    assert!(enumerate_e8_changemakers(1, Some(&[1, 3])).is_err());
    assert!(enumerate_e8_changemakers(1, Some(&[1])).is_err());
}

#[test]
fn max_norm_witness() {
    let (p, t) = max_norm_small_n();
    assert_eq!(p, 25541);
    assert_eq!(t.s_star(), [4, 4, 8, 28, 4, 4, 4, 4]);
    assert_eq!(t.sigma(), [1, 2]);
}

#[test]
fn loaded_pairings_certify() {
    let r = loaded_pairings_report();
    assert!(r.cases.iter().all(|&c| c > 0));
    assert!(r.violations.is_empty(), "{}", r.violations[0]);
}

#[test]
fn streaming_matches_collected_order() {
    let all = enumerate_with_options(0, &EnumerateOptions::default()).unwrap().taus;
    for jobs in [1, 3] {
        let mut seen = Vec::new();
        let opts = EnumerateOptions { jobs, ..Default::default() };
        stream_e8_changemakers(0, &opts, |t| {
            seen.push(t.clone());
            true
        })
        .unwrap();
        assert_eq!(seen, all);
    }
    let opts = EnumerateOptions { sigma_filter: Some(vec![1, 1]), jobs: 2, ..Default::default() };
    let all_11 = enumerate_with_options(1, &opts).unwrap().taus;
    let mut seen = Vec::with_capacity(all_11.len());
    stream_e8_changemakers(1, &opts, |t| {
        seen.push(t.clone());
        true
    })
    .unwrap();
    assert_eq!(seen, all_11);
    let mut first = Vec::new();
    stream_e8_changemakers(0, &EnumerateOptions::default(), |t| {
        first.push(t.clone());
        first.len() < 10
    })
    .unwrap();
    assert_eq!(first[..], all[..10]);
}
