use e8cm::changemaker::{is_changemaker, parity_interval};

/// Every sorted tail of length `len` with entries in `0..=max`.
fn sorted_tails(len: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in cur.last().copied().unwrap_or(0)..=max {
            cur.push(x);
            rec(len, max, cur, out);
            cur.pop();
        }
    }
    rec(len, max, &mut cur, &mut out);
    out
}

/// Whether every integer in `0..=Σσ` is a subset sum.
fn makes_all_change(sigma: &[i64]) -> bool {
    let total: i64 = sigma.iter().sum();
    let mut reach = vec![false; total as usize + 1];
    reach[0] = true;
    for &x in sigma {
        for v in (x as usize..=total as usize).rev() {
            reach[v] |= reach[v - x as usize];
        }
    }
    reach.iter().all(|&r| r)
}

#[test]
fn definition_equivalence_by_brute_force() {
    let mut count = 0;
    for len in 0..=8 {
        for sigma in sorted_tails(len, 6) {
            assert_eq!(is_changemaker(&sigma).unwrap(), makes_all_change(&sigma), "{sigma:?}");
            count += 1;
        }
    }
    assert_eq!(count, 6435);
}

#[test]
fn unsorted_or_negative_tails_are_rejected() {
    assert!(is_changemaker(&[2, 1]).is_err());
    assert!(is_changemaker(&[-1, 1]).is_err());
    assert!(is_changemaker(&[1, 3]).is_ok_and(|b| !b));
}

#[test]
fn parity_intervals() {
    assert_eq!(parity_interval(0, 0).unwrap(), vec![0]);
    assert_eq!(parity_interval(-4, 4).unwrap(), vec![-4, -2, 0, 2, 4]);
    assert_eq!(parity_interval(3, 7).unwrap(), vec![3, 5, 7]);
    assert!(parity_interval(3, 6).is_err());
    assert!(parity_interval(5, 3).is_err());
}
