use negw_core::cycle::{cycle_state_space, enumerate_consistent_cycle};
use negw_core::WeightDomain;
use num_bigint::BigInt;

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Tuples in `[lo, hi]^n` with non-negative sum, by inclusion-exclusion over
/// shifted values `y = x - lo` in `[0, k]` summing to at least `-n lo`.
fn consistent_states(n: i64, lo: i64, hi: i64) -> BigInt {
    let k = hi - lo;
    let with_sum = |s: i64| -> BigInt {
        (0..=n)
            .map(|j| {
                let term = binom(n, j) * binom(s - j * (k + 1) + n - 1, n - 1);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    };
    (-n * lo..=n * k).map(with_sum).sum()
}

#[test]
fn counts_match_closed_form() {
    for (lo, hi) in [(-1, 1), (-3, 2), (-2, 5), (-100, 100), (0, 3)] {
        let d = WeightDomain::new(lo, hi).unwrap();
        for n in 2..=12 {
            let expected = consistent_states(n, lo, hi);
            match enumerate_consistent_cycle(n as usize, &d) {
                Ok(c) => assert_eq!(BigInt::from(c), expected, "n={n} {lo}:{hi}"),
                Err(_) => assert!(expected > BigInt::from(u128::MAX)),
            }
        }
    }
}

#[test]
fn overflow_is_reported_not_wrapped() {
    let d = WeightDomain::new(-100, 100).unwrap();
    let n = (2..40)
        .find(|&n| consistent_states(n, -100, 100) > BigInt::from(u128::MAX))
        .unwrap();
    assert!(enumerate_consistent_cycle(n as usize - 1, &d).is_ok());
    assert!(enumerate_consistent_cycle(n as usize, &d).is_err());
    let d = WeightDomain::new(-1, 1).unwrap();
    assert_eq!(enumerate_consistent_cycle(8, &d).unwrap(), 3834);
    assert_eq!(cycle_state_space(8, &d).unwrap(), 6561);
}
