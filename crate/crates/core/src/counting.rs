//! Exact counts: Fibonacci, Catalan, binomials, the `d_n` / `a_n`
//! recurrences for nonconsecutive-321 avoiders and the binomial-Catalan
//! sum for nonconsecutive-132 avoiders.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type BigCount = BigUint;

/// `F_m` with `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(m: usize) -> BigCount {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..m {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // running product stays integral: acc = binom(n - k + i, i)
    (1..=k).fold(BigUint::one(), |acc, i| acc * (n - k + i) / i)
}

pub fn catalan(m: usize) -> BigCount {
    binomial(2 * m as u64, m as u64) / (m as u64 + 1)
}

/// `C_0 ..= C_m`.
pub fn catalan_table(m: usize) -> Vec<BigCount> {
    (0..=m).map(catalan).collect()
}

/// `d_1 ..= d_{n_max}`: the nonconsecutive-321 avoiders that do not open
/// with a 321, via `d_n = C_n + sum_{k=1}^{n-3} C_{k+1} d_{n-2-k}`.
pub fn d_sequence(n_max: usize) -> Vec<BigCount> {
    let cat = catalan_table(n_max);
    // d[0] is a placeholder; the recurrence never reads it
    let mut d: Vec<BigCount> = vec![BigUint::zero(); n_max + 1];
    for n in 1..=n_max {
        let mut v = cat[n].clone();
        for k in 1..=n.saturating_sub(3) {
            v += &cat[k + 1] * &d[n - 2 - k];
        }
        d[n] = v;
    }
    d.remove(0);
    d
}

/// `a_1 ..= a_{n_max}`, the nonconsecutive-321 avoiders.
///
/// Computed twice, as `d_n + d_{n-2}` and as the convolution
/// `C_n + sum_{k=1}^{n-2} C_k d_{n-k-1}`; disagreement is reported.
pub fn a_sequence_recurrence(n_max: usize) -> Result<Vec<BigCount>> {
    let cat = catalan_table(n_max);
    let d = d_sequence(n_max);
    let dn = |n: usize| &d[n - 1];
    (1..=n_max)
        .map(|n| {
            let split = if n >= 3 {
                dn(n) + dn(n - 2)
            } else {
                dn(n).clone()
            };
            let mut conv = cat[n].clone();
            for (k, c) in cat.iter().enumerate().take(n.saturating_sub(1)).skip(1) {
                conv += c * dn(n - k - 1);
            }
            if split != conv {
                return Err(Error::Inconsistent(format!(
                    "a_{n}: d_n + d_(n-2) = {split} but convolution gives {conv}"
                )));
            }
            Ok(split)
        })
        .collect()
}

/// `a_n` for a single `n`, with `a_0 = 1`.
pub fn count_321(n: usize) -> Result<BigCount> {
    if n == 0 {
        return Ok(BigUint::one());
    }
    Ok(a_sequence_recurrence(n)?.pop().expect("n >= 1"))
}

/// Nonconsecutive-21 avoiders of `[n]`: `F_{n+1}`.
pub fn count_21(n: usize) -> BigCount {
    fibonacci(n + 1)
}

/// `sum_{k=0}^{n/3} binom(n-2k, k) C_{n-2k}`.
pub fn count_132_formula(n: usize) -> BigCount {
    (0..=n / 3)
        .map(|k| binomial((n - 2 * k) as u64, k as u64) * catalan(n - 2 * k))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{ClassLabel, Oracle};
    use crate::perm::Pattern;

    fn nums(v: &[u64]) -> Vec<BigCount> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn fibonacci_values() {
        let got: Vec<_> = (0..=10).map(fibonacci).collect();
        assert_eq!(got, nums(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]));
        assert_eq!(fibonacci(100).to_string(), "354224848179261915075");
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 1), BigUint::from(3u32));
        for n in 0..10 {
            assert_eq!(binomial(n, 0), BigUint::one());
            assert_eq!(binomial(n, n + 1), BigUint::zero());
        }
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
        // Pascal
        for n in 1..30u64 {
            for k in 1..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn catalan_values() {
        assert_eq!(
            catalan_table(10),
            nums(&[1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796])
        );
    }

    #[test]
    fn catalan_matches_321_avoiders() {
        let oracle = Oracle::new();
        for n in 0..=8 {
            assert_eq!(oracle.count_class(ClassLabel::C(n)).unwrap(), catalan(n));
        }
    }

    #[test]
    fn d_sequence_against_oracle() {
        // frozen from Oracle::count_class(D(n)), n = 1..=9
        let frozen = nums(&[1, 2, 5, 16, 51, 166, 556, 1898, 6576]);
        assert_eq!(d_sequence(9), frozen);
        let oracle = Oracle::new();
        for n in 1..=7 {
            assert_eq!(oracle.count_class(ClassLabel::D(n)).unwrap(), frozen[n - 1]);
        }
    }

    #[test]
    fn a_sequence_values() {
        let a = a_sequence_recurrence(8).unwrap();
        assert_eq!(a, nums(&[1, 2, 6, 18, 56, 182, 607, 2064]));
        let d = d_sequence(4);
        assert_eq!(a[3], &d[3] + &d[1]);
        assert!(a_sequence_recurrence(60).is_ok());
        assert_eq!(count_321(0).unwrap(), BigUint::one());
        assert_eq!(count_321(7).unwrap(), BigUint::from(607u32));
    }

    #[test]
    fn count_132_values() {
        let got: Vec<_> = (0..=8).map(count_132_formula).collect();
        assert_eq!(got, nums(&[1, 1, 2, 6, 18, 57, 190, 654, 2306]));
        assert_eq!(
            count_132_formula(5),
            catalan(5) + binomial(3, 1) * catalan(3)
        );
    }

    #[test]
    fn small_n_counts_are_factorials() {
        for n in 0..3usize {
            let fact = BigUint::from((1..=n as u64).product::<u64>());
            assert_eq!(count_321(n).unwrap(), fact);
            assert_eq!(count_132_formula(n), fact);
        }
    }

    #[test]
    fn counts_match_oracle_up_to_8() {
        let oracle = Oracle::new();
        let a = a_sequence_recurrence(8).unwrap();
        for n in 1..=8 {
            assert_eq!(
                oracle
                    .count_avoiders_bruteforce(n, &Pattern::p21())
                    .unwrap(),
                count_21(n)
            );
            assert_eq!(
                oracle
                    .count_avoiders_bruteforce(n, &Pattern::p321())
                    .unwrap(),
                a[n - 1]
            );
            assert_eq!(
                oracle
                    .count_avoiders_bruteforce(n, &Pattern::p132())
                    .unwrap(),
                count_132_formula(n)
            );
        }
    }
}
