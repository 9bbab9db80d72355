//! Prime powers, primitive prime divisors of `q^n − 1`, and the two
//! Mersenne/Fermat-style dichotomies about consecutive `2^t ± 1`.

use std::collections::BTreeSet;

use num_prime::nt_funcs::{factorize128, is_prime64};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `t` accepted by [`lemma3_scan`].
pub const LEMMA3_T_CAP: u32 = 100;

pub fn is_prime(n: u64) -> bool {
    is_prime64(n)
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    if n <= 1 {
        return Vec::new();
    }
    factorize128(n as u128).into_keys().map(|p| p as u64).collect()
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power_decomposition(n: u64) -> Option<(u64, u32)> {
    let fact = is_prime_power(n as u128);
    fact.base.map(|b| (b as u64, fact.exponent.unwrap_or(0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerFact {
    pub n: u128,
    pub verdict: bool,
    pub base: Option<u128>,
    pub exponent: Option<u32>,
}

/// Whether `n` is a power of a single prime. `1` is not.
pub fn is_prime_power(n: u128) -> PrimePowerFact {
    let no = PrimePowerFact {
        n,
        verdict: false,
        base: None,
        exponent: None,
    };
    if n <= 1 {
        return no;
    }
    let factors = factorize128(n);
    if factors.len() != 1 {
        return no;
    }
    let (&p, &k) = factors.iter().next().expect("one factor");
    PrimePowerFact {
        n,
        verdict: true,
        base: Some(p),
        exponent: Some(k as u32),
    }
}

/// Primes dividing `q^n − 1` but no `q^i − 1` with `1 ≤ i < n`, ascending.
pub fn primitive_prime_divisors(q: u128, n: u32) -> Result<Vec<u128>> {
    if q < 2 || n < 3 {
        return Err(Error::OutOfRange(format!("need q >= 2 and n >= 3, got q={q} n={n}")));
    }
    let top = q
        .checked_pow(n)
        .ok_or_else(|| Error::OutOfRange(format!("{q}^{n} does not fit in 128 bits")))?
        - 1;
    let lower: Vec<u128> = (1..n).map(|i| q.pow(i) - 1).collect();
    Ok(factorize128(top)
        .into_keys()
        .filter(|&r| lower.iter().all(|&m| m % r != 0))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Lemma3Part {
    /// `2^t − 1` and `2^(t−1) − 1`.
    A,
    /// `2^t + 1` and `2^(t+1) + 1`.
    B,
}

/// All `t ≤ t_max` for which both numbers of the chosen pair are prime
/// powers. Part A starts at `t = 1`, part B at `t = 0`.
pub fn lemma3_scan(part: Lemma3Part, t_max: u32) -> Result<BTreeSet<u32>> {
    if !(4..=LEMMA3_T_CAP).contains(&t_max) {
        return Err(Error::OutOfRange(format!("t_max must be in 4..={LEMMA3_T_CAP}")));
    }
    let pp = |n: u128| is_prime_power(n).verdict;
    let hits = match part {
        Lemma3Part::A => (1..=t_max)
            .filter(|&t| pp((1u128 << t) - 1) && pp((1u128 << (t - 1)) - 1))
            .collect(),
        Lemma3Part::B => (0..=t_max)
            .filter(|&t| pp((1u128 << t) + 1) && pp((1u128 << (t + 1)) + 1))
            .collect(),
    };
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_prime_power(n: u128) -> Option<(u128, u32)> {
        if n < 2 {
            return None;
        }
        let mut p = 2;
        while p * p <= n && !n.is_multiple_of(p) {
            p += 1;
        }
        if p * p > n {
            return Some((n, 1));
        }
        let (mut m, mut k) = (n, 0);
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        (m == 1).then_some((p, k))
    }

    #[test]
    fn prime_power_examples() {
        assert!(!is_prime_power(63).verdict);
        let nine = is_prime_power(9);
        assert_eq!((nine.base, nine.exponent), (Some(3), Some(2)));
        let f = is_prime_power(17);
        assert_eq!((f.base, f.exponent), (Some(17), Some(1)));
        assert!(!is_prime_power(1).verdict);
        assert!(!is_prime_power(0).verdict);
    }

    #[test]
    fn prime_power_agrees_with_trial_division() {
        for n in 0..5000u128 {
            let ours = is_prime_power(n);
            let oracle = trial_prime_power(n);
            assert_eq!(ours.verdict, oracle.is_some(), "n = {n}");
            if let Some((p, k)) = oracle {
                assert_eq!((ours.base, ours.exponent), (Some(p), Some(k)));
            }
        }
    }

    #[test]
    fn primitive_divisor_examples() {
        assert_eq!(primitive_prime_divisors(2, 6).unwrap(), Vec::<u128>::new());
        assert_eq!(primitive_prime_divisors(2, 4).unwrap(), vec![5]);
        assert_eq!(primitive_prime_divisors(3, 4).unwrap(), vec![5]);
        assert!(primitive_prime_divisors(2, 2).is_err());
        assert!(primitive_prime_divisors(1, 5).is_err());
    }

    #[test]
    fn primitive_divisors_match_brute_force() {
        for q in 2u128..=6 {
            for n in 3u32..=8 {
                let top = q.pow(n) - 1;
                let brute: Vec<u128> = (2..=top)
                    .filter(|&r| top % r == 0 && trial_prime_power(r) == Some((r, 1)))
                    .filter(|&r| (1..n).all(|i| (q.pow(i) - 1) % r != 0))
                    .collect();
                assert_eq!(primitive_prime_divisors(q, n).unwrap(), brute, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn factors_of_two_power_neighbours_multiply_back() {
        for t in 1..=LEMMA3_T_CAP + 1 {
            for n in [(1u128 << t) - 1, (1u128 << t) + 1] {
                let f = factorize128(n);
                let product: u128 = f.iter().map(|(&p, &k)| p.pow(k as u32)).product();
                assert_eq!(product, n, "t = {t}");
            }
        }
    }

    #[test]
    fn lemma3_full_range() {
        assert_eq!(lemma3_scan(Lemma3Part::A, 60).unwrap(), BTreeSet::from([3]));
        assert_eq!(lemma3_scan(Lemma3Part::B, 60).unwrap(), BTreeSet::from([0, 1, 2, 3]));
        assert_eq!(lemma3_scan(Lemma3Part::A, LEMMA3_T_CAP).unwrap(), BTreeSet::from([3]));
    }

    #[test]
    fn lemma3_small_range() {
        assert_eq!(lemma3_scan(Lemma3Part::A, 4).unwrap(), BTreeSet::from([3]));
        assert_eq!(lemma3_scan(Lemma3Part::B, 4).unwrap(), BTreeSet::from([0, 1, 2, 3]));
        assert!(lemma3_scan(Lemma3Part::A, 3).is_err());
        assert!(lemma3_scan(Lemma3Part::A, 101).is_err());
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part(24, 2), 8);
        assert_eq!(p_part(24, 5), 1);
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert!(prime_divisors(1).is_empty());
        assert_eq!(prime_power_decomposition(32), Some((2, 5)));
        assert_eq!(prime_power_decomposition(12), None);
    }
}
