//! Small integer helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Deterministic trial-division primality test. The scans only ever touch
/// primes below a few thousand.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut i = 5u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) || n.is_multiple_of(i + 2) {
            return false;
        }
        i += 6;
    }
    true
}

/// Returns `(p, k)` with `q = p^k` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Primes in `lo..=hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Largest `k` with `p^k | n`; `None` for `n = 0`.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (quot, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return Some(k);
        }
        n = quot;
        k += 1;
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Integer `k`-th root of `n` when it is exact.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 || n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert_eq!(primes_in(1, 20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn valuations_and_roots() {
        assert_eq!(int_valuation(&BigInt::from(7 * 7 * 3), 7), Some(2));
        assert_eq!(int_valuation(&BigInt::from(0), 7), None);
        assert_eq!(exact_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(exact_sqrt(&BigInt::from(50)), None);
        assert_eq!(exact_root(&BigInt::from(343), 3), Some(BigInt::from(7)));
        assert_eq!(binomial(6, 3), BigInt::from(20));
    }
}
