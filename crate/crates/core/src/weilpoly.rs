//! Exact root-location tests for Weil polynomials.
//!
//! A monic `P` of degree `2g` with `P(T) = T^(2g) P(q/T) / q^g` can be written
//! as `T^g h(T + q/T)` for a monic integer `h` of degree `g`. All roots of `P`
//! have absolute value `sqrt(q)` exactly when all roots of `h` are real and lie
//! in `[-2 sqrt(q), 2 sqrt(q)]`. That condition is decided with a Sturm
//! sequence over `Q`, evaluating signs at the irrational endpoints in
//! `Q(sqrt(q))`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `(T^2 + q)^k` coefficients, constant term first.
fn shifted_power(q: &BigInt, k: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for _ in 0..k {
        let mut next = vec![BigInt::zero(); acc.len() + 2];
        for (i, c) in acc.iter().enumerate() {
            next[i] += c * q;
            next[i + 2] += c;
        }
        acc = next;
    }
    acc
}

/// Recovers `h` (constant term first) from `P = T^g h(T + q/T)`; `None` when
/// `P` is not of that shape.
pub fn trace_polynomial(coeffs: &[BigInt], q: &BigInt) -> Option<Vec<BigInt>> {
    let n = coeffs.len().checked_sub(1)?;
    if n % 2 != 0 || !coeffs[n].is_one() {
        return None;
    }
    let g = n / 2;
    let mut rest = coeffs.to_vec();
    let mut h = vec![BigInt::zero(); g + 1];
    for k in (0..=g).rev() {
        let hk = rest[g + k].clone();
        if !hk.is_zero() {
            for (i, c) in shifted_power(q, k).iter().enumerate() {
                rest[g - k + i] -= &hk * c;
            }
        }
        h[k] = hk;
    }
    rest.iter().all(Zero::is_zero).then_some(h)
}

/// Inverse of [`trace_polynomial`].
pub fn from_trace_polynomial(h: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    let g = h.len() - 1;
    let mut out = vec![BigInt::zero(); 2 * g + 1];
    for (k, hk) in h.iter().enumerate() {
        if hk.is_zero() {
            continue;
        }
        for (i, c) in shifted_power(q, k).iter().enumerate() {
            out[g - k + i] += hk * c;
        }
    }
    out
}

type RatPoly = Vec<BigRational>;

fn rat_trim(mut a: RatPoly) -> RatPoly {
    while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn rat_is_zero(a: &RatPoly) -> bool {
    a.iter().all(Zero::is_zero)
}

fn rat_divrem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let b = rat_trim(b.clone());
    let db = b.len() - 1;
    let mut rem = rat_trim(a.clone());
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !rat_is_zero(&rem) {
        let top = rem.len() - 1;
        let c = &rem[top] / &b[db];
        for (i, bc) in b.iter().enumerate() {
            let idx = top - db + i;
            rem[idx] = &rem[idx] - &c * bc;
        }
        quot[top - db] = c;
        rem.pop();
        if rem.is_empty() {
            rem.push(BigRational::zero());
        }
        rem = rat_trim(rem);
    }
    (quot, rem)
}

fn rat_derivative(a: &RatPoly) -> RatPoly {
    if a.len() <= 1 {
        return vec![BigRational::zero()];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn rat_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut a = rat_trim(a.clone());
    let mut b = rat_trim(b.clone());
    while !rat_is_zero(&b) {
        let (_, r) = rat_divrem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Squarefree part of an integer polynomial, as a rational polynomial.
fn squarefree_part(a: &[BigInt]) -> RatPoly {
    let a: RatPoly = a.iter().cloned().map(BigRational::from_integer).collect();
    let g = rat_gcd(&a, &rat_derivative(&a));
    if g.len() == 1 {
        return rat_trim(a);
    }
    rat_divrem(&a, &g).0
}

/// Squarefree part made monic, exported for the numeric fallback path.
pub fn squarefree_monic(a: &[BigInt]) -> Vec<BigRational> {
    let sf = squarefree_part(a);
    let lead = sf.last().cloned().unwrap();
    sf.into_iter().map(|c| c / &lead).collect()
}

/// An element `a + b sqrt(q)` of `Q(sqrt(q))`.
struct SurdValue {
    rational: BigRational,
    surd: BigRational,
}

fn sign_of(v: &SurdValue, q: &BigInt, q_root: Option<&BigInt>) -> Ordering {
    let zero = BigRational::zero();
    if let Some(s) = q_root {
        let total = &v.rational + &v.surd * BigRational::from_integer(s.clone());
        return total.cmp(&zero);
    }
    let a = v.rational.cmp(&zero);
    let b = v.surd.cmp(&zero);
    match (a, b) {
        (Ordering::Equal, _) => b,
        (_, Ordering::Equal) => a,
        (x, y) if x == y => x,
        _ => {
            // opposite signs: compare a^2 with b^2 q
            let a2 = &v.rational * &v.rational;
            let b2q = &v.surd * &v.surd * BigRational::from_integer(q.clone());
            let mag = a2.cmp(&b2q);
            if a == Ordering::Greater {
                mag
            } else {
                mag.reverse()
            }
        }
    }
}

/// Evaluates `poly` at `x = 2 * dir * sqrt(q)`, `dir` in `{1, -1}`.
fn eval_at_edge(poly: &RatPoly, q: &BigInt, dir: i64) -> SurdValue {
    let mut rational = BigRational::zero();
    let mut surd = BigRational::zero();
    let qr = BigRational::from_integer(q.clone());
    // x^i = (2 dir)^i q^(i/2)
    let mut pow_rat = BigRational::one(); // (2 dir)^i q^floor(i/2)
    for (i, c) in poly.iter().enumerate() {
        if i > 0 {
            pow_rat *= BigRational::from_integer(BigInt::from(2 * dir));
            if i % 2 == 0 {
                pow_rat *= &qr;
            }
        }
        if i % 2 == 0 {
            rational += c * &pow_rat;
        } else {
            surd += c * &pow_rat;
        }
    }
    SurdValue { rational, surd }
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// True iff every complex root of the integer polynomial `h` is real and lies
/// in the closed interval `[-2 sqrt(q), 2 sqrt(q)]`.
pub fn roots_in_weil_interval(h: &[BigInt], q: &BigInt) -> bool {
    if h.len() <= 1 {
        return true;
    }
    let sf = squarefree_part(h);
    let deg = sf.len() - 1;
    if deg == 0 {
        return true;
    }
    let mut seq = vec![sf.clone(), rat_derivative(&sf)];
    loop {
        let n = seq.len();
        let (_, r) = rat_divrem(&seq[n - 2], &seq[n - 1]);
        if rat_is_zero(&r) {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let q_root = crate::arith::exact_sqrt(q);
    let at = |dir: i64| -> Vec<Ordering> {
        seq.iter()
            .map(|p| sign_of(&eval_at_edge(p, q, dir), q, q_root.as_ref()))
            .collect()
    };
    let low = at(-1);
    let high = at(1);
    let inside = variations(low.iter().copied()) as i64 - variations(high.iter().copied()) as i64
        + i64::from(low[0] == Ordering::Equal);
    inside == deg as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn trace_polynomial_round_trip() {
        let q = BigInt::from(7);
        // T^2 + 4T + 7 = T (T + 7/T + 4)
        assert_eq!(trace_polynomial(&big(&[7, 4, 1]), &q), Some(big(&[4, 1])));
        // T^6 + 343: h(x) = x^3 - 21 x
        let h = trace_polynomial(&big(&[343, 0, 0, 0, 0, 0, 1]), &q).unwrap();
        assert_eq!(h, big(&[0, -21, 0, 1]));
        assert_eq!(from_trace_polynomial(&h, &q), big(&[343, 0, 0, 0, 0, 0, 1]));
        // T^2 - 7 violates the functional equation
        assert_eq!(trace_polynomial(&big(&[-7, 0, 1]), &q), None);
    }

    #[test]
    fn interval_test_on_linear_and_repeated_roots() {
        let q7 = BigInt::from(7);
        assert!(roots_in_weil_interval(&big(&[3, 1]), &q7));
        assert!(!roots_in_weil_interval(&big(&[-6, 1]), &q7));
        // endpoint roots for square q: (x - 4)^2 with q = 4
        let q4 = BigInt::from(4);
        assert!(roots_in_weil_interval(&big(&[16, -8, 1]), &q4));
        assert!(roots_in_weil_interval(&big(&[4, 1]), &q4));
        assert!(!roots_in_weil_interval(&big(&[5, 1]), &q4));
        // x^2 + 1 has complex roots
        assert!(!roots_in_weil_interval(&big(&[1, 0, 1]), &q4));
        // x^3 - 21x: roots 0, +-sqrt(21), inside +-2 sqrt(7) = +-sqrt(28)
        assert!(roots_in_weil_interval(&big(&[0, -21, 0, 1]), &q7));
        // x^3 - 29x: sqrt(29) > sqrt(28)
        assert!(!roots_in_weil_interval(&big(&[0, -29, 0, 1]), &q7));
        // x^2 - 28: roots exactly at the irrational endpoints
        assert!(roots_in_weil_interval(&big(&[-28, 0, 1]), &q7));
    }
}
