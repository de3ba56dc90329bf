//! Prime fields `F_p` and their small extensions `F_{p^r}` (`r <= 4`).
//!
//! Elements are stored in the power basis of a deterministic defining
//! polynomial: the lexicographically smallest monic irreducible of degree `r`,
//! comparing coefficients from the constant term upward. Every element also
//! has an integer *index* `sum c_i p^i` in `0..q`, which is how the point
//! counters address the precomputed fiber tables.

use thiserror::Error;

use crate::arith::is_prime;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 4;

/// Primes are kept below this bound so that products of residues accumulate
/// in `u64` without intermediate reductions.
pub const MAX_PRIME: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("extension degree {0} outside 1..={MAX_DEGREE}")]
    BadDegree(usize),
}

/// An element of `F_{p^r}` in power-basis coordinates. Coordinates beyond the
/// context degree are always zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FqElem {
    coeffs: [u32; MAX_DEGREE],
}

impl FqElem {
    pub fn coeffs(&self) -> &[u32; MAX_DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Coset of the cubes that an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubeClass {
    Zero,
    Cube,
    /// `x^((q-1)/3)` equals the context's anchor cube root of unity.
    NonCubeA,
    /// `x^((q-1)/3)` equals the square of the anchor.
    NonCubeB,
}

/// Arithmetic context for `F_{p^r}`. Immutable once built.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    r: usize,
    q: u64,
    modulus: Vec<u32>,
    // T^(r+j) in the power basis, for j = 0..r-1
    reduction: [[u64; MAX_DEGREE]; MAX_DEGREE],
    cube_anchor: Option<FqElem>,
}

impl FieldCtx {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    /// Field size `p^r`.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Coefficients of the defining polynomial, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive cube root of unity that labels `NonCubeA`, when
    /// `q = 1 mod 3`.
    pub fn cube_anchor(&self) -> Option<FqElem> {
        self.cube_anchor
    }

    pub fn zero(&self) -> FqElem {
        FqElem::default()
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        let mut e = FqElem::default();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Builds an element from coordinates, reducing each one mod `p`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FqElem {
        assert!(coeffs.len() <= self.r, "too many coordinates");
        let mut e = FqElem::default();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.p as i64) as u32;
        }
        e
    }

    pub fn from_index(&self, mut index: u64) -> FqElem {
        debug_assert!(index < self.q);
        let p = self.p as u64;
        let mut e = FqElem::default();
        for slot in e.coeffs.iter_mut().take(self.r) {
            *slot = (index % p) as u32;
            index /= p;
        }
        e
    }

    #[inline]
    pub fn index(&self, x: &FqElem) -> u64 {
        let p = self.p as u64;
        x.coeffs[..self.r]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c as u64)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    #[inline]
    pub fn add(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let mut out = FqElem::default();
        for i in 0..self.r {
            let s = x.coeffs[i] + y.coeffs[i];
            out.coeffs[i] = if s >= self.p { s - self.p } else { s };
        }
        out
    }

    #[inline]
    pub fn sub(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let mut out = FqElem::default();
        for i in 0..self.r {
            out.coeffs[i] = if x.coeffs[i] >= y.coeffs[i] {
                x.coeffs[i] - y.coeffs[i]
            } else {
                x.coeffs[i] + self.p - y.coeffs[i]
            };
        }
        out
    }

    pub fn neg(&self, x: &FqElem) -> FqElem {
        self.sub(&self.zero(), x)
    }

    #[inline]
    pub fn mul(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let r = self.r;
        let p = self.p as u64;
        if r == 1 {
            let mut out = FqElem::default();
            out.coeffs[0] = ((x.coeffs[0] as u64 * y.coeffs[0] as u64) % p) as u32;
            return out;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..r {
            let xi = x.coeffs[i] as u64;
            if xi == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] += xi * y.coeffs[j] as u64;
            }
        }
        let mut acc = [0u64; MAX_DEGREE];
        acc[..r].copy_from_slice(&prod[..r]);
        for k in r..2 * r - 1 {
            let hi = prod[k] % p;
            if hi == 0 {
                continue;
            }
            let row = &self.reduction[k - r];
            for j in 0..r {
                acc[j] += hi * row[j];
            }
        }
        let mut out = FqElem::default();
        for j in 0..r {
            out.coeffs[j] = (acc[j] % p) as u32;
        }
        out
    }

    pub fn pow(&self, x: &FqElem, mut e: u64) -> FqElem {
        let mut base = *x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Evaluates an integer polynomial (constant term first) by Horner's rule.
    #[inline]
    pub fn eval_poly(&self, poly: &[FqElem], x: &FqElem) -> FqElem {
        let mut acc = FqElem::default();
        for c in poly.iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, c);
        }
        acc
    }

    /// Lexicographic key used for deterministic choices: coordinates from the
    /// constant term upward.
    fn lex_key(&self, x: &FqElem) -> [u32; MAX_DEGREE] {
        x.coeffs
    }
}

/// Builds `F_{p^r}` from the lexicographically smallest monic irreducible
/// polynomial of degree `r`.
pub fn build_extension(p: u64, r: usize) -> Result<FieldCtx, FieldError> {
    if !(1..=MAX_DEGREE).contains(&r) {
        return Err(FieldError::BadDegree(r));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p >= MAX_PRIME as u64 {
        return Err(FieldError::PrimeTooLarge(p));
    }
    let modulus = smallest_irreducible(p, r);
    let p32 = p as u32;

    let mut reduction = [[0u64; MAX_DEGREE]; MAX_DEGREE];
    // T^r = -(m_0 + m_1 T + ... + m_{r-1} T^{r-1})
    let mut cur: Vec<u64> = modulus[..r].iter().map(|&m| (p - m as u64) % p).collect();
    for row in reduction.iter_mut().take(r.saturating_sub(1)) {
        row[..r].copy_from_slice(&cur);
        // multiply cur by T and fold the overflow back in
        let top = cur[r - 1];
        let mut next = vec![0u64; r];
        for j in (1..r).rev() {
            next[j] = cur[j - 1];
        }
        for j in 0..r {
            next[j] = (next[j] + top * ((p - modulus[j] as u64) % p)) % p;
        }
        cur = next;
    }

    let mut ctx = FieldCtx {
        p: p32,
        r,
        q: p.pow(r as u32),
        modulus,
        reduction,
        cube_anchor: None,
    };
    ctx.cube_anchor = find_cube_anchor(&ctx);
    Ok(ctx)
}

fn find_cube_anchor(ctx: &FieldCtx) -> Option<FqElem> {
    let q = ctx.q;
    if q % 3 != 1 {
        return None;
    }
    let e = (q - 1) / 3;
    let one = ctx.one();
    let w = (1..q)
        .map(|i| ctx.pow(&ctx.from_index(i), e))
        .find(|w| *w != one)?;
    let w2 = ctx.mul(&w, &w);
    Some(if ctx.lex_key(&w) <= ctx.lex_key(&w2) { w } else { w2 })
}

/// Smallest monic irreducible of degree `r` over `F_p`, constant term first.
fn smallest_irreducible(p: u64, r: usize) -> Vec<u32> {
    if r == 1 {
        return vec![0, 1];
    }
    let count = p.pow(r as u32);
    for n in 0..count {
        // c_0 is the most significant digit of n
        let mut poly = vec![0u64; r + 1];
        let mut rest = n;
        for k in (0..r).rev() {
            poly[k] = rest % p;
            rest /= p;
        }
        poly[r] = 1;
        if is_irreducible(&poly, p) {
            return poly.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Root test for degree <= 3, Rabin's test for degree 4.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let r = poly.len() - 1;
    let has_root = (0..p).any(|x| poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0);
    if has_root {
        return false;
    }
    if r <= 3 {
        return true;
    }
    // degree 4: x^(p^4) = x mod f and gcd(x^(p^2) - x, f) = 1
    let x = vec![0, 1];
    let xp2 = poly_powmod(&x, p * p, poly, p);
    let xp4 = poly_powmod(&xp2, p * p, poly, p);
    if trim(xp4) != x {
        return false;
    }
    let diff = poly_sub(&xp2, &x, p);
    let g = poly_gcd(poly.to_vec(), diff, p);
    g.len() == 1
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let inv = mod_inv(m[dm], p);
    while a.len() > dm && !(a.len() == 1 && a[0] == 0) {
        let top = a.len() - 1;
        let c = a[top] * inv % p;
        if c != 0 {
            for i in 0..=dm {
                let idx = top - dm + i;
                a[idx] = (a[idx] + p * p - c * m[i] % p) % p;
            }
        }
        a.pop();
    }
    trim(if a.is_empty() { vec![0] } else { a })
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(prod, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = trim(a);
    b = trim(b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Which coset of the cubes `x` lies in.
pub fn cube_class(x: &FqElem, ctx: &FieldCtx) -> CubeClass {
    if x.is_zero() {
        return CubeClass::Zero;
    }
    let Some(anchor) = ctx.cube_anchor else {
        // cubing permutes F_q when q is not 1 mod 3
        return CubeClass::Cube;
    };
    let e = ctx.pow(x, (ctx.q - 1) / 3);
    if e == ctx.one() {
        CubeClass::Cube
    } else if e == anchor {
        CubeClass::NonCubeA
    } else {
        CubeClass::NonCubeB
    }
}

/// Number of `y` in `F_q` with `y^3 = x`.
pub fn fiber_size(x: &FqElem, ctx: &FieldCtx) -> u32 {
    match cube_class(x, ctx) {
        CubeClass::Zero => 1,
        CubeClass::Cube if ctx.cube_anchor.is_none() => 1,
        CubeClass::Cube => 3,
        CubeClass::NonCubeA | CubeClass::NonCubeB => 0,
    }
}

/// Precomputed `#{y : y^m = x}` for every `x` in a field, stored as a bitset of
/// the nonzero `m`-th powers.
#[derive(Clone, Debug)]
pub struct FiberTable {
    m: u32,
    bijective: bool,
    powers: Vec<u64>,
}

impl FiberTable {
    /// Builds the table by raising every element to the `m`-th power.
    pub fn new(ctx: &FieldCtx, m: u32) -> Self {
        assert!(m >= 2, "fiber tables need m >= 2");
        let q = ctx.order();
        let bijective = gcd(m as u64, q - 1) == 1 || (ctx.p() as u64).is_multiple_of(m as u64);
        if bijective {
            return FiberTable { m, bijective, powers: Vec::new() };
        }
        let mut powers = vec![0u64; q.div_ceil(64) as usize];
        let mut monomial = vec![ctx.zero(); m as usize + 1];
        monomial[m as usize] = ctx.one();
        // 0^m = 0 is marked too; fiber_size_at handles index 0 separately
        for_each_value(ctx, &monomial, |y| {
            let idx = ctx.index(y);
            powers[(idx >> 6) as usize] |= 1 << (idx & 63);
        });
        FiberTable { m, bijective, powers }
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    /// `y -> y^m` permutes the field.
    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    /// Fiber size for the element with the given index.
    #[inline]
    pub fn fiber_size_at(&self, index: u64) -> u32 {
        if index == 0 || self.bijective {
            return 1;
        }
        if self.powers[(index >> 6) as usize] >> (index & 63) & 1 == 1 {
            self.m
        } else {
            0
        }
    }

    pub fn fiber_size(&self, ctx: &FieldCtx, x: &FqElem) -> u32 {
        self.fiber_size_at(ctx.index(x))
    }
}

/// Calls `visit(f(x))` for every `x` in index order.
///
/// Consecutive indices along a run of length `p` differ by 1 in the constant
/// coordinate, so each run is walked with a forward-difference table: `deg f`
/// additions per element instead of a Horner evaluation.
pub fn for_each_value(ctx: &FieldCtx, poly: &[FqElem], mut visit: impl FnMut(&FqElem)) {
    let n = poly.len().saturating_sub(1);
    let p = ctx.p as u64;
    let runs = ctx.q / p;
    let one = ctx.one();
    let mut diffs = vec![ctx.zero(); n + 1];
    for run in 0..runs {
        // f(x0), f(x0 + 1), .., f(x0 + n), then difference in place
        let mut x = ctx.from_index(run * p);
        for slot in diffs.iter_mut() {
            *slot = ctx.eval_poly(poly, &x);
            x = ctx.add(&x, &one);
        }
        for level in 1..=n {
            for j in (level..=n).rev() {
                diffs[j] = ctx.sub(&diffs[j], &diffs[j - 1]);
            }
        }
        for _ in 0..p {
            visit(&diffs[0]);
            for j in 0..n {
                diffs[j] = ctx.add(&diffs[j], &diffs[j + 1]);
            }
        }
    }
}

/// Advances `x` to the element with the next index (odometer order).
#[inline]
pub fn increment(ctx: &FieldCtx, x: &mut FqElem) {
    for slot in x.coeffs.iter_mut().take(ctx.r) {
        *slot += 1;
        if *slot < ctx.p {
            return;
        }
        *slot = 0;
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: smallest monic polynomial of degree 2 or 3 without roots,
    /// enumerated with `c_0` most significant.
    fn oracle_smallest_rootless(p: u64, r: usize) -> Vec<u32> {
        let mut best: Option<Vec<u64>> = None;
        let digits = |n: u64| {
            let mut v = vec![0u64; r];
            let mut rest = n;
            for k in (0..r).rev() {
                v[k] = rest % p;
                rest /= p;
            }
            v
        };
        for n in 0..p.pow(r as u32) {
            let mut poly = digits(n);
            poly.push(1);
            let rootless = (0..p).all(|x| {
                let mut v = 0u64;
                let mut xp = 1u64;
                for &c in &poly {
                    v = (v + c * xp) % p;
                    xp = xp * x % p;
                }
                v != 0
            });
            if rootless {
                best = Some(poly);
                break;
            }
        }
        best.unwrap().into_iter().map(|c| c as u32).collect()
    }

    #[test]
    fn prime_field_modulus_is_placeholder() {
        let ctx = build_extension(7, 1).unwrap();
        assert_eq!(ctx.modulus(), &[0, 1]);
        assert_eq!(ctx.order(), 7);
    }

    #[test]
    fn smallest_quadratic_and_cubic_match_enumeration() {
        assert_eq!(build_extension(7, 2).unwrap().modulus(), oracle_smallest_rootless(7, 2).as_slice());
        assert_eq!(build_extension(7, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(build_extension(5, 3).unwrap().modulus(), oracle_smallest_rootless(5, 3).as_slice());
        for p in [2u64, 3, 11, 13] {
            for r in [2, 3] {
                assert_eq!(
                    build_extension(p, r).unwrap().modulus(),
                    oracle_smallest_rootless(p, r).as_slice()
                );
            }
        }
    }

    #[test]
    fn quartic_modulus_is_irreducible() {
        for p in [2u64, 3, 5, 7] {
            let ctx = build_extension(p, 4).unwrap();
            // a field: every nonzero element has x^(q-1) = 1 and the
            // multiplicative group has an element of full order somewhere
            let q = ctx.order();
            let one = ctx.one();
            for x in ctx.elements().skip(1) {
                assert_eq!(ctx.pow(&x, q - 1), one);
            }
        }
    }

    #[test]
    fn rejects_composites_and_bad_degrees() {
        assert_eq!(build_extension(9, 1).unwrap_err(), FieldError::NotPrime(9));
        assert_eq!(build_extension(7, 5).unwrap_err(), FieldError::BadDegree(5));
        assert_eq!(build_extension(7, 0).unwrap_err(), FieldError::BadDegree(0));
    }

    #[test]
    fn cube_classes_in_f7() {
        let ctx = build_extension(7, 1).unwrap();
        assert_eq!(cube_class(&ctx.from_int(0), &ctx), CubeClass::Zero);
        assert_eq!(cube_class(&ctx.from_int(1), &ctx), CubeClass::Cube);
        assert_eq!(cube_class(&ctx.from_int(6), &ctx), CubeClass::Cube);
        // 3^2 = 2, the smallest element of order 3
        assert_eq!(ctx.cube_anchor(), Some(ctx.from_int(2)));
        assert_eq!(cube_class(&ctx.from_int(3), &ctx), CubeClass::NonCubeA);
        assert_eq!(cube_class(&ctx.from_int(2), &ctx), CubeClass::NonCubeB);
    }

    #[test]
    fn fiber_sizes() {
        let f7 = build_extension(7, 1).unwrap();
        assert_eq!(fiber_size(&f7.from_int(0), &f7), 1);
        assert_eq!(fiber_size(&f7.from_int(1), &f7), 3);
        assert_eq!(fiber_size(&f7.from_int(3), &f7), 0);
        let f5 = build_extension(5, 1).unwrap();
        for x in f5.elements() {
            assert_eq!(fiber_size(&x, &f5), 1);
        }
    }

    #[test]
    fn table_agrees_with_exponent_test_and_sums_to_q() {
        for (p, r) in [(7u64, 1), (7, 2), (5, 2), (5, 3), (13, 2), (3, 2), (2, 4), (7, 3)] {
            let ctx = build_extension(p, r).unwrap();
            let table = FiberTable::new(&ctx, 3);
            let mut total = 0u64;
            for x in ctx.elements() {
                let s = table.fiber_size(&ctx, &x);
                if p != 3 {
                    assert_eq!(s, fiber_size(&x, &ctx), "p={p} r={r}");
                }
                total += s as u64;
            }
            assert_eq!(total, ctx.order());
        }
    }

    #[test]
    fn square_table_counts_roots() {
        let ctx = build_extension(11, 2).unwrap();
        let table = FiberTable::new(&ctx, 2);
        let mut counts = vec![0u32; ctx.order() as usize];
        for y in ctx.elements() {
            counts[ctx.index(&ctx.mul(&y, &y)) as usize] += 1;
        }
        for (i, &c) in counts.iter().enumerate() {
            assert_eq!(table.fiber_size_at(i as u64), c);
        }
    }

    #[test]
    fn forward_differences_match_horner() {
        for (p, r) in [(2u64, 3), (3, 2), (5, 3), (7, 2), (11, 1)] {
            let ctx = build_extension(p, r).unwrap();
            let poly: Vec<FqElem> = [1i64, 1, 0, 0, 0, 1].iter().map(|&c| ctx.from_int(c)).collect();
            let mut values = Vec::new();
            for_each_value(&ctx, &poly, |y| values.push(*y));
            let horner: Vec<FqElem> = ctx.elements().map(|x| ctx.eval_poly(&poly, &x)).collect();
            assert_eq!(values, horner, "p={p} r={r}");
        }
    }

    #[test]
    fn index_round_trip_and_increment() {
        let ctx = build_extension(5, 3).unwrap();
        let mut x = ctx.zero();
        for i in 0..ctx.order() {
            assert_eq!(ctx.index(&x), i);
            assert_eq!(ctx.from_index(i), x);
            increment(&ctx, &mut x);
        }
    }

    #[test]
    fn deterministic_construction() {
        let a = build_extension(13, 3).unwrap();
        let b = build_extension(13, 3).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.cube_anchor(), b.cube_anchor());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn cube_class_stable_under_cube_multiples(
                (p, r) in prop_oneof![Just((7u64, 1usize)), Just((13, 1)), Just((5, 2)), Just((7, 2)), Just((11, 2))],
                xi in 1u64..10_000, yi in 1u64..10_000,
            ) {
                let ctx = build_extension(p, r).unwrap();
                let q = ctx.order();
                let x = ctx.from_index(1 + xi % (q - 1));
                let y = ctx.from_index(1 + yi % (q - 1));
                let cube = ctx.mul(&ctx.mul(&y, &y), &y);
                prop_assert_eq!(cube_class(&ctx.mul(&x, &cube), &ctx), cube_class(&x, &ctx));
            }

            #[test]
            fn multiplication_is_associative_and_distributive(
                a in 0u64..625, b in 0u64..625, c in 0u64..625,
            ) {
                let ctx = build_extension(5, 4).unwrap();
                let (a, b, c) = (ctx.from_index(a), ctx.from_index(b), ctx.from_index(c));
                prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
                prop_assert_eq!(ctx.mul(&a, &ctx.add(&b, &c)), ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c)));
            }
        }
    }
}
