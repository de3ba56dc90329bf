//! Exact arithmetic in the ring of integers of `Q(sqrt(-d))` for the nine
//! class-number-one fields, prime splitting, and the factorization of a
//! Frobenius polynomial as `P_sigma * conj(P_sigma)` over that ring.
//!
//! Elements are written `a + b*w` with `w = (-1 + sqrt(-d))/2` when
//! `d = 3 mod 4` and `w = sqrt(-d)` otherwise.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::curve_counts::LPolynomial;

pub const CLASS_NUMBER_ONE: [u32; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("d = {0} does not give a class-number-one imaginary quadratic field")]
    UnsupportedField(u32),
    #[error("no factorization of {lpoly} over Z[w] with d = {d} at p = {p}")]
    NoSplitting { lpoly: String, d: u32, p: u64 },
    #[error("p = {0} is not split")]
    NotSplit(u64),
    #[error("conjugate splitting is implemented for genus 1..=4, got {0}")]
    UnsupportedGenus(usize),
    #[error("cannot parse {0:?} as a+b*w")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*w", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

impl FromStr for QuadInt {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || QuadError::Parse(s.to_string());
        let body = s.trim().strip_suffix("*w").ok_or_else(err)?;
        // split at the sign that separates a from b; skip a leading sign on a
        let pos = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(err)?;
        let a: BigInt = body[..pos].parse().map_err(|_| err())?;
        let b_str = &body[pos..];
        let b: BigInt = b_str.trim_start_matches('+').parse().map_err(|_| err())?;
        Ok(QuadInt { a, b })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitKind::Split => "split",
            SplitKind::Inert => "inert",
            SplitKind::Ramified => "ramified",
        })
    }
}

/// How `p` factors in the field. For inert `p`, `pi = p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPrimeData {
    pub field: QuadField,
    pub p: u64,
    pub kind: SplitKind,
    pub pi: QuadInt,
}

impl SplitPrimeData {
    /// `v_pi(x)`; `None` for `x = 0`.
    pub fn valuation(&self, x: &QuadInt) -> Option<u32> {
        self.field.valuation(x, &self.pi)
    }

    /// `v_pibar(x) = v_pi(conj x)`.
    pub fn valuation_bar(&self, x: &QuadInt) -> Option<u32> {
        self.field.valuation(&self.field.conj(x), &self.pi)
    }

    pub fn pi_bar(&self) -> QuadInt {
        self.field.conj(&self.pi)
    }
}

/// A monic polynomial over the ring of integers, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EPoly {
    pub coeffs: Vec<QuadInt>,
}

impl EPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &QuadInt {
        &self.coeffs[i]
    }

    /// `e_k`, the k-th elementary symmetric function of the roots, i.e.
    /// `(-1)^k` times the coefficient of `T^(n-k)`.
    pub fn elementary(&self, field: &QuadField, k: usize) -> QuadInt {
        let c = &self.coeffs[self.degree() - k];
        if k.is_multiple_of(2) {
            c.clone()
        } else {
            field.neg(c)
        }
    }

    /// Coefficient list as `a+b*w` strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            if c.is_rational() && c.a.is_one() && i > 0 {
                f.write_str(&mono)?;
            } else if i == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}){mono}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl QuadField {
    pub fn new(d: u32) -> Result<Self, QuadError> {
        if CLASS_NUMBER_ONE.contains(&d) {
            Ok(QuadField { d })
        } else {
            Err(QuadError::UnsupportedField(d))
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `w = (-1 + sqrt(-d))/2`.
    pub fn half_integral(&self) -> bool {
        self.d % 4 == 3
    }

    /// Field discriminant.
    pub fn discriminant(&self) -> i64 {
        if self.half_integral() {
            -(self.d as i64)
        } else {
            -4 * self.d as i64
        }
    }

    /// `(1 + d)/4` for half-integral bases, so that `w^2 = -w - k`.
    fn k(&self) -> BigInt {
        BigInt::from((1 + self.d) / 4)
    }

    pub fn add(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        QuadInt { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    pub fn sub(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        QuadInt { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    pub fn neg(&self, x: &QuadInt) -> QuadInt {
        QuadInt { a: -&x.a, b: -&x.b }
    }

    pub fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        let bb = &x.b * &y.b;
        let cross = &x.a * &y.b + &y.a * &x.b;
        if self.half_integral() {
            QuadInt { a: &x.a * &y.a - self.k() * &bb, b: cross - bb }
        } else {
            QuadInt { a: &x.a * &y.a - BigInt::from(self.d) * bb, b: cross }
        }
    }

    pub fn scale(&self, x: &QuadInt, n: &BigInt) -> QuadInt {
        QuadInt { a: &x.a * n, b: &x.b * n }
    }

    pub fn pow(&self, x: &QuadInt, e: u32) -> QuadInt {
        (0..e).fold(QuadInt::one(), |acc, _| self.mul(&acc, x))
    }

    pub fn conj(&self, x: &QuadInt) -> QuadInt {
        if self.half_integral() {
            // conj(w) = -1 - w
            QuadInt { a: &x.a - &x.b, b: -&x.b }
        } else {
            QuadInt { a: x.a.clone(), b: -&x.b }
        }
    }

    pub fn norm(&self, x: &QuadInt) -> BigInt {
        if self.half_integral() {
            &x.a * &x.a - &x.a * &x.b + self.k() * &x.b * &x.b
        } else {
            &x.a * &x.a + BigInt::from(self.d) * &x.b * &x.b
        }
    }

    /// `x + conj(x)`.
    pub fn trace(&self, x: &QuadInt) -> BigInt {
        if self.half_integral() {
            BigInt::from(2) * &x.a - &x.b
        } else {
            BigInt::from(2) * &x.a
        }
    }

    /// `x / y` when the quotient lies in the ring.
    pub fn div_exact(&self, x: &QuadInt, y: &QuadInt) -> Option<QuadInt> {
        let n = self.norm(y);
        if n.is_zero() {
            return None;
        }
        let num = self.mul(x, &self.conj(y));
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(QuadInt { a: qa, b: qb })
    }

    pub fn divides(&self, y: &QuadInt, x: &QuadInt) -> bool {
        self.div_exact(x, y).is_some()
    }

    pub fn units(&self) -> Vec<QuadInt> {
        match self.d {
            1 => vec![
                QuadInt::new(1, 0),
                QuadInt::new(-1, 0),
                QuadInt::new(0, 1),
                QuadInt::new(0, -1),
            ],
            3 => vec![
                QuadInt::new(1, 0),
                QuadInt::new(-1, 0),
                QuadInt::new(0, 1),
                QuadInt::new(0, -1),
                QuadInt::new(-1, -1),
                QuadInt::new(1, 1),
            ],
            _ => vec![QuadInt::new(1, 0), QuadInt::new(-1, 0)],
        }
    }

    /// The lexicographically smallest associate with positive first
    /// coordinate; associates of the form `b*w` fall back to `b > 0`.
    pub fn canonical_associate(&self, x: &QuadInt) -> QuadInt {
        if x.is_zero() {
            return x.clone();
        }
        let associates: Vec<QuadInt> = self.units().iter().map(|u| self.mul(u, x)).collect();
        associates
            .iter()
            .filter(|y| y.a.is_positive())
            .min()
            .or_else(|| associates.iter().filter(|y| y.b.is_positive()).min())
            .cloned()
            .expect("some associate has a positive coordinate")
    }

    pub fn are_associate(&self, x: &QuadInt, y: &QuadInt) -> bool {
        self.canonical_associate(x) == self.canonical_associate(y)
    }

    /// Largest `k` with `pi^k | x`; `None` for `x = 0`.
    pub fn valuation(&self, x: &QuadInt, pi: &QuadInt) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut rest = x.clone();
        while let Some(q) = self.div_exact(&rest, pi) {
            rest = q;
            k += 1;
        }
        Some(k)
    }

    /// All elements of norm `n` up to units, as canonical associates in
    /// ascending order.
    pub fn norm_solutions(&self, n: &BigInt) -> Vec<QuadInt> {
        let mut found = Vec::new();
        if !n.is_positive() {
            return found;
        }
        let d = BigInt::from(self.d);
        let four_n = BigInt::from(4) * n;
        // half-integral: (2a - b)^2 + d b^2 = 4n; otherwise a^2 + d b^2 = n
        let target = if self.half_integral() { four_n } else { n.clone() };
        let b_max = (&target / &d).sqrt();
        let mut b = -b_max.clone();
        while b <= b_max {
            let rest = &target - &d * &b * &b;
            if let Some(s) = crate::arith::exact_sqrt(&rest) {
                for sign in [1, -1] {
                    let s: BigInt = &s * sign;
                    let a = if self.half_integral() {
                        let twice: BigInt = &s + &b;
                        if twice.is_odd() {
                            continue;
                        }
                        twice / 2
                    } else {
                        s
                    };
                    found.push(self.canonical_associate(&QuadInt { a, b: b.clone() }));
                }
            }
            b += 1;
        }
        found.sort();
        found.dedup();
        found
    }

    /// Kronecker symbol `(D / p)` of the field discriminant.
    fn kronecker(&self, p: u64) -> i32 {
        let disc = self.discriminant();
        if p == 2 {
            if disc % 2 == 0 {
                return 0;
            }
            return match disc.rem_euclid(8) {
                1 | 7 => 1,
                _ => -1,
            };
        }
        let r = disc.rem_euclid(p as i64) as u64;
        if r == 0 {
            return 0;
        }
        let e = mod_pow(r, (p - 1) / 2, p);
        if e == 1 {
            1
        } else {
            -1
        }
    }

    pub fn split_prime(&self, p: u64) -> SplitPrimeData {
        let kind = match self.kronecker(p) {
            1 => SplitKind::Split,
            0 => SplitKind::Ramified,
            _ => SplitKind::Inert,
        };
        let pi = match kind {
            SplitKind::Inert => QuadInt::from_int(p),
            _ => self
                .norm_solutions(&BigInt::from(p))
                .into_iter()
                .next()
                .expect("a split or ramified prime has an element of norm p"),
        };
        SplitPrimeData { field: *self, p, kind, pi }
    }

    pub fn poly_mul(&self, x: &[QuadInt], y: &[QuadInt]) -> Vec<QuadInt> {
        let mut out = vec![QuadInt::zero(); x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(a, b));
            }
        }
        out
    }

    pub fn conj_poly(&self, p: &EPoly) -> EPoly {
        EPoly { coeffs: p.coeffs.iter().map(|c| self.conj(c)).collect() }
    }
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// The factorization `L = P_sigma * conj(P_sigma)` chosen by the labeling
/// rule, plus the number of distinct valid `P_sigma` that were found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateSplit {
    pub sigma: EPoly,
    pub sigma_bar: EPoly,
    pub candidates: usize,
}

/// Splits `L` over the ring of integers at a split prime.
///
/// Writing `P_sigma = sum t_k T^k`, the roots of `conj(P_sigma)` are `p/alpha`
/// for the roots `alpha` of `P_sigma`, which gives
/// `t_j = t_0 conj(t_(g-j)) / p^j`. The search enumerates `t_0` over elements
/// of norm `p^g` times units and `t_(g-1)` over the elements with trace equal
/// to the `T^(2g-1)` coefficient of `L` and `|t_(g-1)| <= g sqrt(p)`; the
/// remaining coefficients follow from the relation, except the middle one in
/// genus 4, which is solved from a small linear system. Every candidate is
/// accepted only if `P_sigma * conj(P_sigma) = L` exactly.
///
/// `P_sigma` is the factor whose constant term has the smaller `v_pi`; ties
/// go to the lexicographically smaller coefficient list.
pub fn conjugate_split(
    lpoly: &LPolynomial,
    field: &QuadField,
    sp: &SplitPrimeData,
) -> Result<ConjugateSplit, QuadError> {
    if sp.kind != SplitKind::Split {
        return Err(QuadError::NotSplit(sp.p));
    }
    let g = lpoly.genus();
    if !(1..=4).contains(&g) {
        return Err(QuadError::UnsupportedGenus(g));
    }
    let p = BigInt::from(sp.p);
    let target: Vec<QuadInt> = lpoly.coeffs().iter().map(|c| QuadInt::from_int(c.clone())).collect();
    let units = field.units();
    let constant_classes = field.norm_solutions(&num_traits::pow(p.clone(), g));
    let top_trace = lpoly.coeff(2 * g - 1).clone();
    let top_candidates = if g == 1 {
        Vec::new()
    } else {
        bounded_trace_elements(field, &top_trace, &(BigInt::from(g * g) * &p))
    };

    let mut valid: Vec<EPoly> = Vec::new();
    for class in &constant_classes {
        for u in &units {
            let t0 = field.mul(u, class);
            if g == 1 {
                let cand = EPoly { coeffs: vec![t0, QuadInt::one()] };
                if product_matches(field, &cand, &target) {
                    valid.push(cand);
                }
                continue;
            }
            for top in &top_candidates {
                for cand in complete_candidate(field, &p, g, &t0, top, lpoly) {
                    if product_matches(field, &cand, &target) {
                        valid.push(cand);
                    }
                }
            }
        }
    }
    valid.sort_by(|x, y| x.coeffs.cmp(&y.coeffs));
    valid.dedup();
    if valid.is_empty() {
        return Err(QuadError::NoSplitting { lpoly: lpoly.to_string(), d: field.d, p: sp.p });
    }
    let key = |e: &EPoly| sp.valuation(&e.coeffs[0]).unwrap_or(u32::MAX);
    let sigma = valid
        .iter()
        .min_by(|x, y| key(x).cmp(&key(y)).then_with(|| x.coeffs.cmp(&y.coeffs)))
        .cloned()
        .unwrap();
    let sigma_bar = field.conj_poly(&sigma);
    Ok(ConjugateSplit { sigma, sigma_bar, candidates: valid.len() })
}

/// Elements `x` with `x + conj(x) = trace` and `N(x) <= bound`.
fn bounded_trace_elements(field: &QuadField, trace: &BigInt, bound: &BigInt) -> Vec<QuadInt> {
    let d = BigInt::from(field.d);
    let mut out = Vec::new();
    if field.half_integral() {
        // x = (t + b)/2 + b w has N = (t^2 + d b^2)/4
        let room = BigInt::from(4) * bound - trace * trace;
        if room.is_negative() {
            return out;
        }
        let b_max = (&room / &d).sqrt();
        let mut b = -b_max.clone();
        while b <= b_max {
            let twice = trace + &b;
            if twice.is_even() {
                out.push(QuadInt { a: twice / 2, b: b.clone() });
            }
            b += 1;
        }
    } else {
        if trace.is_odd() {
            return out;
        }
        let a: BigInt = trace / 2;
        let room: BigInt = bound - &a * &a;
        if room.is_negative() {
            return out;
        }
        let b_max = (&room / &d).sqrt();
        let mut b = -b_max.clone();
        while b <= b_max {
            out.push(QuadInt { a: a.clone(), b: b.clone() });
            b += 1;
        }
    }
    out
}

/// Fills in `P_sigma` from `t_0` and `t_(g-1)`. Returns no candidate when a
/// forced coefficient is not integral.
fn complete_candidate(
    field: &QuadField,
    p: &BigInt,
    g: usize,
    t0: &QuadInt,
    top: &QuadInt,
    lpoly: &LPolynomial,
) -> Vec<EPoly> {
    let mut coeffs = vec![QuadInt::zero(); g + 1];
    coeffs[0] = t0.clone();
    coeffs[g] = QuadInt::one();
    coeffs[g - 1] = top.clone();
    // t_1 = t_0 conj(t_(g-1)) / p
    if g >= 3 {
        let num = field.mul(t0, &field.conj(top));
        let Some(t1) = field.div_exact(&num, &QuadInt::from_int(p.clone())) else {
            return Vec::new();
        };
        coeffs[1] = t1;
    }
    if g != 4 {
        return vec![EPoly { coeffs }];
    }
    // t_2: x + conj(x) = L_6 - N(t_3), and p^2 x = t_0 conj(x)
    let trace = lpoly.coeff(6) - field.norm(top);
    middle_solutions(field, p, t0, &trace)
        .into_iter()
        .map(|t2| {
            let mut c = coeffs.clone();
            c[2] = t2;
            EPoly { coeffs: c }
        })
        .collect()
}

/// Solves for `x = u + v w` with `Tr(x) = trace` and `p^2 x = t0 conj(x)`.
fn middle_solutions(field: &QuadField, p: &BigInt, t0: &QuadInt, trace: &BigInt) -> Vec<QuadInt> {
    let p2 = p * p;
    // p^2 x - t0 conj(x) as a Z-linear map of (u, v): images of 1 and w
    let image = |x: &QuadInt| field.sub(&field.scale(x, &p2), &field.mul(t0, &field.conj(x)));
    let e1 = image(&QuadInt::one());
    let ew = image(&QuadInt::new(0, 1));
    let (tu, tv) = if field.half_integral() { (2, -1) } else { (2, 0) };
    // rows: [cu, cv, rhs]
    let rows = [
        [BigInt::from(tu), BigInt::from(tv), trace.clone()],
        [e1.a.clone(), ew.a.clone(), BigInt::zero()],
        [e1.b.clone(), ew.b.clone(), BigInt::zero()],
    ];
    let satisfies = |u: &BigInt, v: &BigInt| {
        rows.iter().all(|r| &r[0] * u + &r[1] * v == r[2])
    };
    for i in 0..3 {
        for j in i + 1..3 {
            let (r, s) = (&rows[i], &rows[j]);
            let det = &r[0] * &s[1] - &r[1] * &s[0];
            if det.is_zero() {
                continue;
            }
            let nu = &r[2] * &s[1] - &r[1] * &s[2];
            let nv = &r[0] * &s[2] - &r[2] * &s[0];
            if !nu.is_multiple_of(&det) || !nv.is_multiple_of(&det) {
                return Vec::new();
            }
            let (u, v) = (nu / &det, nv / &det);
            return if satisfies(&u, &v) { vec![QuadInt { a: u, b: v }] } else { Vec::new() };
        }
    }
    // rank-deficient: fall back to |t_2| <= C(4,2) p
    bounded_trace_elements(field, trace, &(BigInt::from(36) * &p2))
        .into_iter()
        .filter(|x| satisfies(&x.a, &x.b))
        .collect()
}

fn product_matches(field: &QuadField, cand: &EPoly, target: &[QuadInt]) -> bool {
    let bar = field.conj_poly(cand);
    field.poly_mul(&cand.coeffs, &bar.coeffs) == target
}
