//! Brute-force generators and oracles: exhaustive enumeration of small Weil
//! polynomials, the pairwise-product forcing check, powers of conjugate
//! products, and the CM elliptic baseline.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{binomial, exact_root, exact_sqrt, prime_power};
use crate::classify::SyntheticFactor;
use crate::curve_counts::{
    count_points, good_reduction, lpoly_from_counts, CountError, CurveSpec, LPolyError, LPolynomial,
};
use crate::newton::{is_ordinary, lpoly_polygon, newton_polygon, ValuedCoeffs};
use crate::quad_field::{EPoly, QuadField, SplitKind};
use crate::roots::complex_roots;
use crate::weilpoly::{from_trace_polynomial, roots_in_weil_interval};

/// Largest `q` for exhaustive enumeration at genus 3.
pub const MAX_EXHAUSTIVE_Q: u64 = 16;
pub const MAX_EXHAUSTIVE_GENUS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilEnum {
    pub q: u64,
    pub g: usize,
    pub polys: Vec<LPolynomial>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("exhaustive enumeration needs 1 <= g <= {MAX_EXHAUSTIVE_GENUS} and q <= {MAX_EXHAUSTIVE_Q} at g = 3; got q = {q}, g = {g}")]
    OutOfRange { q: u64, g: usize },
    #[error("{0} at p = {1}")]
    Count(CountError, u64),
    #[error(transparent)]
    LPoly(#[from] LPolyError),
}

/// Every Weil polynomial of degree `2g` over `F_q` with integer coefficients,
/// in lexicographic order of the trace polynomial coefficients
/// `(h_{g-1}, .., h_0)`.
pub fn enumerate_weil(q: u64, g: usize) -> Result<WeilEnum, OracleError> {
    prime_power(q).ok_or(OracleError::NotPrimePower(q))?;
    if g == 0 || g > MAX_EXHAUSTIVE_GENUS || (g == MAX_EXHAUSTIVE_GENUS && q > MAX_EXHAUSTIVE_Q) {
        return Err(OracleError::OutOfRange { q, g });
    }
    let mut polys = Vec::new();
    let mut prefix = Vec::with_capacity(g);
    walk_prefixes(q, g, &mut prefix, &mut |h| {
        polys.push(to_lpoly(q, h));
    });
    Ok(WeilEnum { q, g, polys })
}

/// Random Weil polynomials for `(q, g)` outside the exhaustive range: random
/// prefixes of the trace polynomial within the coefficient bounds, with the
/// constant term drawn from its admissible interval.
pub fn sample_weil(q: u64, g: usize, count: usize, seed: u64) -> Result<Vec<LPolynomial>, OracleError> {
    prime_power(q).ok_or(OracleError::NotPrimePower(q))?;
    if g == 0 {
        return Err(OracleError::OutOfRange { q, g });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 2.0 * (q as f64).sqrt();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 10_000 {
        attempts += 1;
        // roots drawn uniformly in the interval give a real-rooted prefix
        let roots: Vec<f64> = (0..g).map(|_| rng.gen_range(-bound..=bound)).collect();
        let mut h = vec![1.0f64];
        for r in &roots {
            let mut next = vec![0.0; h.len() + 1];
            for (i, c) in h.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            h = next;
        }
        let coeffs: Vec<BigInt> = h.iter().map(|c| BigInt::from(c.round() as i64)).collect();
        let qb = BigInt::from(q);
        if roots_in_weil_interval(&coeffs, &qb) {
            out.push(to_lpoly(q, &coeffs));
        }
    }
    Ok(out)
}

fn to_lpoly(q: u64, h: &[BigInt]) -> LPolynomial {
    LPolynomial::from_coeffs(q, from_trace_polynomial(h, &BigInt::from(q))).expect("monic of even degree")
}

/// Depth-first enumeration of the monic trace polynomial
/// `x^g + h_{g-1} x^{g-1} + .. + h_0`. `prefix` holds `h_{g-1}, h_{g-2}, ..`.
fn walk_prefixes(q: u64, g: usize, prefix: &mut Vec<i64>, emit: &mut dyn FnMut(&[BigInt])) {
    let bound = 2.0 * (q as f64).sqrt();
    let depth = prefix.len();
    if depth + 1 == g {
        let (lo, hi) = constant_term_range(prefix, g, bound);
        let qb = BigInt::from(q);
        for h0 in lo..=hi {
            let mut h: Vec<BigInt> = Vec::with_capacity(g + 1);
            h.push(BigInt::from(h0));
            h.extend(prefix.iter().rev().map(|&c| BigInt::from(c)));
            h.push(BigInt::one());
            if roots_in_weil_interval(&h, &qb) {
                emit(&h);
            }
        }
        return;
    }
    // |e_k| <= C(g, k) B^k, with e_k = (-1)^k h_{g-k}
    let k = depth + 1;
    let mut lim = binomial(g as u64, k as u64).to_f64().unwrap() * bound.powi(k as i32);
    let mut lo = -lim;
    if k == 2 {
        // sum of squares of the roots is at most g B^2, and real roots force
        // e_1^2 >= 2g/(g-1) e_2
        let e1 = -(prefix[0] as f64);
        lo = (e1 * e1 - g as f64 * bound * bound) / 2.0;
        lim = lim.min(e1 * e1 * (g as f64 - 1.0) / (2.0 * g as f64));
    }
    let (lo, hi) = ((lo.floor() as i64) - 1, (lim.ceil() as i64) + 1);
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let mut values: Vec<i64> = (lo..=hi).map(|e| sign * e).collect();
    values.sort_unstable();
    for h in values {
        prefix.push(h);
        walk_prefixes(q, g, prefix, emit);
        prefix.pop();
    }
}

/// Admissible `h_0` for fixed `h_{g-1} .. h_1`, with one unit of slack on
/// each side: the signs of `h` at `+-B` and at the critical points must
/// alternate for `g` real roots in `[-B, B]`.
fn constant_term_range(prefix: &[i64], g: usize, bound: f64) -> (i64, i64) {
    // htilde = h - h_0, constant term first
    let mut ht = vec![0.0f64; g + 1];
    for (i, &c) in prefix.iter().enumerate() {
        ht[g - 1 - i] = c as f64;
    }
    ht[g] = 1.0;
    let eval = |x: f64| ht.iter().rev().fold(0.0, |acc, c| acc * x + c);
    // sign required at x: +1 means h(x) >= 0
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    let mut constrain = |x: f64, sign: f64| {
        // sign * (htilde(x) + h_0) >= 0
        let v = eval(x);
        if sign > 0.0 {
            lo = lo.max(-v);
        } else {
            hi = hi.min(-v);
        }
    };
    constrain(bound, 1.0);
    constrain(-bound, if g.is_multiple_of(2) { 1.0 } else { -1.0 });
    if g >= 2 {
        let deriv: Vec<f64> = (1..=g).map(|i| ht[i] * i as f64).collect();
        let mut crit: Vec<f64> = Vec::new();
        for z in complex_roots(&deriv) {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                // a non-real critical point rules out g real roots, but only
                // trust that away from double critical points
                if z.im.abs() > 1e-3 * (1.0 + bound) {
                    return (1, 0);
                }
            }
            crit.push(z.re);
        }
        crit.sort_by(f64::total_cmp);
        // the largest critical point is a local minimum of a monic h
        for (j, &c) in crit.iter().rev().enumerate() {
            constrain(c, if j % 2 == 0 { -1.0 } else { 1.0 });
        }
    }
    if !(lo.is_finite() && hi.is_finite()) || lo > hi + 2.0 {
        return (1, 0);
    }
    ((lo.floor() as i64) - 1, (hi.ceil() as i64) + 1)
}

/// Outcome of the pairwise-product forcing check over one `(q, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementReport {
    pub q: u64,
    pub g: usize,
    pub examined: usize,
    /// Polynomials whose roots have all pairwise products equal to `q`.
    pub premise: Vec<LPolynomial>,
    /// Members of `premise` other than `(T - sqrt q)^(2g)` and `(T + sqrt q)^(2g)`.
    pub counterexamples: Vec<LPolynomial>,
    /// `2g sqrt(q)` is an integer, i.e. `q` is a square.
    pub trace_integral: bool,
}

/// Power sums `s_1 .. s_n` of the roots of a monic polynomial (constant term
/// first), by Newton's identities.
fn power_sums(coeffs: &[BigInt], n: usize) -> Vec<BigInt> {
    let deg = coeffs.len() - 1;
    // e_k = (-1)^k a_{deg-k}
    let e = |k: usize| -> BigInt {
        if k > deg {
            return BigInt::zero();
        }
        let c = coeffs[deg - k].clone();
        if k.is_multiple_of(2) {
            c
        } else {
            -c
        }
    };
    let mut s: Vec<BigInt> = vec![BigInt::from(deg)];
    for k in 1..=n {
        // s_k = sum_{i=1}^{k-1} (-1)^(i-1) e_i s_{k-i} + (-1)^(k-1) k e_k
        let mut acc = BigInt::zero();
        for i in 1..k {
            let term = e(i) * &s[k - i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = e(k) * BigInt::from(k);
        if k % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        s.push(acc);
    }
    s
}

/// All `alpha_i alpha_j` (`i < j`) equal `q`, decided by comparing the power
/// sums `(s_k^2 - s_{2k}) / 2` of the wedge square with `C(2g, 2) q^k` for
/// every `k` up to `C(2g, 2)`.
pub fn pairwise_products_all_q(lpoly: &LPolynomial) -> bool {
    let n = lpoly.coeffs().len() - 1;
    let pairs = n * (n - 1) / 2;
    let s = power_sums(lpoly.coeffs(), 2 * pairs);
    let q = BigInt::from(lpoly.p());
    let count = BigInt::from(pairs);
    let mut qk = BigInt::one();
    for k in 1..=pairs {
        qk *= &q;
        let wedge = (&s[k] * &s[k] - &s[2 * k]) / 2;
        if wedge != &count * &qk {
            return false;
        }
    }
    true
}

/// Checks that the only Weil polynomials whose roots have all pairwise
/// products equal to `q` are `(T -+ sqrt q)^(2g)`.
pub fn refinement_forcing_check(q: u64, g: usize) -> Result<RefinementReport, OracleError> {
    let weil = enumerate_weil(q, g)?;
    let qb = BigInt::from(q);
    let root = exact_sqrt(&qb);
    let forced: Vec<Vec<BigInt>> = match &root {
        Some(r) => [r.clone(), -r.clone()]
            .iter()
            .map(|r| {
                let mut acc = vec![BigInt::one()];
                for _ in 0..2 * g {
                    let mut next = vec![BigInt::zero(); acc.len() + 1];
                    for (i, c) in acc.iter().enumerate() {
                        next[i + 1] += c;
                        next[i] -= c * r;
                    }
                    acc = next;
                }
                acc
            })
            .collect(),
        None => Vec::new(),
    };
    let premise: Vec<LPolynomial> = weil.polys.iter().filter(|l| pairwise_products_all_q(l)).cloned().collect();
    let counterexamples = premise
        .iter()
        .filter(|l| !forced.iter().any(|f| f.as_slice() == l.coeffs()))
        .cloned()
        .collect();
    Ok(RefinementReport {
        q,
        g,
        examined: weil.polys.len(),
        premise,
        counterexamples,
        trace_integral: root.is_some(),
    })
}

/// Result of raising `P_sigma * conj(P_sigma)` to the power `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolypowReport {
    pub coeffs: Vec<BigInt>,
    pub integral: bool,
    pub functional_equation: bool,
    /// `q` with `N(P_sigma(0)) = q^(deg P_sigma)`, when it exists.
    pub q: Option<BigInt>,
}

impl PolypowReport {
    pub fn valid(&self) -> bool {
        self.integral && self.functional_equation
    }
}

/// Builds `(P_sigma * conj(P_sigma))^t` by exact multiplication and checks
/// that it has rational integer coefficients and satisfies the functional
/// equation of degree `2 t deg(P_sigma)`.
pub fn polypow_check(field: &QuadField, sigma: &EPoly, t: u32) -> PolypowReport {
    let bar = field.conj_poly(sigma);
    let base = field.poly_mul(&sigma.coeffs, &bar.coeffs);
    let mut acc = vec![crate::quad_field::QuadInt::one()];
    for _ in 0..t {
        acc = field.poly_mul(&acc, &base);
    }
    let integral = acc.iter().all(|c| c.is_rational());
    let coeffs: Vec<BigInt> = acc.iter().map(|c| c.a.clone()).collect();
    let n = sigma.degree() as u32;
    let q = exact_root(&field.norm(sigma.coeff(0)), n);
    let functional_equation = match &q {
        Some(q) if integral => {
            let g = coeffs.len() / 2;
            (0..=g).all(|i| coeffs[i] == num_traits::pow(q.clone(), g - i) * &coeffs[2 * g - i])
        }
        _ => false,
    };
    PolypowReport { coeffs, integral, functional_equation, q }
}

/// One elliptic factor of a CM product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmFactor {
    pub curve: CurveSpec,
    pub d: u32,
    pub kind: SplitKind,
    pub a_p: BigInt,
    pub u: usize,
    pub ordinary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub p: u64,
    pub factors: Vec<CmFactor>,
    /// Sum of the per-factor unit-root counts.
    pub total_u: usize,
    /// Unit-root count of the product polynomial, computed independently.
    pub product_u: usize,
    pub failures: Vec<String>,
}

impl CmReport {
    pub fn ordinary(&self) -> bool {
        self.product_u == self.factors.len()
    }
}

/// The default baseline: three copies of `y^2 = x^3 + 1`, CM by `Z[zeta_3]`.
pub fn cm_default_product() -> Vec<(CurveSpec, QuadField)> {
    let curve = CurveSpec::elliptic(vec![1, 0, 0, 1]).expect("nonsingular");
    let field = QuadField::new(3).expect("class number one");
    vec![(curve.clone(), field); 3]
}

/// Two copies of `y^2 = x^3 + 1` and one of `y^2 = x^3 - x` (CM by `Z[i]`).
pub fn cm_mixed_product() -> Vec<(CurveSpec, QuadField)> {
    let mut out = cm_default_product();
    out[2] = (
        CurveSpec::elliptic(vec![0, -1, 0, 1]).expect("nonsingular"),
        QuadField::new(1).expect("class number one"),
    );
    out
}

/// Unit-root counts of each CM elliptic factor and of the product at `p`.
///
/// Expected: split `p` gives an ordinary factor, inert `p` gives `a_p = 0`
/// and `u = 0`, and the product count is the sum. Deviations are listed in
/// `failures`.
pub fn cm_baseline(curves: &[(CurveSpec, QuadField)], p: u64) -> Result<CmReport, OracleError> {
    let mut factors = Vec::with_capacity(curves.len());
    let mut failures = Vec::new();
    let mut product = vec![BigInt::one()];
    for (curve, field) in curves {
        if !good_reduction(curve, p) {
            return Err(OracleError::Count(CountError::BadReduction(p), p));
        }
        let n = count_points(curve, p, 1).map_err(|e| OracleError::Count(e, p))?;
        let l = lpoly_from_counts(&[n], p, 1)?;
        let a_p = -l.coeff(1);
        let u = lpoly_polygon(&l).unit_roots();
        let kind = field.split_prime(p).kind;
        match kind {
            SplitKind::Split if u != 1 => failures.push(format!("{curve}: split p = {p} but u = {u}")),
            SplitKind::Inert if !(a_p.is_zero() && u == 0) => {
                failures.push(format!("{curve}: inert p = {p} but a_p = {a_p}, u = {u}"))
            }
            _ => {}
        }
        let mut next = vec![BigInt::zero(); product.len() + 2];
        for (i, c) in product.iter().enumerate() {
            for (j, d) in l.coeffs().iter().enumerate() {
                next[i + j] += c * d;
            }
        }
        product = next;
        factors.push(CmFactor { curve: curve.clone(), d: field.d(), kind, a_p, u, ordinary: is_ordinary(&l) });
    }
    let total_u = factors.iter().map(|f| f.u).sum();
    let product_l = LPolynomial::from_coeffs(p, product).expect("monic of even degree");
    let product_u = lpoly_polygon(&product_l).unit_roots();
    if product_u != total_u {
        failures.push(format!("product u = {product_u} but factor sum = {total_u}"));
    }
    Ok(CmReport { p, factors, total_u, product_u, failures })
}

/// Random quadratic-factor triples `T^2 - a T + p` for the half-ordinary
/// bound, with `v(a)` drawn from `{0, 1, 2, inf}` (unit with probability
/// `unit_bias`).
pub fn synthetic_factor_triples(count: usize, p: u64, unit_bias: f64, seed: u64) -> Vec<Vec<SyntheticFactor>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = BigInt::from(p);
    (0..count)
        .map(|_| {
            (0..3)
                .map(|_| {
                    let a_val = if rng.gen_bool(unit_bias) {
                        Some(0)
                    } else {
                        match rng.gen_range(0..3) {
                            0 => Some(1),
                            1 => Some(2),
                            _ => None,
                        }
                    };
                    SyntheticFactor { a_val, delta: delta.clone() }
                })
                .collect()
        })
        .collect()
}

/// Exact unit-root count of the product of the quadratic factors, from their
/// Newton polygons.
pub fn synthetic_unit_roots(factors: &[SyntheticFactor], p: u64) -> usize {
    factors
        .iter()
        .map(|f| {
            let v_delta = crate::arith::int_valuation(&f.delta, p).map(|v| v as i64);
            let vc = ValuedCoeffs::from_ints(&[v_delta, f.a_val.map(|v| v as i64), Some(0)]);
            newton_polygon(&vc).expect("monic with nonzero determinant").unit_roots()
        })
        .sum()
}

/// Whether every root of `L` satisfies `|alpha|^2 = q` numerically, for
/// cross-checking the exact route. Roots are taken from the squarefree part,
/// since clustered roots of a repeated factor are not numerically reliable.
pub fn numeric_weil(lpoly: &LPolynomial) -> bool {
    crate::curve_counts::weil_check_numeric(lpoly.coeffs(), lpoly.p() as f64)
}

/// `|a_{2g-i}| <= C(2g, i) q^(i/2)` for every `i`.
pub fn within_binomial_bounds(lpoly: &LPolynomial) -> bool {
    let g = lpoly.genus();
    let q = lpoly.p();
    (1..=2 * g).all(|i| {
        let c = lpoly.coeff(2 * g - i).abs();
        let bound = binomial(2 * g as u64, i as u64);
        // c^2 <= bound^2 q^i
        &c * &c <= &bound * &bound * num_traits::pow(BigInt::from(q), i)
    })
}
