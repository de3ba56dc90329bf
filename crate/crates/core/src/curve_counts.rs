//! Point counts on `y^m = f(x)` and the Frobenius polynomial of the Jacobian.
//!
//! Supported models are superelliptic curves `y^3 = f(x)` with `deg f` in
//! `{4, 5}` (genus 3 and 4, one point at infinity) and elliptic curves
//! `y^2 = f(x)` with `deg f = 3`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{is_prime, prime_power};
use crate::field_arith::{build_extension, for_each_value, FieldError, FiberTable, FqElem};
use crate::roots::complex_roots;
use crate::weilpoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("unsupported model: m = {m}, deg f = {deg}")]
    Unsupported { m: u32, deg: usize },
    #[error("f has zero discriminant")]
    Singular,
    #[error("leading coefficient of f is zero")]
    ZeroLeading,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("p = {0} is a prime of bad reduction")]
    BadReduction(u64),
    #[error("extension degree {r} outside 1..={genus}")]
    BadDegree { r: usize, genus: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LPolyError {
    #[error("expected {expected} point counts, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("Weil violation at p = {p}: {reason}")]
    WeilViolation { p: u64, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveModel {
    Superelliptic,
    Elliptic,
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveModel::Superelliptic => "superelliptic",
            CurveModel::Elliptic => "elliptic",
        })
    }
}

/// A plane model `y^m = f(x)` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    model: CurveModel,
    m: u32,
    f: Vec<i64>,
}

impl CurveSpec {
    /// `f` is given constant term first.
    pub fn new(model: CurveModel, m: u32, f: Vec<i64>) -> Result<Self, CurveError> {
        let mut f = f;
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
        let deg = f.len().saturating_sub(1);
        let ok = match model {
            CurveModel::Superelliptic => m == 3 && (deg == 4 || deg == 5),
            CurveModel::Elliptic => m == 2 && deg == 3,
        };
        if !ok {
            return Err(CurveError::Unsupported { m, deg });
        }
        if f[deg] == 0 {
            return Err(CurveError::ZeroLeading);
        }
        let curve = CurveSpec { model, m, f };
        if curve.discriminant().is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(curve)
    }

    pub fn superelliptic(f: Vec<i64>) -> Result<Self, CurveError> {
        Self::new(CurveModel::Superelliptic, 3, f)
    }

    pub fn elliptic(f: Vec<i64>) -> Result<Self, CurveError> {
        Self::new(CurveModel::Elliptic, 2, f)
    }

    pub fn model(&self) -> CurveModel {
        self.model
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn f(&self) -> &[i64] {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    /// `(m - 1)(deg f - 1) / 2`.
    pub fn genus(&self) -> usize {
        (self.m as usize - 1) * (self.degree() - 1) / 2
    }

    pub fn leading_coefficient(&self) -> i64 {
        self.f[self.degree()]
    }

    /// Discriminant of `f`, via the Sylvester resultant of `f` and `f'`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let f: Vec<BigInt> = self.f.iter().map(|&c| BigInt::from(c)).collect();
        let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
        let res = resultant(&f, &df);
        let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
        res * sign / BigInt::from(self.leading_coefficient())
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "y^{} = ", self.m)?;
        let mut first = true;
        for (i, &c) in self.f.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if !first {
                out.write_str(" ")?;
            }
            out.write_str(sign)?;
            if !first {
                out.write_str(" ")?;
            }
            match (i, mag) {
                (0, _) => write!(out, "{mag}")?,
                (1, 1) => out.write_str("x")?,
                (1, _) => write!(out, "{mag}*x")?,
                (_, 1) => write!(out, "x^{i}")?,
                _ => write!(out, "{mag}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Resultant via the Sylvester matrix, with fraction-free (Bareiss)
/// elimination.
fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + row][row + j] = c.clone();
        }
    }
    determinant(mat)
}

fn determinant(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[n - 1][n - 1]
}

/// `p` is a prime of good reduction: `p` does not divide `m * lc(f) * disc(f)`,
/// and `p != 3` for superelliptic models.
pub fn good_reduction(curve: &CurveSpec, p: u64) -> bool {
    if !is_prime(p) {
        return false;
    }
    if curve.model == CurveModel::Superelliptic && p == 3 {
        return false;
    }
    let bad = BigInt::from(curve.m) * BigInt::from(curve.leading_coefficient()) * curve.discriminant();
    !bad.is_multiple_of(&BigInt::from(p))
}

/// Number of points on the smooth projective model over `F_{p^r}`.
pub fn count_points(curve: &CurveSpec, p: u64, r: usize) -> Result<u64, CountError> {
    if !good_reduction(curve, p) {
        return Err(CountError::BadReduction(p));
    }
    let genus = curve.genus();
    if r == 0 || r > genus {
        return Err(CountError::BadDegree { r, genus });
    }
    let ctx = build_extension(p, r)?;
    let table = FiberTable::new(&ctx, curve.m);
    let q = ctx.order();
    let affine = if table.is_bijective() {
        // x -> f(x) composed with a bijective power map: one point per x
        q
    } else {
        let coeffs: Vec<FqElem> = curve.f.iter().map(|&c| ctx.from_int(c)).collect();
        let mut total = 0u64;
        for_each_value(&ctx, &coeffs, |y| total += table.fiber_size_at(ctx.index(y)) as u64);
        total
    };
    // gcd(m, deg f) = 1 for every supported model: a single point at infinity
    affine.checked_add(1).ok_or(CountError::BadReduction(p))
}

/// `N_1, ..., N_g` for the curve at `p`.
pub fn frobenius_counts(curve: &CurveSpec, p: u64) -> Result<Vec<u64>, CountError> {
    (1..=curve.genus()).map(|r| count_points(curve, p, r)).collect()
}

/// The characteristic polynomial of Frobenius `P_p(A, T) = sum a_i T^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPolynomial {
    p: u64,
    g: usize,
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// Wraps raw coefficients `a_0 .. a_2g` over a field of size `q` (a prime
    /// for curve data, a prime power for oracle enumerations). Only the shape
    /// is checked; use [`lpoly_from_counts`] for validated construction.
    pub fn from_coeffs(q: u64, coeffs: Vec<BigInt>) -> Option<Self> {
        let n = coeffs.len().checked_sub(1)?;
        prime_power(q)?;
        if n == 0 || n % 2 != 0 || !coeffs[n].is_one() {
            return None;
        }
        Some(LPolynomial { p: q, g: n / 2, coeffs })
    }

    /// Size of the base field.
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// `a_0 .. a_2g`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Sum of the roots, `-a_{2g-1}`.
    pub fn trace(&self) -> BigInt {
        -&self.coeffs[2 * self.g - 1]
    }

    /// `a_i = p^(g-i) a_(2g-i)` for `0 <= i <= g`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let p = BigInt::from(self.p);
        (0..=self.g).all(|i| {
            self.coeffs[i] == num_traits::pow(p.clone(), self.g - i) * &self.coeffs[2 * self.g - i]
        })
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_int_poly(out, &self.coeffs, "T")
    }
}

pub(crate) fn write_int_poly(out: &mut fmt::Formatter<'_>, coeffs: &[BigInt], var: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        match (first, neg) {
            (true, true) => out.write_str("-")?,
            (true, false) => {}
            (false, true) => out.write_str(" - ")?,
            (false, false) => out.write_str(" + ")?,
        }
        let show_mag = !mag.is_one() || i == 0;
        if show_mag {
            write!(out, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(out, "{var}")?,
            _ => write!(out, "{var}^{i}")?,
        }
        first = false;
    }
    if first {
        out.write_str("0")?;
    }
    Ok(())
}

/// Reconstructs `P_p(A, T)` from `N_1, ..., N_g`.
///
/// Power sums `s_r = p^r + 1 - N_r` give the elementary symmetric functions
/// `e_1..e_g` of the Frobenius roots through Newton's identities; the
/// functional equation fills in the lower half.
pub fn lpoly_from_counts(counts: &[u64], p: u64, g: usize) -> Result<LPolynomial, LPolyError> {
    if counts.len() != g {
        return Err(LPolyError::WrongLength { expected: g, got: counts.len() });
    }
    let pb = BigInt::from(p);
    let violation = |reason: String| LPolyError::WeilViolation { p, reason };

    let mut sums = Vec::with_capacity(g + 1);
    sums.push(BigInt::from(2 * g));
    for (i, &n) in counts.iter().enumerate() {
        let r = i + 1;
        let pr = num_traits::pow(pb.clone(), r);
        let s = &pr + 1 - BigInt::from(n);
        // |s_r| <= 2g p^(r/2)  <=>  s_r^2 <= 4 g^2 p^r
        if &s * &s > BigInt::from(4 * g * g) * &pr {
            return Err(violation(format!("N_{r} = {n} outside the Weil bound")));
        }
        sums.push(s);
    }

    // k e_k = sum_{i=1}^{k} (-1)^(i-1) e_{k-i} s_i
    let mut elem = vec![BigInt::one()];
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &elem[k - i] * &sums[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (e, rem) = acc.div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(violation(format!("Newton identity for e_{k} is not integral")));
        }
        elem.push(e);
    }

    let mut coeffs = vec![BigInt::zero(); 2 * g + 1];
    for (i, e) in elem.iter().enumerate() {
        coeffs[2 * g - i] = if i % 2 == 0 { e.clone() } else { -e };
    }
    for i in 0..g {
        coeffs[i] = num_traits::pow(pb.clone(), g - i) * &coeffs[2 * g - i];
    }
    let lpoly = LPolynomial { p, g, coeffs };
    if !weil_check(&lpoly) {
        return Err(violation(format!("{lpoly} has a root off the circle |T| = sqrt(p)")));
    }
    Ok(lpoly)
}

/// Whether every complex root of `L` has `|alpha|^2 = p`.
///
/// When the functional equation holds the test is exact (real roots of the
/// trace polynomial in `[-2 sqrt p, 2 sqrt p]`). Otherwise the squarefree part
/// is solved numerically and each root checked to relative tolerance `1e-9`.
pub fn weil_check(lpoly: &LPolynomial) -> bool {
    let p = BigInt::from(lpoly.p);
    if lpoly.satisfies_functional_equation() {
        if let Some(h) = weilpoly::trace_polynomial(&lpoly.coeffs, &p) {
            return weilpoly::roots_in_weil_interval(&h, &p);
        }
    }
    weil_check_numeric(&lpoly.coeffs, lpoly.p as f64)
}

pub(crate) fn weil_check_numeric(coeffs: &[BigInt], q: f64) -> bool {
    use num_traits::ToPrimitive;
    let sf = weilpoly::squarefree_monic(coeffs);
    let approx: Vec<f64> = sf.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if approx.iter().any(|c| !c.is_finite()) {
        return false;
    }
    complex_roots(&approx)
        .iter()
        .all(|z| (z.norm_sqr() / q - 1.0).abs() <= 1e-9)
}
