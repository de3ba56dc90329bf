//! Per-prime classification of Frobenius data for curves whose Jacobian has
//! multiplication by an imaginary quadratic field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use thiserror::Error;

use crate::arith::is_prime;
use crate::curve_counts::{
    frobenius_counts, good_reduction, lpoly_from_counts, CountError, CurveModel, CurveSpec, LPolyError, LPolynomial,
};
use crate::newton::{lpoly_polygon, newton_polygon, NewtonPolygon, ValuedCoeffs};
use crate::quad_field::{conjugate_split, EPoly, QuadError, QuadField, QuadInt, SplitKind, SplitPrimeData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    LPoly(#[from] LPolyError),
    #[error(transparent)]
    Split(#[from] QuadError),
    #[error("invariant violated at p = {p}: {message}")]
    Invariant { p: u64, message: String },
    #[error("katz_sum is undefined at 0")]
    ZeroArgument,
    #[error("{nonunits} of the a_sigma are non-units, more than floor(g/2) = {limit}")]
    KatzViolation { nonunits: usize, limit: usize },
    #[error("factor {index} has determinant {delta}, expected p = {p}")]
    DeterminantNotP { index: usize, delta: BigInt, p: u64 },
    #[error("signature is defined for superelliptic or elliptic models with m = 3 or 2")]
    NoSignature,
}

impl ClassifyError {
    /// The prime at which a pipeline invariant failed, if this is such a
    /// failure (counting bug, non-Weil polynomial, missing splitting).
    pub fn invariant_prime(&self) -> Option<u64> {
        match self {
            ClassifyError::Invariant { p, .. } => Some(*p),
            ClassifyError::LPoly(LPolyError::WeilViolation { p, .. }) => Some(*p),
            ClassifyError::Split(QuadError::NoSplitting { p, .. }) => Some(*p),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mechanism {
    /// One of the two determinants is a `pi`-adic unit.
    TrivialUnitDet,
    /// `b_sigma` is a unit and `v(c_sigma) = g - 2`, forcing the slopes of
    /// `P_sigma`; see [`classify_lpoly`].
    OgusSigma,
    OgusSigmaBar,
    /// The Ogus predicate holds but neither factor has determinant valuation
    /// `g - 2`, so slopes are not forced.
    OgusUnforced,
    /// `p` divides `b_sigma`.
    BothDivisible,
    Inert,
    Ramified,
    Bad,
}

impl Mechanism {
    pub const ALL: [Mechanism; 8] = [
        Mechanism::TrivialUnitDet,
        Mechanism::OgusSigma,
        Mechanism::OgusSigmaBar,
        Mechanism::OgusUnforced,
        Mechanism::BothDivisible,
        Mechanism::Inert,
        Mechanism::Ramified,
        Mechanism::Bad,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mechanism::TrivialUnitDet => "TrivialUnitDet",
            Mechanism::OgusSigma => "OgusSigma",
            Mechanism::OgusSigmaBar => "OgusSigmaBar",
            Mechanism::OgusUnforced => "OgusUnforced",
            Mechanism::BothDivisible => "BothDivisible",
            Mechanism::Inert => "Inert",
            Mechanism::Ramified => "Ramified",
            Mechanism::Bad => "Bad",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `v_pi(x) + v_pibar(x)`, infinite at `x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KatzValue {
    Finite(u32),
    Infinite,
}

impl KatzValue {
    /// The bound `[E:Q]/2 = 1`.
    pub fn within_bound(&self) -> bool {
        matches!(self, KatzValue::Finite(k) if *k <= 1)
    }
}

impl fmt::Display for KatzValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KatzValue::Finite(k) => write!(f, "{k}"),
            KatzValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub r_tau: usize,
    pub r_taubar: usize,
}

impl Signature {
    pub fn genus(&self) -> usize {
        self.r_tau + self.r_taubar
    }

    /// `(max, min)`, the unordered pair.
    pub fn unordered(&self) -> (usize, usize) {
        (self.r_tau.max(self.r_taubar), self.r_tau.min(self.r_taubar))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r_tau, self.r_taubar)
    }
}

/// Conjugate factors and their valuation data at a split prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorData {
    pub sigma: EPoly,
    pub sigma_bar: EPoly,
    /// Number of distinct `P_sigma` with `P_sigma * conj(P_sigma) = L`.
    pub candidates: usize,
    /// `(v_pi(e_k), v_pibar(e_k))` for the elementary symmetric functions
    /// `e_1 .. e_g` of the roots of `P_sigma`.
    pub vals: Vec<(Option<u32>, Option<u32>)>,
    /// `pi`-adic polygons of `P_sigma` and `conj(P_sigma)`.
    pub slopes_sigma: NewtonPolygon,
    pub slopes_sigma_bar: NewtonPolygon,
}

impl FactorData {
    /// Valuations of `a_sigma = e_1`.
    pub fn a_vals(&self) -> (Option<u32>, Option<u32>) {
        self.vals[0]
    }

    /// Valuations of `b_sigma = e_2`; absent in genus 1.
    pub fn b_vals(&self) -> Option<(Option<u32>, Option<u32>)> {
        self.vals.get(1).copied()
    }

    /// Valuations of the determinant `e_g` (`c_sigma` in genus 3, `delta_sigma`
    /// in genus 4). The second entry is `v_pi` of the conjugate determinant.
    pub fn det_vals(&self) -> (Option<u32>, Option<u32>) {
        *self.vals.last().unwrap()
    }
}

/// Everything computed for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRecord {
    pub p: u64,
    pub genus: usize,
    pub kind: SplitKind,
    pub good: bool,
    pub lpoly: Option<LPolynomial>,
    pub slopes: Option<NewtonPolygon>,
    pub u: Option<usize>,
    pub ordinary: Option<bool>,
    pub factors: Option<FactorData>,
    pub katz: Option<KatzValue>,
    pub ogus: Option<bool>,
    pub mechanism: Mechanism,
}

pub fn katz_sum(x: &QuadInt, sp: &SplitPrimeData) -> Result<u32, ClassifyError> {
    match (sp.valuation(x), sp.valuation_bar(x)) {
        (Some(a), Some(b)) => Ok(a + b),
        _ => Err(ClassifyError::ZeroArgument),
    }
}

/// `p` does not divide `b_sigma` in the ring of integers.
pub fn ogus_predicate(b_sigma: &QuadInt, sp: &SplitPrimeData) -> bool {
    let divisible = |v: Option<u32>| v.is_none_or(|v| v >= 1);
    !(divisible(sp.valuation(b_sigma)) && divisible(sp.valuation_bar(b_sigma)))
}

/// Counts points at `p` and classifies.
pub fn classify_prime(curve: &CurveSpec, field: &QuadField, p: u64) -> Result<PrimeRecord, ClassifyError> {
    if !is_prime(p) {
        return Err(ClassifyError::NotPrime(p));
    }
    if !good_reduction(curve, p) {
        return Ok(bad_record(curve, field, p));
    }
    let counts = frobenius_counts(curve, p)?;
    classify_from_counts(curve, field, p, &counts)
}

/// Classification from precomputed `N_1 .. N_g`.
pub fn classify_from_counts(
    curve: &CurveSpec,
    field: &QuadField,
    p: u64,
    counts: &[u64],
) -> Result<PrimeRecord, ClassifyError> {
    if !good_reduction(curve, p) {
        return Ok(bad_record(curve, field, p));
    }
    let lpoly = lpoly_from_counts(counts, p, curve.genus())?;
    classify_lpoly(&lpoly, field)
}

fn bad_record(curve: &CurveSpec, field: &QuadField, p: u64) -> PrimeRecord {
    PrimeRecord {
        p,
        genus: curve.genus(),
        kind: field.split_prime(p).kind,
        good: false,
        lpoly: None,
        slopes: None,
        u: None,
        ordinary: None,
        factors: None,
        katz: None,
        ogus: None,
        mechanism: Mechanism::Bad,
    }
}

/// Classifies a Frobenius polynomial at a good prime.
///
/// At split primes the mechanism is decided in this order:
/// `TrivialUnitDet` when either determinant is a unit; `BothDivisible` when
/// the Ogus predicate fails on `b_sigma`; `OgusSigma` (resp. `OgusSigmaBar`)
/// when `b_sigma` (resp. `b_sigmabar`) is a `pi`-unit and the matching
/// determinant has valuation `g - 2`, which forces the slopes of that factor
/// to be `g - 1` zeros and a single `1`; `OgusUnforced` otherwise.
pub fn classify_lpoly(lpoly: &LPolynomial, field: &QuadField) -> Result<PrimeRecord, ClassifyError> {
    let p = lpoly.p();
    let g = lpoly.genus();
    let violation = |message: String| ClassifyError::Invariant { p, message };

    let slopes = lpoly_polygon(lpoly);
    let u = slopes.unit_roots();
    let ordinary = crate::newton::is_ordinary(lpoly);
    if ordinary != (u == g) {
        return Err(violation(format!("p | a_g is {} but u = {u}", !ordinary)));
    }
    let sp = field.split_prime(p);
    let mut record = PrimeRecord {
        p,
        genus: g,
        kind: sp.kind,
        good: true,
        lpoly: Some(lpoly.clone()),
        slopes: Some(slopes),
        u: Some(u),
        ordinary: Some(ordinary),
        factors: None,
        katz: None,
        ogus: None,
        mechanism: match sp.kind {
            SplitKind::Inert => Mechanism::Inert,
            SplitKind::Ramified => Mechanism::Ramified,
            SplitKind::Split => Mechanism::Bad,
        },
    };
    if sp.kind != SplitKind::Split {
        return Ok(record);
    }

    let split = conjugate_split(lpoly, field, &sp)?;
    let elementary: Vec<QuadInt> = (1..=g).map(|k| split.sigma.elementary(field, k)).collect();
    let vals: Vec<(Option<u32>, Option<u32>)> =
        elementary.iter().map(|e| (sp.valuation(e), sp.valuation_bar(e))).collect();
    let polygon = |poly: &EPoly| {
        newton_polygon(&ValuedCoeffs::pi_adic(poly, &sp)).map_err(|e| violation(e.to_string()))
    };
    let slopes_sigma = polygon(&split.sigma)?;
    let slopes_sigma_bar = polygon(&split.sigma_bar)?;
    let factors = FactorData {
        sigma: split.sigma,
        sigma_bar: split.sigma_bar,
        candidates: split.candidates,
        vals,
        slopes_sigma,
        slopes_sigma_bar,
    };

    let (det, det_bar) = match factors.det_vals() {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(violation("zero determinant".into())),
    };
    if (det + det_bar) as usize != g {
        return Err(violation(format!("v(c_sigma) + v(c_sigmabar) = {} != {g}", det + det_bar)));
    }
    let unit_total = factors.slopes_sigma.unit_roots() + factors.slopes_sigma_bar.unit_roots();
    if unit_total != u {
        return Err(violation(format!("pi-adic unit roots {unit_total} != p-adic {u}")));
    }
    if !pairs_to_one(&factors.slopes_sigma, &factors.slopes_sigma_bar) {
        return Err(violation(format!(
            "slopes {} and {} do not pair as s <-> 1 - s",
            factors.slopes_sigma, factors.slopes_sigma_bar
        )));
    }

    let katz = match katz_sum(&elementary[0], &sp) {
        Ok(k) => KatzValue::Finite(k),
        Err(_) => KatzValue::Infinite,
    };
    let ogus = (g >= 2).then(|| ogus_predicate(&elementary[1], &sp));

    let forced = g.checked_sub(2);
    let mechanism = if det == 0 || det_bar == 0 {
        Mechanism::TrivialUnitDet
    } else if ogus == Some(false) {
        Mechanism::BothDivisible
    } else {
        let (b, b_bar) = factors.b_vals().expect("g >= 2 here");
        let det_forces = |d: u32| forced == Some(d as usize);
        if b == Some(0) && det_forces(det) {
            Mechanism::OgusSigma
        } else if b_bar == Some(0) && det_forces(det_bar) {
            Mechanism::OgusSigmaBar
        } else {
            Mechanism::OgusUnforced
        }
    };
    if matches!(mechanism, Mechanism::OgusSigma | Mechanism::OgusSigmaBar) && !ordinary {
        return Err(violation(format!("{mechanism} but not ordinary")));
    }
    record.factors = Some(factors);
    record.katz = Some(katz);
    record.ogus = ogus;
    record.mechanism = mechanism;
    Ok(record)
}

/// The two slope lists are `s` and `1 - s` of each other.
pub fn pairs_to_one(first: &NewtonPolygon, second: &NewtonPolygon) -> bool {
    let one = Rational64::from_integer(1);
    let mut mirrored: Vec<Rational64> = second.expanded().iter().map(|s| one - s).collect();
    mirrored.sort();
    first.expanded() == mirrored
}

/// A quadratic factor `T^2 - a T + delta` over a totally real field, given by
/// the valuation of `a` at a prime above `p` and the determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticFactor {
    pub a_val: Option<u32>,
    pub delta: BigInt,
}

/// Lower bound on the number of unit roots for `g` quadratic factors with
/// determinant `p`: each factor with `v(a) = 0` has slopes `{0, 1}`.
///
/// Fails with `KatzViolation` when more than `floor(g/2)` of the `a` are
/// non-units.
pub fn half_ordinary_bound(p: u64, factors: &[SyntheticFactor]) -> Result<usize, ClassifyError> {
    let pb = BigInt::from(p);
    for (index, f) in factors.iter().enumerate() {
        if f.delta != pb {
            return Err(ClassifyError::DeterminantNotP { index, delta: f.delta.clone(), p });
        }
    }
    let units = factors.iter().filter(|f| f.a_val == Some(0)).count();
    let nonunits = factors.len() - units;
    let limit = factors.len() / 2;
    if nonunits > limit {
        return Err(ClassifyError::KatzViolation { nonunits, limit });
    }
    Ok(units)
}

/// Signature of the action of `Q(zeta_3)` on regular differentials.
///
/// For `y^3 = f(x)` with `deg f = n` prime to 3, a basis is
/// `x^i dx / y^j` with `1 <= j <= 2` and `3i <= jn - 4`; `y -> zeta y` scales
/// it by `zeta^(-j)`. `r_tau` counts the `j = 2` elements. The elliptic model
/// `y^2 = x^3 + c` has the single differential `dx/y`, counted in `r_tau`.
pub fn signature(curve: &CurveSpec) -> Result<Signature, ClassifyError> {
    match curve.model() {
        CurveModel::Elliptic => Ok(Signature { r_tau: 1, r_taubar: 0 }),
        CurveModel::Superelliptic if curve.m() == 3 => {
            let m = 3i64;
            let n = curve.degree() as i64;
            let count = |j: i64| (0..).take_while(|&i| m * i < j * n - m).count();
            Ok(Signature { r_tau: count(2), r_taubar: count(1) })
        }
        CurveModel::Superelliptic => Err(ClassifyError::NoSignature),
    }
}

/// `{v_pi(c_sigma), v_pi(c_sigmabar)} = {r_tau, r_taubar}` as multisets.
pub fn infinity_type_check(record: &PrimeRecord, sig: &Signature) -> bool {
    let Some(factors) = &record.factors else {
        return false;
    };
    match factors.det_vals() {
        (Some(a), Some(b)) => {
            let (hi, lo) = (a.max(b) as usize, a.min(b) as usize);
            (hi, lo) == sig.unordered()
        }
        _ => false,
    }
}
