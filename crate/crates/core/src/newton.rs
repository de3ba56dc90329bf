//! Newton polygons under a fixed discrete valuation.
//!
//! Slopes are reported as root valuations: a hull segment from `(i1, v1)` to
//! `(i2, v2)` contributes `i2 - i1` roots of valuation `(v1 - v2)/(i2 - i1)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{int_valuation, prime_power};
use crate::curve_counts::LPolynomial;
use crate::quad_field::{EPoly, SplitPrimeData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewtonError {
    #[error("leading coefficient has valuation {0}, expected 0")]
    NotMonic(String),
    #[error("constant term is zero")]
    ZeroConstant,
    #[error("empty coefficient list")]
    Empty,
}

/// Valuations of `a_0 .. a_n`; `None` stands for `+inf` (a zero coefficient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedCoeffs {
    pub vals: Vec<Option<Rational64>>,
}

impl ValuedCoeffs {
    pub fn new(vals: Vec<Option<Rational64>>) -> Self {
        ValuedCoeffs { vals }
    }

    pub fn from_ints(vals: &[Option<i64>]) -> Self {
        ValuedCoeffs { vals: vals.iter().map(|v| v.map(Rational64::from_integer)).collect() }
    }

    /// `p`-adic valuations of integer coefficients.
    pub fn p_adic(coeffs: &[BigInt], p: u64) -> Self {
        ValuedCoeffs {
            vals: coeffs
                .iter()
                .map(|c| int_valuation(c, p).map(|v| Rational64::from_integer(v as i64)))
                .collect(),
        }
    }

    /// `pi`-adic valuations of coefficients in the quadratic ring.
    pub fn pi_adic(poly: &EPoly, sp: &SplitPrimeData) -> Self {
        ValuedCoeffs {
            vals: poly
                .coeffs
                .iter()
                .map(|c| sp.valuation(c).map(|v| Rational64::from_integer(v as i64)))
                .collect(),
        }
    }
}

/// Slopes with multiplicities, nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    pub slopes: Vec<(Rational64, usize)>,
}

impl NewtonPolygon {
    pub fn degree(&self) -> usize {
        self.slopes.iter().map(|&(_, m)| m).sum()
    }

    /// Every root valuation listed with multiplicity.
    pub fn expanded(&self) -> Vec<Rational64> {
        self.slopes
            .iter()
            .flat_map(|&(s, m)| std::iter::repeat_n(s, m))
            .collect()
    }

    pub fn multiplicity(&self, slope: Rational64) -> usize {
        self.slopes.iter().filter(|&&(s, _)| s == slope).map(|&(_, m)| m).sum()
    }

    pub fn unit_roots(&self) -> usize {
        self.multiplicity(Rational64::zero())
    }

    /// `sum slope * multiplicity`.
    pub fn total(&self) -> Rational64 {
        self.slopes
            .iter()
            .map(|&(s, m)| s * Rational64::from_integer(m as i64))
            .sum()
    }
}

impl fmt::Display for NewtonPolygon {
    /// Root valuations separated by spaces, e.g. `0 0 1` or `1/2 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.expanded().iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Lower convex hull of the points `(i, vals[i])`, via a monotone chain.
pub fn newton_polygon(vc: &ValuedCoeffs) -> Result<NewtonPolygon, NewtonError> {
    let n = vc.vals.len().checked_sub(1).ok_or(NewtonError::Empty)?;
    match vc.vals[n] {
        Some(v) if v.is_zero() => {}
        other => {
            return Err(NewtonError::NotMonic(
                other.map_or_else(|| "inf".to_string(), |v| v.to_string()),
            ))
        }
    }
    if vc.vals[0].is_none() {
        return Err(NewtonError::ZeroConstant);
    }
    let points: Vec<(i64, Rational64)> = vc
        .vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i as i64, v)))
        .collect();
    let mut hull: Vec<(i64, Rational64)> = Vec::with_capacity(points.len());
    for &pt in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let cross = (y2 - y1) * Rational64::from_integer(pt.0 - x1)
                - (pt.1 - y1) * Rational64::from_integer(x2 - x1);
            if cross.is_negative() {
                break;
            }
            hull.pop();
        }
        hull.push(pt);
    }
    let mut slopes: Vec<(Rational64, usize)> = hull
        .windows(2)
        .map(|w| {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            ((y1 - y2) / Rational64::from_integer(x2 - x1), (x2 - x1) as usize)
        })
        .collect();
    slopes.reverse();
    Ok(NewtonPolygon { slopes })
}

/// Number of roots of `L` that are `p`-adic units.
pub fn unit_root_count(lpoly: &LPolynomial) -> usize {
    lpoly_polygon(lpoly).unit_roots()
}

/// Number of roots of `P` that are `pi`-adic units.
pub fn unit_root_count_pi(poly: &EPoly, sp: &SplitPrimeData) -> Result<usize, NewtonError> {
    Ok(newton_polygon(&ValuedCoeffs::pi_adic(poly, sp))?.unit_roots())
}

/// The polygon of a Frobenius polynomial over `F_q`, `q = p^k`, with the
/// valuation normalized by `v(q) = 1`. Its constant term is `q^g` and it is
/// monic, so this cannot fail.
pub fn lpoly_polygon(lpoly: &LPolynomial) -> NewtonPolygon {
    let (p, k) = prime_power(lpoly.p()).expect("field size is a prime power");
    let scale = Rational64::new(1, k as i64);
    let mut vc = ValuedCoeffs::p_adic(lpoly.coeffs(), p);
    for v in vc.vals.iter_mut().flatten() {
        *v *= scale;
    }
    newton_polygon(&vc).expect("Frobenius polynomials are monic with nonzero constant term")
}

/// The characteristic does not divide the middle coefficient `a_g`.
pub fn is_ordinary(lpoly: &LPolynomial) -> bool {
    let (p, _) = prime_power(lpoly.p()).expect("field size is a prime power");
    int_valuation(lpoly.coeff(lpoly.genus()), p) == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cubic_with_unit_middle_coefficient() {
        // (v(c), v(b), v(a), v(1)) = (1, 0, 0, 0)
        let poly = newton_polygon(&ValuedCoeffs::from_ints(&[Some(1), Some(0), Some(0), Some(0)])).unwrap();
        assert_eq!(poly.expanded(), vec![r(0, 1), r(0, 1), r(1, 1)]);
        // v(a) large changes nothing
        let poly = newton_polygon(&ValuedCoeffs::from_ints(&[Some(1), Some(0), None, Some(0)])).unwrap();
        assert_eq!(poly.expanded(), vec![r(0, 1), r(0, 1), r(1, 1)]);
    }

    #[test]
    fn supersingular_and_ordinary_elliptic() {
        let ss = newton_polygon(&ValuedCoeffs::from_ints(&[Some(1), None, Some(0)])).unwrap();
        assert_eq!(ss.slopes, vec![(r(1, 2), 2)]);
        assert_eq!(ss.to_string(), "1/2 1/2");
        let l = LPolynomial::from_coeffs(7, big(&[7, 4, 1])).unwrap();
        assert_eq!(lpoly_polygon(&l).expanded(), vec![r(0, 1), r(1, 1)]);
        assert_eq!(unit_root_count(&l), 1);
        assert!(is_ordinary(&l));
        let l = LPolynomial::from_coeffs(7, big(&[7, 0, 1])).unwrap();
        assert!(!is_ordinary(&l));
        assert_eq!(unit_root_count(&l), 0);
    }

    #[test]
    fn supersingular_sextic() {
        let l = LPolynomial::from_coeffs(5, big(&[125, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(lpoly_polygon(&l).slopes, vec![(r(1, 2), 6)]);
        assert_eq!(unit_root_count(&l), 0);
        assert!(!is_ordinary(&l));
    }

    #[test]
    fn prime_power_fields_normalize_by_q() {
        // (T - 2)^2 over F_4: slopes 1/2 1/2 in units of v(4)
        let l = LPolynomial::from_coeffs(4, big(&[4, -4, 1])).unwrap();
        assert_eq!(lpoly_polygon(&l).slopes, vec![(r(1, 2), 2)]);
        assert!(!is_ordinary(&l));
        // T^2 - T + 4 over F_4: a_1 = -1 is odd
        let l = LPolynomial::from_coeffs(4, big(&[4, -1, 1])).unwrap();
        assert_eq!(lpoly_polygon(&l).expanded(), vec![r(0, 1), r(1, 1)]);
        assert!(is_ordinary(&l));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            newton_polygon(&ValuedCoeffs::from_ints(&[Some(1), Some(1)])),
            Err(NewtonError::NotMonic(_))
        ));
        assert_eq!(
            newton_polygon(&ValuedCoeffs::from_ints(&[None, Some(0)])),
            Err(NewtonError::ZeroConstant)
        );
        assert_eq!(newton_polygon(&ValuedCoeffs::new(vec![])), Err(NewtonError::Empty));
    }

    /// Integer polynomial with roots `p^k * u`, `u` prime to `p`.
    fn build(p: i64, roots: &[(u32, i64)]) -> Vec<BigInt> {
        let mut poly = vec![BigInt::from(1)];
        for &(k, u) in roots {
            let root = BigInt::from(p).pow(k) * u;
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &root;
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn product_of_unit_and_non_unit_linear_factors() {
        let g = 3;
        let roots: Vec<(u32, i64)> = (0..g).map(|i| (0, 1 + i)).chain((0..g).map(|i| (1, 2 + i))).collect();
        let poly = build(7, &roots);
        let polygon = newton_polygon(&ValuedCoeffs::p_adic(&poly, 7)).unwrap();
        assert_eq!(polygon.unit_roots(), 3);
    }

    proptest! {
        #[test]
        fn slopes_equal_prescribed_root_valuations(
            roots in prop::collection::vec((0u32..4, 1i64..6), 1..7)
        ) {
            let p = 7;
            let poly = build(p, &roots);
            let polygon = newton_polygon(&ValuedCoeffs::p_adic(&poly, p as u64)).unwrap();
            let mut expected: Vec<Rational64> = roots.iter().map(|&(k, _)| Rational64::from_integer(k as i64)).collect();
            expected.sort();
            prop_assert_eq!(polygon.expanded(), expected);
            let v0 = int_valuation(&poly[0], p as u64).unwrap() as i64;
            prop_assert_eq!(polygon.total(), Rational64::from_integer(v0));
        }

        #[test]
        fn hull_invariants_hold_for_arbitrary_valuations(
            inner in prop::collection::vec(prop::option::of(0i64..6), 0..8),
            v0 in 0i64..6,
        ) {
            let mut vals = vec![Some(v0)];
            vals.extend(inner);
            vals.push(Some(0));
            let vc = ValuedCoeffs::from_ints(&vals);
            let polygon = newton_polygon(&vc).unwrap();
            prop_assert_eq!(polygon.degree(), vals.len() - 1);
            prop_assert_eq!(polygon.total(), Rational64::from_integer(v0));
            let e = polygon.expanded();
            prop_assert!(e.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
