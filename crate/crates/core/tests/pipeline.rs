//! End-to-end checks of the per-prime pipeline against arithmetic done
//! independently in this file.

use num_bigint::BigInt;
use num_traits::Zero;
use ordlab_core::arith::primes_in;
use ordlab_core::classify::{classify_prime, infinity_type_check, signature, Mechanism};
use ordlab_core::curve_counts::{weil_check, CurveSpec};
use ordlab_core::newton::{is_ordinary, unit_root_count};
use ordlab_core::quad_field::{QuadField, SplitKind};

fn picard() -> CurveSpec {
    CurveSpec::superelliptic(vec![1, 1, 0, 0, 1]).unwrap()
}

/// `(a, b)` stands for `a + b w` with `w^2 = -w - 1`.
fn eis_mul(x: (BigInt, BigInt), y: (BigInt, BigInt)) -> (BigInt, BigInt) {
    let bb = &x.1 * &y.1;
    (&x.0 * &y.0 - &bb, &x.0 * &y.1 + &x.1 * &y.0 - bb)
}

/// Product of a polynomial over `Z[w]` with its conjugate, where
/// `conj(a + b w) = (a - b) - b w`.
fn times_conjugate(p: &[(BigInt, BigInt)]) -> Vec<(BigInt, BigInt)> {
    let bar: Vec<(BigInt, BigInt)> = p.iter().map(|(a, b)| (a - b, -b.clone())).collect();
    let mut out = vec![(BigInt::zero(), BigInt::zero()); p.len() + bar.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in bar.iter().enumerate() {
            let (a, b) = eis_mul(x.clone(), y.clone());
            out[i + j].0 += a;
            out[i + j].1 += b;
        }
    }
    out
}

#[test]
fn elliptic_cm_record_at_seven() {
    let e = QuadField::new(3).unwrap();
    let r = classify_prime(&CurveSpec::elliptic(vec![1, 0, 0, 1]).unwrap(), &e, 7).unwrap();
    assert_eq!(r.lpoly.as_ref().unwrap().to_string(), "T^2 + 4T + 7");
    assert_eq!((r.ordinary, r.u, r.mechanism), (Some(true), Some(1), Mechanism::TrivialUnitDet));
}

#[test]
fn picard_split_factors_multiply_back() {
    let e = QuadField::new(3).unwrap();
    let curve = picard();
    let mut split = 0;
    for p in primes_in(5, 120) {
        let r = classify_prime(&curve, &e, p).unwrap();
        let Some(fd) = &r.factors else { continue };
        split += 1;
        let coeffs: Vec<(BigInt, BigInt)> = fd.sigma.coeffs.iter().map(|c| (c.a.clone(), c.b.clone())).collect();
        let product = times_conjugate(&coeffs);
        let l = r.lpoly.as_ref().unwrap();
        assert_eq!(product.len(), l.coeffs().len());
        for (got, want) in product.iter().zip(l.coeffs()) {
            assert!(got.1.is_zero(), "p = {p}: non-rational coefficient");
            assert_eq!(&got.0, want, "p = {p}");
        }
        let (c, cbar) = fd.det_vals();
        assert_eq!(c.unwrap() + cbar.unwrap(), 3, "p = {p}");
    }
    assert!(split >= 10);
}

#[test]
fn inert_primes_have_vanishing_odd_coefficients() {
    let e = QuadField::new(3).unwrap();
    let curve = picard();
    for p in primes_in(5, 150).into_iter().filter(|p| p % 3 == 2 && *p != 229) {
        let r = classify_prime(&curve, &e, p).unwrap();
        assert_eq!(r.kind, SplitKind::Inert);
        assert_eq!(r.mechanism, Mechanism::Inert);
        let l = r.lpoly.unwrap();
        for i in (1..6).step_by(2) {
            assert!(l.coeff(i).is_zero(), "p = {p}, T^{i}");
        }
        assert_eq!(r.ordinary, Some(is_ordinary(&l)));
        assert_eq!(r.ordinary, Some(false));
    }
}

#[test]
fn ordinary_agrees_with_unit_roots_and_middle_coefficient() {
    let e = QuadField::new(3).unwrap();
    for (curve, pmax) in [(picard(), 200u64), (CurveSpec::superelliptic(vec![1, 1, 0, 0, 0, 1]).unwrap(), 45)] {
        let g = curve.genus();
        let sig = signature(&curve).unwrap();
        for p in primes_in(5, pmax) {
            let r = classify_prime(&curve, &e, p).unwrap();
            if !r.good {
                continue;
            }
            let l = r.lpoly.as_ref().unwrap();
            assert!(weil_check(l));
            let middle_unit = !(l.coeff(g) % BigInt::from(p)).is_zero();
            assert_eq!(r.ordinary, Some(middle_unit), "p = {p}");
            assert_eq!(unit_root_count(l) == g, middle_unit, "p = {p}");
            if r.kind == SplitKind::Split {
                assert!(infinity_type_check(&r, &sig), "p = {p}");
            }
        }
    }
}
