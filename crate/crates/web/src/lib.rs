//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every entry point takes plain strings and numbers and returns a JSON
//! string, or an error message. Polynomials are entered as integer lists,
//! constant term first, separated by commas or spaces.

use num_bigint::BigInt;
use ordlab_core::arith::{is_prime, prime_power};
use ordlab_core::classify::{classify_prime, infinity_type_check, signature};
use ordlab_core::curve_counts::{weil_check, CurveModel, CurveSpec, LPolynomial};
use ordlab_core::newton::{lpoly_polygon, newton_polygon, NewtonPolygon, ValuedCoeffs};
use ordlab_core::quad_field::QuadField;
use ordlab_core::roots::complex_roots;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest prime accepted by [`classify`] per genus, to keep the page
/// responsive.
pub fn classify_cap(genus: usize) -> u32 {
    match genus {
        1 => 100_000,
        3 => 400,
        _ => 80,
    }
}

fn parse_ints(text: &str) -> Result<Vec<i64>, String> {
    let out: Vec<i64> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err("empty coefficient list".into());
    }
    Ok(out)
}

/// Hull vertices from `(0, v_0)`, walking root valuations from largest to
/// smallest.
fn vertices(poly: &NewtonPolygon, v0: f64) -> Vec<[f64; 2]> {
    let mut out = vec![[0.0, v0]];
    let (mut x, mut y) = (0.0, v0);
    for (s, m) in poly.slopes.iter().rev() {
        let s = *s.numer() as f64 / *s.denom() as f64;
        x += *m as f64;
        y -= s * *m as f64;
        out.push([x, y]);
    }
    out
}

fn slope_strings(poly: &NewtonPolygon) -> Vec<String> {
    poly.expanded().iter().map(ToString::to_string).collect()
}

/// `p`-adic Newton polygon of an integer polynomial whose leading
/// coefficient is a `p`-adic unit.
#[wasm_bindgen]
pub fn newton(coeffs: &str, p: u32) -> Result<String, String> {
    if !is_prime(p as u64) {
        return Err(format!("{p} is not prime"));
    }
    let ints: Vec<BigInt> = parse_ints(coeffs)?.into_iter().map(BigInt::from).collect();
    let vc = ValuedCoeffs::p_adic(&ints, p as u64);
    let poly = newton_polygon(&vc).map_err(|e| e.to_string())?;
    let points: Vec<Value> = vc
        .vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| json!([i, *v.numer() as f64 / *v.denom() as f64])))
        .collect();
    let v0 = vc.vals[0].map(|v| *v.numer() as f64 / *v.denom() as f64);
    let Some(v0) = v0 else {
        return Err("constant term is zero".into());
    };
    Ok(json!({
        "points": points,
        "vertices": vertices(&poly, v0),
        "slopes": slope_strings(&poly),
        "unit_roots": poly.unit_roots(),
    })
    .to_string())
}

/// Full classification of `y^m = f(x)` at `p`: Frobenius polynomial,
/// conjugate factors over `Q(sqrt(-d))`, valuations, slopes and mechanism.
/// `model` is `"superelliptic"` (`m = 3`) or `"elliptic"` (`m = 2`).
#[wasm_bindgen]
pub fn classify(model: &str, f: &str, d: u32, p: u32) -> Result<String, String> {
    let (model, m) = match model {
        "superelliptic" => (CurveModel::Superelliptic, 3),
        "elliptic" => (CurveModel::Elliptic, 2),
        other => return Err(format!("unknown model {other:?}")),
    };
    let curve = CurveSpec::new(model, m, parse_ints(f)?).map_err(|e| e.to_string())?;
    let field = QuadField::new(d).map_err(|e| e.to_string())?;
    let cap = classify_cap(curve.genus());
    if p < 5 || p > cap {
        return Err(format!("p must lie in 5..={cap} for genus {}", curve.genus()));
    }
    let rec = classify_prime(&curve, &field, p as u64).map_err(|e| e.to_string())?;
    let sig = signature(&curve).ok();
    let factors = rec.factors.as_ref().map(|fd| {
        let vals: Vec<[String; 2]> = fd
            .vals
            .iter()
            .map(|(a, b)| [a, b].map(|v| v.map_or_else(|| "inf".to_string(), |v| v.to_string())))
            .collect();
        json!({
            "sigma": fd.sigma.to_string(),
            "sigma_bar": fd.sigma_bar.to_string(),
            "candidates": fd.candidates,
            "vals": vals,
            "slopes_sigma": slope_strings(&fd.slopes_sigma),
            "slopes_sigma_bar": slope_strings(&fd.slopes_sigma_bar),
        })
    });
    let infinity_type = match (&sig, &rec.factors) {
        (Some(s), Some(_)) => Some(infinity_type_check(&rec, s)),
        _ => None,
    };
    Ok(json!({
        "curve": curve.to_string(),
        "genus": curve.genus(),
        "p": p,
        "kind": rec.kind.to_string(),
        "good": rec.good,
        "lpoly": rec.lpoly.as_ref().map(ToString::to_string),
        "coeffs": rec.lpoly.as_ref().map(|l| l.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>()),
        "slopes": rec.slopes.as_ref().map(slope_strings),
        "u": rec.u,
        "ordinary": rec.ordinary,
        "factors": factors,
        "katz": rec.katz.map(|k| k.to_string()),
        "ogus": rec.ogus,
        "mechanism": rec.mechanism.to_string(),
        "signature": sig.map(|s| s.to_string()),
        "infinity_type": infinity_type,
    })
    .to_string())
}

/// Complex roots of a monic even-degree integer polynomial over `F_q`,
/// with the exact Weil test and the `q`-adic slopes.
#[wasm_bindgen]
pub fn weil_roots(coeffs: &str, q: u32) -> Result<String, String> {
    if prime_power(q as u64).is_none() {
        return Err(format!("{q} is not a prime power"));
    }
    let ints = parse_ints(coeffs)?;
    if ints.len() > 17 {
        return Err("degree is limited to 16".into());
    }
    let big: Vec<BigInt> = ints.iter().map(|&c| BigInt::from(c)).collect();
    let l = LPolynomial::from_coeffs(q as u64, big).ok_or("expected a monic polynomial of even degree")?;
    let approx: Vec<f64> = ints.iter().map(|&c| c as f64).collect();
    let roots: Vec<[f64; 2]> = complex_roots(&approx).iter().map(|z| [z.re, z.im]).collect();
    Ok(json!({
        "lpoly": l.to_string(),
        "radius": (q as f64).sqrt(),
        "roots": roots,
        "functional_equation": l.satisfies_functional_equation(),
        "weil": weil_check(&l),
        "slopes": slope_strings(&lpoly_polygon(&l)),
    })
    .to_string())
}
