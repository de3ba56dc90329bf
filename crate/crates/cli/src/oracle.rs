//! Text reports for `ordlab oracle`. Output is a pure function of the
//! parameters.

use std::fmt::Write;

use ordlab_core::weil_oracle::{
    cm_baseline, cm_default_product, cm_mixed_product, enumerate_weil, refinement_forcing_check, OracleError,
};

use crate::CliError;

fn invalid(e: OracleError) -> CliError {
    CliError::Invalid(e.to_string())
}

/// Every Weil polynomial for `(q, g)`, one per line after a count header.
pub fn weil(q: u64, g: usize) -> Result<String, CliError> {
    let w = enumerate_weil(q, g).map_err(invalid)?;
    let mut out = format!("q = {q}, g = {g}: {} polynomials\n", w.polys.len());
    for l in &w.polys {
        writeln!(out, "{l}").unwrap();
    }
    Ok(out)
}

pub fn refinement(q: u64, g: usize) -> Result<String, CliError> {
    if g < 3 {
        return Err(CliError::Invalid(format!("refinement needs g >= 3, got {g}")));
    }
    let r = refinement_forcing_check(q, g).map_err(invalid)?;
    let mut out = format!(
        "q = {q}, g = {g}: examined {}, premise {}, counterexamples {}, q square: {}\n",
        r.examined,
        r.premise.len(),
        r.counterexamples.len(),
        r.trace_integral
    );
    for l in &r.premise {
        writeln!(out, "premise: {l}").unwrap();
    }
    for l in &r.counterexamples {
        writeln!(out, "counterexample: {l}").unwrap();
    }
    Ok(out)
}

/// Per-factor `a_p` and unit-root counts of a product of CM elliptic curves,
/// with the additivity check.
pub fn cm(p: u64, mixed: bool) -> Result<String, CliError> {
    if !ordlab_core::arith::is_prime(p) {
        return Err(CliError::Invalid(format!("{p} is not prime")));
    }
    let curves = if mixed { cm_mixed_product() } else { cm_default_product() };
    let r = cm_baseline(&curves, p).map_err(invalid)?;
    let mut out = format!("p = {p}\n");
    for f in &r.factors {
        writeln!(out, "{}  d = {}  {}  a_p = {}  u = {}", f.curve, f.d, f.kind, f.a_p, f.u).unwrap();
    }
    writeln!(out, "sum of u = {}, product u = {}, ordinary: {}", r.total_u, r.product_u, r.ordinary()).unwrap();
    for msg in &r.failures {
        writeln!(out, "failure: {msg}").unwrap();
    }
    Ok(out)
}
