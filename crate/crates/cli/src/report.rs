//! CSV rows and the density summary derived from them.
//!
//! The summary is computed from rows only, so `ordlab report` on a written
//! CSV reproduces the JSON of the scan that produced it.

use std::collections::BTreeMap;

use ordlab_core::classify::{Mechanism, PrimeRecord};
use ordlab_core::quad_field::SplitKind;
use serde::{Deserialize, Serialize};

use crate::config::Curve;
use crate::CliError;

/// One CSV line. Split-only columns are empty at inert, ramified and bad
/// primes; `b` columns are empty at genus 1; `a_i` is empty beyond the genus.
/// Infinite valuations (zero coefficients) are written `inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub p: u64,
    pub kind: String,
    pub good: bool,
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    pub ordinary: String,
    pub u: String,
    pub v_a_sigma: String,
    pub v_a_sigmabar: String,
    pub v_b_sigma: String,
    pub v_b_sigmabar: String,
    pub v_c_sigma: String,
    pub v_c_sigmabar: String,
    pub katz_b: String,
    pub ogus: String,
    pub mechanism: String,
    pub slopes: String,
}

fn val(v: Option<u32>) -> String {
    v.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, ToString::to_string)
}

impl Row {
    pub fn from_record(rec: &PrimeRecord) -> Self {
        let mut a = [String::new(), String::new(), String::new(), String::new()];
        if let Some(l) = &rec.lpoly {
            let g = l.genus();
            for (i, slot) in a.iter_mut().enumerate().take(g.min(4)) {
                *slot = l.coeff(2 * g - i - 1).to_string();
            }
        }
        let split = rec.good && rec.kind == SplitKind::Split;
        let factors = rec.factors.as_ref().filter(|_| split);
        let pair = |v: Option<(Option<u32>, Option<u32>)>| v.map_or((String::new(), String::new()), |(x, y)| (val(x), val(y)));
        let (va, vab) = pair(factors.map(|f| f.a_vals()));
        let (vb, vbb) = pair(factors.and_then(|f| f.b_vals()));
        let (vc, vcb) = pair(factors.map(|f| f.det_vals()));
        let [a1, a2, a3, a4] = a;
        Row {
            p: rec.p,
            kind: rec.kind.to_string(),
            good: rec.good,
            a1,
            a2,
            a3,
            a4,
            ordinary: opt(&rec.ordinary),
            u: opt(&rec.u),
            v_a_sigma: va,
            v_a_sigmabar: vab,
            v_b_sigma: vb,
            v_b_sigmabar: vbb,
            v_c_sigma: vc,
            v_c_sigmabar: vcb,
            katz_b: if split { opt(&rec.katz) } else { String::new() },
            ogus: if split { opt(&rec.ogus) } else { String::new() },
            mechanism: rec.mechanism.to_string(),
            slopes: opt(&rec.slopes),
        }
    }
}

pub fn write_csv(rows: &[Row]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii output")
}

pub fn read_csv(text: &str) -> Result<Vec<Row>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().map(|row| row.map_err(|e| CliError::Invalid(format!("csv: {e}")))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KatzSummary {
    /// Split good primes.
    pub checked: usize,
    pub within_bound: usize,
    pub fraction: Option<String>,
    pub violations: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub curve: String,
    pub curve_hash: String,
    pub genus: usize,
    pub signature: Option<(usize, usize)>,
    pub primes: usize,
    pub first_p: Option<u64>,
    pub last_p: Option<u64>,
    pub bad: Vec<u64>,
    /// Good primes per split kind.
    pub totals: BTreeMap<String, usize>,
    pub ordinary: BTreeMap<String, usize>,
    pub ordinary_fraction: BTreeMap<String, Option<String>>,
    pub good: usize,
    pub ordinary_total: usize,
    pub ordinary_fraction_overall: Option<String>,
    /// Share of good primes that split in `E`.
    pub split_fraction: Option<String>,
    /// Good primes with `a_1 = 0`.
    pub trace_zero: usize,
    pub katz: KatzSummary,
    pub ogus_failures: Vec<u64>,
    pub infinity_type_failures: Vec<u64>,
    pub mechanisms: BTreeMap<String, usize>,
}

/// `num / den` rounded half-up to 6 decimals, from exact integers.
pub fn fraction6(num: usize, den: usize) -> Option<String> {
    if den == 0 {
        return None;
    }
    let (num, den) = (num as u128, den as u128);
    let scaled = (2 * num * 1_000_000 + den) / (2 * den);
    Some(format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000))
}

fn parse_val(s: &str, p: u64) -> Result<Option<u32>, CliError> {
    if s == "inf" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| CliError::Invalid(format!("csv: bad valuation {s:?} at p = {p}")))
}

impl DensityReport {
    pub fn from_rows(curve: &Curve, rows: &[Row]) -> Result<Self, CliError> {
        let kinds = ["inert", "ramified", "split"];
        let mut totals: BTreeMap<String, usize> = kinds.iter().map(|k| (k.to_string(), 0)).collect();
        let mut ordinary = totals.clone();
        let mut mechanisms: BTreeMap<String, usize> = BTreeMap::new();
        let mut bad = Vec::new();
        let mut trace_zero = 0;
        let mut katz = KatzSummary { checked: 0, within_bound: 0, fraction: None, violations: Vec::new() };
        let mut ogus_failures = Vec::new();
        let mut infinity_type_failures = Vec::new();
        for row in rows {
            if Mechanism::parse(&row.mechanism).is_none() {
                return Err(CliError::Invalid(format!("csv: unknown mechanism {:?} at p = {}", row.mechanism, row.p)));
            }
            *mechanisms.entry(row.mechanism.clone()).or_default() += 1;
            if !row.good {
                bad.push(row.p);
                continue;
            }
            let slot = totals
                .get_mut(&row.kind)
                .ok_or_else(|| CliError::Invalid(format!("csv: unknown kind {:?} at p = {}", row.kind, row.p)))?;
            *slot += 1;
            if row.ordinary == "true" {
                *ordinary.get_mut(&row.kind).expect("same keys") += 1;
            }
            if row.a1 == "0" {
                trace_zero += 1;
            }
            if row.kind != "split" {
                continue;
            }
            katz.checked += 1;
            if row.katz_b != "inf" && row.katz_b.parse::<u32>().map_err(|_| CliError::Invalid(format!("csv: bad katz_b at p = {}", row.p)))? <= 1 {
                katz.within_bound += 1;
            } else {
                katz.violations.push(row.p);
            }
            if row.ogus == "false" {
                ogus_failures.push(row.p);
            }
            if let Some(sig) = &curve.signature {
                let mut got = [parse_val(&row.v_c_sigma, row.p)?, parse_val(&row.v_c_sigmabar, row.p)?];
                let mut want = [Some(sig.r_tau as u32), Some(sig.r_taubar as u32)];
                got.sort();
                want.sort();
                if got != want {
                    infinity_type_failures.push(row.p);
                }
            }
        }
        katz.fraction = fraction6(katz.within_bound, katz.checked);
        let good: usize = totals.values().sum();
        let ordinary_total: usize = ordinary.values().sum();
        let ordinary_fraction = kinds.iter().map(|k| (k.to_string(), fraction6(ordinary[*k], totals[*k]))).collect();
        Ok(DensityReport {
            curve: curve.canonical(),
            curve_hash: curve.hash(),
            genus: curve.genus(),
            signature: curve.signature.map(|s| s.unordered()),
            primes: rows.len(),
            first_p: rows.first().map(|r| r.p),
            last_p: rows.last().map(|r| r.p),
            bad,
            split_fraction: fraction6(totals["split"], good),
            totals,
            ordinary,
            ordinary_fraction,
            good,
            ordinary_total,
            ordinary_fraction_overall: fraction6(ordinary_total, good),
            trace_zero,
            katz,
            ogus_failures,
            infinity_type_failures,
            mechanisms,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_round_half_up() {
        assert_eq!(fraction6(1, 2).as_deref(), Some("0.500000"));
        assert_eq!(fraction6(2, 3).as_deref(), Some("0.666667"));
        assert_eq!(fraction6(1, 3).as_deref(), Some("0.333333"));
        assert_eq!(fraction6(1, 8_000_000).as_deref(), Some("0.000000"));
        assert_eq!(fraction6(1, 2_000_000).as_deref(), Some("0.000001"));
        assert_eq!(fraction6(5, 5).as_deref(), Some("1.000000"));
        assert_eq!(fraction6(0, 0), None);
    }
}
