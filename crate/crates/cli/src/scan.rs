//! Prime-range scans.

use std::path::PathBuf;

use ordlab_core::arith::primes_in;
use ordlab_core::classify::{classify_from_counts, classify_prime, PrimeRecord};
use ordlab_core::curve_counts::{frobenius_counts, good_reduction};
use rayon::prelude::*;

use crate::cache::CountCache;
use crate::config::Curve;
use crate::report::{write_csv, DensityReport, Row};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub pmin: u64,
    pub pmax: u64,
    pub workers: usize,
    pub cache: Option<PathBuf>,
    /// Allow `pmax` beyond the genus-dependent cap.
    pub force: bool,
}

impl ScanOptions {
    pub fn new(pmin: u64, pmax: u64) -> Self {
        ScanOptions { pmin, pmax, workers: 1, cache: None, force: false }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOutput {
    pub records: Vec<PrimeRecord>,
    pub rows: Vec<Row>,
    pub csv: String,
    pub report: DensityReport,
    pub json: String,
    pub cache_hits: usize,
}

pub fn validate(curve: &Curve, opts: &ScanOptions) -> Result<(), CliError> {
    if opts.pmin < 5 {
        return Err(CliError::Invalid(format!("pmin = {} must be at least 5", opts.pmin)));
    }
    if opts.pmax < opts.pmin {
        return Err(CliError::Invalid(format!("pmax = {} is below pmin = {}", opts.pmax, opts.pmin)));
    }
    let cap = curve.default_cap();
    if opts.pmax > cap && !opts.force {
        return Err(CliError::Invalid(format!(
            "pmax = {} exceeds the genus-{} cap {cap}; pass --force to override",
            opts.pmax,
            curve.genus()
        )));
    }
    if opts.workers == 0 {
        return Err(CliError::Invalid("workers must be positive".into()));
    }
    Ok(())
}

/// Classifies every prime in `[pmin, pmax]`. Records come back in ascending
/// `p` whatever the worker count; on failure the smallest failing prime is
/// reported.
pub fn run_scan(curve: &Curve, opts: &ScanOptions) -> Result<ScanOutput, CliError> {
    validate(curve, opts)?;
    let cache = match &opts.cache {
        Some(dir) => Some(CountCache::open(dir, &curve.hash()).map_err(|e| CliError::Io(format!("cache {}: {e}", dir.display())))?),
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| CliError::Io(format!("worker pool: {e}")))?;
    let primes = primes_in(opts.pmin, opts.pmax);
    let results: Vec<Result<(PrimeRecord, bool), CliError>> =
        pool.install(|| primes.par_iter().map(|&p| classify_one(curve, cache.as_ref(), p)).collect());
    let mut records = Vec::with_capacity(results.len());
    let mut cache_hits = 0;
    for r in results {
        let (rec, hit) = r?;
        cache_hits += usize::from(hit);
        records.push(rec);
    }
    let rows: Vec<Row> = records.iter().map(Row::from_record).collect();
    let csv = write_csv(&rows);
    let report = DensityReport::from_rows(curve, &rows)?;
    let json = report.to_json();
    Ok(ScanOutput { records, rows, csv, report, json, cache_hits })
}

fn classify_one(curve: &Curve, cache: Option<&CountCache>, p: u64) -> Result<(PrimeRecord, bool), CliError> {
    let invariant = |e: ordlab_core::classify::ClassifyError| CliError::Invariant {
        p: e.invariant_prime().unwrap_or(p),
        message: e.to_string(),
    };
    if !good_reduction(&curve.spec, p) {
        return classify_prime(&curve.spec, &curve.field, p).map(|r| (r, false)).map_err(invariant);
    }
    let g = curve.genus();
    let (counts, hit) = match cache.and_then(|c| c.get(p, g)) {
        Some(counts) => (counts, true),
        None => {
            let counts = frobenius_counts(&curve.spec, p).map_err(|e| invariant(e.into()))?;
            if let Some(c) = cache {
                c.put(p, &counts).map_err(|e| CliError::Io(format!("cache write at p = {p}: {e}")))?;
            }
            (counts, false)
        }
    };
    let rec = classify_from_counts(&curve.spec, &curve.field, p, &counts).map_err(invariant)?;
    Ok((rec, hit))
}
