//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use ordlab_cli::config::{Curve, CurveConfig, ModelName};
use ordlab_cli::scan::{run_scan, ScanOptions, ScanOutput};
use ordlab_core::classify::{half_ordinary_bound, infinity_type_check, pairs_to_one, ClassifyError, PrimeRecord};
use ordlab_core::newton::{is_ordinary, lpoly_polygon, unit_root_count, NewtonPolygon};
use ordlab_core::quad_field::SplitKind;
use ordlab_core::weil_oracle::{enumerate_weil, refinement_forcing_check, synthetic_factor_triples, synthetic_unit_roots};

type Outcome = Result<String, String>;

fn curve(model: ModelName, f: &[i64]) -> Curve {
    Curve::from_config(&CurveConfig { model, m: None, f: f.to_vec(), d: 3 }).expect("valid curve")
}

fn picard_g3() -> Curve {
    curve(ModelName::Superelliptic, &[1, 1, 0, 0, 1])
}

struct Timed {
    scan: ScanOutput,
    elapsed: Duration,
}

/// The genus-3 scan to 300 with one worker and no cache, shared by several
/// criteria.
fn picard_scan() -> &'static Result<Timed, String> {
    static SCAN: OnceLock<Result<Timed, String>> = OnceLock::new();
    SCAN.get_or_init(|| {
        let start = Instant::now();
        let scan = run_scan(&picard_g3(), &ScanOptions::new(5, 300)).map_err(|e| e.to_string())?;
        Ok(Timed { scan, elapsed: start.elapsed() })
    })
}

fn split_good(records: &[PrimeRecord]) -> impl Iterator<Item = &PrimeRecord> {
    records.iter().filter(|r| r.good && r.kind == SplitKind::Split)
}

fn slopes(poly: &NewtonPolygon) -> Vec<String> {
    poly.expanded().iter().map(ToString::to_string).collect()
}

fn multiset(a: Option<u32>, b: Option<u32>) -> [Option<u32>; 2] {
    let mut m = [a, b];
    m.sort();
    m
}

/// `#{(x, y) in F_p^2 : y^2 = x^3 + 1} + 1`, by direct enumeration.
fn naive_cm_count(p: u64) -> u64 {
    let mut n = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + 1) % p;
        n += (0..p).filter(|y| y * y % p == rhs).count() as u64;
    }
    n
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let scan = run_scan(&curve(ModelName::Elliptic, &[1, 0, 0, 1]), &ScanOptions::new(5, 2000)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    for r in scan.records.iter().filter(|r| r.good) {
        let l = r.lpoly.as_ref().unwrap();
        match r.p % 3 {
            1 if r.ordinary != Some(true) => problems.push(format!("p = {} (1 mod 3) not ordinary", r.p)),
            2 if !(l.coeff(1).is_zero() && r.u == Some(0)) => {
                problems.push(format!("p = {} (2 mod 3): a_p = {}, u = {:?}", r.p, -l.coeff(1), r.u))
            }
            _ => {}
        }
        if r.p <= 31 && naive_cm_count(r.p) as i64 != r.p as i64 + 1 + i64::try_from(l.coeff(1)).unwrap() {
            problems.push(format!("p = {}: count disagrees with direct enumeration", r.p));
        }
    }
    let rep = &scan.report;
    let frac = |n: usize| n as f64 / rep.good as f64;
    let ordinary = frac(rep.ordinary_total);
    let split = frac(rep.totals["split"]);
    if (ordinary - 0.5).abs() > 0.04 || (ordinary - split).abs() > 0.04 {
        problems.push(format!("ordinary fraction {ordinary:.4} vs split density {split:.4}"));
    }
    if elapsed > Duration::from_secs(10) {
        problems.push(format!("runtime {elapsed:?} > 10 s"));
    }
    let detail = format!("{} good primes, ordinary {ordinary:.4}, split {split:.4}, {elapsed:.2?}", rep.good);
    if problems.is_empty() { Ok(detail) } else { Err(format!("{detail}; {}", problems.join("; "))) }
}

fn criterion_2() -> Outcome {
    let timed = picard_scan().as_ref().map_err(Clone::clone)?;
    let records = &timed.scan.records;
    let mut problems = Vec::new();
    let mut split = 0;
    let mut ordinary = 0;
    let mut ogus_holds = 0;
    for r in split_good(records) {
        split += 1;
        let Some(fd) = &r.factors else {
            problems.push(format!("p = {}: no conjugate splitting", r.p));
            continue;
        };
        let (c, cbar) = fd.det_vals();
        if c.zip(cbar).map(|(x, y)| x + y) != Some(3) {
            problems.push(format!("p = {}: v(c) = {c:?}, v(cbar) = {cbar:?}", r.p));
        }
        let lpoly = r.lpoly.as_ref().unwrap();
        if is_ordinary(lpoly) {
            ordinary += 1;
        }
        if r.ogus == Some(true) {
            ogus_holds += 1;
            let (vb, vbbar) = fd.b_vals().unwrap();
            let (unit, other) = if vb == Some(0) {
                (&fd.slopes_sigma, &fd.slopes_sigma_bar)
            } else if vbbar == Some(0) {
                (&fd.slopes_sigma_bar, &fd.slopes_sigma)
            } else {
                problems.push(format!("p = {}: ogus holds but no b is a unit", r.p));
                continue;
            };
            if slopes(unit) != ["0", "0", "1"] || slopes(other) != ["0", "1", "1"] || !is_ordinary(lpoly) {
                problems.push(format!("p = {}: ogus holds but slopes {unit} | {other}", r.p));
            }
        }
    }
    if ordinary == 0 {
        problems.push("no ordinary split prime".into());
    }
    if timed.elapsed > Duration::from_secs(300) {
        problems.push(format!("runtime {:?} > 5 min", timed.elapsed));
    }
    let detail = format!(
        "{split} split good primes, ogus holds at {ogus_holds}, ordinary fraction {:.4}, {:.2?}",
        ordinary as f64 / split.max(1) as f64,
        timed.elapsed
    );
    if problems.is_empty() { Ok(detail) } else { Err(format!("{detail}; {}", problems.join("; "))) }
}

fn criterion_3() -> Outcome {
    let timed = picard_scan().as_ref().map_err(Clone::clone)?;
    let sig = picard_g3().signature.unwrap();
    let mut failures = Vec::new();
    let mut checked = 0;
    for r in split_good(&timed.scan.records) {
        checked += 1;
        let det = r.factors.as_ref().map(|f| f.det_vals());
        let law = det.map(|(a, b)| multiset(a, b)) == Some([Some(1), Some(2)]);
        if !law || !infinity_type_check(r, &sig) {
            failures.push(r.p);
        }
    }
    if failures.is_empty() && timed.scan.report.infinity_type_failures.is_empty() {
        Ok(format!("{{1,2}} at all {checked} split good primes"))
    } else {
        Err(format!("failing primes {failures:?}, report lists {:?}", timed.scan.report.infinity_type_failures))
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let c = curve(ModelName::Superelliptic, &[1, 1, 0, 0, 0, 1]);
    let scan = run_scan(&c, &ScanOptions::new(5, 60)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let sig = c.signature.unwrap();
    let mut problems = Vec::new();
    let mut checked = 0;
    for r in split_good(&scan.records) {
        checked += 1;
        let Some(fd) = &r.factors else {
            problems.push(format!("p = {}: no quartic splitting", r.p));
            continue;
        };
        let (c, cbar) = fd.det_vals();
        if multiset(c, cbar) != [Some(1), Some(3)] || !infinity_type_check(r, &sig) {
            problems.push(format!("p = {}: v(delta) = {c:?}, v(deltabar) = {cbar:?}", r.p));
        }
        if fd.sigma.degree() != 4 || !pairs_to_one(&fd.slopes_sigma, &fd.slopes_sigma_bar) {
            problems.push(format!("p = {}: factor slopes {} | {}", r.p, fd.slopes_sigma, fd.slopes_sigma_bar));
        }
        let l = lpoly_polygon(r.lpoly.as_ref().unwrap());
        if !pairs_to_one(&l, &l) {
            problems.push(format!("p = {}: L slopes {l}", r.p));
        }
    }
    if checked == 0 {
        problems.push("no split good primes".into());
    }
    if elapsed > Duration::from_secs(60) {
        problems.push(format!("runtime {elapsed:?} > 60 s"));
    }
    let detail = format!("{checked} split good primes, {{1,3}} everywhere, {elapsed:.2?}");
    if problems.is_empty() { Ok(detail) } else { Err(format!("{detail}; {}", problems.join("; "))) }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut failures = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        for g in 1..=3 {
            let w = enumerate_weil(q, g).map_err(|e| e.to_string())?;
            for l in &w.polys {
                total += 1;
                let poly = lpoly_polygon(l);
                let s = poly.expanded();
                let zero = num_rational::Rational64::from_integer(0);
                let one = num_rational::Rational64::from_integer(1);
                let in_range = s.iter().all(|x| *x >= zero && *x <= one);
                let paired = (0..s.len()).all(|i| s[i] + s[s.len() - 1 - i] == one);
                let total_ok = poly.total() == num_rational::Rational64::from_integer(g as i64);
                let equiv = is_ordinary(l) == (unit_root_count(l) == g);
                if !(in_range && paired && total_ok && equiv) {
                    failures.push(format!("q = {q}: {l}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed:?} > 60 s"));
    }
    let detail = format!("{total} Weil polynomials, {elapsed:.2?}");
    if failures.is_empty() { Ok(detail) } else { Err(format!("{detail}; {}", failures.join("; "))) }
}

/// Coefficients of `(T - r)^n`, constant term first.
fn binomial_power(r: i64, n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (i, x) in c.iter().enumerate() {
            next[i + 1] += x;
            next[i] -= x * r;
        }
        c = next;
    }
    c
}

fn criterion_6() -> Outcome {
    let mut problems = Vec::new();
    let mut examined = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let r = refinement_forcing_check(q, 3).map_err(|e| e.to_string())?;
        examined += r.examined;
        if !r.counterexamples.is_empty() {
            problems.push(format!("q = {q}: {} counterexamples", r.counterexamples.len()));
        }
        let root = (1..=4i64).find(|s| (s * s) as u64 == q);
        let got: BTreeSet<Vec<BigInt>> = r.premise.iter().map(|l| l.coeffs().to_vec()).collect();
        let want: BTreeSet<Vec<BigInt>> = match root {
            Some(s) => [binomial_power(s, 6), binomial_power(-s, 6)].into_iter().collect(),
            None => BTreeSet::new(),
        };
        if got != want {
            problems.push(format!("q = {q}: premise has {} members, expected {}", got.len(), want.len()));
        }
        if r.trace_integral != root.is_some() {
            problems.push(format!("q = {q}: trace integrality misreported"));
        }
    }
    let detail = format!("{examined} polynomials examined at g = 3");
    if problems.is_empty() { Ok(detail) } else { Err(format!("{detail}; {}", problems.join("; "))) }
}

fn criterion_7() -> Outcome {
    let primes = [5u64, 7, 11, 13];
    let mut problems = Vec::new();
    let (mut valid, mut flagged) = (0, 0);
    for (i, &p) in primes.iter().enumerate() {
        for factors in synthetic_factor_triples(2500, p, 0.7, 1000 + i as u64) {
            let nonunits = factors.iter().filter(|f| f.a_val != Some(0)).count();
            let exact = synthetic_unit_roots(&factors, p);
            match (nonunits > 1, half_ordinary_bound(p, &factors)) {
                (false, Ok(bound)) => {
                    valid += 1;
                    if bound < 2 || bound > exact {
                        problems.push(format!("p = {p}: bound {bound}, exact u {exact}"));
                    }
                }
                (true, Err(ClassifyError::KatzViolation { .. })) => flagged += 1,
                (violating, got) => problems.push(format!("p = {p}: violating = {violating} but got {got:?}")),
            }
        }
    }
    let detail = format!("{} inputs: {valid} within the Katz bound, {flagged} flagged", valid + flagged);
    if problems.is_empty() && valid + flagged == 10_000 {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", problems.join("; ")))
    }
}

fn criterion_8() -> Outcome {
    let timed = picard_scan().as_ref().map_err(Clone::clone)?;
    let mut within = 0;
    let mut violations = Vec::new();
    for r in split_good(&timed.scan.records) {
        match r.katz {
            Some(k) if k.within_bound() => within += 1,
            _ => violations.push(r.p),
        }
    }
    let checked = within + violations.len();
    let fraction = within as f64 / checked.max(1) as f64;
    let detail = format!("katz_sum(a_sigma) <= 1 at {within}/{checked} = {fraction:.4}, violations {violations:?}");
    if fraction >= 0.95 && violations == timed.scan.report.katz.violations { Ok(detail) } else { Err(detail) }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn criterion_9() -> Outcome {
    let base = &picard_scan().as_ref().map_err(Clone::clone)?.scan;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().join("cache");
    let mut opts = ScanOptions::new(5, 300);
    opts.workers = 8;
    opts.cache = Some(cache.clone());
    let cold = run_scan(&picard_g3(), &opts).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let warm = run_scan(&picard_g3(), &opts).map_err(|e| e.to_string())?;
    let warm_time = start.elapsed();
    let mut problems = Vec::new();
    for (name, other) in [("8 workers cold", &cold), ("8 workers warm", &warm)] {
        if other.csv != base.csv || other.json != base.json {
            problems.push(format!("{name} differs from 1 worker"));
        }
    }
    if cold.cache_hits != 0 || warm.cache_hits != base.report.good {
        problems.push(format!("cache hits cold {} warm {}", cold.cache_hits, warm.cache_hits));
    }
    // the binary on the warm cache writes the same bytes
    let config = dir.path().join("curve.toml");
    std::fs::write(&config, "model = \"superelliptic\"\nm = 3\nf = [1, 1, 0, 0, 1]\nd = 3\n").map_err(|e| e.to_string())?;
    let out = dir.path().join("scan.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_ordlab"))
        .args(["scan", "--pmax", "300", "--workers", "8"])
        .arg("--curve")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .arg("--cache")
        .arg(&cache)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        problems.push(format!("binary exited with {}", status.status));
    } else if read(&out)? != base.csv || read(&out.with_extension("json"))? != base.json {
        problems.push("binary output differs".into());
    }
    let detail = format!("{} bytes CSV, {} bytes JSON, warm rerun {warm_time:.2?}", base.csv.len(), base.json.len());
    if problems.is_empty() { Ok(detail) } else { Err(format!("{detail}; {}", problems.join("; "))) }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 CM baseline y^2 = x^3 + 1, p <= 2000", criterion_1),
        ("2 genus-3 mechanism, split p <= 300", criterion_2),
        ("3 determinant valuations {1,2}", criterion_3),
        ("4 genus-4 pipeline, split p <= 60", criterion_4),
        ("5 Weil enumeration slope equivalences", criterion_5),
        ("6 pairwise-product forcing at g = 3", criterion_6),
        ("7 half-ordinary bound on 10000 triples", criterion_7),
        ("8 Katz bound fraction >= 0.95", criterion_8),
        ("9 determinism across workers and cache", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
