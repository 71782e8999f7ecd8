//! Exhaustive sweeps comparing closed-form spectra, torsion codes and
//! cardinalities with codeword enumeration.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

use constadepth::code::Cardinality;
use constadepth::factor::{factor_binomial, teichmuller_base_root};
use constadepth::io::{elem_to_json, parse_elem};
use constadepth::spectra::{distribution_oracle, spectrum_dispatch};
use constadepth::{Code, DepthSpectrum, Ring};

use crate::{spectrum_csv, spectrum_json, Cli, CliError, CliResult, Format};

#[derive(Clone, Debug, PartialEq)]
pub struct GridEntry {
    pub ring: String,
    pub lambda: Value,
    pub lengths: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Z_4, Z_9, F_2[u]/(u^2) and GR(4,2) families with lengths up to 8.
    Acceptance,
}

impl Preset {
    pub fn grid(self) -> Vec<GridEntry> {
        let entry = |ring: &str, lambda: Value, lengths: &[usize]| GridEntry {
            ring: ring.into(),
            lambda,
            lengths: lengths.to_vec(),
        };
        match self {
            Preset::Acceptance => vec![
                entry("GR(4,1)", json!(3), &[2, 4, 8]),
                entry("GR(9,1)", json!(2), &[2, 6]),
                entry("GR(9,1)", json!(4), &[2, 6]),
                entry("FU(2,2)", json!([1, 1]), &[2, 4]),
                entry("GR(4,2)", json!(3), &[2, 4]),
            ],
        }
    }
}

/// Grid JSON: `[{"ring": "GR(9,1)", "lambda": 2, "N": [2, 6]}, ...]`;
/// `N` may also be a single integer. `text` is inline JSON or a file path.
pub fn parse_grid(text: &str) -> CliResult<Vec<GridEntry>> {
    let trimmed = text.trim_start();
    let body = if trimmed.starts_with('[') {
        text.to_string()
    } else {
        std::fs::read_to_string(text).map_err(|e| CliError::Input(format!("grid file {text:?}: {e}")))?
    };
    let v: Value = serde_json::from_str(&body).map_err(|e| CliError::Input(format!("grid: {e}")))?;
    let items = v
        .as_array()
        .ok_or_else(|| CliError::Input("grid must be a JSON array".into()))?;
    items
        .iter()
        .map(|item| {
            let ring = item
                .get("ring")
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::Input(format!("grid entry without a ring: {item}")))?;
            let lambda = item
                .get("lambda")
                .cloned()
                .ok_or_else(|| CliError::Input(format!("grid entry without lambda: {item}")))?;
            let lengths = match item.get("N") {
                Some(Value::Number(n)) => vec![n.as_u64().unwrap_or(0) as usize],
                Some(Value::Array(ns)) => ns
                    .iter()
                    .map(|n| n.as_u64().map(|n| n as usize))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| CliError::Input(format!("bad N list in {item}")))?,
                _ => return Err(CliError::Input(format!("grid entry without N: {item}"))),
            };
            Ok(GridEntry {
                ring: ring.into(),
                lambda,
                lengths,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Over the enumeration cap; only the cardinality checks ran.
    Skip,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyRecord {
    pub ring: String,
    pub lambda: Value,
    pub length: usize,
    pub exponents: Vec<usize>,
    pub case: String,
    pub formula: Option<DepthSpectrum>,
    pub oracle: Option<DepthSpectrum>,
    pub card_torsion: Option<Cardinality>,
    pub card_echelon: Cardinality,
    pub card_enumeration: Option<u64>,
    pub torsion_agree: Option<bool>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub records: Vec<VerifyRecord>,
}

impl VerifyReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Verdict::Fail) == 0
    }
}

fn exponent_vectors(bound: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn check_code(code: &Code, cap: u64, jobs: usize) -> CliResult<VerifyRecord> {
    let ring = code.ring();
    let basis = code.echelon_basis();
    let card_echelon = basis.cardinality();
    let card_torsion = code.cardinality_formula().ok();
    let applies = code.formulas_apply();

    let torsion_agree = if applies {
        let mut agree = true;
        for i in 0..ring.e() {
            agree &= code.torsion_formula(i)?.generator == code.torsion_oracle(&basis, i)?.generator;
        }
        Some(agree)
    } else {
        None
    };
    let over_cap = card_echelon.exceeds(cap);
    let (case, formula) = if applies {
        let (case, s) = spectrum_dispatch(code, cap, jobs)?;
        (case.name().to_string(), Some(s))
    } else {
        ("ORACLE_ONLY".to_string(), None)
    };
    let dist = if over_cap {
        None
    } else {
        Some(distribution_oracle(code, cap, jobs)?)
    };
    let oracle = dist.as_ref().map(|d| d.spectrum());
    let card_enumeration = dist.as_ref().map(|d| d.total());

    let mut ok = torsion_agree != Some(false);
    ok &= card_torsion.map_or(true, |c| c == card_echelon);
    if let Some(n) = card_enumeration {
        ok &= card_echelon.decimal() == n.to_string();
    }
    if let (Some(f), Some(o)) = (&formula, &oracle) {
        ok &= f == o;
    }
    let verdict = match (ok, over_cap) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Skip,
        (true, false) => Verdict::Pass,
    };
    Ok(VerifyRecord {
        ring: ring.spec().to_string(),
        lambda: elem_to_json(ring, code.lambda()),
        length: code.length(),
        exponents: code.exponents().to_vec(),
        case,
        formula,
        oracle,
        card_torsion,
        card_echelon,
        card_enumeration,
        torsion_agree,
        verdict,
    })
}

/// Checks every exponent vector `0 <= k_l <= e p^s` for each grid point.
pub fn verify_grid(grid: &[GridEntry], cap: u64, jobs: usize) -> CliResult<VerifyReport> {
    let mut report = VerifyReport::default();
    for entry in grid {
        let ring = Ring::parse(&entry.ring)?;
        let lambda = parse_elem(&ring, &entry.lambda)?;
        for &n in &entry.lengths {
            let split = teichmuller_base_root(&ring, lambda, n)?;
            let fact = factor_binomial(&ring, split.n, split.alpha0)?;
            let bound = ring.e() as usize * split.p_pow_s(&ring);
            for k in exponent_vectors(bound, fact.len()) {
                let code = Code::with_factorization(&ring, split.clone(), fact.clone(), n, &k)?;
                report.records.push(check_code(&code, cap, jobs)?);
            }
        }
    }
    Ok(report)
}

fn opt_spectrum_human(s: &Option<DepthSpectrum>) -> String {
    s.as_ref().map_or_else(|| "-".into(), |s| s.to_string())
}

pub fn run_verify(cli: &Cli, grid: &[GridEntry], out: &mut dyn Write) -> CliResult<()> {
    let report = verify_grid(grid, cli.cap, cli.jobs)?;
    let (pass, fail, skip) = (
        report.count(Verdict::Pass),
        report.count(Verdict::Fail),
        report.count(Verdict::Skip),
    );
    match cli.format {
        Format::Json => {
            let records: Vec<Value> = report
                .records
                .iter()
                .map(|r| {
                    json!({
                        "ring": r.ring,
                        "lambda": r.lambda,
                        "N": r.length,
                        "exponents": r.exponents,
                        "case": r.case,
                        "formula_spectrum": r.formula.as_ref().map(spectrum_json),
                        "oracle_spectrum": r.oracle.as_ref().map(spectrum_json),
                        "cardinality_torsion": r.card_torsion.map(|c| c.decimal()),
                        "cardinality_echelon": r.card_echelon.decimal(),
                        "cardinality_enumeration": r.card_enumeration.map(|c| c.to_string()),
                        "torsion_agree": r.torsion_agree,
                        "verdict": r.verdict.name(),
                    })
                })
                .collect();
            let grid_json: Vec<Value> = grid
                .iter()
                .map(|g| json!({"ring": g.ring, "lambda": g.lambda, "N": g.lengths}))
                .collect();
            let v = json!({
                "grid": grid_json,
                "records": records,
                "summary": {"records": report.records.len(), "pass": pass, "fail": fail, "skip": skip},
                "verdict": if fail == 0 { "PASS" } else { "FAIL" },
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "ring", "lambda", "N", "k", "case", "formula_spectrum", "oracle_spectrum",
                "cardinality_torsion", "cardinality_echelon", "cardinality_enumeration",
                "torsion_agree", "verdict",
            ])?;
            for r in &report.records {
                w.write_record([
                    r.ring.clone(),
                    r.lambda.to_string(),
                    r.length.to_string(),
                    r.exponents.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(";"),
                    r.case.clone(),
                    r.formula.as_ref().map(spectrum_csv).unwrap_or_default(),
                    r.oracle.as_ref().map(spectrum_csv).unwrap_or_default(),
                    r.card_torsion.map(|c| c.decimal()).unwrap_or_default(),
                    r.card_echelon.decimal(),
                    r.card_enumeration.map(|c| c.to_string()).unwrap_or_default(),
                    r.torsion_agree.map(|b| b.to_string()).unwrap_or_default(),
                    r.verdict.name().to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Human => {
            for r in &report.records {
                writeln!(
                    out,
                    "{} {} lambda={} N={} k={:?} {}: formula {} oracle {} |C| {}",
                    r.verdict.name(),
                    r.ring,
                    r.lambda,
                    r.length,
                    r.exponents,
                    r.case,
                    opt_spectrum_human(&r.formula),
                    opt_spectrum_human(&r.oracle),
                    r.card_echelon
                )?;
            }
            writeln!(out, "{} records: {pass} pass, {fail} fail, {skip} skipped", report.records.len())?;
        }
    }
    if fail > 0 {
        return Err(CliError::VerificationFailed(format!("{fail} of {} records failed", report.records.len())));
    }
    Ok(())
}
