//! Command-line front end: argument model, command dispatch and rendering.

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use constadepth::code::Cardinality;
use constadepth::factor::{factor_binomial, teichmuller_base_root};
use constadepth::io::{code_spec_to_json, elem_to_json, parse_elem_str, parse_vector, poly_to_json, vector_to_json};
use constadepth::spectra::{distribution_oracle, s_stats, spectrum_dispatch};
use constadepth::{Code, DepthSpectrum, Ring, RingElem};

pub mod tables;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] constadepth::Error),
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 verification failure, 2 bad input, 3 enumeration cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Core(constadepth::Error::CapExceeded { .. }) => 3,
            CliError::Io(_) | CliError::Csv(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "constadepth", version, about = "Depth spectra of constacyclic codes over finite chain rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,

    /// Largest code the enumeration oracle will visit.
    #[arg(long, global = true, default_value_t = constadepth::DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,

    /// Worker threads for enumeration (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args, Clone)]
pub struct CodeArgs {
    /// Ring, e.g. "GR(9,1)", "FU(2,2)", "F(4)".
    #[arg(long)]
    pub ring: String,

    /// Integer (reduced into the ring) or JSON coordinate array.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,

    /// Code length.
    #[arg(long = "N")]
    pub length: usize,

    /// Exponents k_1,...,k_r in canonical factor order.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub k: Vec<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth spectrum by closed form (enumeration when no formula applies).
    Spectrum(CodeArgs),
    /// Exact depth distribution by enumeration.
    Distribution(CodeArgs),
    /// Depth of a single vector.
    Depth {
        #[arg(long)]
        ring: String,
        /// JSON array of elements.
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Factors of x^n - alpha_0 for N = n p^s and lambda = alpha + gamma beta.
    Factor {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long = "N")]
        length: usize,
    },
    /// Torsion codes by formula and from the echelon basis.
    Torsion(CodeArgs),
    /// Reproduce one of the worked example tables.
    Table {
        #[arg(value_enum)]
        name: tables::TableName,
    },
    /// Sweep every exponent vector over a grid and cross-check formula
    /// against enumeration.
    Verify {
        /// JSON list of {ring, lambda, N}, inline or as a file path.
        #[arg(long, conflicts_with = "preset")]
        grid: Option<String>,
        #[arg(long, value_enum)]
        preset: Option<verify::Preset>,
    },
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Spectrum(args) => run_spectrum(cli, args, out),
        Command::Distribution(args) => run_distribution(cli, args, out),
        Command::Depth { ring, vector } => run_depth(cli, ring, vector, out),
        Command::Factor { ring, lambda, length } => run_factor(cli, ring, lambda, *length, out),
        Command::Torsion(args) => run_torsion(cli, args, out),
        Command::Table { name } => tables::run_table(cli.format, *name, out),
        Command::Verify { grid, preset } => {
            let grid = match (grid, preset) {
                (Some(text), _) => verify::parse_grid(text)?,
                (None, Some(p)) => p.grid(),
                (None, None) => return Err(CliError::Input("verify needs --grid or --preset".into())),
            };
            verify::run_verify(cli, &grid, out)
        }
    }
}

pub fn build_code(args: &CodeArgs) -> CliResult<Code> {
    let ring = Ring::parse(&args.ring)?;
    let lambda = parse_elem_str(&ring, &args.lambda)?;
    Ok(Code::new(&ring, lambda, args.length, &args.k)?)
}

/// `[[lo, hi], ...]`.
pub fn spectrum_json(s: &DepthSpectrum) -> Value {
    json!(s.ranges().iter().map(|&(lo, hi)| [lo, hi]).collect::<Vec<_>>())
}

/// `lo-hi` runs separated by `;`.
pub fn spectrum_csv(s: &DepthSpectrum) -> String {
    s.ranges()
        .iter()
        .map(|&(lo, hi)| if lo == hi { lo.to_string() } else { format!("{lo}-{hi}") })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn cardinality_human(c: &Cardinality) -> String {
    if c.exponent <= 1 {
        c.to_string()
    } else {
        format!("{c} = {}", c.decimal())
    }
}

fn factor_lines(code: &Code) -> Vec<String> {
    code.factorization()
        .factors
        .iter()
        .zip(code.exponents())
        .enumerate()
        .map(|(l, (f, k))| format!("f{} = {f}  (k{} = {k})", l + 1, l + 1))
        .collect()
}

fn split_json(ring: &Ring, code: &Code) -> Value {
    let sp = code.split();
    json!({
        "alpha": elem_to_json(ring, sp.alpha),
        "beta": elem_to_json(ring, sp.beta),
        "beta_kind": sp.beta_kind.to_string(),
        "alpha0": elem_to_json(ring, sp.alpha0),
        "n": sp.n,
        "s": sp.s,
    })
}

fn write_kv(out: &mut dyn Write, rows: &[(&str, String)]) -> CliResult<()> {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        let mut lines = v.lines();
        writeln!(out, "{k:<width$}  {}", lines.next().unwrap_or(""))?;
        for more in lines {
            writeln!(out, "{:<width$}  {more}", "")?;
        }
    }
    Ok(())
}

fn code_header(code: &Code) -> Vec<(&'static str, String)> {
    let ring = code.ring();
    let sp = code.split();
    vec![
        ("ring", ring.spec().to_string()),
        (
            "lambda",
            format!(
                "{} = {} + gamma*{} (beta {})",
                ring.format_elem(sp.lambda),
                ring.format_elem(sp.alpha),
                ring.format_elem(sp.beta),
                sp.beta_kind
            ),
        ),
        ("N", format!("{} = {} * {}^{}", code.length(), sp.n, ring.p(), sp.s)),
        ("factors", factor_lines(code).join("\n")),
    ]
}

fn run_spectrum(cli: &Cli, args: &CodeArgs, out: &mut dyn Write) -> CliResult<()> {
    let code = build_code(args)?;
    let (case, spectrum) = spectrum_dispatch(&code, cli.cap, cli.jobs)?;
    let (s1, s2) = s_stats(&code)?;
    let card = code.cardinality();
    let torsion: Vec<String> = (0..code.ring().e())
        .filter_map(|i| code.torsion_formula(i).ok())
        .map(|t| t.generator.to_string())
        .collect();
    match cli.format {
        Format::Json => {
            let v = json!({
                "code": code_spec_to_json(&code),
                "split": split_json(code.ring(), &code),
                "factors": code.factorization().factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "generator": poly_to_json(code.generator()),
                "torsion": torsion,
                "case": case.name(),
                "spectrum": spectrum_json(&spectrum),
                "s1": s1,
                "s2": s2,
                "cardinality": card.decimal(),
                "cardinality_power": card.to_string(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["ring", "lambda", "N", "k", "case", "s1", "s2", "cardinality", "cardinality_decimal", "spectrum"])?;
            w.write_record([
                code.ring().spec().to_string(),
                code.ring().format_elem(code.lambda()),
                code.length().to_string(),
                join_k(code.exponents()),
                case.name().to_string(),
                s1.to_string(),
                s2.to_string(),
                card.to_string(),
                card.decimal(),
                spectrum_csv(&spectrum),
            ])?;
            w.flush()?;
        }
        Format::Human => {
            let mut rows = code_header(&code);
            rows.push(("case", case.to_string()));
            rows.push(("S1, S2", format!("{s1}, {s2}")));
            rows.push(("|C|", cardinality_human(&card)));
            if !torsion.is_empty() {
                let lines: Vec<String> = torsion
                    .iter()
                    .enumerate()
                    .map(|(i, g)| format!("Tor_{i} = <{g}>"))
                    .collect();
                rows.push(("torsion", lines.join("\n")));
            }
            rows.push(("spectrum", spectrum.to_string()));
            write_kv(out, &rows)?;
        }
    }
    Ok(())
}

fn join_k(k: &[usize]) -> String {
    k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn run_distribution(cli: &Cli, args: &CodeArgs, out: &mut dyn Write) -> CliResult<()> {
    let code = build_code(args)?;
    let dist = distribution_oracle(&code, cli.cap, cli.jobs)?;
    let spectrum = dist.spectrum();
    match cli.format {
        Format::Json => {
            let counts: serde_json::Map<String, Value> = dist
                .counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(d, c)| (d.to_string(), json!(c.to_string())))
                .collect();
            let v = json!({
                "code": code_spec_to_json(&code),
                "case": "ORACLE",
                "spectrum": spectrum_json(&spectrum),
                "counts": counts,
                "total": dist.total().to_string(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["depth", "count"])?;
            for (d, c) in dist.counts.iter().enumerate() {
                w.write_record([d.to_string(), c.to_string()])?;
            }
            w.flush()?;
        }
        Format::Human => {
            let mut rows = code_header(&code);
            rows.push(("|C|", dist.total().to_string()));
            rows.push(("spectrum", spectrum.to_string()));
            write_kv(out, &rows)?;
            writeln!(out)?;
            writeln!(out, "{:>6}  {}", "depth", "codewords")?;
            for (d, c) in dist.counts.iter().enumerate().filter(|(_, &c)| c > 0) {
                writeln!(out, "{d:>6}  {c}")?;
            }
        }
    }
    Ok(())
}

fn run_depth(cli: &Cli, ring: &str, vector: &str, out: &mut dyn Write) -> CliResult<()> {
    let ring = Ring::parse(ring)?;
    let v = parse_vector(&ring, vector)?;
    if v.is_empty() {
        return Err(CliError::Input("vector must have at least one entry".into()));
    }
    let res = constadepth::depth(&ring, &v);
    let witness = res.witness.map(|w| ring.format_elem(w));
    match cli.format {
        Format::Json => {
            let v = json!({
                "ring": ring.spec().to_string(),
                "vector": vector_to_json(&ring, &v),
                "depth": res.depth,
                "witness": res.witness.map(|w| elem_to_json(&ring, w)),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["ring", "N", "depth", "witness"])?;
            w.write_record([
                ring.spec().to_string(),
                v.len().to_string(),
                res.depth.to_string(),
                witness.unwrap_or_default(),
            ])?;
            w.flush()?;
        }
        Format::Human => {
            let shown: Vec<String> = v.iter().map(|&c| ring.format_elem(c)).collect();
            write_kv(
                out,
                &[
                    ("ring", ring.spec().to_string()),
                    ("vector", format!("({})", shown.join(", "))),
                    ("depth", res.depth.to_string()),
                    ("witness", witness.unwrap_or_else(|| "-".into())),
                ],
            )?;
        }
    }
    Ok(())
}

fn run_factor(cli: &Cli, ring: &str, lambda: &str, length: usize, out: &mut dyn Write) -> CliResult<()> {
    let ring: Arc<Ring> = Ring::parse(ring)?;
    let lambda: RingElem = parse_elem_str(&ring, lambda)?;
    let split = teichmuller_base_root(&ring, lambda, length)?;
    let fact = factor_binomial(&ring, split.n, split.alpha0)?;
    match cli.format {
        Format::Json => {
            let factors: Vec<Value> = fact
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "poly": f.to_string(),
                        "coeffs": poly_to_json(f),
                        "degree": f.degree().finite(),
                        "residue": f.project().to_string(),
                    })
                })
                .collect();
            let v = json!({
                "ring": ring.spec().to_string(),
                "lambda": elem_to_json(&ring, lambda),
                "alpha": elem_to_json(&ring, split.alpha),
                "beta": elem_to_json(&ring, split.beta),
                "beta_kind": split.beta_kind.to_string(),
                "alpha0": elem_to_json(&ring, split.alpha0),
                "n": split.n,
                "s": split.s,
                "base": fact.base.to_string(),
                "factors": factors,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["index", "degree", "factor", "residue"])?;
            for (l, f) in fact.factors.iter().enumerate() {
                w.write_record([
                    (l + 1).to_string(),
                    f.degree().to_string(),
                    f.to_string(),
                    f.project().to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Human => {
            let lines: Vec<String> = fact
                .factors
                .iter()
                .enumerate()
                .map(|(l, f)| format!("f{} = {f}", l + 1))
                .collect();
            write_kv(
                out,
                &[
                    ("ring", ring.spec().to_string()),
                    (
                        "lambda",
                        format!(
                            "{} = {} + gamma*{} (beta {})",
                            ring.format_elem(lambda),
                            ring.format_elem(split.alpha),
                            ring.format_elem(split.beta),
                            split.beta_kind
                        ),
                    ),
                    ("N", format!("{length} = {} * {}^{}", split.n, ring.p(), split.s)),
                    ("alpha_0", ring.format_elem(split.alpha0)),
                    ("binomial", fact.base.to_string()),
                    ("factors", lines.join("\n")),
                ],
            )?;
        }
    }
    Ok(())
}

fn run_torsion(cli: &Cli, args: &CodeArgs, out: &mut dyn Write) -> CliResult<()> {
    let code = build_code(args)?;
    let basis = code.echelon_basis();
    let e = code.ring().e();
    let mut records = Vec::new();
    for i in 0..e {
        let oracle = code.torsion_oracle(&basis, i)?;
        let formula = code.torsion_formula(i).ok();
        records.push((i, formula, oracle));
    }
    let card_echelon = basis.cardinality();
    let card_formula = code.cardinality_formula().ok();
    match cli.format {
        Format::Json => {
            let tors: Vec<Value> = records
                .iter()
                .map(|(i, f, o)| {
                    json!({
                        "i": i,
                        "formula": f.as_ref().map(|t| t.generator.to_string()),
                        "oracle": o.generator.to_string(),
                        "dimension": o.dimension(),
                        "agree": f.as_ref().map(|t| t.generator == o.generator),
                    })
                })
                .collect();
            let v = json!({
                "code": code_spec_to_json(&code),
                "torsion": tors,
                "cardinality_torsion": card_formula.map(|c| c.decimal()),
                "cardinality_echelon": card_echelon.decimal(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["i", "formula", "oracle", "dimension", "agree"])?;
            for (i, f, o) in &records {
                w.write_record([
                    i.to_string(),
                    f.as_ref().map(|t| t.generator.to_string()).unwrap_or_default(),
                    o.generator.to_string(),
                    o.dimension().to_string(),
                    f.as_ref().map(|t| (t.generator == o.generator).to_string()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Human => {
            let mut rows = code_header(&code);
            for (i, f, o) in &records {
                let text = match f {
                    Some(t) if t.generator == o.generator => format!("<{}>  (formula and oracle agree)", o.generator),
                    Some(t) => format!("formula <{}>, oracle <{}>  MISMATCH", t.generator, o.generator),
                    None => format!("<{}>  (oracle only)", o.generator),
                };
                rows.push(("Tor_i", format!("i = {i}: {text}")));
            }
            rows.push(("|C| echelon", cardinality_human(&card_echelon)));
            if let Some(c) = card_formula {
                rows.push(("|C| torsion", cardinality_human(&c)));
            }
            write_kv(out, &rows)?;
        }
    }
    Ok(())
}
