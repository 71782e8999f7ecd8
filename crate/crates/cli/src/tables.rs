//! The two worked example tables: 2-constacyclic codes of length 18 over
//! `Z_9`, and negacyclic codes of length 56 over `GR(4,4)`.

use std::io::Write;

use clap::ValueEnum;
use serde_json::json;

use constadepth::code::Cardinality;
use constadepth::spectra::spectrum_dispatch;
use constadepth::{Code, DepthSpectrum, Ring};

use crate::{spectrum_csv, spectrum_json, CliResult, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Z9,
    Gr44,
}

/// Exponent triples in the order the example lists them.
pub const GR44_ROWS: [[usize; 3]; 12] = [
    [14, 12, 13],
    [14, 14, 11],
    [14, 16, 9],
    [14, 10, 15],
    [15, 16, 5],
    [15, 6, 16],
    [7, 6, 5],
    [7, 3, 4],
    [16, 5, 16],
    [10, 6, 17],
    [4, 9, 10],
    [13, 6, 10],
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub exponents: Vec<usize>,
    pub cardinality: Option<Cardinality>,
    pub spectrum: Option<DepthSpectrum>,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub key: &'static str,
    pub rows: Vec<TableRow>,
}

fn evaluate(ring: &std::sync::Arc<Ring>, lambda: i64, length: usize, label: String, k: &[usize]) -> CliResult<TableRow> {
    match Code::new(ring, ring.from_int(lambda), length, k) {
        Ok(code) => {
            // every row here has a closed form, so the cap is never consulted
            let (_, spectrum) = spectrum_dispatch(&code, 0, 1)?;
            Ok(TableRow {
                label,
                exponents: k.to_vec(),
                cardinality: Some(code.cardinality()),
                spectrum: Some(spectrum),
                note: None,
            })
        }
        Err(constadepth::Error::InvalidParameter(msg)) => Ok(TableRow {
            label,
            exponents: k.to_vec(),
            cardinality: None,
            spectrum: None,
            note: Some(format!("rejected: {msg}")),
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn z9_table() -> CliResult<Table> {
    let z9 = Ring::parse("GR(9,1)")?;
    let rows = (0..=18)
        .map(|t| evaluate(&z9, 2, 18, t.to_string(), &[t]))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Table {
        title: "2-constacyclic codes <(x^2 - 8)^t> of length 18 over GR(9,1)".into(),
        key: "t",
        rows,
    })
}

pub fn gr44_table() -> CliResult<Table> {
    let gr = Ring::parse("GR(4,4)")?;
    let mut rows = Vec::new();
    for k in GR44_ROWS {
        let label = format!("({},{},{})", k[0], k[1], k[2]);
        let mut row = evaluate(&gr, -1, 56, label, &k)?;
        if k == [16, 5, 16] {
            row.note = Some("printed in the source table as {33,37,...,56}".into());
        }
        if k == [10, 6, 17] {
            let printed = "printed as 2^132, {1..6} ∪ {36..56}";
            row.note = Some(format!("{}; {printed}", row.note.unwrap_or_default()));
        }
        rows.push(row);
    }
    Ok(Table {
        title: "negacyclic codes <(x+3)^k1 (x^3+2x^2+x+3)^k2 (x^3+3x^2+2x+3)^k3> of length 56 over GR(4,4)".into(),
        key: "(k1,k2,k3)",
        rows,
    })
}

pub fn table(name: TableName) -> CliResult<Table> {
    match name {
        TableName::Z9 => z9_table(),
        TableName::Gr44 => gr44_table(),
    }
}

pub fn run_table(format: Format, name: TableName, out: &mut dyn Write) -> CliResult<()> {
    let t = table(name)?;
    match format {
        Format::Human => render_human(&t, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([t.key, "cardinality", "cardinality_decimal", "spectrum", "note"])?;
            for r in &t.rows {
                w.write_record([
                    r.label.clone(),
                    r.cardinality.map(|c| c.to_string()).unwrap_or_default(),
                    r.cardinality.map(|c| c.decimal()).unwrap_or_default(),
                    r.spectrum.as_ref().map(spectrum_csv).unwrap_or_default(),
                    r.note.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Json => {
            let rows: Vec<_> = t
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "label": r.label,
                        "exponents": r.exponents,
                        "cardinality": r.cardinality.map(|c| c.decimal()),
                        "cardinality_power": r.cardinality.map(|c| c.to_string()),
                        "spectrum": r.spectrum.as_ref().map(spectrum_json),
                        "note": r.note,
                    })
                })
                .collect();
            let v = json!({ "title": t.title, "rows": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
            Ok(())
        }
    }
}

fn render_human(t: &Table, out: &mut dyn Write) -> CliResult<()> {
    let cells: Vec<[String; 4]> = t
        .rows
        .iter()
        .map(|r| {
            [
                r.label.clone(),
                r.cardinality.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                r.spectrum.as_ref().map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
                r.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let header = [t.key.to_string(), "|C|".into(), "Depth(C)".into(), "note".into()];
    let width = |i: usize| {
        cells
            .iter()
            .chain(std::iter::once(&header))
            .map(|c| c[i].chars().count())
            .max()
            .unwrap_or(0)
    };
    let (w0, w1, w2) = (width(0), width(1), width(2));
    writeln!(out, "{}", t.title)?;
    writeln!(out)?;
    for row in std::iter::once(&header).chain(&cells) {
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - s.chars().count()));
        let line = format!(
            "{}  {}  {}  {}",
            pad(&row[0], w0),
            pad(&row[1], w1),
            pad(&row[2], w2),
            row[3]
        );
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}
