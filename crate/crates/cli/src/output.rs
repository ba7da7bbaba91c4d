//! Records printed by the subcommands, and their text, JSON and CSV forms.

use std::io::Write;

use hodge_core::numeric::{format_exact, to_decimal};
use hodge_core::{MonodromyDatum, Rational, Scalar};
use serde::{Deserialize, Serialize};

/// Significant digits of the advisory decimal column.
pub const DECIMAL_DIGITS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    GraphPairing,
    Localization,
    EigenSum,
}

/// One computed value with its datum echoed back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub d: u64,
    pub m: Vec<u64>,
    pub connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    pub quantity: String,
    /// Exact value, `num/den` or an integer.
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
    pub provenance: Provenance,
}

impl OutputRecord {
    pub fn new(datum: &MonodromyDatum, e: Option<u64>, quantity: &str, value: &Rational, provenance: Provenance) -> Self {
        Self {
            d: datum.d(),
            m: datum.m().to_vec(),
            connected: datum.is_connected(),
            e,
            quantity: quantity.to_string(),
            value: format_exact(value),
            decimal: Some(to_decimal(value, DECIMAL_DIGITS)),
            provenance,
        }
    }

    fn csv_row(&self) -> CsvRow {
        let (num, den) = match self.value.split_once('/') {
            Some((n, d)) => (n.to_string(), d.to_string()),
            None => (self.value.clone(), "1".to_string()),
        };
        CsvRow {
            d: self.d,
            m: self.m.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
            e: self.e,
            quantity: self.quantity.clone(),
            num,
            den,
            decimal: self.decimal.clone().unwrap_or_default(),
            connected: self.connected,
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    d: u64,
    m: String,
    e: Option<u64>,
    quantity: String,
    num: String,
    den: String,
    decimal: String,
    connected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn from_flags(json: bool, csv: bool) -> Self {
        match (json, csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Text,
        }
    }
}

pub fn write_json<T: Serialize>(out: &mut impl Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

pub fn write_csv(out: &mut impl Write, records: &[OutputRecord]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r.csv_row()).map_err(std::io::Error::other)?;
    }
    w.flush()
}

/// A single value: the bare exact rational in text mode.
pub fn write_single(out: &mut impl Write, format: Format, record: &OutputRecord) -> std::io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{}", record.value),
        Format::Json => write_json(out, record),
        Format::Csv => write_csv(out, std::slice::from_ref(record)),
    }
}

/// Several values: an aligned two-column table in text mode, where the row
/// label is `e` when present and the quantity otherwise.
pub fn write_table(out: &mut impl Write, format: Format, records: &[OutputRecord]) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(out, &records),
        Format::Csv => write_csv(out, records),
        Format::Text => {
            let labels: Vec<String> =
                records.iter().map(|r| r.e.map_or_else(|| r.quantity.clone(), |e| e.to_string())).collect();
            let width = labels.iter().map(String::len).max().unwrap_or(0);
            for (label, r) in labels.iter().zip(records) {
                writeln!(out, "{label:<width$}  {}", r.value)?;
            }
            Ok(())
        }
    }
}

/// Text form of a divisor class: one `symbol  coefficient` line per term,
/// coefficients aligned on the slash.
pub fn write_class<S: Scalar>(out: &mut impl Write, class: &hodge_core::DivisorClass<S>) -> std::io::Result<()> {
    let rows: Vec<(String, String)> = class.terms().map(|(s, c)| (s.to_string(), format_exact(c))).collect();
    let sym_width = rows.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
    let num_width = rows.iter().map(|(_, c)| c.split('/').next().unwrap_or("").len()).max().unwrap_or(0);
    for (sym, c) in rows {
        let (num, rest) = match c.split_once('/') {
            Some((n, d)) => (n.to_string(), format!("/{d}")),
            None => (c.clone(), String::new()),
        };
        writeln!(out, "{sym:<sym_width$}  {num:>num_width$}{rest}")?;
    }
    Ok(())
}
