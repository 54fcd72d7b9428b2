//! Command-line plumbing for `multibanana`: argument model, report documents
//! and their JSON/CSV serialization.
//!
//! Everything the binary prints is built here so that output can be tested
//! without spawning a process.

use std::io::Write;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use multibanana::geometry::BananaShape;
use multibanana::gvpf::{cross_check, gv_table, CrossCheckReport, GVTable};
use multibanana::qseries::{check_identities, IdentityReport};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "multibanana", version, about = "Genus-0 GV invariants of multi-banana configurations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate the closed-form partition function.
    Compute(ShapeArgs),
    /// Run the Jacobi-form identity suite.
    Verify(VerifyArgs),
    /// Compare the closed form with the twisted enumeration.
    Crosscheck(ShapeArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct ShapeArgs {
    /// `2x2`, `1xW` (with --w) or `1x<w>`.
    #[arg(long)]
    pub shape: String,
    #[arg(long)]
    pub w: Option<u32>,
    /// Total degree through which results are exact.
    #[arg(long)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// q-order of the identity checks.
    #[arg(long, default_value_t = 12)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// A rejected configuration, as opposed to a failed computation.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

impl ShapeArgs {
    pub fn shape(&self) -> Result<BananaShape> {
        let shape = BananaShape::parse(&self.shape, self.w).map_err(|e| UsageError(e.to_string()))?;
        if let Some(w) = self.w {
            if shape.v == 1 && shape.w != w {
                return Err(UsageError(format!("--shape {} conflicts with --w {w}", self.shape)).into());
            }
        }
        Ok(shape)
    }
}

/// Serialized form of a [`GVTable`].
#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct TableDocument {
    pub shape: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<u32>,
    pub order: i64,
    pub variables: Vec<String>,
    pub coefficients: Vec<CoefficientRow>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct CoefficientRow {
    pub exponents: Vec<i32>,
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct VerifyDocument {
    pub order: u32,
    pub passed: bool,
    pub checks: Vec<CheckRow>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub name: String,
    pub order: Option<i64>,
    pub terms_compared: usize,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct CrossCheckDocument {
    pub shape: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<u32>,
    pub order: i64,
    pub passed: bool,
    pub terms_compared: usize,
    pub first_discrepancy: Option<DiscrepancyRow>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct DiscrepancyRow {
    pub exponents: Vec<i32>,
    pub closed_form: String,
    pub enumeration: String,
}

fn shape_fields(shape: BananaShape) -> (String, Option<u32>) {
    if shape.is_two_by_two() {
        ("2x2".into(), None)
    } else {
        ("1xW".into(), Some(shape.w))
    }
}

impl From<&GVTable> for TableDocument {
    fn from(t: &GVTable) -> Self {
        let (shape, w) = shape_fields(t.shape);
        TableDocument {
            shape,
            w,
            order: t.order,
            variables: t.variables.clone(),
            coefficients: t
                .entries
                .iter()
                .map(|e| CoefficientRow {
                    exponents: e.exponents.clone(),
                    value: e.value.to_string(),
                })
                .collect(),
        }
    }
}

impl VerifyDocument {
    pub fn new(order: u32, report: &IdentityReport) -> Self {
        VerifyDocument {
            order,
            passed: report.all_passed(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckRow {
                    name: c.name.to_owned(),
                    order: c.order.value(),
                    terms_compared: c.terms_compared,
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

impl From<&CrossCheckReport> for CrossCheckDocument {
    fn from(r: &CrossCheckReport) -> Self {
        let (shape, w) = shape_fields(r.shape);
        CrossCheckDocument {
            shape,
            w,
            order: r.order,
            passed: r.passed(),
            terms_compared: r.comparison.terms_compared,
            first_discrepancy: r.comparison.first_discrepancy.as_ref().map(|d| DiscrepancyRow {
                exponents: d.exps.as_slice().to_vec(),
                closed_form: d.left.to_string(),
                enumeration: d.right.to_string(),
            }),
        }
    }
}

/// Canonical JSON text: compact, fields in declaration order, one trailing
/// newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string(doc)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: Vec<String>, rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner().context("flushing csv")?)?)
}

impl TableDocument {
    pub fn to_csv(&self) -> Result<String> {
        let mut header = self.variables.clone();
        header.push("value".into());
        let rows = self
            .coefficients
            .iter()
            .map(|c| {
                let mut row: Vec<String> = c.exponents.iter().map(|e| e.to_string()).collect();
                row.push(c.value.clone());
                row
            })
            .collect();
        csv_text(header, rows)
    }
}

impl VerifyDocument {
    pub fn to_csv(&self) -> Result<String> {
        let header = ["name", "order", "terms_compared", "passed", "detail"];
        let rows = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    c.order.map(|o| o.to_string()).unwrap_or_default(),
                    c.terms_compared.to_string(),
                    c.passed.to_string(),
                    c.detail.clone().unwrap_or_default(),
                ]
            })
            .collect();
        csv_text(header.map(String::from).to_vec(), rows)
    }
}

impl CrossCheckDocument {
    pub fn to_csv(&self) -> Result<String> {
        let header = ["shape", "w", "order", "passed", "terms_compared", "discrepancy_exponents", "closed_form", "enumeration"];
        let d = self.first_discrepancy.as_ref();
        let row = vec![
            self.shape.clone(),
            self.w.map(|w| w.to_string()).unwrap_or_default(),
            self.order.to_string(),
            self.passed.to_string(),
            self.terms_compared.to_string(),
            d.map(|d| d.exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
                .unwrap_or_default(),
            d.map(|d| d.closed_form.clone()).unwrap_or_default(),
            d.map(|d| d.enumeration.clone()).unwrap_or_default(),
        ];
        csv_text(header.map(String::from).to_vec(), vec![row])
    }
}

/// Result of one invocation: the text for standard output and whether every
/// check passed.
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Compute(args) => {
            let shape = args.shape()?;
            let doc = TableDocument::from(&gv_table(shape, args.order as i64)?);
            let output = match args.format {
                Format::Json => to_json(&doc)?,
                Format::Csv => doc.to_csv()?,
            };
            Ok(Outcome { output, success: true })
        }
        Command::Verify(args) => {
            let doc = VerifyDocument::new(args.order, &check_identities(args.order as i64));
            let output = match args.format {
                Format::Json => to_json(&doc)?,
                Format::Csv => doc.to_csv()?,
            };
            Ok(Outcome { success: doc.passed, output })
        }
        Command::Crosscheck(args) => {
            let shape = args.shape()?;
            let doc = CrossCheckDocument::from(&cross_check(shape, args.order)?);
            let output = match args.format {
                Format::Json => to_json(&doc)?,
                Format::Csv => doc.to_csv()?,
            };
            Ok(Outcome { success: doc.passed, output })
        }
    }
}

/// Writes `outcome` to `out`; a failed check is reported on `err`.
pub fn emit(outcome: &Outcome, out: &mut impl Write, err: &mut impl Write) -> Result<()> {
    out.write_all(outcome.output.as_bytes())?;
    out.flush()?;
    if !outcome.success {
        writeln!(err, "multibanana: check failed")?;
    }
    Ok(())
}
