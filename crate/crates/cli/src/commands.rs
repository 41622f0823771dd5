use std::io::Write;

use lme_core::sweep::SweepItem;
use lme_core::witness::WitnessExport;
use lme_core::{
    classify, cross_check, run_recursion, search_witness, validate_dims, Classification,
    EnumerationBounds, LmeError, RecordRow, Rule, Status, WitnessConfig,
};
use serde::Serialize;
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Lme(LmeError),
    Io(std::io::Error),
    Csv(csv::Error),
    CheckFailed(usize),
}

impl From<LmeError> for CliError {
    fn from(e: LmeError) -> Self {
        CliError::Lme(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

impl CliError {
    /// 2 for invalid input, 3 for overflow, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lme(LmeError::Overflow(_)) => 3,
            CliError::Lme(LmeError::InternalInconsistency(_)) => 1,
            CliError::Lme(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::CheckFailed(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lme(e) => match e {
                LmeError::TooFewSubsystems(_) => "TooFewSubsystems",
                LmeError::InsufficientNontrivial => "InsufficientNontrivial",
                LmeError::NonPositiveEntry(_) => "NonPositiveEntry",
                LmeError::Overflow(_) => "Overflow",
                LmeError::NotCaseC(_) => "NotCaseC",
                LmeError::IndexOutOfRange { .. } => "IndexOutOfRange",
                LmeError::ShapeMismatch { .. } => "ShapeMismatch",
                LmeError::InternalInconsistency(_) => "InternalInconsistency",
            },
            CliError::Io(_) => "Io",
            CliError::Csv(_) => "Csv",
            CliError::CheckFailed(_) => "CheckFailed",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Lme(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
            CliError::Csv(e) => e.to_string(),
            CliError::CheckFailed(n) => {
                format!("{n} disagreement(s) between closed form and recursion")
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.message(), "exit_code": self.exit_code() } })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

fn status_json(status: Status) -> (&'static str, i128) {
    match status {
        Status::Empty => ("empty", -1),
        Status::Point => ("point", 0),
        Status::PositiveDim(k) => ("dim", k as i128),
    }
}

fn rule_text(rule: Rule) -> &'static str {
    match rule {
        Rule::DeltaGreaterThanMinus2 => "Delta > -2",
        Rule::DeltaEqualsMinus2 => "Delta = -2",
        Rule::DeltaLessThanMinus2 => "Delta < -2",
    }
}

fn classification_json(dims: &[u64], c: &Classification) -> serde_json::Value {
    let (status, value) = status_json(c.status);
    json!({
        "dims": dims,
        "status": status,
        "value": value,
        "delta": c.invariants.delta,
        "r": c.invariants.r,
        "gmax": c.invariants.gmax,
        "product": c.invariants.product,
        "rule": c.rule,
    })
}

pub fn cmd_classify(raw: &[i64], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let d = validate_dims(raw)?;
    let c = classify(&d)?;
    match format {
        Format::Json => writeln!(out, "{}", classification_json(d.dims(), &c))?,
        _ => {
            writeln!(out, "dims     {d}")?;
            writeln!(out, "status   {}", c.status)?;
            writeln!(out, "delta    {}", c.invariants.delta)?;
            writeln!(out, "R        {}", c.invariants.r)?;
            writeln!(out, "g_max    {}", c.invariants.gmax)?;
            writeln!(out, "rule     {}", rule_text(c.rule))?;
        }
    }
    Ok(())
}

pub fn cmd_trace(raw: &[i64], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let d = validate_dims(raw)?;
    let t = run_recursion(&d)?;
    match format {
        Format::Json => {
            let v = json!({
                "start": t.start,
                "steps": t.steps,
                "terminal": t.terminal,
                "case": t.case.to_string(),
                "d_value": t.d_value,
            });
            writeln!(out, "{v}")?;
        }
        _ => {
            let last = t.steps.len() - 1;
            for (i, step) in t.steps.iter().enumerate() {
                if i == last {
                    writeln!(out, "{step}  {}  D = {}", t.case, t.d_value)?;
                } else {
                    writeln!(out, "{step}")?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WitnessOutput<'a> {
    #[serde(flatten)]
    export: &'a WitnessExport,
    succeeded: bool,
    predicted_status: i128,
    best_restart: u32,
    restarts_used: u32,
    iterations_total: u64,
}

pub fn cmd_witness(
    raw: &[i64],
    cfg: &WitnessConfig,
    format: Format,
    save_to: Option<&std::path::Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let d = validate_dims(raw)?;
    let rep = search_witness(&d, cfg)?;
    let export = rep.export();
    if let Some(path) = save_to {
        let file = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(file, &export).map_err(std::io::Error::from)?;
    }
    match format {
        Format::Json => {
            let v = WitnessOutput {
                export: &export,
                succeeded: rep.succeeded,
                predicted_status: rep.predicted.status.code(),
                best_restart: rep.best_restart,
                restarts_used: rep.restarts_used,
                iterations_total: rep.iterations_total,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&v).map_err(std::io::Error::from)?
            )?;
        }
        _ => {
            writeln!(out, "dims        {d}")?;
            writeln!(out, "predicted   {}", rep.predicted.status)?;
            writeln!(
                out,
                "found       {}",
                if rep.succeeded { "yes" } else { "no" }
            )?;
            writeln!(out, "residual    {:.3e}", rep.best_residual)?;
            for (i, dev) in rep.per_subsystem_deviation.iter().enumerate() {
                writeln!(out, "  |rho_{} - 1/{}|  {:.3e}", i + 1, d.dims()[i], dev)?;
            }
            writeln!(
                out,
                "restarts    {} (best #{}), {} iterations",
                rep.restarts_used, rep.best_restart, rep.iterations_total
            )?;
        }
    }
    Ok(())
}

fn joined(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct CsvRow {
    dims: String,
    delta: String,
    r: String,
    gmax: u64,
    product: String,
    status: String,
    terminal_case: String,
    terminal_vector: String,
    trace_length: usize,
    hyperdet_nonzero: bool,
    lcm: u64,
}

impl From<&RecordRow> for CsvRow {
    fn from(r: &RecordRow) -> Self {
        CsvRow {
            dims: joined(r.dims.dims()),
            delta: r.delta.to_string(),
            r: r.r.to_string(),
            gmax: r.gmax,
            product: r.product.to_string(),
            status: r.status.to_string(),
            terminal_case: r.terminal_case.to_string(),
            terminal_vector: joined(r.terminal_vector.dims()),
            trace_length: r.trace_length,
            hyperdet_nonzero: r.hyperdet_nonzero,
            lcm: r.lcm,
        }
    }
}

const TABLE_HEADER: &str = "dims                    delta        R  gmax  status  case                    terminal                steps  hdet   lcm";

fn table_line(r: &RecordRow) -> String {
    format!(
        "{:<22} {:>6} {:>8} {:>5} {:>7}  {:<22}  {:<22} {:>5}  {:<5} {:>5}",
        r.dims.to_string(),
        r.delta,
        r.r,
        r.gmax,
        r.status,
        r.terminal_case.to_string(),
        r.terminal_vector.to_string(),
        r.trace_length,
        r.hyperdet_nonzero,
        r.lcm
    )
}

pub fn cmd_enumerate(
    bounds: EnumerationBounds,
    format: Format,
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> Result<(), CliError> {
    let items = lme_core::enumerate(bounds)?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for item in items {
                match item {
                    SweepItem::Row(r) => w.serialize(CsvRow::from(&r))?,
                    SweepItem::Skipped { dims, reason } => {
                        writeln!(warn, "warning: skipped {dims:?}: {reason}")?
                    }
                }
            }
            w.flush()?;
        }
        Format::Json => {
            for item in items {
                match item {
                    SweepItem::Row(r) => writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&r).map_err(std::io::Error::from)?
                    )?,
                    SweepItem::Skipped { dims, reason } => writeln!(
                        out,
                        "{}",
                        json!({ "skipped": dims, "reason": reason.to_string() })
                    )?,
                }
            }
        }
        Format::Human => {
            writeln!(out, "{TABLE_HEADER}")?;
            for item in items {
                match item {
                    SweepItem::Row(r) => writeln!(out, "{}", table_line(&r))?,
                    SweepItem::Skipped { dims, reason } => {
                        writeln!(warn, "warning: skipped {dims:?}: {reason}")?
                    }
                }
            }
        }
    }
    Ok(())
}

/// Runs closed form and recursion on every vector in range.
pub fn cmd_check(
    bounds: EnumerationBounds,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    bounds.validate()?;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut disagreements: Vec<(Vec<u64>, String)> = Vec::new();
    for (raw, _) in lme_core::sweep::dim_vectors(bounds) {
        match lme_core::DimVec::new(&raw).and_then(|d| cross_check(&d)) {
            Ok(rep) => {
                checked += 1;
                if !rep.agree {
                    let detail = format!(
                        "closed form {}, recursion {}",
                        rep.closed_form.status.code(),
                        rep.recursive_dim
                    );
                    disagreements.push((raw, detail));
                }
            }
            Err(LmeError::Overflow(_)) => skipped += 1,
            Err(e) => {
                checked += 1;
                disagreements.push((raw, e.to_string()));
            }
        }
    }
    match format {
        Format::Json => {
            let list: Vec<_> = disagreements
                .iter()
                .map(|(d, detail)| json!({ "dims": d, "detail": detail }))
                .collect();
            writeln!(
                out,
                "{}",
                json!({ "checked": checked, "skipped": skipped, "disagreements": list })
            )?;
        }
        _ => {
            for (d, detail) in &disagreements {
                writeln!(out, "DISAGREE {d:?}: {detail}")?;
            }
            writeln!(
                out,
                "checked {checked} vectors, {} disagreement(s), {skipped} skipped",
                disagreements.len()
            )?;
        }
    }
    if disagreements.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(disagreements.len()))
    }
}
