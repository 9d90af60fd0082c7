//! Command-line front end: read an arrangement file, run the pipeline,
//! print a text or JSON report and pick an exit code.

use std::fmt::Write as _;
use std::path::PathBuf;

use nodal_syzygy::arrangement::{Arrangement, ArrangementError};
use nodal_syzygy::closedform::{
    surface_run, verify_arrangement, BettiPair, Check, ClosedFormError, Mode, OracleChoice,
    Outcome, SurfaceOptions, SurfaceReport, VerificationReport, VerifyOptions,
};
use nodal_syzygy::groebner::{BettiTable, DEFAULT_CELL_BUDGET};
use nodal_syzygy::polyring::Field;
use serde::Serialize;
use thiserror::Error;

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_HYPOTHESES: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    /// Overrides the characteristic in the file.
    pub field: Option<Field>,
    pub mode: Mode,
    pub oracle: OracleChoice,
    pub normalize: bool,
    pub output: OutputFormat,
    pub degree_cap: Option<i64>,
    pub cell_budget: u64,
    pub full_check: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>) -> RunConfig {
        RunConfig {
            input: input.into(),
            field: None,
            mode: Mode::Verify,
            oracle: OracleChoice::Both,
            normalize: true,
            output: OutputFormat::Text,
            degree_cap: None,
            cell_budget: DEFAULT_CELL_BUDGET,
            full_check: false,
        }
    }
}

/// `q` for the rationals, `p:<prime>` for a prime field.
pub fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "q" | "Q" | "QQ" => Ok(Field::Rational),
        _ => {
            let p = s
                .strip_prefix("p:")
                .ok_or_else(|| format!("expected q or p:<prime>, got {s:?}"))?
                .parse::<u64>()
                .map_err(|e| e.to_string())?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Report {
    Verification(VerificationReport),
    Surface(SurfaceReport),
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self {
            Report::Verification(r) => match r.outcome {
                Outcome::Verified => EXIT_VERIFIED,
                Outcome::HypothesesViolated => EXIT_HYPOTHESES,
                Outcome::Mismatch => EXIT_MISMATCH,
            },
            Report::Surface(r) => {
                let hypotheses = r.genericity.as_ref().is_none_or(|g| g.overall);
                if !hypotheses {
                    EXIT_HYPOTHESES
                } else if r.checks.iter().all(|c| c.pass) {
                    EXIT_VERIFIED
                } else {
                    EXIT_MISMATCH
                }
            }
        }
    }
}

/// Loads the input and runs the pipeline for the configured mode.
pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(&config.input).map_err(|source| CliError::Io {
        path: config.input.clone(),
        source,
    })?;
    let a = Arrangement::from_json(&text, config.field)?;
    match config.mode {
        Mode::SurfaceExperiment => {
            if a.num_vars() != 4 {
                return Err(CliError::Usage(
                    "surface-experiment mode requires 4 variables".into(),
                ));
            }
            let opts = SurfaceOptions {
                oracle: config.oracle,
                full_check: config.full_check,
                degree_cap: config.degree_cap,
                cell_budget: config.cell_budget,
            };
            Ok(Report::Surface(surface_run(&a, &opts)?))
        }
        Mode::Verify | Mode::ExponentsOnly => {
            if a.num_vars() != 3 {
                return Err(CliError::Usage(format!(
                    "{} mode requires 3 variables",
                    mode_name(config.mode)
                )));
            }
            let opts = VerifyOptions {
                mode: config.mode,
                oracle: config.oracle,
                normalize: config.normalize,
                degree_cap: config.degree_cap,
                cell_budget: config.cell_budget,
            };
            Ok(Report::Verification(verify_arrangement(&a, &opts)?))
        }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Verify => "verify",
        Mode::ExponentsOnly => "exponents-only",
        Mode::SurfaceExperiment => "surface-experiment",
    }
}

/// Runs and renders; returns the exit code and what goes to stdout and stderr.
pub fn run(config: &RunConfig) -> (i32, String, String) {
    match execute(config) {
        Ok(report) => (
            report.exit_code(),
            emit_report(&report, config.output),
            String::new(),
        ),
        Err(e) => (EXIT_USAGE, String::new(), format!("error: {e}\n")),
    }
}

pub fn emit_report(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => match report {
            Report::Verification(r) => verification_text(r),
            Report::Surface(r) => surface_text(r),
        },
    }
}

fn indent(block: &str) -> String {
    block.lines().map(|l| format!("    {l}\n")).collect()
}

fn betti_block(out: &mut String, title: &str, table: &BettiTable) {
    let _ = writeln!(out, "  {title}: {}", table.chain_string());
    out.push_str(&indent(&table.staircase()));
}

fn pair_block(out: &mut String, label: &str, pair: &Option<BettiPair>) {
    if let Some(p) = pair {
        betti_block(out, &format!("D_0(f) {label}"), &p.d0);
        betti_block(out, &format!("M(f) {label}"), &p.mf);
    }
}

fn checks_block(out: &mut String, checks: &[Check]) {
    out.push_str("checks:\n");
    for c in checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        match &c.witness {
            Some(w) if !c.pass => {
                let _ = writeln!(out, "  [{mark}] {}: {w}", c.name);
            }
            _ => {
                let _ = writeln!(out, "  [{mark}] {}", c.name);
            }
        }
    }
}

fn verification_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let outcome = match r.outcome {
        Outcome::Verified => "verified",
        Outcome::HypothesesViolated => "hypotheses violated",
        Outcome::Mismatch => "MISMATCH",
    };
    let _ = writeln!(
        out,
        "arrangement: m={}, d={}, lines={}, field {} ({})",
        r.components, r.degree, r.lines, r.field, r.evidence
    );
    let _ = writeln!(out, "case: {}", r.case);
    let _ = writeln!(out, "outcome: {outcome}");
    if !r.hypotheses.is_empty() {
        out.push_str("hypotheses:\n");
        for h in &r.hypotheses {
            let _ = writeln!(out, "  {h}");
        }
    }
    match &r.predicted_exponents {
        Some(p) => {
            let _ = writeln!(out, "predicted exponents: {p}");
        }
        None => out.push_str("predicted exponents: theorem not applicable\n"),
    }
    let _ = writeln!(out, "computed exponents:  {}", r.computed_exponents);
    if r.partial {
        out.push_str("partial: true\n");
    }
    if r.betti_predicted.is_some() || r.betti_computed.is_some() {
        out.push_str("betti tables:\n");
        pair_block(&mut out, "predicted", &r.betti_predicted);
        pair_block(&mut out, "computed", &r.betti_computed);
    }
    checks_block(&mut out, &r.checks);
    if !r.generators.is_empty() {
        out.push_str("generators (working frame):\n");
        for g in &r.generators {
            let _ = writeln!(
                out,
                "  {} [degree {}]: ({})",
                g.name,
                g.degree,
                g.normalized.join(", ")
            );
        }
    }
    if !r.relations.is_empty() {
        out.push_str("relations:\n");
        for rel in &r.relations {
            let _ = writeln!(out, "  {rel}");
        }
    }
    out.push_str("frame:\n");
    for row in &r.frame.matrix {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    let _ = writeln!(out, "  factors: {}", r.frame.normalized_factors.join(", "));
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn surface_text(r: &SurfaceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "surface arrangement (experimental): m={}, d={}, field {}",
        r.components, r.degree, r.field
    );
    let _ = writeln!(out, "formula exponents:  {}", r.predicted_exponents);
    match &r.computed_exponents {
        Some(c) => {
            let _ = writeln!(out, "computed exponents: {c}");
        }
        None => out.push_str("computed exponents: unavailable\n"),
    }
    if let Some(m) = r.matches_formula {
        let _ = writeln!(out, "matches formula: {m}");
    }
    if r.partial {
        out.push_str("partial: true\n");
        if let Some(o) = &r.oracle {
            for (deg, e) in &o.entries {
                let _ = writeln!(
                    out,
                    "  degree {deg}: dimension {}, generators {}",
                    e.dimension, e.generators
                );
            }
        }
    }
    checks_block(&mut out, &r.checks);
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}
