//! Case registry, expectation tables, verification and report emission for the
//! `superspencer` command-line tool.

pub mod emit;
pub mod expect;
pub mod registry;
pub mod run;
pub mod verify;

use std::path::PathBuf;

use superspencer_core::grading::{GradingError, LabelError};
use superspencer_core::repmod::RepmodError;
use superspencer_core::spencer::SpencerError;

pub use expect::{Expectation, ExpectedFactor, Splitness, Table, WeightMode};
pub use registry::{lookup, registry, CaseSpec, KRange};
pub use run::{run_case, OrderReport, RunReport, TowerReport, SCHEMA};
pub use verify::{verify, Diff, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Spencer(#[from] SpencerError),
    #[error(transparent)]
    Repmod(#[from] RepmodError),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Table { path: PathBuf, message: String },
}

impl RunError {
    /// 2 for bad input, 3 for a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Label(_) | RunError::Usage(_) | RunError::Io { .. } | RunError::Table { .. } => 2,
            RunError::Spencer(SpencerError::Undefined(..) | SpencerError::NotComputed(_)) => 2,
            RunError::Grading(GradingError::Parameters(_)) => 2,
            _ => 3,
        }
    }
}

/// The spec used to check `label` against `tables`: the registry entry widened
/// to every order and tower depth the expectations mention.
pub fn plan(label: &str, tables: &[Table]) -> CaseSpec {
    let exps = expect::for_case(tables, label);
    let ks: Vec<i32> = exps.iter().filter_map(|e| e.k).collect();
    let mut spec = lookup(label).unwrap_or_else(|| {
        let lo = ks.iter().copied().min().unwrap_or(1);
        let hi = ks.iter().copied().max().unwrap_or(1);
        CaseSpec::new(label, KRange::new(lo, hi))
    });
    for &k in &ks {
        spec.ks.lo = spec.ks.lo.min(k);
        spec.ks.hi = spec.ks.hi.max(k);
    }
    let depth = exps.iter().filter_map(|e| e.tower.as_ref()).map(|t| t.len().saturating_sub(2)).max();
    if let Some(d) = depth {
        spec.kmax = Some(spec.kmax.unwrap_or(0).max(d).max(spec.ks.hi as usize));
    }
    spec
}

/// Runs `label` and attaches the verification outcomes.
pub fn verify_case(label: &str, tables: &[Table], kmax: Option<usize>) -> Result<RunReport, RunError> {
    let spec = plan(label, tables);
    let (mut report, computed) = run::run_computed(&spec, kmax)?;
    report.verification = verify(&report, &computed.pair, &expect::for_case(tables, label));
    Ok(report)
}

/// Labels with at least one expectation, in first-mention order.
pub fn expected_cases(tables: &[Table]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for e in tables.iter().flat_map(|t| &t.expectations) {
        if !out.contains(&e.case) {
            out.push(e.case.clone());
        }
    }
    out
}
