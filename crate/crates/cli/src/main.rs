use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use superspencer::emit::{self, Format};
use superspencer::expect::{default_tables_dir, for_case, load_tables};
use superspencer::run::build;
use superspencer::{expected_cases, lookup, registry, run_case, verify_case, CaseSpec, KRange, RunError, RunReport};
use superspencer_core::spencer::spencer_differential;

/// Exact Cartan prolongations and Spencer cohomology of graded Lie superalgebras.
#[derive(Parser)]
#[command(name = "superspencer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute towers, H^{k,2} and module reports.
    Run(RunArgs),
    /// Check cases against the expectation tables; exit 1 on any mismatch.
    Verify(VerifyArgs),
    /// List the registered cases.
    ListCases,
    /// Print the Spencer differential C^{k,s} -> C^{k,s+1} as sparse triplets.
    DumpMatrix(DumpArgs),
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Case label, e.g. `spe:3` or `reduced:sl-std:1:3`; repeatable.
    #[arg(long = "case", required = true)]
    cases: Vec<String>,
    /// Orders, `a..b` or `a`; defaults to the registry range, else 1..2.
    #[arg(long)]
    k: Option<KRange>,
    /// Prolong up to g_kmax.
    #[arg(long)]
    kmax: Option<usize>,
    /// Skip module reports and give dimensions only.
    #[arg(long)]
    dims_only: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Cases to check; all cases with expectations when omitted.
    #[arg(long = "case")]
    cases: Vec<String>,
    /// Directory of expectation tables.
    #[arg(long)]
    tables: Option<PathBuf>,
    #[arg(long)]
    kmax: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    case: String,
    #[arg(long)]
    k: i32,
    /// Source degree of the differential.
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn init_threads() -> Result<(), RunError> {
    if let Some(v) = std::env::var_os("SUPERSPENCER_THREADS") {
        let n: usize = v
            .to_str()
            .and_then(|s| s.parse().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| RunError::Usage(format!("SUPERSPENCER_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| RunError::Invariant(e.to_string()))?;
    }
    Ok(())
}

fn report_timing(reports: &[RunReport]) {
    for r in reports {
        eprintln!("{}: {:.3} s", r.case, r.timing.total().as_secs_f64());
    }
}

fn run(a: RunArgs) -> Result<ExitCode, RunError> {
    let specs: Vec<CaseSpec> = a
        .cases
        .iter()
        .map(|l| {
            let mut s = lookup(l).unwrap_or_else(|| CaseSpec::new(l, KRange::new(1, 2)));
            if let Some(k) = a.k {
                s.ks = k;
            }
            s.report = !a.dims_only;
            s
        })
        .collect();
    let reports = specs.par_iter().map(|s| run_case(s, a.kmax)).collect::<Result<Vec<_>, _>>()?;
    report_timing(&reports);
    emit::write_output(a.output.out.as_deref(), &emit::render(&reports, a.output.format))?;
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode, RunError> {
    let dir = a.tables.unwrap_or_else(default_tables_dir);
    let tables = load_tables(&dir)?;
    let cases = if a.cases.is_empty() { expected_cases(&tables) } else { a.cases };
    for c in &cases {
        if for_case(&tables, c).is_empty() {
            return Err(RunError::Usage(format!("no expectations for `{c}` in {}", dir.display())));
        }
    }
    let reports = cases.par_iter().map(|c| verify_case(c, &tables, a.kmax)).collect::<Result<Vec<_>, _>>()?;
    report_timing(&reports);
    for r in &reports {
        for o in &r.verification {
            let k = o.k.map_or(String::new(), |k| format!(" k={k}"));
            eprintln!("{} {}{k} [{}]", if o.passed { "pass" } else { "DIFF" }, o.case, o.source);
        }
    }
    emit::write_output(a.output.out.as_deref(), &emit::render(&reports, a.output.format))?;
    Ok(if reports.iter().all(RunReport::passed) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn list_cases() -> Result<ExitCode, RunError> {
    let tables = load_tables(&default_tables_dir())?;
    let mut out = String::new();
    for s in registry() {
        let n = for_case(&tables, &s.label).len();
        out.push_str(&format!("{:<22} k={:<5} expectations={n}\n", s.label, s.ks.to_string()));
    }
    emit::write_output(None, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn dump_matrix(a: DumpArgs) -> Result<ExitCode, RunError> {
    let spec = CaseSpec::new(&a.case, KRange::new(a.k.max(1), a.k.max(1)));
    let c = build(&spec, a.kmax)?;
    let d = spencer_differential(&c.tower, a.k, a.s)?;
    emit::write_output(a.out.as_deref(), &emit::matrix_triplets(&d))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = init_threads().and_then(|()| match cli.command {
        Command::Run(a) => run(a),
        Command::Verify(a) => verify(a),
        Command::ListCases => list_cases(),
        Command::DumpMatrix(a) => dump_matrix(a),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
