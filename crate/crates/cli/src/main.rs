use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use posaudit_core::audit::{
    character_table_report, scan_report, verify_report, AuditError, AuditReport, GroupSource, TableMethod,
    VerifyOptions,
};
use posaudit_core::group::DEFAULT_MAX_ORDER;

/// Audit Frobenius-Schur indicators and fusion positivity for small finite groups.
#[derive(Parser)]
#[command(name = "posaudit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the claims pipeline for F2^4 x| Q8.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Run the pipeline once for every valid choice of lambda.
        #[arg(long)]
        all_lambdas: bool,
    },
    /// Scan the fusion rules of a group for conjecture violations.
    Scan {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the character table and fusion coefficients.
    Table {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// builtin:g128, builtin:q8, builtin:h16 or file:<path>
    #[arg(long, default_value = "builtin:g128", value_parser = parse_source)]
    group: GroupSource,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    table_method: Method,
    /// Refuse groups with more elements than this.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Include wall-clock timings (makes reports differ between runs).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dixon,
    Constructive,
    Both,
}

impl From<Method> for TableMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Dixon => TableMethod::Dixon,
            Method::Constructive => TableMethod::Constructive,
            Method::Both => TableMethod::Both,
        }
    }
}

fn parse_source(s: &str) -> Result<GroupSource, String> {
    s.parse().map_err(|e: AuditError| e.to_string())
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn is_input_error(e: &AuditError) -> bool {
    matches!(
        e,
        AuditError::UnknownSource(_)
            | AuditError::Io { .. }
            | AuditError::Parse { .. }
            | AuditError::TooLarge { .. }
            | AuditError::Unsupported(_)
    )
}

fn build_report(command: &Command) -> Result<(AuditReport, &CommonArgs), AuditError> {
    let common = match command {
        Command::Verify { common, .. } | Command::Scan { common } | Command::Table { common } => common,
    };
    let start = Instant::now();
    let loaded = common.group.load(common.max_order)?;
    let loaded_at = start.elapsed();
    let method = common.table_method.into();
    let mut report = match command {
        Command::Verify { all_lambdas, .. } => verify_report(
            &loaded,
            VerifyOptions {
                all_lambdas: *all_lambdas,
                method,
            },
        )?,
        Command::Scan { .. } => scan_report(&loaded, method)?,
        Command::Table { .. } => character_table_report(&loaded, method)?,
    };
    if common.timings {
        let total = start.elapsed();
        report.timings_ms = Some(BTreeMap::from([
            ("load".to_string(), loaded_at.as_millis() as u64),
            ("analysis".to_string(), (total - loaded_at).as_millis() as u64),
            ("total".to_string(), total.as_millis() as u64),
        ]));
    }
    Ok((report, common))
}

fn emit(report: &AuditReport, common: &CommonArgs) -> anyhow::Result<()> {
    let body = match common.report {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
    };
    match &common.out {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            println!(
                "wrote {}: {}",
                path.display(),
                if report.passed { "PASS" } else { "FAIL" }
            );
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, common) = match build_report(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_input_error(&e) { EXIT_USAGE } else { EXIT_FAILED });
        }
    };
    if let Err(e) = emit(&report, common) {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
