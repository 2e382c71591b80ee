mod args;
mod campaign;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use sectorial_means::ensemble::{rand_pd, rand_sectorial, rand_unitary, sample_rng};
use sectorial_means::linalg::{principal_power, sectorial_angle, MatrixParseError};
use sectorial_means::means::{
    ah_mean, arithmetic_mean, geometric_mean, harmonic_mean, resolvent_average,
};
use sectorial_means::theorems::{list_checks, run_all, CampaignReport};
use sectorial_means::{CMatrix, Error, MuParam, WeightVector};

use args::{Cli, Command, GenArgs, GenKind, MeanArgs, MeanKind, ReportFormat, VerifyArgs};
use campaign::Campaign;

const WEIGHT_SUM_SLACK: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Precondition of a mathematical operation; exit 2.
    #[error(transparent)]
    Domain(Error),
    /// Unreadable input, bad flags or bad configuration; exit 3.
    #[error("{0}")]
    Input(String),
    /// Some required check failed; exit 1.
    #[error("required checks failed: {}", .0.join(", "))]
    Verification(Vec<String>),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_)
            | Error::InvalidTolerance(_)
            | Error::UnknownCheck(_)
            | Error::NonFinite => Self::Input(e.to_string()),
            other => Self::Domain(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Verification(_) => 1,
            Self::Domain(_) => 2,
            Self::Input(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Mean(args) => cmd_mean(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Angle { input } => {
            let summary = sectorial_angle(&read_matrix(&input)?)?.summary();
            emit(&to_json(&summary))
        }
        Command::Power { input, p } => {
            if !p.is_finite() {
                return Err(CliError::Input(format!("exponent must be finite, got {p}")));
            }
            emit(&principal_power(&read_matrix(&input)?, p)?.to_json_pretty())
        }
        Command::Gen(args) => cmd_gen(&args),
        Command::List { json } => {
            if json {
                let infos: Vec<_> = list_checks().iter().map(|c| c.info()).collect();
                emit(&to_json(&infos))?;
            } else {
                for c in list_checks() {
                    let tag = if c.required {
                        "required"
                    } else {
                        "exploratory"
                    };
                    emit(&format!("{:<28} {:<12} {}", c.id, tag, c.statement))?;
                }
            }
            Ok(())
        }
    }
}

/// Writes a line to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) -> Result<(), CliError> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CliError::Input(format!("cannot write output: {e}")))
        }
        _ => Ok(()),
    }
}

fn to_json<S: serde::Serialize>(value: &S) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn read_matrix(path: &Path) -> Result<CMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    CMatrix::from_json(&text).map_err(|e| match e {
        MatrixParseError::Json(_) => CliError::Input(format!("{}: {e}", path.display())),
        MatrixParseError::Shape(inner) => match CliError::from(inner) {
            CliError::Domain(d) => CliError::Input(format!("{}: {d}", path.display())),
            other => other,
        },
    })
}

fn weights_for(args: &MeanArgs, m: usize) -> Result<WeightVector<f64>, CliError> {
    let Some(raw) = &args.weights else {
        return Ok(WeightVector::uniform(m)?);
    };
    if raw.len() != m {
        return Err(
            Error::InvalidWeights(format!("{} weights given for {m} matrices", raw.len())).into(),
        );
    }
    if raw.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::InvalidWeights("weights must be positive and finite".into()).into());
    }
    let (w, sum) = WeightVector::normalized(raw.clone())?;
    if (sum - 1.0).abs() > WEIGHT_SUM_SLACK {
        eprintln!("warning: weights sum to {sum}; normalized to 1");
    }
    Ok(w)
}

fn cmd_mean(args: &MeanArgs) -> Result<(), CliError> {
    let tuple = args
        .inputs
        .iter()
        .map(|p| read_matrix(p))
        .collect::<Result<Vec<_>, _>>()?;
    let mu = || -> Result<MuParam<f64>, CliError> {
        let text = args.mu.as_deref().ok_or_else(|| {
            CliError::Input("this mean needs --mu (a real number, inf or -inf)".into())
        })?;
        Ok(text.parse()?)
    };
    let result = match args.kind {
        MeanKind::Geom => {
            let [a, b] = tuple.as_slice() else {
                return Err(CliError::Input(format!(
                    "geom takes exactly two matrices, got {}",
                    tuple.len()
                )));
            };
            if args.weights.is_some() || args.mu.is_some() {
                return Err(CliError::Input("geom takes --lambda only".into()));
            }
            geometric_mean(a, b, args.lambda)?
        }
        MeanKind::Arith => arithmetic_mean(&tuple, &weights_for(args, tuple.len())?)?,
        MeanKind::Harm => harmonic_mean(&tuple, &weights_for(args, tuple.len())?)?,
        MeanKind::Resolvent => resolvent_average(&tuple, &weights_for(args, tuple.len())?, mu()?)?,
        MeanKind::Ah => ah_mean(&tuple, &weights_for(args, tuple.len())?, mu()?)?,
    };
    emit(&result.to_json_pretty())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let campaign = Campaign::resolve(args)?;
    let report = run_all(&campaign.run)?;
    print_summary(&report);

    let body = match campaign.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report
            .to_csv()
            .map_err(|e| CliError::Input(format!("cannot render CSV report: {e}")))?,
    };
    std::fs::write(&campaign.report_path, body)
        .map_err(|e| CliError::Input(format!("{}: {e}", campaign.report_path.display())))?;
    emit(&format!(
        "report written to {}",
        campaign.report_path.display()
    ))?;

    if !report.summary.exploratory_failed.is_empty() {
        eprintln!(
            "exploratory checks failed (not gating): {}",
            report.summary.exploratory_failed.join(", ")
        );
    }
    if report.summary.all_required_passed {
        Ok(())
    } else {
        Err(CliError::Verification(
            report.summary.required_failed.clone(),
        ))
    }
}

fn print_summary(report: &CampaignReport) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "{:<28} {:<15} {:>4} {:>7} {:>12} {:>12}  result",
        "check", "kind", "req", "samples", "margin", "residual"
    );
    for c in &report.checks {
        let num = |x: Option<f64>| x.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<28} {:<15} {:>4} {:>7} {:>12} {:>12}  {}",
            c.id,
            format!("{:?}", c.kind).to_lowercase(),
            if c.required { "yes" } else { "no" },
            c.samples_run,
            num(c.worst_margin),
            num(c.worst_residual),
            if c.passed { "pass" } else { "FAIL" },
        );
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "{} checks: {} passed, {} failed ({} required)",
        s.checks_run,
        s.passed,
        s.failed,
        s.required_failed.len()
    );
}

fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Input("matrix size must be at least 1".into()));
    }
    let seed = match args.seed {
        Some(s) => s,
        None => campaign::seed_from_env()?.unwrap_or(0),
    };
    let mut rng = sample_rng(seed);
    let m: CMatrix = match args.kind {
        GenKind::Pd => rand_pd(args.n, args.h, args.k, &mut rng)?,
        GenKind::Sectorial => rand_sectorial(args.n, args.alpha, &mut rng)?.matrix,
        GenKind::Unitary => rand_unitary(args.n, &mut rng),
    };
    emit(&m.to_json_pretty())
}
