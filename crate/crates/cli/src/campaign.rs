use std::path::PathBuf;

use sectorial_means::theorems::RunConfig;
use sectorial_means::ToleranceConfig;
use serde::{Deserialize, Serialize};

use crate::args::{ReportFormat, VerifyArgs};
use crate::CliError;

pub const SEED_ENV: &str = "SECTORIAL_MEANS_SEED";

/// Campaign settings as read from `--config`; every field is optional.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub dims: Option<Vec<usize>>,
    pub samples: Option<usize>,
    pub master_seed: Option<u64>,
    pub tolerances: Option<ToleranceConfig>,
    pub eq_tol: Option<f64>,
    pub checks: Option<Vec<String>>,
    pub include_exploratory: Option<bool>,
    pub report_path: Option<PathBuf>,
    pub format: Option<ReportFormat>,
}

pub struct Campaign {
    pub run: RunConfig,
    pub report_path: PathBuf,
    pub format: ReportFormat,
}

pub fn seed_from_env() -> Result<Option<u64>, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| {
                CliError::Input(format!("{SEED_ENV}={v:?} is not an unsigned integer"))
            })
        }
        Err(_) => Ok(None),
    }
}

impl Campaign {
    /// Config file values, then command-line overrides, then validation.
    pub fn resolve(args: &VerifyArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<CampaignConfig>(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
            }
            None => CampaignConfig::default(),
        };
        let mut run = RunConfig::default();
        if let Some(d) = args.dims.clone().or(file.dims) {
            run.dims = d;
        }
        if let Some(s) = args.samples.or(file.samples) {
            run.samples = s;
        }
        if let Some(seed) = args.seed.or(file.master_seed).or(seed_from_env()?) {
            run.master_seed = seed;
        }
        if let Some(t) = file.tolerances {
            run.tolerances = t;
        }
        if let Some(t) = file.eq_tol {
            run.eq_tol = t;
        }
        run.checks = args.checks.clone().or(file.checks);
        if let Some(x) = file.include_exploratory {
            run.include_exploratory = x;
        }
        if args.required_only {
            run.include_exploratory = false;
        }
        run.timings = args.timings;
        run.parallel = args.parallel;
        run.validate().map_err(|e| CliError::Input(e.to_string()))?;

        let format = args.format.or(file.format).unwrap_or(ReportFormat::Json);
        let report_path = args.report.clone().or(file.report_path).unwrap_or_else(|| {
            PathBuf::from(match format {
                ReportFormat::Json => "sectorial-means-report.json",
                ReportFormat::Csv => "sectorial-means-report.csv",
            })
        });
        Ok(Self {
            run,
            report_path,
            format,
        })
    }
}
