//! Randomized verification registry for the mean inequalities and identities.
//!
//! Every check draws samples that respect its declared hypothesis, evaluates
//! both sides and records Loewner margins or equality residuals. Sample `j` of
//! check `id` at size `n` is seeded by `mix_seed(master, id, n, j)`, so results
//! never depend on execution order.

mod catalog;
mod ctx;
mod report;

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::mix_seed;
use crate::error::{Error, Result};
use crate::linalg::ToleranceConfig;
use crate::means::{geometric_mean, MuParam};
use crate::CMatrix;

pub use ctx::{
    SampleCtx, SampleRecord, ALPHA_GRID, BOUNDS_GRID, CONCAVITY_T, HOMOGENEITY_FACTORS,
    LAMBDA_GRID, MU_ALL, MU_NONNEG, MU_NONNEG_INF, MU_POSITIVE, SECTORIAL_RE_BOUNDS,
};
pub use report::{CampaignReport, CampaignSummary, CheckReport, Failure, SampleRef};

/// Signature of the geometric mean the checks evaluate.
pub type GmFn = fn(&CMatrix, &CMatrix, f64) -> Result<CMatrix>;

/// Failures kept per report; the total count is reported separately.
pub const MAX_REPORTED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Equality,
    Inequality,
    /// Passes when the claimed relation is shown to fail.
    Counterexample,
    Limit,
}

/// Which inputs a check may draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Positive definite tuples only.
    Pd,
    /// Accretive tuples; positive definite draws are allowed as a special case.
    Sectorial,
    /// A fixed input, no random draws.
    Fixed,
}

/// Admissible shift values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuDomain {
    Unused,
    Positive,
    NonNegative,
    All,
}

impl MuDomain {
    pub fn admits(self, mu: MuParam<f64>) -> bool {
        match (self, mu) {
            (Self::Unused, _) => false,
            (Self::All, _) => true,
            (_, MuParam::MinusInf) => false,
            (_, MuParam::PlusInf) => true,
            (Self::NonNegative, MuParam::Finite(m)) => m >= 0.0,
            (Self::Positive, MuParam::Finite(m)) => m > 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Hypothesis {
    pub family: Family,
    /// The statement assumes `hI ≤ A_i ≤ kI`; samples use the bounds grid.
    pub bounded: bool,
    pub mu: MuDomain,
    pub mu_grid: &'static [MuParam<f64>],
}

impl Hypothesis {
    pub const fn pd() -> Self {
        Self {
            family: Family::Pd,
            bounded: false,
            mu: MuDomain::Unused,
            mu_grid: &[],
        }
    }

    pub const fn sectorial() -> Self {
        Self {
            family: Family::Sectorial,
            ..Self::pd()
        }
    }

    pub const fn fixed() -> Self {
        Self {
            family: Family::Fixed,
            ..Self::pd()
        }
    }

    pub const fn bounded(self) -> Self {
        Self {
            bounded: true,
            ..self
        }
    }

    pub const fn mu(self, domain: MuDomain, grid: &'static [MuParam<f64>]) -> Self {
        Self {
            mu: domain,
            mu_grid: grid,
            ..self
        }
    }
}

pub struct CheckSpec {
    pub id: &'static str,
    /// The relation being checked, in plain math notation.
    pub statement: &'static str,
    pub kind: CheckKind,
    pub hypothesis: Hypothesis,
    /// Exploratory checks are reported but never gate a campaign.
    pub required: bool,
    pub(crate) run: fn(&mut SampleCtx) -> Result<()>,
}

impl CheckSpec {
    pub(crate) const fn new(
        id: &'static str,
        kind: CheckKind,
        hypothesis: Hypothesis,
        statement: &'static str,
        run: fn(&mut SampleCtx) -> Result<()>,
    ) -> Self {
        Self {
            id,
            statement,
            kind,
            hypothesis,
            required: true,
            run,
        }
    }

    pub(crate) const fn exploratory(self) -> Self {
        Self {
            required: false,
            ..self
        }
    }

    pub fn info(&self) -> CheckInfo {
        CheckInfo {
            id: self.id,
            kind: self.kind,
            required: self.required,
            family: self.hypothesis.family,
            bounded: self.hypothesis.bounded,
            mu_domain: self.hypothesis.mu,
            mu_grid: self
                .hypothesis
                .mu_grid
                .iter()
                .map(|m| m.to_string())
                .collect(),
            statement: self.statement,
        }
    }
}

/// Serializable view of a catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct CheckInfo {
    pub id: &'static str,
    pub kind: CheckKind,
    pub required: bool,
    pub family: Family,
    pub bounded: bool,
    pub mu_domain: MuDomain,
    pub mu_grid: Vec<String>,
    pub statement: &'static str,
}

/// The full catalog in stable order.
pub fn list_checks() -> &'static [CheckSpec] {
    static CATALOG: OnceLock<Vec<CheckSpec>> = OnceLock::new();
    CATALOG.get_or_init(catalog::all)
}

pub fn find_check(id: &str) -> Result<&'static CheckSpec> {
    list_checks()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

fn default_dims() -> Vec<usize> {
    vec![1, 2, 3, 5, 8]
}
fn default_samples() -> usize {
    200
}
fn default_seed() -> u64 {
    0x5EC7_0A1A
}
fn default_eq_tol() -> f64 {
    1e-8
}
fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_dims")]
    pub dims: Vec<usize>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_seed")]
    pub master_seed: u64,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default = "default_eq_tol")]
    pub eq_tol: f64,
    /// Restrict to these ids; `None` runs every required check.
    #[serde(default)]
    pub checks: Option<Vec<String>>,
    /// Also run exploratory checks when no id filter is given.
    #[serde(default = "default_true")]
    pub include_exploratory: bool,
    /// Record per-check wall time; off by default so reports stay byte-stable.
    #[serde(default)]
    pub timings: bool,
    /// Spread samples over threads. Results are identical either way.
    #[serde(default, skip_serializing)]
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dims: default_dims(),
            samples: default_samples(),
            master_seed: default_seed(),
            tolerances: ToleranceConfig::default(),
            eq_tol: default_eq_tol(),
            checks: None,
            include_exploratory: true,
            timings: false,
            parallel: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::Config(
                "dims must be a nonempty list of sizes >= 1".into(),
            ));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if !(self.eq_tol > 0.0 && self.eq_tol < 1.0) {
            return Err(Error::InvalidTolerance(format!("eq_tol = {}", self.eq_tol)));
        }
        Ok(())
    }

    /// The checks this configuration selects, in catalog order for the default
    /// selection and in the given order for an explicit filter.
    pub fn selected(&self) -> Result<Vec<&'static CheckSpec>> {
        match &self.checks {
            Some(ids) => ids.iter().map(|id| find_check(id)).collect(),
            None => Ok(list_checks()
                .iter()
                .filter(|c| c.required || self.include_exploratory)
                .collect()),
        }
    }
}

/// Runs a single sample of a check; the building block for reproducing a failure.
pub fn run_sample(spec: &CheckSpec, config: &RunConfig, n: usize, j: usize) -> SampleRecord {
    run_sample_with(spec, config, n, j, geometric_mean)
}

fn run_sample_with(
    spec: &CheckSpec,
    config: &RunConfig,
    n: usize,
    j: usize,
    gm: GmFn,
) -> SampleRecord {
    let seed = mix_seed(config.master_seed, spec.id, n, j);
    let mut ctx = SampleCtx::new(
        n,
        j,
        seed,
        &config.tolerances,
        config.eq_tol,
        &spec.hypothesis,
        gm,
    );
    if let Err(e) = (spec.run)(&mut ctx) {
        ctx.record.failures.push(format!("error: {e}"));
    }
    ctx.record
}

pub fn run_check(id: &str, config: &RunConfig) -> Result<CheckReport> {
    config.validate()?;
    Ok(execute(find_check(id)?, config, geometric_mean))
}

pub(crate) fn execute(spec: &CheckSpec, config: &RunConfig, gm: GmFn) -> CheckReport {
    let start = Instant::now();
    let per_dim = if spec.hypothesis.family == Family::Fixed {
        1
    } else {
        config.samples
    };
    let jobs: Vec<(usize, usize)> = config
        .dims
        .iter()
        .flat_map(|&n| (0..per_dim).map(move |j| (n, j)))
        .collect();
    let run = |&(n, j): &(usize, usize)| (n, j, run_sample_with(spec, config, n, j, gm));
    let records: Vec<_> = if config.parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    };
    let mut report = CheckReport::empty(spec);
    for (n, j, rec) in records {
        report.absorb(SampleRef::new(config.master_seed, spec.id, n, j), rec);
    }
    report.finish();
    if config.timings {
        report.wall_time = Some(start.elapsed().as_secs_f64());
    }
    report
}

pub fn run_all(config: &RunConfig) -> Result<CampaignReport> {
    config.validate()?;
    let checks = config
        .selected()?
        .into_iter()
        .map(|spec| execute(spec, config, geometric_mean))
        .collect();
    Ok(CampaignReport::new(config.clone(), checks))
}
