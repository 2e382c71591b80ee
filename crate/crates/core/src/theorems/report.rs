use serde::Serialize;

use super::{CheckKind, CheckSpec, RunConfig, SampleRecord, MAX_REPORTED_FAILURES};
use crate::ensemble::mix_seed;
use crate::error::{Error, Result};

/// Locates one sample: rerunning `run_sample` with `(n, sample)` under the same
/// master seed reproduces it exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleRef {
    pub seed: u64,
    pub n: usize,
    pub sample: usize,
}

impl SampleRef {
    pub(crate) fn new(master: u64, id: &str, n: usize, sample: usize) -> Self {
        Self {
            seed: mix_seed(master, id, n, sample),
            n,
            sample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    #[serde(flatten)]
    pub at: SampleRef,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub kind: CheckKind,
    pub required: bool,
    pub statement: String,
    pub samples_run: usize,
    /// Smallest `λ_min(Y − X) / scale` over all recorded comparisons.
    pub worst_margin: Option<f64>,
    /// Largest relative residual over all recorded equalities.
    pub worst_residual: Option<f64>,
    /// Sample attaining the worst margin, or the worst residual when no
    /// comparison was recorded.
    pub worst_sample: Option<SampleRef>,
    /// Scalar of interest, such as a counterexample value.
    pub value: Option<f64>,
    pub passed: bool,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

impl CheckReport {
    pub(crate) fn empty(spec: &CheckSpec) -> Self {
        Self {
            id: spec.id.to_string(),
            kind: spec.kind,
            required: spec.required,
            statement: spec.statement.to_string(),
            samples_run: 0,
            worst_margin: None,
            worst_residual: None,
            worst_sample: None,
            value: None,
            passed: false,
            failure_count: 0,
            failures: Vec::new(),
            wall_time: None,
        }
    }

    pub(crate) fn absorb(&mut self, at: SampleRef, rec: SampleRecord) {
        self.samples_run += 1;
        if let Some(m) = rec.worst_margin {
            if self.worst_margin.is_none_or(|w| m < w) {
                self.worst_margin = Some(m);
                self.worst_sample = Some(at);
            }
        }
        if let Some(r) = rec.worst_residual {
            if self.worst_residual.is_none_or(|w| r > w) {
                self.worst_residual = Some(r);
                if self.worst_margin.is_none() {
                    self.worst_sample = Some(at);
                }
            }
        }
        if rec.value.is_some() {
            self.value = rec.value;
        }
        self.failure_count += rec.failures.len();
        let room = MAX_REPORTED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(
            rec.failures
                .into_iter()
                .take(room)
                .map(|detail| Failure { at, detail }),
        );
    }

    pub(crate) fn finish(&mut self) {
        self.passed = self.samples_run > 0 && self.failure_count == 0;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub checks_run: usize,
    pub passed: usize,
    pub failed: usize,
    pub required_failed: Vec<String>,
    pub exploratory_failed: Vec<String>,
    pub all_required_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub config: RunConfig,
    pub checks: Vec<CheckReport>,
    pub summary: CampaignSummary,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    kind: CheckKind,
    required: bool,
    samples_run: usize,
    worst_margin: Option<f64>,
    worst_residual: Option<f64>,
    value: Option<f64>,
    passed: bool,
    failure_count: usize,
    wall_time: Option<f64>,
}

impl CampaignReport {
    pub fn new(config: RunConfig, checks: Vec<CheckReport>) -> Self {
        let failed_ids = |required: bool| {
            checks
                .iter()
                .filter(|c| !c.passed && c.required == required)
                .map(|c| c.id.clone())
                .collect::<Vec<_>>()
        };
        let required_failed = failed_ids(true);
        let exploratory_failed = failed_ids(false);
        let passed = checks.iter().filter(|c| c.passed).count();
        let summary = CampaignSummary {
            checks_run: checks.len(),
            passed,
            failed: checks.len() - passed,
            all_required_passed: required_failed.is_empty(),
            required_failed,
            exploratory_failed,
        };
        Self {
            config,
            checks,
            summary,
        }
    }

    pub fn check(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// One row per check.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.checks {
            w.serialize(CsvRow {
                id: &c.id,
                kind: c.kind,
                required: c.required,
                samples_run: c.samples_run,
                worst_margin: c.worst_margin,
                worst_residual: c.worst_residual,
                value: c.value,
                passed: c.passed,
                failure_count: c.failure_count,
                wall_time: c.wall_time,
            })
            .map_err(|e| Error::Config(format!("csv: {e}")))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Config(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv: {e}")))
    }
}
