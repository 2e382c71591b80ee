use std::f64::consts::PI;

use crate::ensemble::{rand_pd, rand_sectorial, rand_unitary, rand_weights, SampleRng};
use crate::error::{Error, Result};
use crate::linalg::{loewner_cmp, relative_residual, SectorialCert, ToleranceConfig};
use crate::maps::{random_pulm, random_square_pulm, Pulm, PulmKind};
use crate::means::{MuParam, WeightVector};
use crate::CMatrix;

use super::{Family, GmFn, Hypothesis};

pub(crate) type M = CMatrix;

pub const LAMBDA_GRID: [f64; 3] = [0.1, 0.5, 0.9];
pub const ALPHA_GRID: [f64; 3] = [PI / 12.0, PI / 6.0, PI / 3.0];
pub const BOUNDS_GRID: [(f64, f64); 3] = [(1.0, 4.0), (0.5, 2.0), (1.0, 10.0)];
/// Real parts of the sectorial ensemble are drawn with spectrum in this range.
pub const SECTORIAL_RE_BOUNDS: (f64, f64) = (0.5, 2.0);
pub const MU_NONNEG: [MuParam<f64>; 4] = [
    MuParam::Finite(0.0),
    MuParam::Finite(0.1),
    MuParam::Finite(1.0),
    MuParam::Finite(10.0),
];
pub const MU_POSITIVE: [MuParam<f64>; 3] = [
    MuParam::Finite(0.1),
    MuParam::Finite(1.0),
    MuParam::Finite(10.0),
];
pub const MU_NONNEG_INF: [MuParam<f64>; 5] = [
    MuParam::Finite(0.0),
    MuParam::Finite(0.1),
    MuParam::Finite(1.0),
    MuParam::Finite(10.0),
    MuParam::PlusInf,
];
pub const MU_ALL: [MuParam<f64>; 9] = [
    MuParam::MinusInf,
    MuParam::Finite(-10.0),
    MuParam::Finite(-1.0),
    MuParam::Finite(-0.1),
    MuParam::Finite(0.0),
    MuParam::Finite(0.1),
    MuParam::Finite(1.0),
    MuParam::Finite(10.0),
    MuParam::PlusInf,
];
pub const HOMOGENEITY_FACTORS: [f64; 2] = [0.3, 2.7];
pub const CONCAVITY_T: [f64; 3] = [0.25, 0.5, 0.75];

/// Per-sample outcome.
#[derive(Debug, Clone, Default)]
pub struct SampleRecord {
    pub worst_margin: Option<f64>,
    pub worst_residual: Option<f64>,
    pub value: Option<f64>,
    pub failures: Vec<String>,
}

impl SampleRecord {
    fn margin(&mut self, m: f64) {
        self.worst_margin = Some(self.worst_margin.map_or(m, |w| w.min(m)));
    }

    fn residual(&mut self, r: f64) {
        self.worst_residual = Some(self.worst_residual.map_or(r, |w| w.max(r)));
    }
}

/// Everything a check needs to draw and judge one sample.
pub struct SampleCtx<'a> {
    pub n: usize,
    pub index: usize,
    pub seed: u64,
    pub rng: SampleRng,
    pub tol: &'a ToleranceConfig,
    pub eq_tol: f64,
    hypothesis: &'a Hypothesis,
    pub(crate) gm: GmFn,
    radix: usize,
    bounds: Option<(f64, f64)>,
    alpha: Option<f64>,
    pub(crate) record: SampleRecord,
}

impl<'a> SampleCtx<'a> {
    pub(crate) fn new(
        n: usize,
        index: usize,
        seed: u64,
        tol: &'a ToleranceConfig,
        eq_tol: f64,
        hypothesis: &'a Hypothesis,
        gm: GmFn,
    ) -> Self {
        Self {
            n,
            index,
            seed,
            rng: crate::ensemble::sample_rng(seed),
            tol,
            eq_tol,
            hypothesis,
            gm,
            radix: 1,
            bounds: None,
            alpha: None,
            record: SampleRecord::default(),
        }
    }

    /// Deterministic walk over grids: successive calls enumerate the product of
    /// the grids as the sample index grows (mixed-radix counter).
    pub fn pick<T: Copy>(&mut self, grid: &[T]) -> T {
        let v = grid[(self.index / self.radix) % grid.len()];
        self.radix = self.radix.saturating_mul(grid.len());
        v
    }

    pub fn lambda(&mut self) -> f64 {
        self.pick(&LAMBDA_GRID)
    }

    /// Next `μ` from the check's declared grid.
    pub fn mu(&mut self) -> Result<MuParam<f64>> {
        let grid = self.hypothesis.mu_grid;
        if grid.is_empty() {
            return Err(Error::Config("check declared no mu grid".into()));
        }
        let mu = self.pick(grid);
        if self.hypothesis.mu.admits(mu) {
            Ok(mu)
        } else {
            Err(Error::Config(format!(
                "mu = {mu} violates the declared domain {:?}",
                self.hypothesis.mu
            )))
        }
    }

    /// Next finite `μ` from the declared grid.
    pub fn mu_finite(&mut self) -> Result<f64> {
        match self.mu()? {
            MuParam::Finite(m) => Ok(m),
            other => Err(Error::Config(format!("expected a finite mu, got {other}"))),
        }
    }

    /// Geometric mean used by the checks; swappable for mutation tests.
    pub fn gm(&self, a: &M, b: &M, lambda: f64) -> Result<M> {
        (self.gm)(a, b, lambda)
    }

    /// Tuple length in `2..=4`.
    pub fn tuple_len(&mut self) -> usize {
        use rand::Rng;
        self.rng.random_range(2..=4)
    }

    pub fn weights(&mut self, m: usize) -> WeightVector<f64> {
        rand_weights(m, &mut self.rng)
    }

    /// Spectral bounds `(h, k)` for this sample, fixed on first use.
    pub fn bounds(&mut self) -> (f64, f64) {
        if let Some(b) = self.bounds {
            return b;
        }
        let b = self.pick(&BOUNDS_GRID);
        self.bounds = Some(b);
        b
    }

    /// Sector angle for this sample, fixed on first use.
    pub fn alpha(&mut self) -> Result<f64> {
        self.require(Family::Sectorial, "a sectorial angle")?;
        if let Some(a) = self.alpha {
            return Ok(a);
        }
        let a = self.pick(&ALPHA_GRID);
        self.alpha = Some(a);
        Ok(a)
    }

    fn require(&self, family: Family, what: &str) -> Result<()> {
        let allowed = match (self.hypothesis.family, family) {
            (Family::Fixed, _) => false,
            (Family::Sectorial, _) => true,
            (Family::Pd, Family::Pd) => true,
            (Family::Pd, _) => false,
        };
        if allowed {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "check with {:?} hypothesis requested {what}",
                self.hypothesis.family
            )))
        }
    }

    /// PD matrix within this sample's bounds, both attained for `n ≥ 2`.
    pub fn pd(&mut self) -> Result<M> {
        self.require(Family::Pd, "a PD draw")?;
        let (h, k) = self.bounds();
        rand_pd(self.n, h, k, &mut self.rng)
    }

    pub fn pd_tuple(&mut self, m: usize) -> Result<Vec<M>> {
        (0..m).map(|_| self.pd()).collect()
    }

    /// `A + P` with `P` positive definite of norm at most `scale`.
    pub fn pd_above(&mut self, a: &M, scale: f64) -> Result<M> {
        self.require(Family::Pd, "a PD draw")?;
        let p: M = rand_pd(self.n, 1e-3, 1.0, &mut self.rng)?;
        Ok(a + &p.scale(scale))
    }

    pub fn sectorial(&mut self) -> Result<SectorialCert<f64>> {
        let alpha = self.alpha()?;
        rand_sectorial(self.n, alpha, &mut self.rng)
    }

    pub fn sectorial_tuple(&mut self, m: usize) -> Result<Vec<M>> {
        (0..m).map(|_| self.sectorial().map(|c| c.matrix)).collect()
    }

    /// Accretive draw: PD on even samples, sectorial on odd ones.
    pub fn accretive_tuple(&mut self, m: usize) -> Result<Vec<M>> {
        self.require(Family::Sectorial, "an accretive draw")?;
        if self.index.is_multiple_of(2) {
            let (h, k) = SECTORIAL_RE_BOUNDS;
            (0..m)
                .map(|_| rand_pd(self.n, h, k, &mut self.rng))
                .collect()
        } else {
            self.sectorial_tuple(m)
        }
    }

    pub fn unitary(&mut self) -> M {
        rand_unitary(self.n, &mut self.rng)
    }

    /// Positive unital map on `M_n`, possibly compressing to a smaller size.
    pub fn pulm(&mut self) -> Result<Pulm<f64>> {
        let kind = self.pick(&PulmKind::ALL);
        random_pulm(self.n, kind, &mut self.rng)
    }

    /// Positive unital map `M_n → M_n`.
    pub fn square_pulm(&mut self) -> Result<Pulm<f64>> {
        let kind = self.pick(&PulmKind::ALL);
        random_square_pulm(self.n, kind, &mut self.rng)
    }

    // ── Judgements ────────────────────────────────────────────────────────

    /// Records `x ≤ y` in the Loewner order.
    pub fn leq(&mut self, label: &str, x: &M, y: &M) -> Result<()> {
        let v = loewner_cmp(x, y, self.tol)?;
        let rel = v.relative_margin();
        self.record.margin(rel);
        if !v.leq {
            self.record.failures.push(format!(
                "{label}: relative margin {rel:.3e}, skew {:.3e}",
                v.skew_norm / v.scale
            ));
        }
        Ok(())
    }

    /// Records that `x ≤ y` fails; the counterexample side of `leq`.
    pub fn violates(&mut self, label: &str, x: &M, y: &M) -> Result<()> {
        let v = loewner_cmp(x, y, self.tol)?;
        let rel = v.relative_margin();
        self.record.margin(rel);
        if v.leq {
            self.record.failures.push(format!(
                "{label}: expected a violation but the order holds (relative margin {rel:.3e})"
            ));
        }
        Ok(())
    }

    /// Records `x = y` up to the relative equality tolerance.
    pub fn eq(&mut self, label: &str, x: &M, y: &M) -> Result<()> {
        let r = relative_residual(x, y);
        self.residual(label, r);
        Ok(())
    }

    pub fn residual(&mut self, label: &str, r: f64) {
        self.record.residual(r);
        if !(r <= self.eq_tol) {
            self.record
                .failures
                .push(format!("{label}: residual {r:.3e} > {:.1e}", self.eq_tol));
        }
    }

    pub fn holds(&mut self, label: &str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.record.failures.push(format!("{label}: {}", detail()));
        }
    }

    /// Records a scalar of interest, such as a counterexample value.
    pub fn value(&mut self, v: f64) {
        self.record.value = Some(v);
    }
}
