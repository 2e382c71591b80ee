//! Positive unital linear maps `M_n → M_k`.

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ensemble::{rand_isometry, rand_unitary, rand_weights, Isometry};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::means::WeightVector;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulmKind {
    UnitaryAverage,
    Pinching,
    IsometryCompression,
    TraceMap,
}

impl PulmKind {
    pub const ALL: [PulmKind; 4] = [
        PulmKind::UnitaryAverage,
        PulmKind::Pinching,
        PulmKind::IsometryCompression,
        PulmKind::TraceMap,
    ];
}

#[derive(Debug, Clone)]
pub enum Pulm<T: Real> {
    /// `Σ p_j U_j* A U_j`.
    UnitaryAverage {
        weights: WeightVector<T>,
        unitaries: Vec<Matrix<T>>,
    },
    /// Block-diagonal part for the given block sizes.
    Pinching { blocks: Vec<usize> },
    /// `X* A X`.
    IsometryCompression { isometry: Isometry<T> },
    /// `(tr A / n)·I`.
    TraceMap { n: usize },
}

impl<T: Real> Pulm<T> {
    pub fn unitary_average(weights: WeightVector<T>, unitaries: Vec<Matrix<T>>) -> Result<Self> {
        let first = unitaries
            .first()
            .ok_or_else(|| Error::InvalidMap("no unitaries given".into()))?;
        if weights.len() != unitaries.len() {
            return Err(Error::InvalidMap(format!(
                "{} weights for {} unitaries",
                weights.len(),
                unitaries.len()
            )));
        }
        let n = first.dim();
        let tol = T::lit(1e3) * T::epsilon() * T::from_usize(n.max(1)).unwrap_or_else(T::one);
        for u in &unitaries {
            first.ensure_same_dim(u)?;
            if (&(&u.adjoint() * u) - &Matrix::identity(n)).norm_fro() > tol {
                return Err(Error::InvalidMap("matrix is not unitary".into()));
            }
        }
        Ok(Self::UnitaryAverage { weights, unitaries })
    }

    pub fn pinching(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidMap("pinching blocks must be positive".into()));
        }
        Ok(Self::Pinching { blocks })
    }

    pub fn compression(isometry: Isometry<T>) -> Self {
        Self::IsometryCompression { isometry }
    }

    pub fn trace_map(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMap("trace map needs n >= 1".into()));
        }
        Ok(Self::TraceMap { n })
    }

    pub fn kind(&self) -> PulmKind {
        match self {
            Self::UnitaryAverage { .. } => PulmKind::UnitaryAverage,
            Self::Pinching { .. } => PulmKind::Pinching,
            Self::IsometryCompression { .. } => PulmKind::IsometryCompression,
            Self::TraceMap { .. } => PulmKind::TraceMap,
        }
    }

    pub fn input_dim(&self) -> usize {
        match self {
            Self::UnitaryAverage { unitaries, .. } => unitaries[0].dim(),
            Self::Pinching { blocks } => blocks.iter().sum(),
            Self::IsometryCompression { isometry } => isometry.input_dim(),
            Self::TraceMap { n } => *n,
        }
    }

    pub fn output_dim(&self) -> usize {
        match self {
            Self::IsometryCompression { isometry } => isometry.output_dim(),
            _ => self.input_dim(),
        }
    }

    pub fn apply(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        if a.dim() != self.input_dim() {
            return Err(Error::DimensionMismatch(format!(
                "map expects {0}x{0} input, got {1}x{1}",
                self.input_dim(),
                a.dim()
            )));
        }
        let n = a.dim();
        Ok(match self {
            Self::UnitaryAverage { weights, unitaries } => {
                let mut acc = Matrix::zeros(n);
                for (p, u) in weights.iter().zip(unitaries) {
                    acc += &(&(&u.adjoint() * a) * u).scale(p);
                }
                acc
            }
            Self::Pinching { blocks } => {
                let owner: Vec<usize> = blocks
                    .iter()
                    .enumerate()
                    .flat_map(|(b, &size)| std::iter::repeat_n(b, size))
                    .collect();
                Matrix::from_fn(n, |i, j| {
                    if owner[i] == owner[j] {
                        a[(i, j)]
                    } else {
                        Complex::new(T::zero(), T::zero())
                    }
                })
            }
            Self::IsometryCompression { isometry } => isometry.compress(a),
            Self::TraceMap { n } => {
                let t = a.trace() / T::from_usize(*n).unwrap_or_else(T::one);
                Matrix::scalar(*n, t)
            }
        })
    }

    /// Applies the map to each matrix of a tuple.
    pub fn apply_all(&self, tuple: &[Matrix<T>]) -> Result<Vec<Matrix<T>>> {
        tuple.iter().map(|a| self.apply(a)).collect()
    }
}

/// Random map of the given kind on `M_n`. Compressions draw their output
/// dimension uniformly from `1..=n`.
pub fn random_pulm<T: Real>(n: usize, kind: PulmKind, rng: &mut impl Rng) -> Result<Pulm<T>> {
    let k = if kind == PulmKind::IsometryCompression && n > 0 {
        rng.random_range(1..=n)
    } else {
        n
    };
    random_pulm_with_output(n, k, kind, rng)
}

/// Random map of the given kind on `M_n` that keeps the dimension.
pub fn random_square_pulm<T: Real>(
    n: usize,
    kind: PulmKind,
    rng: &mut impl Rng,
) -> Result<Pulm<T>> {
    random_pulm_with_output(n, n, kind, rng)
}

fn random_pulm_with_output<T: Real>(
    n: usize,
    k: usize,
    kind: PulmKind,
    rng: &mut impl Rng,
) -> Result<Pulm<T>> {
    if n == 0 {
        return Err(Error::InvalidMap("maps need n >= 1".into()));
    }
    match kind {
        PulmKind::UnitaryAverage => {
            let count = rng.random_range(2..=4);
            let weights = rand_weights(count, rng);
            let unitaries = (0..count).map(|_| rand_unitary(n, rng)).collect();
            Pulm::unitary_average(weights, unitaries)
        }
        PulmKind::Pinching => {
            let mut blocks = Vec::new();
            let mut left = n;
            while left > 0 {
                let b = rng.random_range(1..=left);
                blocks.push(b);
                left -= b;
            }
            Pulm::pinching(blocks)
        }
        PulmKind::IsometryCompression => Ok(Pulm::compression(rand_isometry(n, k, rng)?)),
        PulmKind::TraceMap => Pulm::trace_map(n),
    }
}
