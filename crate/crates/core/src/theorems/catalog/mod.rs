mod ah;
mod geometric;
mod positive;
mod resolvent;
mod sectorial;

use crate::error::Result;
use crate::linalg::{eig_hermitian, herm_part, inv};
use crate::means::{harmonic_mean, MuParam, WeightVector};
use crate::CMatrix;

use super::CheckSpec;

pub(super) type M = CMatrix;
pub(super) type W = WeightVector<f64>;

pub(super) const MU_ZERO: [MuParam<f64>; 1] = [MuParam::Finite(0.0)];
pub(super) const MU_ONE: [MuParam<f64>; 1] = [MuParam::Finite(1.0)];

pub(super) fn all() -> Vec<CheckSpec> {
    let mut v = geometric::checks();
    v.extend(resolvent::checks());
    v.extend(ah::checks());
    v.extend(positive::checks());
    v.extend(sectorial::checks());
    v
}

pub(super) fn re(a: &M) -> M {
    herm_part(a)
}

pub(super) fn re_all(tuple: &[M]) -> Vec<M> {
    tuple.iter().map(re).collect()
}

/// `s·μ` for `s > 0`, keeping infinities.
pub(super) fn scale_mu(mu: MuParam<f64>, s: f64) -> MuParam<f64> {
    match mu {
        MuParam::Finite(m) => MuParam::Finite(m * s),
        other => other,
    }
}

pub(super) fn neg_mu(mu: MuParam<f64>) -> MuParam<f64> {
    match mu {
        MuParam::Finite(m) => MuParam::Finite(-m),
        MuParam::PlusInf => MuParam::MinusInf,
        MuParam::MinusInf => MuParam::PlusInf,
    }
}

/// Finite part of `μ` used in shifts such as `X + μI`; zero for infinite `μ`.
pub(super) fn shift_of(mu: MuParam<f64>) -> f64 {
    match mu {
        MuParam::Finite(m) => m,
        _ => 0.0,
    }
}

pub(super) fn sec2(angle: f64) -> f64 {
    1.0 / angle.cos().powi(2)
}

/// Largest eigenvalue of any `ℜA_i`.
pub(super) fn re_upper(tuple: &[M]) -> Result<f64> {
    tuple
        .iter()
        .map(|a| eig_hermitian(&re(a)).map(|e| e.max()))
        .try_fold(f64::NEG_INFINITY, |acc, x| Ok(acc.max(x?)))
}

/// Weighted harmonic mean of a pair, `((1−λ)A^{-1} + λB^{-1})^{-1}`.
pub(super) fn harmonic_pair(a: &M, b: &M, lambda: f64) -> Result<M> {
    harmonic_mean(&[a.clone(), b.clone()], &W::pair(lambda)?)
}

pub(super) fn inv_all(tuple: &[M]) -> Result<Vec<M>> {
    tuple.iter().map(inv).collect()
}

/// `a ∇_t b = (1−t)a + tb`.
pub(super) fn scalar_arith(a: f64, b: f64, t: f64) -> f64 {
    (1.0 - t) * a + t * b
}

/// `a ♯_t b = a^{1−t} b^t`.
pub(super) fn scalar_geo(a: f64, b: f64, t: f64) -> f64 {
    a.powf(1.0 - t) * b.powf(t)
}
