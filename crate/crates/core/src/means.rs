//! Weighted means of matrix tuples.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{
    herm_part, inv, norm2, principal_power, principal_sqrt, require_accretive, Matrix,
};
use crate::scalar::Real;

// ── Parameters ────────────────────────────────────────────────────────────

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T: Real>(Vec<T>);

impl<T: Real> WeightVector<T> {
    /// Validates `w_i ∈ [0, 1]` and `|Σ w_i − 1| ≤ atol`.
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights(
                "at least one weight is required".into(),
            ));
        }
        if let Some(w) = weights
            .iter()
            .find(|w| !w.is_finite() || **w < T::zero() || **w > T::one())
        {
            return Err(Error::InvalidWeights(format!("weight {w} outside [0, 1]")));
        }
        let sum = weights.iter().fold(T::zero(), |a, &b| a + b);
        let atol = T::lit(T::default_tolerances().atol);
        if (sum - T::one()).abs() > atol {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self(weights))
    }

    /// Rescales nonnegative values to sum to one. Returns the weights and the original sum.
    pub fn normalized(raw: Vec<T>) -> Result<(Self, T)> {
        if raw.iter().any(|w| !w.is_finite() || *w < T::zero()) {
            return Err(Error::InvalidWeights(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let sum = raw.iter().fold(T::zero(), |a, &b| a + b);
        if !(sum > T::zero()) {
            return Err(Error::InvalidWeights("weights must not all vanish".into()));
        }
        let w = Self::new(raw.into_iter().map(|w| w / sum).collect())?;
        Ok((w, sum))
    }

    pub fn uniform(m: usize) -> Result<Self> {
        let w = T::one() / T::from_usize(m.max(1)).unwrap_or_else(T::one);
        Self::new(vec![w; m])
    }

    /// `(1 − λ, λ)`.
    pub fn pair(lambda: T) -> Result<Self> {
        if !(lambda >= T::zero() && lambda <= T::one()) {
            return Err(Error::InvalidLambda(lambda.as_f64()));
        }
        Self::new(vec![T::one() - lambda, lambda])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = T> + '_ {
        self.0.iter().copied()
    }
}

/// The shift parameter, with both infinities as explicit cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MuParam<T: Real> {
    Finite(T),
    PlusInf,
    MinusInf,
}

impl<T: Real> MuParam<T> {
    /// Maps `±∞` to the tagged cases; NaN is rejected.
    pub fn from_value(mu: T) -> Result<Self> {
        if mu.is_nan() {
            Err(Error::InvalidMu("NaN".into()))
        } else if mu == T::infinity() {
            Ok(Self::PlusInf)
        } else if mu == T::neg_infinity() {
            Ok(Self::MinusInf)
        } else {
            Ok(Self::Finite(mu))
        }
    }

    pub fn value(self) -> T {
        match self {
            Self::Finite(m) => m,
            Self::PlusInf => T::infinity(),
            Self::MinusInf => T::neg_infinity(),
        }
    }
}

impl<T: Real> fmt::Display for MuParam<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(m) => write!(f, "{m}"),
            Self::PlusInf => f.write_str("inf"),
            Self::MinusInf => f.write_str("-inf"),
        }
    }
}

impl<T: Real> FromStr for MuParam<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => return Ok(Self::PlusInf),
            "-inf" | "-infinity" => return Ok(Self::MinusInf),
            _ => {}
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::InvalidMu(format!("cannot parse `{s}`")))?;
        Self::from_value(T::lit(v))
    }
}

// ── Helpers ───────────────────────────────────────────────────────────────

fn check_tuple<T: Real>(tuple: &[Matrix<T>], w: &WeightVector<T>) -> Result<usize> {
    let first = tuple
        .first()
        .ok_or_else(|| Error::DimensionMismatch("empty matrix tuple".into()))?;
    if tuple.len() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices but {} weights",
            tuple.len(),
            w.len()
        )));
    }
    for a in tuple {
        first.ensure_same_dim(a)?;
        a.check_finite()?;
    }
    Ok(first.dim())
}

fn require_all_accretive<T: Real>(tuple: &[Matrix<T>]) -> Result<()> {
    for (i, a) in tuple.iter().enumerate() {
        require_accretive(a, Some(i))?;
    }
    Ok(())
}

fn is_hermitian<T: Real>(a: &Matrix<T>) -> bool {
    crate::linalg::relative_skew(a).as_f64() <= T::default_tolerances().herm_tol
}

/// Hermitian part when every input was Hermitian, raw value otherwise.
fn finish<T: Real>(x: Matrix<T>, inputs_hermitian: bool) -> Result<Matrix<T>> {
    if inputs_hermitian {
        crate::linalg::symmetrize(&x, &T::default_tolerances())
    } else {
        Ok(x)
    }
}

fn weighted_sum<T: Real>(
    n: usize,
    w: &WeightVector<T>,
    terms: impl Iterator<Item = Result<Matrix<T>>>,
) -> Result<Matrix<T>> {
    let mut acc = Matrix::zeros(n);
    for (lambda, t) in w.iter().zip(terms) {
        if lambda != T::zero() {
            acc += &t?.scale(lambda);
        }
    }
    Ok(acc)
}

/// `(A_1^{-1}, …, A_m^{-1})`.
pub fn inverse_tuple<T: Real>(tuple: &[Matrix<T>]) -> Result<Vec<Matrix<T>>> {
    tuple.iter().map(inv).collect()
}

// ── Means ─────────────────────────────────────────────────────────────────

/// `Σ λ_i A_i`.
pub fn arithmetic_mean<T: Real>(tuple: &[Matrix<T>], w: &WeightVector<T>) -> Result<Matrix<T>> {
    let n = check_tuple(tuple, w)?;
    weighted_sum(n, w, tuple.iter().map(|a| Ok(a.clone())))
}

/// `(Σ λ_i A_i^{-1})^{-1}`.
pub fn harmonic_mean<T: Real>(tuple: &[Matrix<T>], w: &WeightVector<T>) -> Result<Matrix<T>> {
    resolvent_core(tuple, w, T::zero())
}

/// Weighted geometric mean `A^{1/2} (A^{-1/2} B A^{-1/2})^λ A^{1/2}` with principal powers.
pub fn geometric_mean<T: Real>(a: &Matrix<T>, b: &Matrix<T>, lambda: T) -> Result<Matrix<T>> {
    a.ensure_same_dim(b)?;
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(Error::InvalidLambda(lambda.as_f64()));
    }
    require_accretive(a, Some(0))?;
    require_accretive(b, Some(1))?;
    if lambda == T::zero() {
        return Ok(a.clone());
    }
    if lambda == T::one() {
        return Ok(b.clone());
    }
    let hermitian = is_hermitian(a) && is_hermitian(b);
    let s = principal_sqrt(a)?;
    let s_inv = inv(&s)?;
    let inner = &(&s_inv * b) * &s_inv;
    let inner = if hermitian { herm_part(&inner) } else { inner };
    let x = &(&s * &principal_power(&inner, lambda)?) * &s;
    let x = finish(x, hermitian)?;
    require_accretive(&x, None)?;
    Ok(x)
}

fn resolvent_core<T: Real>(tuple: &[Matrix<T>], w: &WeightVector<T>, mu: T) -> Result<Matrix<T>> {
    let n = check_tuple(tuple, w)?;
    require_all_accretive(tuple)?;
    let hermitian = tuple.iter().all(is_hermitian);
    let scale = tuple.iter().map(Matrix::norm_fro).fold(T::zero(), T::max);
    let r = if mu > T::zero() && mu >= scale {
        // Once μ dominates, `(…)^{-1} − μI` cancels to roughly ε·μ absolute
        // accuracy. The same value as μ (I − M)^{-1} M with
        // M = Σ λ_i A_i (A_i + μI)^{-1} keeps full relative accuracy.
        let m = weighted_sum(n, w, tuple.iter().map(|a| Ok(a * &inv(&a.shift(mu))?)))?;
        (&inv(&(Matrix::identity(n) - &m))? * &m).scale(mu)
    } else {
        let sum = weighted_sum(n, w, tuple.iter().map(|a| inv(&a.shift(mu))))?;
        inv(&sum)?.shift(-mu)
    };
    finish(r, hermitian)
}

/// Resolvent average `(Σ λ_i (A_i + μI)^{-1})^{-1} − μI` for `μ ≥ 0`; `μ = +∞`
/// gives the arithmetic mean.
pub fn resolvent_average<T: Real>(
    tuple: &[Matrix<T>],
    w: &WeightVector<T>,
    mu: MuParam<T>,
) -> Result<Matrix<T>> {
    match mu {
        MuParam::PlusInf => {
            require_all_accretive(tuple)?;
            arithmetic_mean(tuple, w)
        }
        MuParam::MinusInf => Err(Error::InvalidMu(
            "the resolvent average is defined for mu >= 0 only".into(),
        )),
        MuParam::Finite(m) if m.is_nan() || m < T::zero() => Err(Error::InvalidMu(format!(
            "the resolvent average needs mu >= 0, got {m}"
        ))),
        MuParam::Finite(m) => resolvent_core(tuple, w, m),
    }
}

/// Weighted A♯H-mean: the geometric mean of the shifted arithmetic and harmonic
/// means, shifted back. Negative `μ` goes through `L_μ(A) = L_{−μ}(A^{-1})^{-1}`;
/// `±∞` give the arithmetic and harmonic means.
pub fn ah_mean<T: Real>(
    tuple: &[Matrix<T>],
    w: &WeightVector<T>,
    mu: MuParam<T>,
) -> Result<Matrix<T>> {
    let n = check_tuple(tuple, w)?;
    require_all_accretive(tuple)?;
    match mu {
        MuParam::PlusInf => arithmetic_mean(tuple, w),
        MuParam::MinusInf => harmonic_mean(tuple, w),
        MuParam::Finite(m) if m.is_nan() => Err(Error::InvalidMu("NaN".into())),
        MuParam::Finite(m) if m < T::zero() => {
            let hermitian = tuple.iter().all(is_hermitian);
            let inverted = inverse_tuple(tuple)?;
            finish(inv(&ah_nonnegative(&inverted, w, -m, n)?)?, hermitian)
        }
        MuParam::Finite(m) => ah_nonnegative(tuple, w, m, n),
    }
}

fn ah_nonnegative<T: Real>(
    tuple: &[Matrix<T>],
    w: &WeightVector<T>,
    mu: T,
    n: usize,
) -> Result<Matrix<T>> {
    let hermitian = tuple.iter().all(is_hermitian);
    let arith = weighted_sum(n, w, tuple.iter().map(|a| Ok(a.clone())))?;
    let resolvent = resolvent_core(tuple, w, mu)?;
    // P ♯ Q − μI with P = A_w + μI and Q = R_μ + μI. Writing
    // P^{-1/2} Q P^{-1/2} = I + E, this equals
    // A_w + P^{1/2} E ((I + E)^{1/2} + I)^{-1} P^{1/2},
    // which avoids subtracting μ from a quantity of size μ.
    let s = principal_sqrt(&arith.shift(mu))?;
    let s_inv = inv(&s)?;
    let e = &(&s_inv * &(&resolvent - &arith)) * &s_inv;
    let e = if hermitian { herm_part(&e) } else { e };
    let root = principal_sqrt(&e.shift(T::one()))?;
    let correction = &(&s * &(&e * &inv(&root.shift(T::one()))?)) * &s;
    finish(arith + correction, hermitian)
}

/// `(λ (1+μ)^{-1} + (1−λ)(t+μ)^{-1})^{-1} − μ`.
pub fn resolvent_rep_function<T: Real>(lambda: T, mu: T, t: T) -> T {
    let one = T::one();
    one / (lambda / (one + mu) + (one - lambda) / (t + mu)) - mu
}

/// Solution of `X A^{-1} X = B` with its relative residual `‖X A^{-1} X − B‖₂ / ‖B‖₂`.
#[derive(Debug, Clone)]
pub struct DrurySolution<T: Real> {
    pub x: Matrix<T>,
    pub residual: T,
}

/// Solves `X A^{-1} X = B` for accretive `A`, `B` by `X = A ♯ B`.
pub fn drury_solve<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<DrurySolution<T>> {
    let x = geometric_mean(a, b, T::lit(0.5))?;
    let lhs = &(&x * &inv(a)?) * &x;
    let residual = norm2(&(&lhs - b)) / norm2(b);
    Ok(DrurySolution { x, residual })
}

/// `‖Σ λ_i X (A_i+μI)^{-1} X − Σ λ_i (A_i+μI)‖₂ / ‖Σ λ_i (A_i+μI)‖₂` for finite `μ ≥ 0`.
pub fn ah_riccati_residual<T: Real>(
    tuple: &[Matrix<T>],
    w: &WeightVector<T>,
    mu: T,
    x: &Matrix<T>,
) -> Result<T> {
    let n = check_tuple(tuple, w)?;
    if !(mu >= T::zero()) || !mu.is_finite() {
        return Err(Error::InvalidMu(format!(
            "expected finite mu >= 0, got {mu}"
        )));
    }
    tuple[0].ensure_same_dim(x)?;
    require_all_accretive(tuple)?;
    let rhs = weighted_sum(n, w, tuple.iter().map(|a| Ok(a.shift(mu))))?;
    let lhs = weighted_sum(
        n,
        w,
        tuple.iter().map(|a| Ok(&(x * &inv(&a.shift(mu))?) * x)),
    )?;
    Ok(norm2(&(&lhs - &rhs)) / norm2(&rhs))
}
