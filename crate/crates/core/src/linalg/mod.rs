//! Dense complex linear algebra over [`Real`] scalars.

mod decomp;
mod funm;
mod io;
mod matrix;
mod order;
mod sector;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use decomp::{eig_hermitian, inv, schur, HermitianEigen, Schur};
pub use funm::{principal_power, principal_sqrt};
pub use io::{MatrixJson, MatrixParseError};
pub use matrix::Matrix;
pub use order::{loewner_cmp, LoewnerVerdict};
pub(crate) use sector::require_accretive;
pub use sector::{
    accretivity_margin, gamma_angle, sectorial_angle, shifted_angle_bound, AngleSummary,
    SectorialCert,
};

/// Numerical tolerances. Always stored in double precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub atol: f64,
    pub rtol: f64,
    /// Largest relative skew-part norm accepted where a Hermitian matrix is expected.
    pub herm_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-9,
            herm_tol: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("atol", self.atol),
            ("rtol", self.rtol),
            ("herm_tol", self.herm_tol),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} = {v} must lie in (0, 1)"
                )));
            }
        }
        Ok(())
    }

    /// Loewner-order slack `atol + rtol`.
    pub fn order_tol(&self) -> f64 {
        self.atol + self.rtol
    }
}

/// Hermitian part `(A + A*)/2`, exactly Hermitian.
pub fn herm_part<T: Real>(a: &Matrix<T>) -> Matrix<T> {
    let half = T::lit(0.5);
    let mut h = Matrix::from_fn(a.dim(), |i, j| (a[(i, j)] + a[(j, i)].conj()) * half);
    for i in 0..a.dim() {
        h[(i, i)].im = T::zero();
    }
    h
}

/// Imaginary part `(A - A*)/(2i)`, exactly Hermitian.
pub fn skew_part<T: Real>(a: &Matrix<T>) -> Matrix<T> {
    let half = T::lit(0.5);
    let mut k = Matrix::from_fn(a.dim(), |i, j| {
        let d = (a[(i, j)] - a[(j, i)].conj()) * half;
        // d / i
        Complex::new(d.im, -d.re)
    });
    for i in 0..a.dim() {
        k[(i, i)].im = T::zero();
    }
    k
}

/// Frobenius norm of the anti-Hermitian component relative to ‖A‖_F.
pub(crate) fn relative_skew<T: Real>(a: &Matrix<T>) -> T {
    let scale = a.norm_fro();
    if scale == T::zero() {
        return T::zero();
    }
    skew_part(a).norm_fro() / scale
}

/// Replaces an (almost) Hermitian result by its Hermitian part, failing if the
/// discarded skew component exceeds `herm_tol`.
pub fn symmetrize<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig) -> Result<Matrix<T>> {
    let skew = relative_skew(a);
    if skew.as_f64() > tol.herm_tol {
        return Err(Error::NotHermitian {
            skew_norm: skew.as_f64(),
            threshold: tol.herm_tol,
        });
    }
    Ok(herm_part(a))
}

/// Spectral norm `sqrt(λ_max(A*A))`.
pub fn norm2<T: Real>(a: &Matrix<T>) -> T {
    if a.dim() == 0 {
        return T::zero();
    }
    let gram = herm_part(&(&a.adjoint() * a));
    match eig_hermitian(&gram) {
        Ok(e) => e.max().max(T::zero()).sqrt(),
        // Jacobi does not fail on a Hermitian Gram matrix; keep the Frobenius bound as a fallback.
        Err(_) => a.norm_fro(),
    }
}

/// `‖X − Y‖₂ / max(‖X‖₂, ‖Y‖₂)`, zero when both vanish.
pub fn relative_residual<T: Real>(x: &Matrix<T>, y: &Matrix<T>) -> T {
    let scale = norm2(x).max(norm2(y));
    let diff = norm2(&(x - y));
    if scale == T::zero() {
        diff
    } else {
        diff / scale
    }
}
