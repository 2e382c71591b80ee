use serde::Serialize;

use super::{eig_hermitian, herm_part, norm2, skew_part, Matrix, ToleranceConfig};
use crate::error::Result;
use crate::scalar::Real;

/// Outcome of testing `X ≤ Y` in the Loewner order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoewnerVerdict<T: Real> {
    /// Smallest eigenvalue of the Hermitian part of `Y − X`.
    pub margin: T,
    /// Spectral norm of the skew part of `Y − X`.
    pub skew_norm: T,
    /// `max(1, ‖X‖₂, ‖Y‖₂)`.
    pub scale: T,
    pub leq: bool,
}

impl<T: Real> LoewnerVerdict<T> {
    pub fn relative_margin(&self) -> T {
        self.margin / self.scale
    }
}

/// Tests `X ≤ Y` with scale-relative tolerances.
pub fn loewner_cmp<T: Real>(
    x: &Matrix<T>,
    y: &Matrix<T>,
    tol: &ToleranceConfig,
) -> Result<LoewnerVerdict<T>> {
    x.ensure_same_dim(y)?;
    x.check_finite()?;
    y.check_finite()?;
    let d = y - x;
    let margin = eig_hermitian(&herm_part(&d))?.min();
    let skew_norm = eig_hermitian(&skew_part(&d))?.spectral_radius();
    let scale = T::one().max(norm2(x)).max(norm2(y));
    let leq =
        skew_norm <= T::lit(tol.herm_tol) * scale && margin >= -T::lit(tol.order_tol()) * scale;
    Ok(LoewnerVerdict {
        margin,
        skew_norm,
        scale,
        leq,
    })
}
