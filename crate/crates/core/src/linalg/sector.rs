use num_complex::Complex;
use serde::Serialize;

use super::{eig_hermitian, herm_part, norm2, skew_part, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// An accretive matrix together with a sectorial angle it is certified for.
#[derive(Debug, Clone)]
pub struct SectorialCert<T: Real> {
    pub matrix: Matrix<T>,
    /// Half-opening of a sector containing the numerical range, in `[0, π/2)`.
    pub alpha: T,
    /// `λ_min(ℜA)`.
    pub accretivity_margin: T,
}

/// Summary emitted by the command-line `angle` tool.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AngleSummary {
    pub alpha: f64,
    pub accretivity_margin: f64,
}

impl<T: Real> SectorialCert<T> {
    pub fn summary(&self) -> AngleSummary {
        AngleSummary {
            alpha: self.alpha.as_f64(),
            accretivity_margin: self.accretivity_margin.as_f64(),
        }
    }
}

/// `λ_min(ℜA)`.
pub fn accretivity_margin<T: Real>(a: &Matrix<T>) -> Result<T> {
    Ok(eig_hermitian(&herm_part(a))?.min())
}

/// Fails unless `λ_min(ℜA) > atol·‖A‖₂`.
pub(crate) fn require_accretive<T: Real>(a: &Matrix<T>, index: Option<usize>) -> Result<T> {
    let margin = accretivity_margin(a)?;
    let floor = T::lit(T::default_tolerances().atol) * norm2(a);
    if margin > floor && margin > T::zero() {
        Ok(margin)
    } else {
        Err(Error::NotAccretive {
            margin: margin.as_f64(),
            index,
        })
    }
}

/// Smallest sector angle containing the numerical range of an accretive matrix:
/// `atan ρ((ℜA)^{-1/2} ℑA (ℜA)^{-1/2})`.
pub fn sectorial_angle<T: Real>(a: &Matrix<T>) -> Result<SectorialCert<T>> {
    a.check_finite()?;
    let margin = require_accretive(a, None)?;
    let re = eig_hermitian(&herm_part(a))?;
    let inv_sqrt = re.map_spectrum(|x| Complex::new(T::one() / x.sqrt(), T::zero()));
    let im = skew_part(a);
    let whitened = herm_part(&(&(&inv_sqrt * &im) * &inv_sqrt));
    let rho = eig_hermitian(&whitened)?.spectral_radius();
    Ok(SectorialCert {
        matrix: a.clone(),
        alpha: rho.atan(),
        accretivity_margin: margin,
    })
}

/// `atan(tan α / (1 + |μ|))`.
pub fn gamma_angle<T: Real>(alpha: T, mu: T) -> T {
    (alpha.tan() / (T::one() + mu.abs())).atan()
}

/// Angle of `A + μI` for `A` with angle `α` and `ℜA ≤ ρ I`: `atan(tan α · ρ/(ρ + μ))`, `μ ≥ 0`.
pub fn shifted_angle_bound<T: Real>(alpha: T, mu: T, re_upper: T) -> T {
    if mu.is_infinite() {
        return T::zero();
    }
    let shrink = if re_upper > T::zero() {
        re_upper / (re_upper + mu.abs())
    } else {
        T::one()
    };
    (alpha.tan() * shrink).atan()
}

impl<T: Real> SectorialCert<T> {
    /// Certificate for `A + μI`, `μ ≥ 0`, derived from this one without re-estimation.
    pub fn shifted(&self, mu: T) -> Result<Self> {
        let re_upper = eig_hermitian(&herm_part(&self.matrix))?.max();
        Ok(Self {
            matrix: self.matrix.shift(mu),
            alpha: shifted_angle_bound(self.alpha, mu, re_upper),
            accretivity_margin: self.accretivity_margin + mu,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    type C = Complex<f64>;
    type M = Matrix<f64>;

    #[test]
    fn documented_angles() {
        let pd = M::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert!(sectorial_angle(&pd).unwrap().alpha.abs() < 1e-12);

        let swap = M::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let a = &M::identity(2) + &swap.scale_c(C::new(0.0, 1.0));
        assert!((sectorial_angle(&a).unwrap().alpha - FRAC_PI_4).abs() < 1e-14);

        let s = M::scalar(3, C::new(1.0, 1.0));
        let cert = sectorial_angle(&s).unwrap();
        assert!((cert.alpha - FRAC_PI_4).abs() < 1e-14);
        assert!((cert.accretivity_margin - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rotated_pd_angle() {
        let pd = M::from_real_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        for theta in [-1.2, -0.3, 0.2, 1.0, 1.5] {
            let a = pd.scale_c(C::from_polar(1.0, theta));
            let alpha = sectorial_angle(&a).unwrap().alpha;
            assert!((alpha - f64::abs(theta)).abs() < 1e-12, "{theta}: {alpha}");
        }
    }

    #[test]
    fn non_accretive_rejected() {
        let a = M::from_real_diag(&[1.0, -0.3]);
        match sectorial_angle(&a) {
            Err(Error::NotAccretive { margin, .. }) => assert!((margin + 0.3).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gamma_examples() {
        assert!((gamma_angle(FRAC_PI_4, 1.0) - 0.5f64.atan()).abs() < 1e-15);
        assert_eq!(gamma_angle(0.0, 3.0), 0.0);
        assert!((gamma_angle(PI / 3.0, 0.0) - PI / 3.0).abs() < 1e-15);
        assert!(gamma_angle(1.0, 2.0) < gamma_angle(1.0, 1.0));
        assert!(gamma_angle(1.0, -2.0) == gamma_angle(1.0, 2.0));
    }

    #[test]
    fn shifted_bound_is_tight_for_scalars() {
        // (2 + 2i) + μ has angle atan(2/(2+μ)).
        let a = M::scalar(1, C::new(2.0, 2.0));
        let cert = sectorial_angle(&a).unwrap().shifted(3.0).unwrap();
        assert!((cert.alpha - (2.0f64 / 5.0).atan()).abs() < 1e-14);
        let direct = sectorial_angle(&cert.matrix).unwrap().alpha;
        assert!((direct - cert.alpha).abs() < 1e-14);
    }
}
