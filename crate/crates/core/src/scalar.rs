use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

use crate::linalg::ToleranceConfig;

/// Real scalar the matrix algebra is generic over: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Tolerances that make sense at this precision.
    fn default_tolerances() -> ToleranceConfig;

    /// Converts an `f64` literal. Panics only for values the type cannot hold at all.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal out of range for scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_tolerances() -> ToleranceConfig {
        ToleranceConfig::default()
    }
}

impl Real for f32 {
    fn default_tolerances() -> ToleranceConfig {
        ToleranceConfig {
            atol: 1e-5,
            rtol: 1e-4,
            herm_tol: 1e-4,
        }
    }
}
