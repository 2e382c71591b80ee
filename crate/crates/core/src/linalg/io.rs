use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Wire format `{"n": .., "re": [[..]], "im": [[..]]}`; `im` may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl<T: Real> From<&Matrix<T>> for MatrixJson {
    fn from(m: &Matrix<T>) -> Self {
        let n = m.dim();
        let rows = |f: fn(&num_complex::Complex<T>) -> T| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| m.row(i).iter().map(|z| f(z).as_f64()).collect())
                .collect()
        };
        Self {
            n,
            re: rows(|z| z.re),
            im: Some(rows(|z| z.im)),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix<T: Real>(&self) -> Result<Matrix<T>> {
        if self.re.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "declared n = {} but found {} rows",
                self.n,
                self.re.len()
            )));
        }
        let conv = |rows: &Vec<Vec<f64>>| -> Vec<Vec<T>> {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| T::from_f64(x).unwrap_or_else(T::nan))
                        .collect()
                })
                .collect()
        };
        let re = conv(&self.re);
        let im = self.im.as_ref().map(conv);
        Matrix::from_parts(&re, im.as_deref())
    }
}

impl<T: Real> Matrix<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("matrix JSON is always serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&MatrixJson::from(self))
            .expect("matrix JSON is always serializable")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, MatrixParseError> {
        let raw: MatrixJson = serde_json::from_str(s)?;
        Ok(raw.to_matrix()?)
    }
}

/// Failure to read a matrix document.
#[derive(Debug, thiserror::Error)]
pub enum MatrixParseError {
    #[error("malformed matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Shape(#[from] Error),
}
