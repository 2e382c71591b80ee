use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense square complex matrix, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<T: Real> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Complex::one())
    }

    /// `z·I`.
    pub fn scalar(n: usize, z: Complex<T>) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, data }
    }

    pub fn from_real_diag(d: &[T]) -> Self {
        Self::diag(
            &d.iter()
                .map(|&x| Complex::new(x, T::zero()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn diag(d: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} columns in every row"
            )));
        }
        let m = Self {
            n,
            data: rows.into_iter().flatten().collect(),
        };
        m.check_finite()?;
        Ok(m)
    }

    /// Builds `re + i·im` from real row arrays.
    pub fn from_parts(re: &[Vec<T>], im: Option<&[Vec<T>]>) -> Result<Self> {
        let n = re.len();
        let bad_shape = |rows: &[Vec<T>]| rows.len() != n || rows.iter().any(|r| r.len() != n);
        if bad_shape(re) || im.is_some_and(bad_shape) {
            return Err(Error::DimensionMismatch(format!("expected {n}x{n} arrays")));
        }
        let m = Self::from_fn(n, |i, j| {
            Complex::new(re[i][j], im.map_or(T::zero(), |im| im[i][j]))
        });
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::from_parts(rows, None)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n)
            .map(|i| self[(i, i)])
            .fold(Complex::zero(), |a, b| a + b)
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn norm_fro(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    /// `A + μI`.
    pub fn shift(&self, mu: T) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)].re += mu;
        }
        m
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Maps entries into another precision.
    pub fn cast<U: Real>(&self) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64())))
                .collect(),
        }
    }

    pub fn is_upper_triangular(&self, tol: T) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)].norm() <= tol))
    }

    pub fn is_diagonal(&self, tol: T) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)].norm() <= tol))
    }

    /// Principal submatrix of the given size starting at `(start, start)`.
    pub fn block(&self, start: usize, size: usize) -> Self {
        Self::from_fn(size, |i, j| self[(start + i, start + j)])
    }

    pub(crate) fn ensure_same_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, other.n, other.n
            )))
        }
    }

    /// `self · other` without the panic of the operator form.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_dim(other)?;
        Ok(self.matmul(other))
    }

    fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = self.row(i);
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl<T: Real> Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>12.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// ── Arithmetic ────────────────────────────────────────────────────────────
//
// Binary operators panic on dimension mismatch, like slice indexing; the
// fallible entry points validate dimensions before reaching them.

fn zip_with<T: Real>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
) -> Matrix<T> {
    assert_eq!(a.n, b.n, "matrix dimension mismatch");
    Matrix {
        n: a.n,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y)).collect(),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<T: Real> $tr<&Matrix<T>> for &Matrix<T> {
            type Output = Matrix<T>;
            fn $method(self, rhs: &Matrix<T>) -> Matrix<T> {
                $body(self, rhs)
            }
        }
        impl<T: Real> $tr<Matrix<T>> for Matrix<T> {
            type Output = Matrix<T>;
            fn $method(self, rhs: Matrix<T>) -> Matrix<T> {
                $body(&self, &rhs)
            }
        }
        impl<T: Real> $tr<&Matrix<T>> for Matrix<T> {
            type Output = Matrix<T>;
            fn $method(self, rhs: &Matrix<T>) -> Matrix<T> {
                $body(&self, rhs)
            }
        }
        impl<T: Real> $tr<Matrix<T>> for &Matrix<T> {
            type Output = Matrix<T>;
            fn $method(self, rhs: Matrix<T>) -> Matrix<T> {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| zip_with(a, b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| zip_with(a, b, |x, y| x - y));
forward_binop!(Mul, mul, |a: &Matrix<T>, b: &Matrix<T>| {
    assert_eq!(a.n, b.n, "matrix dimension mismatch");
    a.matmul(b)
});

impl<T: Real> AddAssign<&Matrix<T>> for Matrix<T> {
    fn add_assign(&mut self, rhs: &Matrix<T>) {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        self.data
            .iter_mut()
            .zip(&rhs.data)
            .for_each(|(a, &b)| *a += b);
    }
}

impl<T: Real> SubAssign<&Matrix<T>> for Matrix<T> {
    fn sub_assign(&mut self, rhs: &Matrix<T>) {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        self.data
            .iter_mut()
            .zip(&rhs.data)
            .for_each(|(a, &b)| *a -= b);
    }
}

impl<T: Real> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|z| -z)
    }
}

impl<T: Real> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|z| -z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn product_and_adjoint() {
        let a = Matrix::<f64>::from_rows(vec![
            vec![C::new(1.0, 0.0), C::new(0.0, 1.0)],
            vec![C::new(2.0, 0.0), C::new(1.0, -1.0)],
        ])
        .unwrap();
        let b = &a * &a.adjoint();
        // A A* is Hermitian
        assert!((&b - &b.adjoint()).norm_fro() < 1e-15);
        assert_eq!(b[(0, 0)], C::new(2.0, 0.0));
        assert_eq!(a.trace(), C::new(2.0, -1.0));
    }

    #[test]
    fn ragged_and_nan_rejected() {
        assert!(matches!(
            Matrix::<f64>::from_real_rows(&[vec![1.0, 2.0], vec![3.0]]),
            Err(Error::DimensionMismatch(_))
        ));
        assert_eq!(
            Matrix::<f64>::from_real_rows(&[vec![f64::NAN]]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn shift_touches_only_diagonal() {
        let a = Matrix::<f64>::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let s = a.shift(0.5);
        assert_eq!(s[(0, 0)].re, 1.5);
        assert_eq!(s[(0, 1)].re, 2.0);
        assert_eq!(s[(1, 1)].re, 4.5);
    }
}
