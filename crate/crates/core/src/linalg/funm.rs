use num_complex::Complex;
use num_traits::Zero;

use super::{eig_hermitian, herm_part, relative_skew, schur, Matrix, Schur};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SQRTS: usize = 64;

/// Principal power `exp(p·Log A)`.
///
/// Hermitian input goes through the eigendecomposition and yields a Hermitian
/// result. Otherwise the complex Schur form is raised to the power by repeated
/// triangular square roots, a binomial series near the identity and squaring.
pub fn principal_power<T: Real>(a: &Matrix<T>, p: T) -> Result<Matrix<T>> {
    a.check_finite()?;
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.dim();
    if p == T::one() {
        return Ok(a.clone());
    }
    if n == 0 {
        return Ok(a.clone());
    }
    let tol = T::default_tolerances();
    let cut_tol = T::lit(tol.atol) * a.norm_fro();

    if relative_skew(a).as_f64() <= tol.herm_tol {
        let e = eig_hermitian(a)?;
        if e.min() <= cut_tol {
            return Err(Error::SpectrumOnCut {
                re: e.min().as_f64(),
                im: 0.0,
            });
        }
        if p == T::zero() {
            return Ok(Matrix::identity(n));
        }
        let f = e.map_spectrum(|x| Complex::new(x.powf(p), T::zero()));
        return Ok(herm_part(&f));
    }

    let s = schur(a)?;
    check_cut(&s, cut_tol)?;
    if p == T::zero() {
        return Ok(Matrix::identity(n));
    }
    let t = &s.t;
    if n == 1 || t.is_diagonal(T::zero()) {
        let d: Vec<_> = t
            .diagonal()
            .into_iter()
            .map(|z| scalar_power(z, p))
            .collect();
        return Ok(s.reassemble(&Matrix::diag(&d)));
    }
    Ok(s.reassemble(&triangular_power(t, p)?))
}

/// Principal square root.
pub fn principal_sqrt<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    a.check_finite()?;
    let n = a.dim();
    if n == 0 {
        return Ok(a.clone());
    }
    let tol = T::default_tolerances();
    let cut_tol = T::lit(tol.atol) * a.norm_fro();

    if relative_skew(a).as_f64() <= tol.herm_tol {
        let e = eig_hermitian(a)?;
        if e.min() <= cut_tol {
            return Err(Error::SpectrumOnCut {
                re: e.min().as_f64(),
                im: 0.0,
            });
        }
        return Ok(herm_part(
            &e.map_spectrum(|x| Complex::new(x.sqrt(), T::zero())),
        ));
    }
    let s = schur(a)?;
    check_cut(&s, cut_tol)?;
    Ok(s.reassemble(&triangular_sqrt(&s.t)))
}

fn check_cut<T: Real>(s: &Schur<T>, cut_tol: T) -> Result<()> {
    for z in s.eigenvalues() {
        let dist = if z.re > T::zero() {
            z.norm()
        } else {
            z.im.abs()
        };
        if dist <= cut_tol {
            return Err(Error::SpectrumOnCut {
                re: z.re.as_f64(),
                im: z.im.as_f64(),
            });
        }
    }
    Ok(())
}

fn scalar_power<T: Real>(z: Complex<T>, p: T) -> Complex<T> {
    (z.ln() * p).exp()
}

/// Björck–Hammarling square root of an upper triangular matrix.
fn triangular_sqrt<T: Real>(t: &Matrix<T>) -> Matrix<T> {
    let n = t.dim();
    let mut u = Matrix::zeros(n);
    for i in 0..n {
        u[(i, i)] = t[(i, i)].sqrt();
    }
    for d in 1..n {
        for i in 0..n - d {
            let j = i + d;
            let s = (i + 1..j).fold(Complex::zero(), |acc, k| acc + u[(i, k)] * u[(k, j)]);
            u[(i, j)] = (t[(i, j)] - s) / (u[(i, i)] + u[(j, j)]);
        }
    }
    u
}

/// `T^p` for upper triangular `T` off the cut.
fn triangular_power<T: Real>(t: &Matrix<T>, p: T) -> Result<Matrix<T>> {
    let n = t.dim();
    // Normalize the spectrum around modulus one; (cT)^p = c^p T^p for c > 0.
    let log_c = t
        .diagonal()
        .iter()
        .fold(T::zero(), |acc, z| acc + z.norm().ln())
        / T::from_usize(n).unwrap_or_else(T::one);
    let c = log_c.exp();
    let mut r = t.scale(T::one() / c);

    let id = Matrix::<T>::identity(n);
    let limit = T::lit(0.1);
    let mut roots = 0usize;
    while (&r - &id).norm_fro() > limit {
        if roots == MAX_SQRTS {
            return Err(Error::NoConvergence("inverse scaling for matrix power"));
        }
        r = triangular_sqrt(&r);
        roots += 1;
    }

    // R^p = Σ binom(p, k) X^k with X = R - I, ‖X‖ ≤ 0.1.
    let x = &r - &id;
    let mut f = id.clone();
    let mut term = id;
    let mut coeff = T::one();
    let eps = T::epsilon();
    for k in 1..200 {
        let kk = T::from_usize(k).unwrap_or_else(T::one);
        coeff = coeff * (p - kk + T::one()) / kk;
        term = &term * &x;
        let add = term.scale(coeff);
        let size = add.norm_fro();
        f += &add;
        if size <= eps * f.norm_fro() || coeff == T::zero() {
            break;
        }
    }

    for _ in 0..roots {
        f = &f * &f;
    }
    let scale = (log_c * p).exp();
    let mut f = f.scale(scale);
    // Diagonal entries are known exactly; restore them to remove squaring drift.
    for i in 0..n {
        f[(i, i)] = scalar_power(t[(i, i)], p);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inv, norm2};

    type C = Complex<f64>;
    type M = Matrix<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn accretive(n: usize, seed: u64) -> M {
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let x = M::from_fn(n, |_, _| c(next(), next()));
        // X X* + I is PD; add a bounded skew-Hermitian part.
        let y = M::from_fn(n, |_, _| c(next(), next()));
        let k = herm_part(&(&y + &y.adjoint())).scale_c(c(0.0, 0.5));
        &(&(&x * &x.adjoint()) + &M::identity(n)) + &k
    }

    #[test]
    fn documented_examples() {
        let id = M::identity(3);
        assert!((&principal_power(&id, 0.37).unwrap() - &id).norm_fro() < 1e-15);

        let d = M::from_real_diag(&[4.0, 9.0]);
        let r = principal_power(&d, 0.5).unwrap();
        assert!((&r - &M::from_real_diag(&[2.0, 3.0])).norm_fro() < 1e-14);

        let expect = C::from_polar(2f64.powf(0.25), std::f64::consts::PI / 8.0);
        let z = M::scalar(1, c(1.0, 1.0));
        assert!((principal_power(&z, 0.5).unwrap()[(0, 0)] - expect).norm() < 1e-15);
        assert!((principal_sqrt(&z).unwrap()[(0, 0)] - expect).norm() < 1e-15);

        let four = M::scalar(2, c(4.0, 0.0));
        assert!((&principal_sqrt(&four).unwrap() - &M::scalar(2, c(2.0, 0.0))).norm_fro() < 1e-15);

        assert!(matches!(
            principal_sqrt(&M::scalar(2, c(-1.0, 0.0))),
            Err(Error::SpectrumOnCut { .. })
        ));
        assert!(matches!(
            principal_power(
                &M::from_real_rows(&[vec![-1.0, 1.0], vec![0.0, 2.0]]).unwrap(),
                0.3
            ),
            Err(Error::SpectrumOnCut { .. })
        ));
    }

    #[test]
    fn power_one_and_zero() {
        let a = accretive(4, 9);
        assert_eq!(principal_power(&a, 1.0).unwrap(), a);
        assert_eq!(principal_power(&a, 0.0).unwrap(), M::identity(4));
    }

    #[test]
    fn round_trips() {
        for n in [1, 2, 3, 5, 8] {
            for seed in 0..10 {
                let a = accretive(n, seed + 100 * n as u64);
                let scale = norm2(&a);
                for p in [0.5, 1.0 / 3.0, 0.75] {
                    let b = principal_power(&principal_power(&a, p).unwrap(), 1.0 / p).unwrap();
                    let err = norm2(&(&b - &a));
                    assert!(err <= 100.0 * n as f64 * 1e-9 * scale, "n={n} p={p}: {err}");
                }
                let s = principal_sqrt(&a).unwrap();
                assert!(norm2(&(&(&s * &s) - &a)) <= n as f64 * 1e-9 * scale);
            }
        }
    }

    #[test]
    fn negative_power_is_inverse_power() {
        let a = accretive(5, 77);
        let lhs = principal_power(&a, -0.4).unwrap();
        let rhs = inv(&principal_power(&a, 0.4).unwrap()).unwrap();
        assert!(norm2(&(&lhs - &rhs)) < 1e-12 * norm2(&rhs));
    }

    #[test]
    fn defective_triangular_power() {
        // Jordan block: J^p has p·λ^{p-1} on the superdiagonal.
        let j = M::from_real_rows(&[vec![2.0, 1.0], vec![0.0, 2.0]]).unwrap();
        let f = principal_power(&j, 0.5).unwrap();
        assert!((f[(0, 0)].re - 2f64.sqrt()).abs() < 1e-14);
        assert!((f[(0, 1)].re - 0.5 / 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn hermitian_input_gives_hermitian_output() {
        let a = herm_part(&accretive(6, 5));
        let f = principal_power(&a, 0.3).unwrap();
        assert_eq!(f, f.adjoint());
    }
}
