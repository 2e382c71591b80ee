use num_complex::Complex;
use num_traits::{One, Zero};

use super::{herm_part, relative_skew, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

// ── Inverse ───────────────────────────────────────────────────────────────

/// Inverse by LU with partial pivoting.
///
/// Fails with [`Error::SingularMatrix`] when the smallest singular value is at
/// most `atol·‖A‖₂`.
pub fn inv<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.dim();
    a.check_finite()?;
    let tol = T::default_tolerances();
    let fro = a.norm_fro();
    let singular = |sigma_min: T, scale: T| Error::SingularMatrix {
        sigma_min: sigma_min.as_f64(),
        threshold: tol.atol * scale.as_f64(),
    };
    if fro == T::zero() {
        return Err(singular(T::zero(), T::zero()));
    }

    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let tiny = T::epsilon() * fro;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| cmp_real(lu[(i, k)].norm(), lu[(j, k)].norm()))
            .unwrap_or(k);
        if lu[(p, k)].norm() <= tiny {
            return Err(singular(lu[(p, k)].norm(), fro));
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            perm.swap(k, p);
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / pivot;
            lu[(i, k)] = f;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }

    // Solve LU x = P e_c column by column.
    let mut out = Matrix::zeros(n);
    let mut x = vec![Complex::<T>::zero(); n];
    for c in 0..n {
        for i in 0..n {
            let mut s = if perm[i] == c {
                Complex::one()
            } else {
                Complex::zero()
            };
            for j in 0..i {
                s -= lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= lu[(i, j)] * x[j];
            }
            x[i] = s / lu[(i, i)];
        }
        for i in 0..n {
            out[(i, c)] = x[i];
        }
    }
    if !out.is_finite() {
        return Err(singular(T::zero(), fro));
    }

    // 1/‖A⁻¹‖_F ≤ σ_min and ‖A‖₂ ≤ ‖A‖_F, so the spectral test is only needed
    // when the cheap bound is inconclusive.
    let atol = T::lit(tol.atol);
    let sigma_lower = T::one() / out.norm_fro();
    if sigma_lower <= atol * fro {
        let sigma_min = T::one() / super::norm2(&out);
        let a2 = super::norm2(a);
        if sigma_min <= atol * a2 {
            return Err(singular(sigma_min, a2));
        }
    }
    Ok(out)
}

fn cmp_real<T: Real>(a: T, b: T) -> std::cmp::Ordering {
    a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
}

// ── Hermitian eigensolver ─────────────────────────────────────────────────

/// Eigen-decomposition `H = V diag(values) V*`, values ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn min(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn max(&self) -> T {
        self.values.last().copied().unwrap_or_else(T::zero)
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> T {
        self.min().abs().max(self.max().abs())
    }

    /// `V diag(f(λ)) V*`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> Complex<T>) -> Matrix<T> {
        let v = &self.vectors;
        let n = v.dim();
        let fv: Vec<Complex<T>> = self.values.iter().map(|&x| f(x)).collect();
        Matrix::from_fn(n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| {
                acc + v[(i, k)] * fv[k] * v[(j, k)].conj()
            })
        })
    }
}

const MAX_SWEEPS: usize = 60;

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// The input is symmetrized first; a relative skew part above `herm_tol` is an error.
pub fn eig_hermitian<T: Real>(h: &Matrix<T>) -> Result<HermitianEigen<T>> {
    h.check_finite()?;
    let herm_tol = T::default_tolerances().herm_tol;
    let skew = relative_skew(h);
    if skew.as_f64() > herm_tol {
        return Err(Error::NotHermitian {
            skew_norm: skew.as_f64(),
            threshold: herm_tol,
        });
    }
    let n = h.dim();
    let mut a = herm_part(h);
    let mut v = Matrix::<T>::identity(n);
    let fro = a.norm_fro();
    let eps = T::epsilon();
    let target = eps * fro;

    let off_norm = |a: &Matrix<T>| {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_norm(&a) > T::lit(100.0) * target {
        return Err(Error::NoConvergence("Hermitian eigensolver"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| cmp_real(a[(i, i)].re, a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = Matrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate<T: Real>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (T::lit(2.0) * mag);
    let sign = if theta >= T::zero() {
        T::one()
    } else {
        -T::one()
    };
    let t = sign / (theta.abs() + theta.hypot(T::one()));
    let cs = T::one() / (t * t + T::one()).sqrt();
    let sn = t * cs;
    let phase = apq.conj() / mag;

    // G = [[cs, sn], [-sn·phase, cs·phase]] acting on coordinates (p, q).
    let g00 = Complex::new(cs, T::zero());
    let g01 = Complex::new(sn, T::zero());
    let g10 = phase * (-sn);
    let g11 = phase * cs;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g00 + akq * g10;
        a[(k, q)] = akp * g01 + akq * g11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g00.conj() * apk + g10.conj() * aqk;
        a[(q, k)] = g01.conj() * apk + g11.conj() * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g00 + vkq * g10;
        v[(k, q)] = vkp * g01 + vkq * g11;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)].im = T::zero();
    a[(q, q)].im = T::zero();
}

// ── Complex Schur decomposition ───────────────────────────────────────────

/// `A = Q T Q*` with `Q` unitary and `T` upper triangular.
#[derive(Debug, Clone)]
pub struct Schur<T: Real> {
    pub q: Matrix<T>,
    pub t: Matrix<T>,
}

impl<T: Real> Schur<T> {
    pub fn eigenvalues(&self) -> Vec<Complex<T>> {
        self.t.diagonal()
    }

    /// `Q F Q*` for a triangular `F` built on this factorization.
    pub fn reassemble(&self, f: &Matrix<T>) -> Matrix<T> {
        &(&self.q * f) * &self.q.adjoint()
    }
}

/// Complex Schur form by Householder reduction to Hessenberg form followed by
/// single-shift QR iterations with Wilkinson shifts.
pub fn schur<T: Real>(a: &Matrix<T>) -> Result<Schur<T>> {
    a.check_finite()?;
    let n = a.dim();
    let mut h = a.clone();
    let mut q = Matrix::<T>::identity(n);
    hessenberg(&mut h, &mut q);

    let eps = T::epsilon();
    let budget = 100 * n.max(1);
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n.saturating_sub(1);
    while hi > 0 {
        // Locate the top of the trailing unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let floor = if diag == T::zero() {
                h.norm_fro()
            } else {
                diag
            };
            if sub <= eps * floor {
                h[(lo, lo - 1)] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        total += 1;
        since_deflation += 1;
        if total > budget {
            return Err(Error::NoConvergence("Schur QR iteration"));
        }

        let sigma = if since_deflation.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            let s = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + Complex::new(T::lit(0.75) * s, T::lit(0.5) * s)
        } else {
            wilkinson_shift(&h, hi)
        };

        qr_step(&mut h, &mut q, lo, hi, sigma);
    }

    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = Complex::zero();
        }
    }
    Ok(Schur { q, t: h })
}

fn hessenberg<T: Real>(h: &mut Matrix<T>, q: &mut Matrix<T>) {
    let n = h.dim();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
        let tail = x[1..].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        if xnorm == T::zero() || tail == T::zero() {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == T::zero() {
            Complex::one()
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        let two = T::lit(2.0);

        // H <- P H, rows k+1..n.
        for j in 0..n {
            let dot = v
                .iter()
                .enumerate()
                .fold(Complex::<T>::zero(), |s, (r, vi)| {
                    s + vi.conj() * h[(k + 1 + r, j)]
                });
            for (r, vi) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= *vi * dot * two;
            }
        }
        // H <- H P and Q <- Q P, columns k+1..n.
        for m in [&mut *h, &mut *q] {
            for i in 0..n {
                let dot = v
                    .iter()
                    .enumerate()
                    .fold(Complex::<T>::zero(), |s, (r, vi)| {
                        s + m[(i, k + 1 + r)] * *vi
                    });
                for (r, vi) in v.iter().enumerate() {
                    m[(i, k + 1 + r)] -= dot * vi.conj() * two;
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex::zero();
        }
    }
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift<T: Real>(h: &Matrix<T>, hi: usize) -> Complex<T> {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = T::lit(0.5);
    let mid = (a + d) * half;
    let diff = (a - d) * half;
    let disc = (diff * diff + b * c).sqrt();
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Givens rotation `[[c, s], [-conj(s), c]]` mapping `(x, y)` to `(r, 0)`.
fn givens<T: Real>(x: Complex<T>, y: Complex<T>) -> (T, Complex<T>) {
    let ax = x.norm();
    let ay = y.norm();
    let norm = ax.hypot(ay);
    if norm == T::zero() {
        return (T::one(), Complex::zero());
    }
    if ax == T::zero() {
        return (T::zero(), Complex::one());
    }
    let c = ax / norm;
    let s = (x / ax) * y.conj() / norm;
    (c, s)
}

fn qr_step<T: Real>(h: &mut Matrix<T>, q: &mut Matrix<T>, lo: usize, hi: usize, sigma: Complex<T>) {
    let n = h.dim();
    for i in lo..=hi {
        h[(i, i)] -= sigma;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in 0..n {
            let a = h[(k, j)];
            let b = h[(k + 1, j)];
            h[(k, j)] = a * c + s * b;
            h[(k + 1, j)] = -s.conj() * a + b * c;
        }
        h[(k + 1, k)] = Complex::zero();
        rotations.push((k, c, s));
    }
    for &(k, c, s) in &rotations {
        for m in [&mut *h, &mut *q] {
            for i in 0..n {
                let a = m[(i, k)];
                let b = m[(i, k + 1)];
                m[(i, k)] = a * c + b * s.conj();
                m[(i, k + 1)] = -a * s + b * c;
            }
        }
    }
    for i in lo..=hi {
        h[(i, i)] += sigma;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;
    type M = Matrix<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn test_matrix(n: usize, seed: u64) -> M {
        // Small LCG; enough for structure tests without pulling in the ensemble module.
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        M::from_fn(n, |_, _| c(next(), next()))
    }

    #[test]
    fn inverse_examples() {
        let two = M::scalar(3, c(2.0, 0.0));
        assert!((&inv(&two).unwrap() - &M::scalar(3, c(0.5, 0.0))).norm_fro() < 1e-15);

        let a = M::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let expect = M::from_real_rows(&[vec![1.0, -1.0], vec![0.0, 1.0]]).unwrap();
        assert!((&inv(&a).unwrap() - &expect).norm_fro() < 1e-15);

        assert!(matches!(
            inv(&M::zeros(2)),
            Err(Error::SingularMatrix { .. })
        ));
        let rank_one = M::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(inv(&rank_one), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn inverse_residual_on_random_complex() {
        for seed in 0..20 {
            let a = test_matrix(6, seed).shift(1.0);
            let ai = inv(&a).unwrap();
            let r = (&(&a * &ai) - &M::identity(6)).norm_fro();
            assert!(r < 1e-12, "seed {seed}: {r}");
        }
    }

    #[test]
    fn eig_examples() {
        let e = eig_hermitian(&M::from_real_diag(&[3.0, 1.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 3.0]);

        let swap = M::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = eig_hermitian(&swap).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);

        let e = eig_hermitian(&M::identity(4)).unwrap();
        assert!(e.values.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = M::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_residual_and_unitarity() {
        for seed in 0..20 {
            let x = test_matrix(8, seed);
            let h = herm_part(&(&x + &x.adjoint()));
            let e = eig_hermitian(&h).unwrap();
            let v = &e.vectors;
            let hv = &h * v;
            let vd = v * &M::from_real_diag(&e.values);
            assert!((&hv - &vd).norm_fro() < 1e-13 * h.norm_fro().max(1.0));
            assert!((&(&v.adjoint() * v) - &M::identity(8)).norm_fro() < 1e-13);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn schur_examples() {
        let d = M::from_real_diag(&[2.0, 3.0]);
        let s = schur(&d).unwrap();
        let mut ev: Vec<f64> = s.eigenvalues().iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        assert_eq!(ev, vec![2.0, 3.0]);

        let tri = M::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 2.0]]).unwrap();
        let s = schur(&tri).unwrap();
        assert_eq!(s.q, M::identity(2));
        assert_eq!(s.t, tri);

        let x = test_matrix(5, 3);
        let h = &x + &x.adjoint();
        let s = schur(&h).unwrap();
        assert!(s.t.is_diagonal(1e-12 * h.norm_fro()));
    }

    #[test]
    fn schur_reconstructs_random_complex() {
        for n in 1..=9 {
            for seed in 0..15 {
                let a = test_matrix(n, seed * 31 + n as u64);
                let s = schur(&a).unwrap();
                let scale = a.norm_fro();
                assert!((&s.reassemble(&s.t) - &a).norm_fro() < 1e-13 * scale);
                assert!((&(&s.q.adjoint() * &s.q) - &M::identity(n)).norm_fro() < 1e-13);
                assert!(s.t.is_upper_triangular(0.0));
            }
        }
    }

    #[test]
    fn schur_of_jordan_like_and_rotation() {
        // Real rotation: complex conjugate eigenvalues ±i.
        let r = M::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let s = schur(&r).unwrap();
        let mut im: Vec<f64> = s.eigenvalues().iter().map(|z| z.im).collect();
        im.sort_by(f64::total_cmp);
        assert!((im[0] + 1.0).abs() < 1e-14 && (im[1] - 1.0).abs() < 1e-14);

        // Nilpotent shift: a single Jordan block.
        let j = M::from_fn(4, |i, k| if k == i + 1 { c(1.0, 0.0) } else { C::zero() }).shift(2.0);
        let s = schur(&j).unwrap();
        assert!((&s.reassemble(&s.t) - &j).norm_fro() < 1e-13);
    }
}
