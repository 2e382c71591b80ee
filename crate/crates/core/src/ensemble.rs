//! Seeded random ensembles: PD matrices with prescribed spectral bounds,
//! sectorial matrices with a known angle, Haar unitaries and weights.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_part, principal_sqrt, Matrix, SectorialCert};
use crate::means::WeightVector;
use crate::scalar::Real;

/// Generator used by every ensemble in this crate.
pub type SampleRng = ChaCha8Rng;

// ── Seeding ───────────────────────────────────────────────────────────────

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Seed for sample `j` of stream `id` at dimension `n`. Depends only on its
/// arguments, so samples can be drawn in any order or in parallel.
pub fn mix_seed(master: u64, id: &str, n: usize, j: usize) -> u64 {
    [fnv1a(id), n as u64, j as u64]
        .into_iter()
        .fold(splitmix64(master), |acc, x| splitmix64(acc ^ x))
}

pub fn sample_rng(seed: u64) -> SampleRng {
    SampleRng::seed_from_u64(seed)
}

// ── Generators ────────────────────────────────────────────────────────────

fn gaussian<T: Real>(rng: &mut impl Rng) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex::new(T::lit(re * s), T::lit(im * s))
}

fn uniform<T: Real>(rng: &mut impl Rng, lo: f64, hi: f64) -> T {
    T::lit(rng.random_range(lo..=hi))
}

/// Haar-distributed unitary via Gram–Schmidt QR of a complex Gaussian matrix.
pub fn rand_unitary<T: Real>(n: usize, rng: &mut impl Rng) -> Matrix<T> {
    let g = Matrix::<T>::from_fn(n, |_, _| gaussian(rng));
    orthonormalize_columns(&g, n)
}

/// Orthonormalizes the first `k` columns (twice-iterated Gram–Schmidt); the
/// implied triangular factor has a positive diagonal.
fn orthonormalize_columns<T: Real>(g: &Matrix<T>, k: usize) -> Matrix<T> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut v: Vec<Complex<T>> = (0..n).map(|i| g[(i, j)]).collect();
        for _ in 0..2 {
            for q in &cols {
                let dot = q
                    .iter()
                    .zip(&v)
                    .fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| {
                        s + a.conj() * b
                    });
                v.iter_mut().zip(q).for_each(|(x, &qi)| *x -= qi * dot);
            }
        }
        let norm = v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    Matrix::from_fn(n, |i, j| {
        if j < k {
            cols[j][i]
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

/// `n × k` matrix with orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry<T: Real> {
    n: usize,
    k: usize,
    /// Row-major `n × k` entries.
    data: Vec<Complex<T>>,
}

impl<T: Real> Isometry<T> {
    /// First `k` columns of a unitary.
    pub fn from_unitary_columns(u: &Matrix<T>, k: usize) -> Result<Self> {
        let n = u.dim();
        if k == 0 || k > n {
            return Err(Error::InvalidMap(format!(
                "isometry needs 1 <= k <= {n}, got {k}"
            )));
        }
        let data = (0..n)
            .flat_map(|i| (0..k).map(move |j| u[(i, j)]))
            .collect();
        Ok(Self { n, k, data })
    }

    pub fn input_dim(&self) -> usize {
        self.n
    }

    pub fn output_dim(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.k + j]
    }

    /// `X* A X`.
    pub fn compress(&self, a: &Matrix<T>) -> Matrix<T> {
        let (n, k) = (self.n, self.k);
        // A X, n × k
        let ax: Vec<Complex<T>> = (0..n)
            .flat_map(|i| {
                (0..k).map(move |j| {
                    (0..n).fold(Complex::new(T::zero(), T::zero()), |s, l| {
                        s + a[(i, l)] * self.get(l, j)
                    })
                })
            })
            .collect();
        Matrix::from_fn(k, |i, j| {
            (0..n).fold(Complex::new(T::zero(), T::zero()), |s, l| {
                s + self.get(l, i).conj() * ax[l * k + j]
            })
        })
    }

    /// `‖X*X − I_k‖_F`.
    pub fn orthonormality_defect(&self) -> T {
        let gram = Matrix::from_fn(self.k, |i, j| {
            (0..self.n).fold(Complex::new(T::zero(), T::zero()), |s, l| {
                s + self.get(l, i).conj() * self.get(l, j)
            })
        });
        (&gram - &Matrix::identity(self.k)).norm_fro()
    }
}

/// Random `n × k` isometry: `k` columns of a Haar unitary.
pub fn rand_isometry<T: Real>(n: usize, k: usize, rng: &mut impl Rng) -> Result<Isometry<T>> {
    if k == 0 || k > n {
        return Err(Error::InvalidMap(format!(
            "isometry needs 1 <= k <= {n}, got {k}"
        )));
    }
    let g = Matrix::<T>::from_fn(n, |_, _| gaussian(rng));
    Isometry::from_unitary_columns(&orthonormalize_columns(&g, k), k)
}

fn check_bounds(h: f64, k: f64) -> Result<()> {
    if h.is_finite() && k.is_finite() && 0.0 < h && h < k {
        Ok(())
    } else {
        Err(Error::InvalidBounds { h, k })
    }
}

/// Hermitian positive definite `U diag(d) U*` with `d_i ∈ [h, k]`; for `n ≥ 2`
/// both bounds are attained.
pub fn rand_pd<T: Real>(n: usize, h: f64, k: f64, rng: &mut impl Rng) -> Result<Matrix<T>> {
    check_bounds(h, k)?;
    let d = spectrum_with_extremes(n, h, k, rng);
    Ok(conjugate_real_diag(&d, rng))
}

fn spectrum_with_extremes<T: Real>(n: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> Vec<T> {
    let mut d: Vec<T> = (0..n).map(|_| uniform(rng, lo, hi)).collect();
    if n >= 2 {
        d[0] = T::lit(lo);
        d[1] = T::lit(hi);
    }
    d
}

fn conjugate_real_diag<T: Real>(d: &[T], rng: &mut impl Rng) -> Matrix<T> {
    let u = rand_unitary::<T>(d.len(), rng);
    herm_part(&(&(&u * &Matrix::from_real_diag(d)) * &u.adjoint()))
}

/// Accretive `R^{1/2}(I + i·tan(α)·S)R^{1/2}` with `R` PD in `[0.5, 2]` and `S`
/// Hermitian with spectrum in `[−1, 1]`, extremes attained. The numerical range
/// lies in the sector of half-angle `alpha_max` and touches its boundary.
pub fn rand_sectorial<T: Real>(
    n: usize,
    alpha_max: f64,
    rng: &mut impl Rng,
) -> Result<SectorialCert<T>> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&alpha_max) {
        return Err(Error::InvalidAngle(alpha_max));
    }
    let r_spec: Vec<T> = spectrum_with_extremes(n, 0.5, 2.0, rng);
    let margin = r_spec.iter().copied().fold(T::infinity(), T::min);
    let r = conjugate_real_diag(&r_spec, rng);
    let s_spec: Vec<T> = if n == 1 {
        vec![if rng.random::<bool>() {
            T::one()
        } else {
            -T::one()
        }]
    } else {
        spectrum_with_extremes(n, -1.0, 1.0, rng)
    };
    let s = conjugate_real_diag(&s_spec, rng);
    let matrix = if alpha_max == 0.0 {
        r
    } else {
        let root = principal_sqrt(&r)?;
        let tan = T::lit(alpha_max.tan());
        let inner = &Matrix::identity(n) + &s.scale_c(Complex::new(T::zero(), tan));
        &(&root * &inner) * &root
    };
    Ok(SectorialCert {
        matrix,
        alpha: T::lit(alpha_max),
        accretivity_margin: margin,
    })
}

/// Normalized standard-exponential draws. For `m = 2`, one draw in ten forces
/// the smaller weight into `(0.001, 0.05)` to stress near-degenerate pairs.
pub fn rand_weights<T: Real>(m: usize, rng: &mut impl Rng) -> WeightVector<T> {
    if m == 2 && rng.random_bool(0.1) {
        let small: f64 = rng.random_range(0.001..0.05);
        let w = if rng.random::<bool>() {
            vec![small, 1.0 - small]
        } else {
            vec![1.0 - small, small]
        };
        return WeightVector::new(w.into_iter().map(T::lit).collect())
            .expect("two complementary weights are valid");
    }
    let raw: Vec<f64> = (0..m.max(1)).map(|_| rng.sample(Exp1)).collect();
    let sum: f64 = raw.iter().sum();
    WeightVector::new(raw.into_iter().map(|x| T::lit(x / sum)).collect())
        .expect("normalized exponential draws are valid weights")
}

// ── Ensemble specification ────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EnsembleKind {
    Pd { h: f64, k: f64 },
    Sectorial { alpha_max: f64 },
}

/// A reproducible stream of `samples` tuples of `m` matrices of size `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    pub m: usize,
    pub kind: EnsembleKind,
    pub seed: u64,
    pub samples: usize,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::Config("ensemble needs n >= 1 and m >= 1".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("ensemble needs samples >= 1".into()));
        }
        match self.kind {
            EnsembleKind::Pd { h, k } => check_bounds(h, k),
            EnsembleKind::Sectorial { alpha_max }
                if !(0.0..std::f64::consts::FRAC_PI_2).contains(&alpha_max) =>
            {
                Err(Error::InvalidAngle(alpha_max))
            }
            EnsembleKind::Sectorial { .. } => Ok(()),
        }
    }

    /// Tuple number `j` of the stream.
    pub fn draw<T: Real>(&self, j: usize) -> Result<Vec<Matrix<T>>> {
        self.validate()?;
        let mut rng = sample_rng(mix_seed(self.seed, "ensemble", self.n, j));
        (0..self.m)
            .map(|_| match self.kind {
                EnsembleKind::Pd { h, k } => rand_pd(self.n, h, k, &mut rng),
                EnsembleKind::Sectorial { alpha_max } => {
                    rand_sectorial(self.n, alpha_max, &mut rng).map(|c| c.matrix)
                }
            })
            .collect()
    }

    pub fn iter<T: Real>(&self) -> impl Iterator<Item = Result<Vec<Matrix<T>>>> + '_ {
        (0..self.samples).map(move |j| self.draw(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, sectorial_angle};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    type M = Matrix<f64>;

    fn rng(seed: u64) -> SampleRng {
        sample_rng(seed)
    }

    #[test]
    fn unitary_is_unitary() {
        for n in 1..=8 {
            let u: M = rand_unitary(n, &mut rng(n as u64));
            assert!((&(&u.adjoint() * &u) - &M::identity(n)).norm_fro() <= 1e-12);
        }
        let u: M = rand_unitary(1, &mut rng(3));
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn isometry_orthonormal() {
        let x = rand_isometry::<f64>(3, 2, &mut rng(1)).unwrap();
        assert!(x.orthonormality_defect() <= 1e-12);
        assert_eq!((x.input_dim(), x.output_dim()), (3, 2));
        let full = rand_isometry::<f64>(3, 3, &mut rng(2)).unwrap();
        assert!(full.orthonormality_defect() <= 1e-12);
        assert!(rand_isometry::<f64>(3, 4, &mut rng(2)).is_err());
    }

    #[test]
    fn pd_bounds_attained() {
        let a: M = rand_pd(5, 1.0, 4.0, &mut rng(9)).unwrap();
        let e = eig_hermitian(&a).unwrap();
        assert!(e.min() >= 1.0 - 1e-10 && (e.min() - 1.0).abs() < 1e-12);
        assert!(e.max() <= 4.0 + 1e-10 && (e.max() - 4.0).abs() < 1e-12);
        assert_eq!(a, a.adjoint());
        let one: M = rand_pd(1, 1.0, 4.0, &mut rng(9)).unwrap();
        assert!((1.0..=4.0).contains(&one[(0, 0)].re));
        assert!(matches!(
            rand_pd::<f64>(2, 3.0, 3.0, &mut rng(0)),
            Err(Error::InvalidBounds { .. })
        ));
    }

    #[test]
    fn sectorial_certificate_matches_certifier() {
        for n in [1, 2, 4, 8] {
            for seed in 0..5 {
                let cert = rand_sectorial::<f64>(n, FRAC_PI_6, &mut rng(seed)).unwrap();
                let measured = sectorial_angle(&cert.matrix).unwrap();
                assert!(
                    (measured.alpha - FRAC_PI_6).abs() <= 1e-8,
                    "{n}: {}",
                    measured.alpha
                );
                assert!((measured.accretivity_margin - cert.accretivity_margin).abs() <= 1e-10);
            }
        }
        let flat = rand_sectorial::<f64>(3, 0.0, &mut rng(1)).unwrap();
        assert_eq!(flat.matrix, flat.matrix.adjoint());
        assert!(matches!(
            rand_sectorial::<f64>(2, FRAC_PI_2, &mut rng(1)),
            Err(Error::InvalidAngle(_))
        ));
    }

    #[test]
    fn weights_sum_to_one() {
        let mut r = rng(5);
        let mut forced = 0;
        for _ in 0..2000 {
            let w: WeightVector<f64> = rand_weights(2, &mut r);
            assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-14);
            if w.iter().fold(1.0, f64::min) < 0.05 {
                forced += 1;
            }
        }
        // ~10% forced plus the natural tail of the exponential ratio
        assert!((150..400).contains(&forced), "{forced}");
        let one: WeightVector<f64> = rand_weights(1, &mut r);
        assert_eq!(one.as_slice(), &[1.0]);
        let many: WeightVector<f64> = rand_weights(5, &mut r);
        assert!(many.iter().all(|x| x > 0.0));
    }

    #[test]
    fn spec_is_deterministic() {
        let spec = EnsembleSpec {
            n: 3,
            m: 2,
            kind: EnsembleKind::Sectorial { alpha_max: 0.4 },
            seed: 11,
            samples: 3,
        };
        let a: Vec<Vec<M>> = spec.iter().collect::<Result<_>>().unwrap();
        let b: Vec<Vec<M>> = spec.iter().collect::<Result<_>>().unwrap();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<EnsembleSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn seeds_differ_by_every_coordinate() {
        let base = mix_seed(1, "a", 2, 3);
        assert_ne!(base, mix_seed(2, "a", 2, 3));
        assert_ne!(base, mix_seed(1, "b", 2, 3));
        assert_ne!(base, mix_seed(1, "a", 3, 3));
        assert_ne!(base, mix_seed(1, "a", 2, 4));
    }
}
