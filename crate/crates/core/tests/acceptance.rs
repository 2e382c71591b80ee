//! Acceptance criteria, one PASS/FAIL line each.
//!
//! The process exits nonzero if any criterion fails, except for those listed in
//! `KNOWN_UNATTAINABLE`: the stated property is false, so the criterion is run
//! as stated, reported as FAIL, and does not break the test suite. If one of
//! them ever passes, that is reported too.

use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use sectorial_means::ensemble::{mix_seed, rand_pd, rand_weights, sample_rng};
use sectorial_means::linalg::{eig_hermitian, herm_part, inv, loewner_cmp, norm2, principal_sqrt};
use sectorial_means::means::{
    ah_mean, arithmetic_mean, geometric_mean, harmonic_mean, resolvent_average,
    resolvent_rep_function, MuParam, WeightVector,
};
use sectorial_means::theorems::{run_all, run_check, RunConfig, MU_NONNEG};
use sectorial_means::{CMatrix, ToleranceConfig};

/// Criteria whose statement does not hold; see `c4`.
const KNOWN_UNATTAINABLE: &[&str] = &["C4"];

const SEED: u64 = 20_240_917;

struct Outcome {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut outcomes = vec![c1(), c2()];
    let (c3, first) = c3();
    outcomes.push(c3);
    outcomes.extend([c4(), c5(), c6(), c7(), c8(&first)]);

    let mut unexpected = 0;
    for o in &outcomes {
        let known = KNOWN_UNATTAINABLE.contains(&o.id);
        let tag = match (o.passed, known) {
            (true, false) => "PASS",
            (true, true) => "PASS (listed as unattainable; update the list)",
            (false, true) => "FAIL (known: the stated identity is false)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("{tag} {} {}: {}", o.id, o.title, o.detail);
    }
    println!(
        "acceptance finished in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

// ── C1 ────────────────────────────────────────────────────────────────────

fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / x.norm().max(y.norm()).max(f64::MIN_POSITIVE)
}

fn oracle_arith(z: &[Complex64], w: &[f64]) -> Complex64 {
    z.iter().zip(w).map(|(z, w)| z * w).sum()
}

fn oracle_harm(z: &[Complex64], w: &[f64]) -> Complex64 {
    1.0 / z.iter().zip(w).map(|(z, w)| w / z).sum::<Complex64>()
}

fn oracle_gm(a: Complex64, b: Complex64, lambda: f64) -> Complex64 {
    ((1.0 - lambda) * a.ln() + lambda * b.ln()).exp()
}

fn oracle_r(z: &[Complex64], w: &[f64], mu: MuParam<f64>) -> Complex64 {
    match mu {
        MuParam::PlusInf => oracle_arith(z, w),
        MuParam::Finite(m) => {
            1.0 / z.iter().zip(w).map(|(z, w)| w / (z + m)).sum::<Complex64>() - m
        }
        MuParam::MinusInf => unreachable!(),
    }
}

fn oracle_l(z: &[Complex64], w: &[f64], mu: MuParam<f64>) -> Complex64 {
    match mu {
        MuParam::PlusInf => oracle_arith(z, w),
        MuParam::MinusInf => oracle_harm(z, w),
        MuParam::Finite(m) if m < 0.0 => {
            let inverted: Vec<Complex64> = z.iter().map(|z| 1.0 / z).collect();
            1.0 / oracle_l(&inverted, w, MuParam::Finite(-m))
        }
        MuParam::Finite(m) => {
            let shifted: Vec<Complex64> = z.iter().map(|z| z + m).collect();
            oracle_gm(oracle_arith(&shifted, w), oracle_harm(&shifted, w), 0.5) - m
        }
    }
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut rng = sample_rng(mix_seed(SEED, "C1", 1, 0));
    let mus_l = [
        MuParam::Finite(-10.0),
        MuParam::Finite(-1.0),
        MuParam::Finite(0.0),
        MuParam::Finite(1.0),
        MuParam::Finite(10.0),
        MuParam::PlusInf,
        MuParam::MinusInf,
    ];
    let mut worst = 0.0f64;
    let mut errors = 0;
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
        let theta = rng.random_range(-FRAC_PI_2 + 0.05..FRAC_PI_2 - 0.05);
        let r = rng.random_range(0.1..10.0);
        Complex64::from_polar(r, theta)
    };
    let one = |z: Complex64| CMatrix::scalar(1, z);
    for _ in 0..1000 {
        let m = rng.random_range(2..=4);
        let z: Vec<Complex64> = (0..m).map(|_| draw(&mut rng)).collect();
        let w: WeightVector<f64> = rand_weights(m, &mut rng);
        let lambda = rng.random_range(0.0..1.0);
        let tuple: Vec<CMatrix> = z.iter().map(|&z| one(z)).collect();
        let mut check = |got: sectorial_means::Result<CMatrix>, want: Complex64| match got {
            Ok(x) => worst = worst.max(rel(x[(0, 0)], want)),
            Err(_) => errors += 1,
        };
        check(arithmetic_mean(&tuple, &w), oracle_arith(&z, w.as_slice()));
        check(harmonic_mean(&tuple, &w), oracle_harm(&z, w.as_slice()));
        check(
            geometric_mean(&tuple[0], &tuple[1], lambda),
            oracle_gm(z[0], z[1], lambda),
        );
        for mu in mus_l {
            if !matches!(mu, MuParam::MinusInf) && !matches!(mu, MuParam::Finite(x) if x < 0.0) {
                check(
                    resolvent_average(&tuple, &w, mu),
                    oracle_r(&z, w.as_slice(), mu),
                );
            }
            check(ah_mean(&tuple, &w, mu), oracle_l(&z, w.as_slice(), mu));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        id: "C1",
        title: "scalar oracle",
        passed: worst <= 1e-12 && errors == 0 && secs < 5.0,
        detail: format!(
            "1000 tuples, worst relative error {worst:.2e}, {errors} errors, {secs:.2}s"
        ),
    }
}

// ── C2 ────────────────────────────────────────────────────────────────────

fn c2() -> Outcome {
    let n = 3;
    let a = CMatrix::scalar(n, Complex64::new(1.0, 1.0));
    let id = CMatrix::identity(n);
    let w = WeightVector::uniform(2).unwrap();
    let one = MuParam::Finite(1.0);
    let re_r = herm_part(&resolvent_average(&[a.clone(), id.clone()], &w, one).unwrap());
    let r_re = resolvent_average(&[herm_part(&a), id.clone()], &w, one).unwrap();
    let err = (&re_r - &id.scale(19.0 / 17.0)).max_abs();
    let v = loewner_cmp(&re_r, &r_re, &ToleranceConfig::default()).unwrap();
    let passed = err <= 1e-12 && !v.leq && (v.margin + 2.0 / 17.0).abs() <= 1e-12;
    Outcome {
        id: "C2",
        title: "counterexample",
        passed,
        detail: format!(
            "max |ℜR_1 − (19/17)I| = {err:.1e}, leq = {}, margin = {:.15} (−2/17 = {:.15})",
            v.leq,
            v.margin,
            -2.0 / 17.0
        ),
    }
}

// ── C3 ────────────────────────────────────────────────────────────────────

fn campaign_config() -> RunConfig {
    RunConfig {
        dims: vec![1, 2, 3, 5, 8],
        samples: 200,
        master_seed: SEED,
        ..RunConfig::default()
    }
}

fn c3() -> (Outcome, String) {
    let start = Instant::now();
    let report = run_all(&campaign_config()).expect("campaign config is valid");
    let secs = start.elapsed().as_secs_f64();
    let required: Vec<_> = report.checks.iter().filter(|c| c.required).collect();
    let bad: Vec<&str> = required
        .iter()
        .filter(|c| {
            !c.passed
                || c.worst_residual.is_some_and(|r| r > 1e-8)
                || c.worst_margin.is_some_and(|m| {
                    m < -1e-8 && c.kind != sectorial_means::theorems::CheckKind::Counterexample
                })
        })
        .map(|c| c.id.as_str())
        .collect();
    let outcome = Outcome {
        id: "C3",
        title: "full campaign",
        passed: bad.is_empty() && secs <= 600.0,
        detail: format!(
            "{} required checks, failing {:?}, exploratory failing {:?}, {secs:.1}s",
            required.len(),
            bad,
            report.summary.exploratory_failed
        ),
    };
    (outcome, report.to_json())
}

// ── C4 ────────────────────────────────────────────────────────────────────

/// `A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}` with `f` the scalar representing
/// function, exactly as the representation is stated.
fn representation(a: &CMatrix, b: &CMatrix, lambda: f64, mu: f64) -> CMatrix {
    let s = principal_sqrt(a).unwrap();
    let s_inv = inv(&s).unwrap();
    let inner = herm_part(&(&(&s_inv * b) * &s_inv));
    let f = eig_hermitian(&inner)
        .unwrap()
        .map_spectrum(|t| Complex64::new(resolvent_rep_function(lambda, mu, t), 0.0));
    &(&s * &f) * &s
}

fn c4() -> Outcome {
    let dims = [1, 2, 3, 5, 8];
    let lambdas = [0.1, 0.5, 0.9];
    let mut worst = 0.0f64;
    let mut failing = 0;
    let mut failing_positive_mu = 0;
    let mut total = 0;
    for j in 0..200 {
        let n = dims[j % dims.len()];
        let mut rng = sample_rng(mix_seed(SEED, "C4", n, j));
        let a: CMatrix = rand_pd(n, 0.5, 4.0, &mut rng).unwrap();
        let b: CMatrix = rand_pd(n, 0.5, 4.0, &mut rng).unwrap();
        for &lambda in &lambdas {
            for mu in MU_NONNEG {
                let m = mu.value();
                let w = WeightVector::new(vec![lambda, 1.0 - lambda]).unwrap();
                let r = resolvent_average(&[a.clone(), b.clone()], &w, mu).unwrap();
                let gap = norm2(&(&r - &representation(&a, &b, lambda, m))) / norm2(&r);
                total += 1;
                worst = worst.max(gap);
                if gap > 1e-8 {
                    failing += 1;
                    if m > 0.0 {
                        failing_positive_mu += 1;
                    }
                }
            }
        }
    }
    Outcome {
        id: "C4",
        title: "Kubo-Ando representation",
        passed: failing == 0,
        detail: format!(
            "{failing}/{total} (pair, λ, μ) cases exceed 1e-8 ({failing_positive_mu} with μ > 0), \
             worst relative gap {worst:.2e}; the shifted form checked by R.isKuboAndo holds"
        ),
    }
}

// ── C5 – C7 ───────────────────────────────────────────────────────────────

fn c5() -> Outcome {
    let config = campaign_config();
    let mut worst = 0.0f64;
    let mut ok = true;
    for id in ["Riccati", "Drury", "L.riccati"] {
        let r = run_check(id, &config).unwrap();
        ok &= r.passed;
        worst = worst.max(r.worst_residual.unwrap_or(f64::INFINITY));
    }
    Outcome {
        id: "C5",
        title: "Riccati and Drury residuals",
        passed: ok && worst <= 1e-8,
        detail: format!("worst residual {worst:.2e} over Riccati, Drury, L.riccati"),
    }
}

fn c6() -> Outcome {
    let config = RunConfig {
        samples: 10,
        ..campaign_config()
    };
    let r = run_check("L.limits", &config).unwrap();
    Outcome {
        id: "C6",
        title: "limits",
        passed: r.passed && r.samples_run == 50,
        detail: format!(
            "{} tuples, {} violations of monotone decrease or final gap",
            r.samples_run, r.failure_count
        ),
    }
}

fn c7() -> Outcome {
    let r = run_check("Kantorovich", &campaign_config()).unwrap();
    let m = r.worst_margin.unwrap_or(f64::INFINITY);
    Outcome {
        id: "C7",
        title: "Kantorovich sharpness",
        passed: r.passed && m <= 0.05,
        detail: format!(
            "worst relative margin {m:.2e} (≤ 0.05 needed), check passed = {}",
            r.passed
        ),
    }
}

// ── C8 ────────────────────────────────────────────────────────────────────

fn c8(first: &str) -> Outcome {
    let second = run_all(&campaign_config()).unwrap().to_json();
    Outcome {
        id: "C8",
        title: "determinism",
        passed: first.as_bytes() == second.as_bytes(),
        detail: format!("two campaign reports of {} bytes compared", first.len()),
    }
}
