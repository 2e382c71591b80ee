use proptest::prelude::*;
use sectorial_means::ensemble::{rand_pd, rand_sectorial, rand_unitary, rand_weights, sample_rng};
use sectorial_means::linalg::{
    herm_part, inv, loewner_cmp, norm2, principal_power, principal_sqrt, relative_residual,
    sectorial_angle,
};
use sectorial_means::means::{
    ah_mean, arithmetic_mean, geometric_mean, harmonic_mean, resolvent_average, MuParam,
};
use sectorial_means::{CMatrix, ToleranceConfig};

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn pd(seed: u64, n: usize) -> CMatrix {
    rand_pd(n, 0.5, 4.0, &mut sample_rng(seed)).unwrap()
}

fn sectorial(seed: u64, n: usize, alpha: f64) -> CMatrix {
    rand_sectorial(n, alpha, &mut sample_rng(seed))
        .unwrap()
        .matrix
}

fn mu_strategy() -> impl Strategy<Value = MuParam<f64>> {
    prop_oneof![
        (0.0..20.0f64).prop_map(MuParam::Finite),
        Just(MuParam::PlusInf),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn inverse_round_trip(seed: u64, n in 1usize..7, alpha in 0.0..1.3f64) {
        let a = sectorial(seed, n, alpha);
        let prod = &a * &inv(&a).unwrap();
        prop_assert!(relative_residual(&prod, &CMatrix::identity(n)) < 1e-12);
    }

    #[test]
    fn powers_compose(seed: u64, n in 1usize..7, alpha in 0.0..1.3f64, p in 0.05..0.95f64) {
        let a = sectorial(seed, n, alpha);
        let x = principal_power(&a, p).unwrap();
        let y = principal_power(&a, 1.0 - p).unwrap();
        prop_assert!(relative_residual(&(&x * &y), &a) < 1e-10);
        let s = principal_sqrt(&a).unwrap();
        prop_assert!(relative_residual(&(&s * &s), &a) < 1e-11);
    }

    #[test]
    fn sector_angle_is_certified(seed: u64, n in 1usize..7, alpha in 0.05..1.3f64) {
        let a = sectorial(seed, n, alpha);
        let cert = sectorial_angle(&a).unwrap();
        prop_assert!(cert.alpha <= alpha + 1e-10);
        if n >= 2 {
            // The ensemble touches the sector boundary.
            prop_assert!((cert.alpha - alpha).abs() < 1e-8);
        }
    }

    #[test]
    fn loewner_order_basics(seed: u64, n in 1usize..7) {
        let a = pd(seed, n);
        let p = pd(seed ^ 1, n);
        prop_assert!(loewner_cmp(&a, &a, &tol()).unwrap().leq);
        prop_assert!(loewner_cmp(&a, &(&a + &p), &tol()).unwrap().leq);
        prop_assert!(!loewner_cmp(&(&a + &p), &a, &tol()).unwrap().leq);
    }

    #[test]
    fn mean_chain(seed: u64, n in 1usize..6, m in 1usize..5, mu in mu_strategy()) {
        let mut rng = sample_rng(seed);
        let tuple: Vec<CMatrix> = (0..m).map(|_| rand_pd(n, 0.5, 4.0, &mut rng).unwrap()).collect();
        let w = rand_weights(m, &mut rng);
        let h = harmonic_mean(&tuple, &w).unwrap();
        let r = resolvent_average(&tuple, &w, mu).unwrap();
        let l = ah_mean(&tuple, &w, mu).unwrap();
        let a = arithmetic_mean(&tuple, &w).unwrap();
        for (x, y) in [(&h, &r), (&r, &l), (&l, &a)] {
            prop_assert!(loewner_cmp(x, y, &tol()).unwrap().leq);
        }
    }

    #[test]
    fn geometric_mean_is_symmetric_and_unitarily_invariant(
        seed: u64,
        n in 1usize..6,
        lambda in 0.0..=1.0f64,
    ) {
        let a = pd(seed, n);
        let b = pd(seed.wrapping_add(7), n);
        let x = geometric_mean(&a, &b, lambda).unwrap();
        let y = geometric_mean(&b, &a, 1.0 - lambda).unwrap();
        prop_assert!(relative_residual(&x, &y) < 1e-10);
        let u: CMatrix = rand_unitary(n, &mut sample_rng(seed ^ 3));
        let conj = |m: &CMatrix| &(&u.adjoint() * m) * &u;
        let z = geometric_mean(&conj(&a), &conj(&b), lambda).unwrap();
        prop_assert!(relative_residual(&z, &conj(&x)) < 1e-10);
    }

    #[test]
    fn accretive_means_stay_accretive(seed: u64, n in 1usize..6, alpha in 0.0..1.3f64, mu in 0.0..10.0f64) {
        let mut rng = sample_rng(seed);
        let tuple: Vec<CMatrix> = (0..3)
            .map(|_| rand_sectorial(n, alpha, &mut rng).unwrap().matrix)
            .collect();
        let w = rand_weights(3, &mut rng);
        for x in [
            resolvent_average(&tuple, &w, MuParam::Finite(mu)).unwrap(),
            ah_mean(&tuple, &w, MuParam::Finite(mu)).unwrap(),
            ah_mean(&tuple, &w, MuParam::Finite(-mu)).unwrap(),
        ] {
            let re = herm_part(&x);
            prop_assert!(sectorial_means::linalg::eig_hermitian(&re).unwrap().min() > 0.0);
        }
    }

    #[test]
    fn json_round_trip_is_exact(seed: u64, n in 1usize..6, alpha in 0.0..1.3f64) {
        let a = sectorial(seed, n, alpha);
        let back = CMatrix::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn mu_text_round_trip(x in -1e6..1e6f64) {
        let mu = MuParam::Finite(x);
        prop_assert_eq!(mu.to_string().parse::<MuParam<f64>>().unwrap(), mu);
    }

    #[test]
    fn norm_bounds(seed: u64, n in 1usize..7) {
        let a = sectorial(seed, n, 0.7);
        let fro = a.norm_fro();
        let two = norm2(&a);
        prop_assert!(two <= fro * (1.0 + 1e-12));
        prop_assert!(fro <= two * (n as f64).sqrt() * (1.0 + 1e-12));
    }
}
