use num_complex::Complex;

use super::positive::gm_constant;
use super::{re, re_all, re_upper, sec2, M, W};
use crate::error::Result;
use crate::linalg::{eig_hermitian, gamma_angle, inv, principal_sqrt, shifted_angle_bound};
use crate::means::{
    ah_mean, arithmetic_mean, harmonic_mean, resolvent_average, resolvent_rep_function, MuParam,
};
use crate::theorems::{CheckKind::*, CheckSpec, Hypothesis, MuDomain, SampleCtx};
use crate::theorems::{MU_NONNEG, SECTORIAL_RE_BOUNDS};

/// `ℜ R_1(((1+i)I, I), (½, ½))`, worked out by hand from the scalar case.
pub const COUNTEREXAMPLE_RE: f64 = 19.0 / 17.0;

/// The value printed for the same quantity in the source, `(36 − √17)/√17`.
pub fn counterexample_printed() -> f64 {
    (36.0 - 17f64.sqrt()) / 17f64.sqrt()
}

/// Grid for the scalar representing function: `f(1) = 1` and `f` increasing.
const REP_T_GRID: [f64; 7] = [0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0];

pub(super) fn checks() -> Vec<CheckSpec> {
    let sect = Hypothesis::sectorial().mu(MuDomain::NonNegative, &MU_NONNEG);
    let pd = Hypothesis::pd().mu(MuDomain::NonNegative, &MU_NONNEG);
    vec![
        CheckSpec::new(
            "counterexample.ReR",
            Counterexample,
            Hypothesis::fixed(),
            "ℜR_1(((1+i)I, I), (½, ½)) = (19/17)I, which exceeds R_1((I, I), (½, ½)) = I, \
             so ℜR_μ(A) ≤ R_μ(ℜA) fails in general",
            counterexample,
        ),
        CheckSpec::new(
            "counterexample.ReR.printed",
            Counterexample,
            Hypothesis::fixed(),
            "ℜR_1(((1+i)I, I), (½, ½)) = ((36 − √17)/√17) I",
            counterexample_printed_value,
        )
        .exploratory(),
        CheckSpec::new(
            "Sect.R.lower",
            Inequality,
            sect,
            "A_i ∈ S_α: R_μ(ℜA, λ) + μI ≤ sec²γ (ℜR_μ(A, λ) + μI),  \
             tan γ = tan α · ρ/(ρ+μ), ρ = max_i λ_max(ℜA_i)",
            |ctx| lower(ctx, Angle::Shifted),
        ),
        CheckSpec::new(
            "Sect.R.lower.printed",
            Inequality,
            sect,
            "A_i ∈ S_α: R_μ(ℜA, λ) + μI ≤ sec²γ (ℜR_μ(A, λ) + μI),  tan γ = tan α/(1+μ)",
            |ctx| lower(ctx, Angle::Printed),
        )
        .exploratory(),
        CheckSpec::new(
            "Sect.R.upper",
            Inequality,
            sect,
            "A_i ∈ S_α: ℜR_μ(A, λ) + μI ≤ sec²γ (R_μ(ℜA, λ) + μI),  \
             tan γ = tan α · ρ/(ρ+μ), ρ = max_i λ_max(ℜA_i)",
            |ctx| upper(ctx, Angle::Shifted),
        ),
        CheckSpec::new(
            "Sect.R.upper.printed",
            Inequality,
            sect,
            "A_i ∈ S_α: ℜR_μ(A, λ) + μI ≤ sec²γ (R_μ(ℜA, λ) + μI),  tan γ = tan α/(1+μ)",
            |ctx| upper(ctx, Angle::Printed),
        )
        .exploratory(),
        CheckSpec::new(
            "Sect.R.sandwich",
            Inequality,
            sect,
            "cos²γ X − μ sin²γ I ≤ Y ≤ sec²γ X + μ tan²γ I for (X, Y) = (ℜR_μ(A), R_μ(ℜA)) \
             and (R_μ(ℜA), ℜR_μ(A)); cos²γ H(ℜA) − μ sin²γ I ≤ ℜR_μ(A) ≤ sec²γ A(ℜA) + μ tan²γ I",
            sandwich,
        ),
        CheckSpec::new(
            "Sect.R.vsGM",
            Inequality,
            sect.bounded(),
            "A, B ∈ S_α, hI ≤ ℜA, ℜB ≤ kI: \
             ℜR_μ((A, B), (1-λ, λ)) + μI ≥ C cos²γ (cos²α ℜ(A #_λ B) + μI), \
             tan γ = tan α · ρ/(ρ+μ)",
            |ctx| vs_gm(ctx, Angle::Shifted),
        ),
        CheckSpec::new(
            "Sect.R.vsGM.printed",
            Inequality,
            sect.bounded(),
            "A, B ∈ S_α, hI ≤ ℜA, ℜB ≤ kI: \
             ℜR_μ((A, B), (1-λ, λ)) + μI ≥ C cos²γ (cos²α ℜ(A #_λ B) + μI), tan γ = tan α/(1+μ)",
            |ctx| vs_gm(ctx, Angle::Printed),
        )
        .exploratory(),
        CheckSpec::new(
            "R.isKuboAndo",
            Equality,
            pd,
            "R_μ((A, B), (λ, 1-λ)) + μI = P^{1/2} g(P^{-1/2} Q P^{-1/2}) P^{1/2}, P = A+μI, Q = B+μI, \
             g(x) = (λ + (1-λ)/x)^{-1}; R_μ((I, B), (λ, 1-λ)) = f(B) and \
             R_0((A, B), (λ, 1-λ)) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} with \
             f(t) = (λ/(1+μ) + (1-λ)/(t+μ))^{-1} − μ; f(1) = 1, f increasing",
            kubo_ando,
        ),
        CheckSpec::new(
            "R.isKuboAndo.printed",
            Equality,
            pd,
            "R_μ((A, B), (λ, 1-λ)) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}, \
             f(t) = (λ/(1+μ) + (1-λ)/(t+μ))^{-1} − μ",
            kubo_ando_printed,
        )
        .exploratory(),
        CheckSpec::new(
            "L.sect.lower",
            Inequality,
            sect,
            "A_i ∈ S_α: L_μ(ℜA, λ) ≤ sec α ℜL_μ(A, λ) + (sec α − 1)μI",
            |ctx| l_lower(ctx, Angle::Sector),
        ),
        CheckSpec::new(
            "L.sect.lower.printed",
            Inequality,
            sect,
            "A_i ∈ S_α: L_μ(ℜA, λ) ≤ sec γ ℜL_μ(A, λ) + (sec γ − 1)μI,  tan γ = tan α/(1+μ)",
            |ctx| l_lower(ctx, Angle::Printed),
        )
        .exploratory(),
        CheckSpec::new(
            "L.sect.upper",
            Inequality,
            sect,
            "A_i ∈ S_α: ℜL_μ(A, λ) ≤ sec³γ L_μ(ℜA, λ) + (sec³γ − 1)μI,  \
             tan γ = tan α · ρ/(ρ+μ), ρ = max_i λ_max(ℜA_i)",
            |ctx| l_upper(ctx, Angle::Shifted),
        ),
        CheckSpec::new(
            "L.sect.upper.printed",
            Inequality,
            sect,
            "A_i ∈ S_α: ℜL_μ(A, λ) ≤ sec³γ L_μ(ℜA, λ) + (sec³γ − 1)μI,  tan γ = tan α/(1+μ)",
            |ctx| l_upper(ctx, Angle::Printed),
        )
        .exploratory(),
    ]
}

/// Which angle a sectorial bound is evaluated with.
#[derive(Clone, Copy)]
enum Angle {
    /// `α` itself.
    Sector,
    /// `atan(tan α/(1+μ))`, valid as a sector for `A + μI` only when `ℜA ≤ I`.
    Printed,
    /// `atan(tan α · ρ/(ρ+μ))` with `ρ` the largest eigenvalue of the `ℜA_i`,
    /// a certified sector for every `A_i + μI`.
    Shifted,
}

impl Angle {
    fn eval(self, alpha: f64, mu: f64, tuple: &[M]) -> Result<f64> {
        Ok(match self {
            Self::Sector => alpha,
            Self::Printed => gamma_angle(alpha, mu),
            Self::Shifted => shifted_angle_bound(alpha, mu, re_upper(tuple)?),
        })
    }
}

fn counterexample_matrix(ctx: &SampleCtx) -> Result<(M, M)> {
    let n = ctx.n;
    let a = M::scalar(n, Complex::new(1.0, 1.0));
    let w = W::uniform(2)?;
    let r = resolvent_average(&[a.clone(), M::identity(n)], &w, MuParam::Finite(1.0))?;
    let r_re = resolvent_average(&[re(&a), M::identity(n)], &w, MuParam::Finite(1.0))?;
    Ok((re(&r), r_re))
}

fn counterexample(ctx: &mut SampleCtx) -> Result<()> {
    let (re_r, r_re) = counterexample_matrix(ctx)?;
    ctx.value(re_r[(0, 0)].re);
    let expected = M::identity(ctx.n).scale(COUNTEREXAMPLE_RE);
    ctx.eq("ℜR_1 = (19/17)I", &re_r, &expected)?;
    ctx.eq("R_1(ℜA) = I", &r_re, &M::identity(ctx.n))?;
    ctx.violates("ℜR_1(A) ≤ R_1(ℜA)", &re_r, &r_re)
}

fn counterexample_printed_value(ctx: &mut SampleCtx) -> Result<()> {
    let (re_r, r_re) = counterexample_matrix(ctx)?;
    ctx.value(re_r[(0, 0)].re);
    let printed = M::identity(ctx.n).scale(counterexample_printed());
    ctx.eq("ℜR_1 = (36 − √17)/√17 I", &re_r, &printed)?;
    ctx.violates("ℜR_1(A) ≤ R_1(ℜA)", &re_r, &r_re)
}

struct SectDraw {
    alpha: f64,
    mu: f64,
    a: Vec<M>,
    re: Vec<M>,
    w: W,
}

fn sect_draw(ctx: &mut SampleCtx) -> Result<SectDraw> {
    let alpha = ctx.alpha()?;
    let mu = ctx.mu_finite()?;
    let m = ctx.tuple_len();
    let a = ctx.sectorial_tuple(m)?;
    let w = ctx.weights(m);
    Ok(SectDraw {
        alpha,
        mu,
        re: re_all(&a),
        a,
        w,
    })
}

fn means_r(d: &SectDraw) -> Result<(M, M)> {
    let mu = MuParam::Finite(d.mu);
    let re_r = re(&resolvent_average(&d.a, &d.w, mu)?);
    let r_re = resolvent_average(&d.re, &d.w, mu)?;
    Ok((re_r, r_re))
}

fn lower(ctx: &mut SampleCtx, angle: Angle) -> Result<()> {
    let d = sect_draw(ctx)?;
    let s = sec2(angle.eval(d.alpha, d.mu, &d.a)?);
    let (re_r, r_re) = means_r(&d)?;
    ctx.leq(
        "R_μ(ℜA) + μ ≤ sec²γ (ℜR_μ(A) + μ)",
        &r_re.shift(d.mu),
        &re_r.shift(d.mu).scale(s),
    )
}

fn upper(ctx: &mut SampleCtx, angle: Angle) -> Result<()> {
    let d = sect_draw(ctx)?;
    let s = sec2(angle.eval(d.alpha, d.mu, &d.a)?);
    let (re_r, r_re) = means_r(&d)?;
    ctx.leq(
        "ℜR_μ(A) + μ ≤ sec²γ (R_μ(ℜA) + μ)",
        &re_r.shift(d.mu),
        &r_re.shift(d.mu).scale(s),
    )
}

/// `cos²γ X − μ sin²γ ≤ Y ≤ sec²γ X + μ tan²γ`.
fn sandwich_pair(
    ctx: &mut SampleCtx,
    label: &str,
    gamma: f64,
    mu: f64,
    x: &M,
    y: &M,
) -> Result<()> {
    let (c2, s2) = (gamma.cos().powi(2), gamma.sin().powi(2));
    let t2 = gamma.tan().powi(2);
    ctx.leq(label, &x.scale(c2).shift(-mu * s2), y)?;
    ctx.leq(label, y, &x.scale(1.0 / c2).shift(mu * t2))
}

fn sandwich(ctx: &mut SampleCtx) -> Result<()> {
    let d = sect_draw(ctx)?;
    let gamma = Angle::Shifted.eval(d.alpha, d.mu, &d.a)?;
    let (re_r, r_re) = means_r(&d)?;
    sandwich_pair(ctx, "ℜR_μ(A) around R_μ(ℜA)", gamma, d.mu, &re_r, &r_re)?;
    sandwich_pair(ctx, "R_μ(ℜA) around ℜR_μ(A)", gamma, d.mu, &r_re, &re_r)?;
    let (c2, s2, t2) = (
        gamma.cos().powi(2),
        gamma.sin().powi(2),
        gamma.tan().powi(2),
    );
    let h = harmonic_mean(&d.re, &d.w)?;
    let ar = arithmetic_mean(&d.re, &d.w)?;
    ctx.leq(
        "cos²γ H(ℜA) − μ sin²γ ≤ ℜR_μ(A)",
        &h.scale(c2).shift(-d.mu * s2),
        &re_r,
    )?;
    ctx.leq(
        "ℜR_μ(A) ≤ sec²γ A(ℜA) + μ tan²γ",
        &re_r,
        &ar.scale(1.0 / c2).shift(d.mu * t2),
    )
}

fn vs_gm(ctx: &mut SampleCtx, angle: Angle) -> Result<()> {
    let alpha = ctx.alpha()?;
    let mu = ctx.mu_finite()?;
    let lambda = ctx.lambda();
    let pair = ctx.sectorial_tuple(2)?;
    let (h, k) = SECTORIAL_RE_BOUNDS;
    let t = lambda.min(1.0 - lambda);
    let c = gm_constant(h, k, mu, t);
    let gamma = angle.eval(alpha, mu, &pair)?;
    let r = resolvent_average(&pair, &W::pair(lambda)?, MuParam::Finite(mu))?;
    let g = re(&ctx.gm(&pair[0], &pair[1], lambda)?);
    let lhs = g
        .scale(alpha.cos().powi(2))
        .shift(mu)
        .scale(c * gamma.cos().powi(2));
    ctx.leq(
        "C cos²γ (cos²α ℜ(A #_λ B) + μ) ≤ ℜR_μ + μ",
        &lhs,
        &re(&r).shift(mu),
    )
}

/// `A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}` for PD `A`, `B` and scalar `f`.
fn congruence_form(a: &M, b: &M, f: impl Fn(f64) -> f64) -> Result<M> {
    let s = principal_sqrt(a)?;
    let s_inv = inv(&s)?;
    let inner = crate::linalg::herm_part(&(&(&s_inv * b) * &s_inv));
    let fx = eig_hermitian(&inner)?.map_spectrum(|x| Complex::new(f(x), 0.0));
    Ok(crate::linalg::herm_part(&(&(&s * &fx) * &s)))
}

fn kubo_ando(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu_finite()?;
    let lambda = ctx.lambda();
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let n = ctx.n;
    let w = W::new(vec![lambda, 1.0 - lambda])?;
    let pair = [a.clone(), b.clone()];

    let r = resolvent_average(&pair, &w, MuParam::Finite(mu))?;
    let g = |x: f64| 1.0 / (lambda + (1.0 - lambda) / x);
    let rep = congruence_form(&a.shift(mu), &b.shift(mu), g)?.shift(-mu);
    ctx.eq("shifted representation", &r, &rep)?;

    let f = |t: f64| resolvent_rep_function(lambda, mu, t);
    let at_identity = resolvent_average(&[M::identity(n), b.clone()], &w, MuParam::Finite(mu))?;
    let fb = eig_hermitian(&b)?.map_spectrum(|x| Complex::new(f(x), 0.0));
    ctx.eq("R_μ(I, B) = f(B)", &at_identity, &fb)?;

    let f0 = |t: f64| resolvent_rep_function(lambda, 0.0, t);
    let r0 = resolvent_average(&pair, &w, MuParam::Finite(0.0))?;
    ctx.eq("μ = 0 representation", &r0, &congruence_form(&a, &b, f0)?)?;

    let f1 = f(1.0);
    ctx.holds("f(1) = 1", (f1 - 1.0).abs() <= 1e-12, || {
        format!("f(1) = {f1}")
    });
    let vals: Vec<f64> = REP_T_GRID.iter().map(|&t| f(t)).collect();
    ctx.holds("f increasing", vals.windows(2).all(|p| p[1] > p[0]), || {
        format!("f on grid = {vals:?}")
    });
    Ok(())
}

fn kubo_ando_printed(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu_finite()?;
    let lambda = ctx.lambda();
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let w = W::new(vec![lambda, 1.0 - lambda])?;
    let r = resolvent_average(&[a.clone(), b.clone()], &w, MuParam::Finite(mu))?;
    let rep = congruence_form(&a, &b, |t| resolvent_rep_function(lambda, mu, t))?;
    ctx.eq("R_μ(A, B) = A^½ f(A^-½ B A^-½) A^½", &r, &rep)
}

fn l_lower(ctx: &mut SampleCtx, angle: Angle) -> Result<()> {
    let d = sect_draw(ctx)?;
    let sec = 1.0 / angle.eval(d.alpha, d.mu, &d.a)?.cos();
    let mu = MuParam::Finite(d.mu);
    let l_re = ah_mean(&d.re, &d.w, mu)?;
    let re_l = re(&ah_mean(&d.a, &d.w, mu)?);
    ctx.leq(
        "L_μ(ℜA) ≤ sec ℜL_μ(A) + (sec − 1)μ",
        &l_re,
        &re_l.scale(sec).shift((sec - 1.0) * d.mu),
    )
}

fn l_upper(ctx: &mut SampleCtx, angle: Angle) -> Result<()> {
    let d = sect_draw(ctx)?;
    let sec3 = angle.eval(d.alpha, d.mu, &d.a)?.cos().powi(-3);
    let mu = MuParam::Finite(d.mu);
    let l_re = ah_mean(&d.re, &d.w, mu)?;
    let re_l = re(&ah_mean(&d.a, &d.w, mu)?);
    ctx.leq(
        "ℜL_μ(A) ≤ sec³γ L_μ(ℜA) + (sec³γ − 1)μ",
        &re_l,
        &l_re.scale(sec3).shift((sec3 - 1.0) * d.mu),
    )
}
