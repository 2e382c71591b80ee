use super::{re_all, scalar_arith, scale_mu, shift_of, M, W};
use crate::ensemble::rand_isometry;
use crate::error::Result;
use crate::maps::Pulm;
use crate::means::{ah_mean, arithmetic_mean, resolvent_average, MuParam};
use crate::theorems::{CheckKind::*, CheckSpec, Hypothesis, MuDomain, SampleCtx};
use crate::theorems::{MU_ALL, MU_NONNEG, MU_POSITIVE, SECTORIAL_RE_BOUNDS};

pub(super) fn checks() -> Vec<CheckSpec> {
    let pd_nonneg = Hypothesis::pd().mu(MuDomain::NonNegative, &MU_NONNEG);
    let pd_pos = Hypothesis::pd().mu(MuDomain::Positive, &MU_POSITIVE);
    let pd_all = Hypothesis::pd().mu(MuDomain::All, &MU_ALL);
    let sect = Hypothesis::sectorial()
        .bounded()
        .mu(MuDomain::NonNegative, &MU_NONNEG);
    vec![
        CheckSpec::new(
            "Phi.harmMean",
            Inequality,
            pd_nonneg,
            "Φ((Σ λ_i (A_i + μI)^{-1})^{-1}) ≤ (Σ λ_i (Φ(A_i) + μI)^{-1})^{-1}",
            harm_mean,
        ),
        CheckSpec::new(
            "Phi.R",
            Inequality,
            pd_pos,
            "Φ(R_μ(A, λ)) ≤ R_μ(Φ(A), λ),  μ > 0",
            phi_r,
        ),
        CheckSpec::new(
            "Phi.R.reverse",
            Inequality,
            pd_pos.bounded(),
            "hI ≤ A_i ≤ kI  ⇒  R_μ(Φ(A), λ) ≤ β^{-1} Φ(R_{βμ}(A, λ)),  β = 4hk/(k+h)²",
            phi_r_reverse,
        ),
        CheckSpec::new(
            "R.vsGM",
            Inequality,
            pd_nonneg.bounded(),
            "hI ≤ A, B ≤ kI  ⇒  R_μ((A, B), (1-λ, λ)) + μI ≥ C (A #_λ B + μI), \
             C = (k' #_t h')/(k' ∇_t h'), k' = 1/(k+μ), h' = 1/(h+μ), t = min(λ, 1-λ); \
             and R_μ ≥ C (h #_t k)/(h ∇_t k) ((1-λ)A + λB) − μ(1-C)I",
            r_vs_gm,
        ),
        CheckSpec::new(
            "R.vsL.twovar",
            Inequality,
            pd_nonneg,
            "R_μ((A, B), (½, ½)) + μI ≤ (A + μI) # (B + μI)",
            r_vs_l_twovar,
        ),
        CheckSpec::new(
            "Phi.L",
            Inequality,
            pd_all,
            "Φ(L_μ(A, λ)) ≤ L_μ(Φ(A), λ),  μ ∈ [−∞, ∞]",
            phi_l,
        ),
        CheckSpec::new(
            "Phi.L.reverse",
            Inequality,
            pd_all.bounded(),
            "hI ≤ A_i ≤ kI  ⇒  L_μ(Φ(A), λ) ≤ β^{-1} Φ(L_{βμ}(A, λ)),  β = 4hk/(k+h)²",
            phi_l_reverse,
        ),
        CheckSpec::new(
            "Phi.R.sect.reverse",
            Inequality,
            sect,
            "hI ≤ ℜA_i + μI ≤ kI  ⇒  β R_μ(Φ(ℜA), λ) ≤ Φ(R_μ(ℜA, λ)) + ((k-h)/(k+h))² μI",
            phi_r_sect_reverse,
        ),
        CheckSpec::new(
            "Phi.R.sect.isometry",
            Inequality,
            sect,
            "X*X = I, hI ≤ ℜA_i + μI ≤ kI  ⇒  \
             β R_μ(X*ℜA X, λ) ≤ X* R_μ(ℜA, λ) X + ((k-h)/(k+h))² μI",
            phi_r_sect_isometry,
        ),
    ]
}

fn beta(h: f64, k: f64) -> f64 {
    4.0 * h * k / (h + k).powi(2)
}

struct Draw {
    a: Vec<M>,
    w: W,
    phi: Pulm<f64>,
}

fn draw(ctx: &mut SampleCtx) -> Result<Draw> {
    let phi = ctx.square_pulm()?;
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let w = ctx.weights(m);
    Ok(Draw { a, w, phi })
}

fn harm_mean(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu_finite()?;
    let d = draw(ctx)?;
    let shifted = |t: &[M]| -> Vec<M> { t.iter().map(|x| x.shift(mu)).collect() };
    let harm = |t: &[M]| resolvent_average(&shifted(t), &d.w, MuParam::Finite(0.0));
    let lhs = d.phi.apply(&harm(&d.a)?)?;
    let rhs = harm(&d.phi.apply_all(&d.a)?)?;
    ctx.leq("Φ(H(A+μ)) ≤ H(Φ(A)+μ)", &lhs, &rhs)
}

fn phi_r(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let d = draw(ctx)?;
    let lhs = d.phi.apply(&resolvent_average(&d.a, &d.w, mu)?)?;
    let rhs = resolvent_average(&d.phi.apply_all(&d.a)?, &d.w, mu)?;
    ctx.leq("Φ(R_μ(A)) ≤ R_μ(Φ(A))", &lhs, &rhs)
}

fn phi_r_reverse(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let (h, k) = ctx.bounds();
    let d = draw(ctx)?;
    let b = beta(h, k);
    let lhs = resolvent_average(&d.phi.apply_all(&d.a)?, &d.w, mu)?;
    let rhs = d
        .phi
        .apply(&resolvent_average(&d.a, &d.w, scale_mu(mu, b))?)?
        .scale(1.0 / b);
    ctx.leq("R_μ(Φ(A)) ≤ Φ(R_βμ(A))/β", &lhs, &rhs)
}

/// `C = ((k' ∇_t h') / (k' #_t h'))^{-1}` with `k' = 1/(k+μ)`, `h' = 1/(h+μ)`.
pub(super) fn gm_constant(h: f64, k: f64, mu: f64, t: f64) -> f64 {
    let ks = 1.0 / (k + mu);
    let hs = 1.0 / (h + mu);
    super::scalar_geo(ks, hs, t) / scalar_arith(ks, hs, t)
}

fn r_vs_gm(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu_finite()?;
    let lambda = ctx.lambda();
    let (h, k) = ctx.bounds();
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let t = lambda.min(1.0 - lambda);
    let c = gm_constant(h, k, mu, t);
    let pair = [a.clone(), b.clone()];
    let w = W::pair(lambda)?;
    let r = resolvent_average(&pair, &w, MuParam::Finite(mu))?;
    let lhs = ctx.gm(&a, &b, lambda)?.shift(mu).scale(c);
    ctx.leq("C(A #_λ B + μ) ≤ R_μ + μ", &lhs, &r.shift(mu))?;

    let ag = scalar_arith(h, k, t) / super::scalar_geo(h, k, t);
    let lower = arithmetic_mean(&pair, &w)?
        .scale(c / ag)
        .shift(-mu * (1.0 - c));
    ctx.leq("arithmetic-mean lower bound", &lower, &r)
}

fn r_vs_l_twovar(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu_finite()?;
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let r = resolvent_average(
        &[a.clone(), b.clone()],
        &W::uniform(2)?,
        MuParam::Finite(mu),
    )?;
    let g = ctx.gm(&a.shift(mu), &b.shift(mu), 0.5)?;
    ctx.leq("R_μ + μ ≤ (A+μ) # (B+μ)", &r.shift(mu), &g)
}

fn phi_l(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let d = draw(ctx)?;
    let lhs = d.phi.apply(&ah_mean(&d.a, &d.w, mu)?)?;
    let rhs = ah_mean(&d.phi.apply_all(&d.a)?, &d.w, mu)?;
    ctx.leq("Φ(L_μ(A)) ≤ L_μ(Φ(A))", &lhs, &rhs)
}

fn phi_l_reverse(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let (h, k) = ctx.bounds();
    let d = draw(ctx)?;
    let b = beta(h, k);
    let lhs = ah_mean(&d.phi.apply_all(&d.a)?, &d.w, mu)?;
    let rhs = d
        .phi
        .apply(&ah_mean(&d.a, &d.w, scale_mu(mu, b))?)?
        .scale(1.0 / b);
    ctx.leq("L_μ(Φ(A)) ≤ Φ(L_βμ(A))/β", &lhs, &rhs)
}

fn sect_reverse_with(ctx: &mut SampleCtx, phi: &Pulm<f64>) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let re = re_all(&ctx.sectorial_tuple(m)?);
    let w = ctx.weights(m);
    let shift = shift_of(mu);
    let (h, k) = (SECTORIAL_RE_BOUNDS.0 + shift, SECTORIAL_RE_BOUNDS.1 + shift);
    let b = beta(h, k);
    let lhs = resolvent_average(&phi.apply_all(&re)?, &w, mu)?.scale(b);
    let corr = ((k - h) / (k + h)).powi(2) * shift;
    let rhs = phi.apply(&resolvent_average(&re, &w, mu)?)?.shift(corr);
    ctx.leq("β R_μ(Φ(ℜA)) ≤ Φ(R_μ(ℜA)) + c μ", &lhs, &rhs)
}

fn phi_r_sect_reverse(ctx: &mut SampleCtx) -> Result<()> {
    let phi = ctx.square_pulm()?;
    sect_reverse_with(ctx, &phi)
}

fn phi_r_sect_isometry(ctx: &mut SampleCtx) -> Result<()> {
    use rand::Rng;
    let k = ctx.rng.random_range(1..=ctx.n);
    let x = rand_isometry(ctx.n, k, &mut ctx.rng)?;
    sect_reverse_with(ctx, &Pulm::compression(x))
}
