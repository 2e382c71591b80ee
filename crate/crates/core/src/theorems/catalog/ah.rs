use rand::seq::SliceRandom;

use super::resolvent::ordered;
use super::{inv_all, neg_mu, scale_mu, M, MU_ONE, MU_ZERO, W};
use crate::error::Result;
use crate::linalg::{inv, norm2};
use crate::means::{
    ah_mean, ah_riccati_residual, arithmetic_mean, harmonic_mean, resolvent_average, MuParam,
};
use crate::theorems::{CheckKind::*, CheckSpec, Hypothesis, MuDomain, SampleCtx};
use crate::theorems::{CONCAVITY_T, HOMOGENEITY_FACTORS, MU_ALL, MU_NONNEG, MU_NONNEG_INF};

/// Shifts approaching the limits `μ → ±∞`.
const LIMIT_GRID: [f64; 4] = [10.0, 1e2, 1e3, 1e4];
/// Largest gap to the limiting mean allowed at the last grid point, relative to its norm.
const LIMIT_GAP: f64 = 1e-2;
/// Gaps below this multiple of the target norm are round-off, so successive
/// gaps that are both under it count as converged rather than non-decreasing.
const LIMIT_FLOOR: f64 = 1e-13;

pub(super) fn checks() -> Vec<CheckSpec> {
    let acc = Hypothesis::sectorial().mu(MuDomain::All, &MU_ALL);
    let pd = Hypothesis::pd().mu(MuDomain::All, &MU_ALL);
    vec![
        CheckSpec::new(
            "L.idempotency",
            Equality,
            acc,
            "L_μ((A, …, A), λ) = A",
            idempotency,
        ),
        CheckSpec::new(
            "L.selfdual",
            Equality,
            acc,
            "L_μ(A^{-1}, λ)^{-1} = L_{-μ}(A, λ)",
            selfdual,
        ),
        CheckSpec::new(
            "L.unitary",
            Equality,
            acc,
            "L_μ(U*AU, λ) = U* L_μ(A, λ) U",
            unitary,
        ),
        CheckSpec::new(
            "L.permute",
            Equality,
            acc,
            "L_μ(Aσ, λσ) = L_μ(A, λ) for every permutation σ",
            permute,
        ),
        CheckSpec::new(
            "L.homog",
            Equality,
            acc,
            "L_μ(sA, λ) = s L_{μ/s}(A, λ) for μ ≥ 0 and s L_{sμ}(A, λ) for μ < 0,  s > 0",
            homog,
        ),
        CheckSpec::new(
            "L.homog.printed",
            Equality,
            acc,
            "L_μ(sA, λ) = s L_{μ/s}(A, λ) for all μ,  s > 0",
            homog_printed,
        )
        .exploratory(),
        CheckSpec::new(
            "L.monotone",
            Inequality,
            pd,
            "A_i ≤ B_i  ⇒  L_μ(A, λ) ≤ L_μ(B, λ)",
            monotone,
        ),
        CheckSpec::new(
            "L.vsR",
            Inequality,
            Hypothesis::pd().mu(MuDomain::NonNegative, &MU_NONNEG_INF),
            "R_μ(A, λ) ≤ L_μ(A, λ),  μ ≥ 0",
            vs_r,
        ),
        CheckSpec::new(
            "L.invPairs",
            Equality,
            Hypothesis::sectorial().mu(MuDomain::NonNegative, &MU_ZERO),
            "L_0((A_1, A_1^{-1}, …, A_m, A_m^{-1}), 1/(2m)) = I",
            inv_pairs,
        ),
        CheckSpec::new(
            "L.invPairs.printed",
            Equality,
            Hypothesis::sectorial().mu(MuDomain::Positive, &MU_ONE),
            "L_1((A_1, A_1^{-1}, …, A_m, A_m^{-1}), 1/(2m)) = I",
            inv_pairs,
        )
        .exploratory(),
        CheckSpec::new(
            "L.muMonotone",
            Inequality,
            pd,
            "μ ≤ ν  ⇒  L_μ(A, λ) ≤ L_ν(A, λ)",
            mu_monotone,
        ),
        CheckSpec::new(
            "L.twovar",
            Equality,
            Hypothesis::sectorial().mu(MuDomain::NonNegative, &MU_NONNEG),
            "L_μ((A, B), (½, ½)) = (A + μI) # (B + μI) − μI,  μ ≥ 0",
            twovar,
        ),
        CheckSpec::new(
            "L.jointConcave",
            Inequality,
            pd,
            "t L_μ(A, λ) + (1-t) L_μ(B, λ) ≤ L_μ(tA + (1-t)B, λ)",
            joint_concave,
        ),
        CheckSpec::new(
            "L.chain",
            Inequality,
            pd,
            "H_λ(A) ≤ L_μ(A, λ) ≤ A_λ(A); for μ ≥ 0 also H_λ(A) ≤ R_μ(A, λ) ≤ L_μ(A, λ)",
            chain,
        ),
        CheckSpec::new(
            "L.riccati",
            Equality,
            Hypothesis::sectorial().mu(MuDomain::NonNegative, &MU_NONNEG),
            "X = L_μ(A, λ) + μI solves Σ λ_i X (A_i + μI)^{-1} X = Σ λ_i (A_i + μI)",
            riccati,
        ),
        CheckSpec::new(
            "L.limits",
            Limit,
            Hypothesis::pd(),
            "L_μ(A, λ) → A_λ(A) as μ → +∞ and → H_λ(A) as μ → −∞, monotonically in norm",
            limits,
        ),
    ]
}

fn idempotency(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(1)?.remove(0);
    let w = ctx.weights(m);
    let l = ah_mean(&vec![a.clone(); m], &w, mu)?;
    ctx.eq("L(A, …, A) = A", &l, &a)
}

fn selfdual(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let lhs = inv(&ah_mean(&inv_all(&a)?, &w, mu)?)?;
    let rhs = ah_mean(&a, &w, neg_mu(mu))?;
    ctx.eq("L_μ(A^-1)^-1 = L_-μ(A)", &lhs, &rhs)
}

fn unitary(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let u = ctx.unitary();
    let ua: Vec<M> = a.iter().map(|x| &(&u.adjoint() * x) * &u).collect();
    let lhs = ah_mean(&ua, &w, mu)?;
    let rhs = &(&u.adjoint() * &ah_mean(&a, &w, mu)?) * &u;
    ctx.eq("unitary invariance", &lhs, &rhs)
}

fn permute(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut ctx.rng);
    let pa: Vec<M> = order.iter().map(|&i| a[i].clone()).collect();
    let pw = W::new(order.iter().map(|&i| w.as_slice()[i]).collect())?;
    let lhs = ah_mean(&pa, &pw, mu)?;
    let rhs = ah_mean(&a, &w, mu)?;
    ctx.eq("permutation invariance", &lhs, &rhs)
}

fn homog_with(ctx: &mut SampleCtx, rule: fn(MuParam<f64>, f64) -> MuParam<f64>) -> Result<()> {
    let mu = ctx.mu()?;
    let s = ctx.pick(&HOMOGENEITY_FACTORS);
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let sa: Vec<M> = a.iter().map(|x| x.scale(s)).collect();
    let lhs = ah_mean(&sa, &w, mu)?;
    let rhs = ah_mean(&a, &w, rule(mu, s))?.scale(s);
    ctx.eq("homogeneity", &lhs, &rhs)
}

fn homog(ctx: &mut SampleCtx) -> Result<()> {
    homog_with(ctx, |mu, s| match mu {
        MuParam::Finite(m) if m < 0.0 => MuParam::Finite(m * s),
        other => scale_mu(other, 1.0 / s),
    })
}

fn homog_printed(ctx: &mut SampleCtx) -> Result<()> {
    homog_with(ctx, |mu, s| scale_mu(mu, 1.0 / s))
}

fn monotone(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let b = a
        .iter()
        .map(|x| ctx.pd_above(x, 1.0))
        .collect::<Result<Vec<_>>>()?;
    let w = ctx.weights(m);
    let lhs = ah_mean(&a, &w, mu)?;
    let rhs = ah_mean(&b, &w, mu)?;
    ctx.leq("L_μ(A) ≤ L_μ(B)", &lhs, &rhs)
}

fn vs_r(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let w = ctx.weights(m);
    let r = resolvent_average(&a, &w, mu)?;
    let l = ah_mean(&a, &w, mu)?;
    ctx.leq("R_μ ≤ L_μ", &r, &l)
}

fn inv_pairs(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let mut tuple = Vec::with_capacity(2 * m);
    for x in &a {
        tuple.push(x.clone());
        tuple.push(inv(x)?);
    }
    let l = ah_mean(&tuple, &W::uniform(2 * m)?, mu)?;
    ctx.eq("L(A, A^-1) = I", &l, &M::identity(ctx.n))
}

fn mu_monotone(ctx: &mut SampleCtx) -> Result<()> {
    let (lo, hi) = ordered(ctx.mu()?, ctx.mu()?);
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let w = ctx.weights(m);
    let lhs = ah_mean(&a, &w, lo)?;
    let rhs = ah_mean(&a, &w, hi)?;
    ctx.leq("L_μ ≤ L_ν", &lhs, &rhs)
}

fn twovar(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu_finite()?;
    let ab = ctx.accretive_tuple(2)?;
    let l = ah_mean(&ab, &W::uniform(2)?, MuParam::Finite(mu))?;
    let g = ctx.gm(&ab[0].shift(mu), &ab[1].shift(mu), 0.5)?.shift(-mu);
    ctx.eq("L_μ(A, B) = (A+μ) # (B+μ) − μ", &l, &g)
}

fn joint_concave(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let t = ctx.pick(&CONCAVITY_T);
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let b = ctx.pd_tuple(m)?;
    let w = ctx.weights(m);
    let mix: Vec<M> = a
        .iter()
        .zip(&b)
        .map(|(x, y)| &x.scale(t) + &y.scale(1.0 - t))
        .collect();
    let lhs = &ah_mean(&a, &w, mu)?.scale(t) + &ah_mean(&b, &w, mu)?.scale(1.0 - t);
    let rhs = ah_mean(&mix, &w, mu)?;
    ctx.leq("joint concavity", &lhs, &rhs)
}

fn chain(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let w = ctx.weights(m);
    let h = harmonic_mean(&a, &w)?;
    let l = ah_mean(&a, &w, mu)?;
    let ar = arithmetic_mean(&a, &w)?;
    ctx.leq("H ≤ L_μ", &h, &l)?;
    ctx.leq("L_μ ≤ A", &l, &ar)?;
    if MuDomain::NonNegative.admits(mu) {
        let r = resolvent_average(&a, &w, mu)?;
        ctx.leq("H ≤ R_μ", &h, &r)?;
        ctx.leq("R_μ ≤ L_μ", &r, &l)?;
    }
    Ok(())
}

fn riccati(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu_finite()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let x = ah_mean(&a, &w, MuParam::Finite(mu))?.shift(mu);
    let r = ah_riccati_residual(&a, &w, mu, &x)?;
    ctx.residual("Σ λ X (A+μ)^-1 X = Σ λ (A+μ)", r);
    Ok(())
}

/// Gaps `‖L_{±μ} − target‖₂` along the limit grid, which must shrink strictly
/// (up to the round-off floor) and end below `LIMIT_GAP·‖target‖₂`.
fn limit_side(
    ctx: &mut SampleCtx,
    a: &[M],
    w: &W,
    sign: f64,
    target: &M,
    label: &str,
) -> Result<()> {
    let gaps = LIMIT_GRID
        .iter()
        .map(|&mu| ah_mean(a, w, MuParam::Finite(sign * mu)).map(|l| norm2(&(&l - target))))
        .collect::<Result<Vec<f64>>>()?;
    let scale = norm2(target);
    let floor = LIMIT_FLOOR * scale;
    let decreasing = gaps
        .windows(2)
        .all(|p| p[1] < p[0] || p[0].max(p[1]) <= floor);
    ctx.holds(label, decreasing, || {
        format!("gaps not strictly decreasing: {gaps:?}")
    });
    let last = *gaps.last().unwrap();
    let bound = LIMIT_GAP * scale;
    ctx.holds(label, last <= bound, || {
        format!("final gap {last:.3e} > {bound:.3e}")
    });
    let at_inf = ah_mean(
        a,
        w,
        if sign > 0.0 {
            MuParam::PlusInf
        } else {
            MuParam::MinusInf
        },
    )?;
    ctx.eq(label, &at_inf, target)
}

fn limits(ctx: &mut SampleCtx) -> Result<()> {
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let w = ctx.weights(m);
    let ar = arithmetic_mean(&a, &w)?;
    let h = harmonic_mean(&a, &w)?;
    limit_side(ctx, &a, &w, 1.0, &ar, "μ → +∞")?;
    limit_side(ctx, &a, &w, -1.0, &h, "μ → −∞")?;
    Ok(())
}
