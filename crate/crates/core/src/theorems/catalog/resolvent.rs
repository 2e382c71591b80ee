use rand::seq::SliceRandom;

use super::{inv_all, scale_mu, M, MU_ONE, W};
use crate::error::Result;
use crate::linalg::inv;
use crate::means::{arithmetic_mean, harmonic_mean, resolvent_average, MuParam};
use crate::theorems::{CheckKind::*, CheckSpec, Hypothesis, MuDomain, SampleCtx};
use crate::theorems::{CONCAVITY_T, HOMOGENEITY_FACTORS, MU_NONNEG, MU_NONNEG_INF, MU_POSITIVE};

pub(super) fn checks() -> Vec<CheckSpec> {
    let acc = Hypothesis::sectorial().mu(MuDomain::NonNegative, &MU_NONNEG_INF);
    let pd = Hypothesis::pd().mu(MuDomain::NonNegative, &MU_NONNEG_INF);
    vec![
        CheckSpec::new(
            "R.idempotency",
            Equality,
            acc,
            "R_μ((A, …, A), λ) = A",
            idempotency,
        ),
        CheckSpec::new(
            "R.selfdual",
            Equality,
            Hypothesis::sectorial().mu(MuDomain::Positive, &MU_POSITIVE),
            "R_μ(A, λ)^{-1} = R_{1/μ}(A^{-1}, λ),  μ > 0",
            selfdual,
        ),
        CheckSpec::new(
            "R.unitary",
            Equality,
            acc,
            "R_μ(U*AU, λ) = U* R_μ(A, λ) U",
            unitary,
        ),
        CheckSpec::new(
            "R.permute",
            Equality,
            acc,
            "R_μ(Aσ, λσ) = R_μ(A, λ) for every permutation σ",
            permute,
        ),
        CheckSpec::new(
            "R.homog",
            Equality,
            acc,
            "R_μ(sA, λ) = s R_{μ/s}(A, λ),  s > 0",
            homog,
        ),
        CheckSpec::new(
            "R.monotone",
            Inequality,
            pd,
            "A_i ≤ B_i  ⇒  R_μ(A, λ) ≤ R_μ(B, λ)",
            monotone,
        ),
        CheckSpec::new(
            "R.muMonotone",
            Inequality,
            pd,
            "0 ≤ μ ≤ ν  ⇒  R_μ(A, λ) ≤ R_ν(A, λ)",
            mu_monotone,
        ),
        CheckSpec::new(
            "R.invPairs",
            Equality,
            Hypothesis::sectorial().mu(MuDomain::Positive, &MU_ONE),
            "R_1((A_1, A_1^{-1}, …, A_m, A_m^{-1}), 1/(2m)) = I",
            inv_pairs,
        ),
        CheckSpec::new(
            "R.recursion",
            Equality,
            acc,
            "R_μ(A, λ) = R_μ((R_μ((A_1..A_{m-1}), λ'/(1-λ_m)), A_m), (1-λ_m, λ_m))",
            recursion,
        ),
        CheckSpec::new(
            "R.jointConcave",
            Inequality,
            pd,
            "t R_μ(A, λ) + (1-t) R_μ(B, λ) ≤ R_μ(tA + (1-t)B, λ)",
            joint_concave,
        ),
        CheckSpec::new(
            "HRA.chain",
            Inequality,
            Hypothesis::pd().mu(MuDomain::NonNegative, &MU_NONNEG),
            "H_λ(A) ≤ R_μ(A, λ) ≤ A_λ(A),  μ ≥ 0",
            hra_chain,
        ),
    ]
}

fn idempotency(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(1)?.remove(0);
    let w = ctx.weights(m);
    let r = resolvent_average(&vec![a.clone(); m], &w, mu)?;
    ctx.eq("R(A, …, A) = A", &r, &a)
}

fn selfdual(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu_finite()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let lhs = inv(&resolvent_average(&a, &w, MuParam::Finite(mu))?)?;
    let rhs = resolvent_average(&inv_all(&a)?, &w, MuParam::Finite(1.0 / mu))?;
    ctx.eq("R_μ(A)^-1 = R_1/μ(A^-1)", &lhs, &rhs)
}

fn unitary(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let u = ctx.unitary();
    let ua: Vec<M> = a.iter().map(|x| &(&u.adjoint() * x) * &u).collect();
    let lhs = resolvent_average(&ua, &w, mu)?;
    let rhs = &(&u.adjoint() * &resolvent_average(&a, &w, mu)?) * &u;
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
    let lhs = resolvent_average(&pa, &pw, mu)?;
    let rhs = resolvent_average(&a, &w, mu)?;
    ctx.eq("permutation invariance", &lhs, &rhs)
}

fn homog(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let s = ctx.pick(&HOMOGENEITY_FACTORS);
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let sa: Vec<M> = a.iter().map(|x| x.scale(s)).collect();
    let lhs = resolvent_average(&sa, &w, mu)?;
    let rhs = resolvent_average(&a, &w, scale_mu(mu, 1.0 / s))?.scale(s);
    ctx.eq("R_μ(sA) = s R_μ/s(A)", &lhs, &rhs)
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
    let lhs = resolvent_average(&a, &w, mu)?;
    let rhs = resolvent_average(&b, &w, mu)?;
    ctx.leq("R_μ(A) ≤ R_μ(B)", &lhs, &rhs)
}

/// Orders two grid values; `+∞` sorts last.
pub(super) fn ordered(x: MuParam<f64>, y: MuParam<f64>) -> (MuParam<f64>, MuParam<f64>) {
    let key = |m: MuParam<f64>| match m {
        MuParam::Finite(v) => v,
        MuParam::PlusInf => f64::INFINITY,
        MuParam::MinusInf => f64::NEG_INFINITY,
    };
    if key(x) <= key(y) {
        (x, y)
    } else {
        (y, x)
    }
}

fn mu_monotone(ctx: &mut SampleCtx) -> Result<()> {
    let (lo, hi) = ordered(ctx.mu()?, ctx.mu()?);
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let w = ctx.weights(m);
    let lhs = resolvent_average(&a, &w, lo)?;
    let rhs = resolvent_average(&a, &w, hi)?;
    ctx.leq("R_μ ≤ R_ν", &lhs, &rhs)
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
    let r = resolvent_average(&tuple, &W::uniform(2 * m)?, mu)?;
    ctx.eq("R_1(A, A^-1) = I", &r, &M::identity(ctx.n))
}

fn recursion(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.accretive_tuple(m)?;
    let w = ctx.weights(m);
    let last = w.as_slice()[m - 1];
    let (head, _) = W::normalized(w.as_slice()[..m - 1].to_vec())?;
    let inner = resolvent_average(&a[..m - 1], &head, mu)?;
    let lhs = resolvent_average(&a, &w, mu)?;
    let rhs = resolvent_average(&[inner, a[m - 1].clone()], &W::pair(last)?, mu)?;
    ctx.eq("recursion", &lhs, &rhs)
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
    let lhs =
        &resolvent_average(&a, &w, mu)?.scale(t) + &resolvent_average(&b, &w, mu)?.scale(1.0 - t);
    let rhs = resolvent_average(&mix, &w, mu)?;
    ctx.leq("joint concavity", &lhs, &rhs)
}

fn hra_chain(ctx: &mut SampleCtx) -> Result<()> {
    let mu = ctx.mu()?;
    let m = ctx.tuple_len();
    let a = ctx.pd_tuple(m)?;
    let w = ctx.weights(m);
    let h = harmonic_mean(&a, &w)?;
    let r = resolvent_average(&a, &w, mu)?;
    let ar = arithmetic_mean(&a, &w)?;
    ctx.leq("H ≤ R_μ", &h, &r)?;
    ctx.leq("R_μ ≤ A", &r, &ar)
}
