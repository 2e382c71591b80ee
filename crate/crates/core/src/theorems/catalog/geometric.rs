use super::{harmonic_pair, re, scalar_arith, scalar_geo, sec2, M, W};
use crate::error::Result;
use crate::linalg::{inv, norm2};
use crate::means::{arithmetic_mean, drury_solve};
use crate::theorems::{CheckKind::*, CheckSpec, Hypothesis, MuDomain, SampleCtx};
use crate::theorems::{HOMOGENEITY_FACTORS, MU_POSITIVE};

pub(super) fn checks() -> Vec<CheckSpec> {
    let acc = Hypothesis::sectorial();
    let pd = Hypothesis::pd();
    vec![
        CheckSpec::new("GM.idempotent", Equality, acc, "A #_λ A = A", gm_idempotent),
        CheckSpec::new("GM.commute", Equality, acc, "A # B = B # A", gm_commute),
        CheckSpec::new(
            "GM.inverse",
            Equality,
            acc,
            "(A #_λ B)^{-1} = A^{-1} #_λ B^{-1}",
            gm_inverse,
        ),
        CheckSpec::new(
            "GM.homog",
            Equality,
            acc,
            "(sA) #_λ (tB) = s^{1-λ} t^λ (A #_λ B),  s, t > 0",
            gm_homog,
        ),
        CheckSpec::new(
            "GM.monotone",
            Inequality,
            pd,
            "A ≤ C, B ≤ D  ⇒  A #_λ B ≤ C #_λ D",
            gm_monotone,
        ),
        CheckSpec::new(
            "GM.AH-identity",
            Equality,
            acc,
            "(A + B) # (A^{-1} + B^{-1})^{-1} = A # B",
            gm_ah_identity,
        ),
        CheckSpec::new(
            "Ando",
            Inequality,
            pd,
            "Φ(A σ B) ≤ Φ(A) σ Φ(B),  σ ∈ {#_λ, !_λ}",
            ando,
        ),
        CheckSpec::new("Choi", Inequality, pd, "Φ(A)^{-1} ≤ Φ(A^{-1})", choi),
        CheckSpec::new(
            "Kantorovich",
            Inequality,
            pd.bounded(),
            "hI ≤ A ≤ kI  ⇒  Φ(A^{-1}) ≤ (k+h)²/(4kh) Φ(A)^{-1}",
            kantorovich,
        ),
        CheckSpec::new(
            "AG.reverse",
            Inequality,
            pd.bounded(),
            "hI ≤ A, B ≤ kI  ⇒  (1-λ)A + λB ≤ (h ∇_t k)/(h #_t k) · A #_λ B,  t = min(λ, 1-λ)",
            ag_reverse,
        ),
        CheckSpec::new(
            "KA.subadd",
            Inequality,
            pd,
            "A σ B + C σ D ≤ (A + C) σ (B + D),  σ ∈ {#_λ, !_λ}",
            ka_subadd,
        ),
        CheckSpec::new(
            "KA.resolventJ",
            Inequality,
            pd.mu(MuDomain::Positive, &MU_POSITIVE),
            "J(A) #_λ J(B) ≤ J(A #_λ B),  J(X) = (X/μ + I)^{-1},  μ > 0",
            ka_resolvent_j,
        ),
        CheckSpec::new(
            "Sect.invBounds",
            Inequality,
            acc,
            "A ∈ S_α: ℜ(A^{-1}) ≤ (ℜA)^{-1} ≤ sec²α ℜ(A^{-1}); \
             ℜ((Σ A_i^{-1})^{-1}) ≥ cos²α (Σ ℜ(A_i^{-1}))^{-1} ≥ cos²α (Σ (ℜA_i)^{-1})^{-1}",
            sect_inv_bounds,
        ),
        CheckSpec::new(
            "Sect.GMlower",
            Inequality,
            acc,
            "A, B ∈ S_α: ℜA # ℜB ≤ ℜ(A # B)",
            sect_gm_lower,
        ),
        CheckSpec::new(
            "Sect.GMlower.weighted",
            Inequality,
            acc,
            "A, B ∈ S_α: ℜA #_λ ℜB ≤ ℜ(A #_λ B)",
            sect_gm_lower_weighted,
        )
        .exploratory(),
        CheckSpec::new(
            "Sect.GMupper",
            Inequality,
            acc,
            "A, B ∈ S_α: ℜ(A # B) ≤ sec²α (ℜA # ℜB)",
            sect_gm_upper,
        ),
        CheckSpec::new(
            "Riccati",
            Equality,
            pd,
            "X = A # B solves X A^{-1} X = B and is positive definite",
            riccati,
        ),
        CheckSpec::new(
            "Drury",
            Equality,
            acc,
            "X = A # B solves X A^{-1} X = B and is accretive",
            drury,
        ),
    ]
}

fn pair(ctx: &mut SampleCtx) -> Result<(M, M)> {
    let mut v = ctx.accretive_tuple(2)?;
    let b = v.pop().unwrap();
    Ok((v.pop().unwrap(), b))
}

fn sectorial_pair(ctx: &mut SampleCtx) -> Result<(M, M)> {
    let mut v = ctx.sectorial_tuple(2)?;
    let b = v.pop().unwrap();
    Ok((v.pop().unwrap(), b))
}

fn gm_idempotent(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let a = ctx.accretive_tuple(1)?.remove(0);
    let x = ctx.gm(&a, &a, lambda)?;
    ctx.eq("A #_λ A = A", &x, &a)
}

fn gm_commute(ctx: &mut SampleCtx) -> Result<()> {
    let (a, b) = pair(ctx)?;
    let x = ctx.gm(&a, &b, 0.5)?;
    let y = ctx.gm(&b, &a, 0.5)?;
    ctx.eq("A # B = B # A", &x, &y)
}

fn gm_inverse(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let (a, b) = pair(ctx)?;
    let x = inv(&ctx.gm(&a, &b, lambda)?)?;
    let y = ctx.gm(&inv(&a)?, &inv(&b)?, lambda)?;
    ctx.eq("inverse", &x, &y)
}

fn gm_homog(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let s = ctx.pick(&HOMOGENEITY_FACTORS);
    let t = ctx.pick(&[1.7, 0.4]);
    let (a, b) = pair(ctx)?;
    let x = ctx.gm(&a.scale(s), &b.scale(t), lambda)?;
    let y = ctx
        .gm(&a, &b, lambda)?
        .scale(s.powf(1.0 - lambda) * t.powf(lambda));
    ctx.eq("homogeneity", &x, &y)
}

fn gm_monotone(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let c = ctx.pd_above(&a, 1.0)?;
    let d = ctx.pd_above(&b, 1.0)?;
    let x = ctx.gm(&a, &b, lambda)?;
    let y = ctx.gm(&c, &d, lambda)?;
    ctx.leq("A #_λ B ≤ C #_λ D", &x, &y)
}

fn gm_ah_identity(ctx: &mut SampleCtx) -> Result<()> {
    let (a, b) = pair(ctx)?;
    let sum = &a + &b;
    let par = inv(&(&inv(&a)? + &inv(&b)?))?;
    let x = ctx.gm(&sum, &par, 0.5)?;
    let y = ctx.gm(&a, &b, 0.5)?;
    ctx.eq("(A+B) # (A^-1+B^-1)^-1 = A # B", &x, &y)
}

/// `A σ B` for the connection picked by `harmonic`.
fn connect(ctx: &SampleCtx, a: &M, b: &M, lambda: f64, harmonic: bool) -> Result<M> {
    if harmonic {
        harmonic_pair(a, b, lambda)
    } else {
        ctx.gm(a, b, lambda)
    }
}

fn ando(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let harmonic = ctx.pick(&[false, true]);
    let phi = ctx.pulm()?;
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let lhs = phi.apply(&connect(ctx, &a, &b, lambda, harmonic)?)?;
    let rhs = connect(ctx, &phi.apply(&a)?, &phi.apply(&b)?, lambda, harmonic)?;
    ctx.leq("Φ(A σ B) ≤ Φ(A) σ Φ(B)", &lhs, &rhs)
}

fn choi(ctx: &mut SampleCtx) -> Result<()> {
    let phi = ctx.pulm()?;
    let a = ctx.pd()?;
    let lhs = inv(&phi.apply(&a)?)?;
    let rhs = phi.apply(&inv(&a)?)?;
    ctx.leq("Φ(A)^-1 ≤ Φ(A^-1)", &lhs, &rhs)
}

fn kantorovich(ctx: &mut SampleCtx) -> Result<()> {
    let (h, k) = ctx.bounds();
    let phi = ctx.pulm()?;
    let a = ctx.pd()?;
    let c = (k + h).powi(2) / (4.0 * k * h);
    let lhs = phi.apply(&inv(&a)?)?;
    let rhs = inv(&phi.apply(&a)?)?.scale(c);
    ctx.leq("Φ(A^-1) ≤ K Φ(A)^-1", &lhs, &rhs)
}

fn ag_reverse(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let (h, k) = ctx.bounds();
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let t = lambda.min(1.0 - lambda);
    let c = scalar_arith(h, k, t) / scalar_geo(h, k, t);
    let lhs = arithmetic_mean(&[a.clone(), b.clone()], &W::pair(lambda)?)?;
    let rhs = ctx.gm(&a, &b, lambda)?.scale(c);
    ctx.leq("A ∇_λ B ≤ c A #_λ B", &lhs, &rhs)
}

fn ka_subadd(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let harmonic = ctx.pick(&[false, true]);
    let [a, b, c, d]: [M; 4] = ctx.pd_tuple(4)?.try_into().unwrap();
    let lhs = &connect(ctx, &a, &b, lambda, harmonic)? + &connect(ctx, &c, &d, lambda, harmonic)?;
    let rhs = connect(ctx, &(&a + &c), &(&b + &d), lambda, harmonic)?;
    ctx.leq("A σ B + C σ D ≤ (A+C) σ (B+D)", &lhs, &rhs)
}

fn ka_resolvent_j(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let mu = ctx.mu_finite()?;
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let j = |x: &M| inv(&x.scale(1.0 / mu).shift(1.0));
    let lhs = ctx.gm(&j(&a)?, &j(&b)?, lambda)?;
    let rhs = j(&ctx.gm(&a, &b, lambda)?)?;
    ctx.leq("J(A) #_λ J(B) ≤ J(A #_λ B)", &lhs, &rhs)
}

fn sect_inv_bounds(ctx: &mut SampleCtx) -> Result<()> {
    let alpha = ctx.alpha()?;
    let m = ctx.tuple_len();
    let tuple = ctx.sectorial_tuple(m)?;
    let a = &tuple[0];
    let re_inv = re(&inv(a)?);
    let inv_re = inv(&re(a))?;
    ctx.leq("ℜ(A^-1) ≤ (ℜA)^-1", &re_inv, &inv_re)?;
    ctx.leq(
        "(ℜA)^-1 ≤ sec²α ℜ(A^-1)",
        &inv_re,
        &re_inv.scale(sec2(alpha)),
    )?;

    let cos2 = alpha.cos().powi(2);
    let n = ctx.n;
    let mut sum_inv = M::zeros(n);
    let mut sum_re_inv = M::zeros(n);
    let mut sum_inv_re = M::zeros(n);
    for a in &tuple {
        let ai = inv(a)?;
        sum_re_inv += &re(&ai);
        sum_inv += &ai;
        sum_inv_re += &inv(&re(a))?;
    }
    let top = re(&inv(&sum_inv)?);
    let mid = inv(&sum_re_inv)?.scale(cos2);
    let low = inv(&sum_inv_re)?.scale(cos2);
    ctx.leq("sum: middle ≤ left", &mid, &top)?;
    ctx.leq("sum: right ≤ middle", &low, &mid)
}

fn sect_gm_lower(ctx: &mut SampleCtx) -> Result<()> {
    let (a, b) = sectorial_pair(ctx)?;
    let lhs = ctx.gm(&re(&a), &re(&b), 0.5)?;
    let rhs = re(&ctx.gm(&a, &b, 0.5)?);
    ctx.leq("ℜA # ℜB ≤ ℜ(A # B)", &lhs, &rhs)
}

fn sect_gm_lower_weighted(ctx: &mut SampleCtx) -> Result<()> {
    let lambda = ctx.lambda();
    let (a, b) = sectorial_pair(ctx)?;
    let lhs = ctx.gm(&re(&a), &re(&b), lambda)?;
    let rhs = re(&ctx.gm(&a, &b, lambda)?);
    ctx.leq("ℜA #_λ ℜB ≤ ℜ(A #_λ B)", &lhs, &rhs)
}

fn sect_gm_upper(ctx: &mut SampleCtx) -> Result<()> {
    let alpha = ctx.alpha()?;
    let (a, b) = sectorial_pair(ctx)?;
    let lhs = re(&ctx.gm(&a, &b, 0.5)?);
    let rhs = ctx.gm(&re(&a), &re(&b), 0.5)?.scale(sec2(alpha));
    ctx.leq("ℜ(A # B) ≤ sec²α (ℜA # ℜB)", &lhs, &rhs)
}

fn riccati(ctx: &mut SampleCtx) -> Result<()> {
    let a = ctx.pd()?;
    let b = ctx.pd()?;
    let x = ctx.gm(&a, &b, 0.5)?;
    let lhs = &(&x * &inv(&a)?) * &x;
    ctx.residual("X A^-1 X = B", norm2(&(&lhs - &b)) / norm2(&b));
    let floor = crate::linalg::eig_hermitian(&x)?.min();
    ctx.holds("X positive definite", floor > 0.0, || {
        format!("λ_min(X) = {floor:.3e}")
    });
    Ok(())
}

fn drury(ctx: &mut SampleCtx) -> Result<()> {
    let (a, b) = sectorial_pair(ctx)?;
    let sol = drury_solve(&a, &b)?;
    ctx.residual("X A^-1 X = B", sol.residual);
    let floor = crate::linalg::accretivity_margin(&sol.x)?;
    ctx.holds("X accretive", floor > 0.0, || {
        format!("λ_min(ℜX) = {floor:.3e}")
    });
    Ok(())
}
