//! Two worked examples over `k = F_p(t1..tn)` with `n` x-variables.

use crate::bounded::{cusp_counterexample_check, subring_member, BoundedSubring};
use crate::error::Result;
use crate::fields::FieldCtx;
use crate::frobfactor::{f4_decompose, frobenius, sigma, sigma_preimage};
use crate::hasse::HasseDerivative;
use crate::scalar::Prime;
use crate::XPoly;

/// `f = Σ t_i x_i^p` lies in `im(σ)` and is killed by every first
/// derivative, yet it is not a `p`-th power.
#[derive(Clone, Debug)]
pub struct IntroReport {
    pub f: XPoly,
    pub preimage: Option<XPoly>,
    pub expected_preimage: XPoly,
    pub derivatives_vanish: bool,
    pub not_a_pth_power: bool,
}

impl IntroReport {
    pub fn ok(&self) -> bool {
        self.preimage.as_ref() == Some(&self.expected_preimage)
            && sigma(&self.expected_preimage) == self.f
            && self.derivatives_vanish
            && self.not_a_pth_power
    }
}

pub fn intro_example(p: Prime, n: usize) -> Result<IntroReport> {
    let ctx = FieldCtx::new(p, n);
    let mut f = XPoly::zero(&ctx);
    let mut expected = XPoly::zero(&ctx);
    for i in 1..=n {
        let t = ctx.t(i)?;
        let x = XPoly::var(&ctx, i);
        f = &f + &x.pow(p.get()).scale(&t);
        expected = &expected + &x.scale(&t);
    }
    let derivatives_vanish =
        (1..=n).all(|i| HasseDerivative::new(i).apply(1, &f).is_zero());
    Ok(IntroReport {
        preimage: sigma_preimage(&f),
        expected_preimage: expected,
        derivatives_vanish,
        not_a_pth_power: n == 0 || f4_decompose(&f, &[ctx.one()]).is_err(),
        f,
    })
}

/// `g = Σ t_i^p x_i^p` is the `p`-th power of `Σ t_i x_i`, whose
/// coefficients `t_i` all lie outside the cusp ring `A`. No denominator in
/// `t1..t_{n-1}` brings `t_n` into `A`.
#[derive(Clone, Debug)]
pub struct FlatGapReport {
    pub g: XPoly,
    pub root: XPoly,
    pub root_verified: bool,
    /// Indices `i` with `t_i ∉ A`.
    pub non_a_coefficients: Vec<usize>,
    pub denominator_fails: bool,
}

impl FlatGapReport {
    pub fn ok(&self) -> bool {
        self.root_verified
            && self.non_a_coefficients.len() == self.root.num_terms()
            && self.denominator_fails
    }
}

pub fn flat_gap(p: Prime, n: usize) -> Result<FlatGapReport> {
    let ctx = FieldCtx::new(p, n);
    let cusp = BoundedSubring::cusp(n);
    let mut g = XPoly::zero(&ctx);
    for i in 1..=n {
        let t = ctx.t(i)?;
        g = &g + &XPoly::var(&ctx, i).pow(p.get()).scale(&t.pow(p.get()));
    }
    let root = f4_decompose(&g, &[ctx.one()])
        .ok()
        .and_then(|mut parts| parts.pop())
        .unwrap_or_else(|| XPoly::zero(&ctx));
    let non_a_coefficients = root
        .terms()
        .filter(|(_, c)| !subring_member(&cusp, c))
        .flat_map(|(m, _)| m.vars().collect::<Vec<_>>())
        .collect();
    let denominator_fails = if n == 0 {
        true
    } else {
        let lower = FieldCtx::new(p, n - 1);
        let b = (1..n).try_fold(lower.one(), |acc, i| Ok::<_, crate::FieldError>(&acc * &lower.t(i)?.pow(2)))?;
        cusp_counterexample_check(n - 1, &b)?
    };
    Ok(FlatGapReport {
        root_verified: frobenius(&root) == g,
        g,
        root,
        non_a_coefficients,
        denominator_fails,
    })
}
