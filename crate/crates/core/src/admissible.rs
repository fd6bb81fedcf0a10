//! The variable-derivative family `𝒟 = {∂_1, ..., ∂_n}` as an admissible set.
//!
//! (D3) asks that a homogeneous `f` whose first derivatives all lie in
//! `Σ ε_j im(φ)` itself lies in `im(σ) + Σ ε_j im(φ)`. For this family both
//! sides reduce to coefficient conditions, which makes the statement
//! decidable: the terms with every exponent divisible by `p` form `σ(h)` and
//! every other coefficient must sit in the `k^p`-span of the `ε_j`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fields::{in_kp_span, FieldCtx, RatFunc};
use crate::frobfactor::{f4_decompose, frobenius, phi, recompose_phi_span, sigma, sigma_pow, sigma_preimage, Level};
use crate::hasse::{hasse_bracket, hasse_derive, HasseDerivative};
use crate::poly::Monomial;
use crate::XPoly;

/// One Hasse derivative per x-variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseFamily {
    pub members: Vec<HasseDerivative>,
}

impl HasseFamily {
    /// `∂_1..∂_n`.
    pub fn for_vars(n: usize) -> Self {
        HasseFamily {
            members: (1..=n).map(HasseDerivative::new).collect(),
        }
    }

    /// (D1) on samples: every member lowers the degree of a homogeneous
    /// element by exactly one (or kills it).
    pub fn check_d1(&self, samples: &[XPoly]) -> bool {
        samples.iter().filter(|f| f.is_homogeneous()).all(|f| {
            self.members.iter().all(|d| {
                let df = d.apply(1, f);
                df.is_zero() || (df.is_homogeneous() && df.degree().map(|e| e + 1) == f.degree())
            })
        })
    }

    /// (D2) on samples: `∂ ∘ φ = φ ∘ ∂` for every member.
    pub fn check_d2(&self, samples: &[XPoly]) -> bool {
        samples.iter().all(|f| {
            self.members
                .iter()
                .all(|d| d.apply(1, &phi(f)) == phi(&d.apply(1, f)))
        })
    }
}

/// A witness for `f = σ(h) + Σ ε_j φ(g_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D3Witness {
    pub h: XPoly,
    pub g: Vec<XPoly>,
}

impl D3Witness {
    pub fn recompose(&self, ctx: &FieldCtx, eps: &[RatFunc]) -> XPoly {
        &sigma(&self.h) + &recompose_phi_span(ctx, eps, &self.g)
    }
}

/// The coefficient-wise split behind [`d3_decompose`], without the
/// homogeneity requirement. On failure returns the first monomial whose
/// coefficient lies outside the span.
pub fn d3_split(f: &XPoly, eps: &[RatFunc]) -> std::result::Result<D3Witness, Monomial> {
    let ctx = *f.ctx();
    let p = ctx.p.get();
    let mut h = Vec::new();
    let mut g: Vec<Vec<(Monomial, RatFunc)>> = vec![Vec::new(); eps.len()];
    for (m, c) in f.terms() {
        if let Some(root) = m.divide(p) {
            h.push((root, c.clone()));
            continue;
        }
        let lambda = in_kp_span(c, eps).ok_or_else(|| m.clone())?;
        for (part, l) in g.iter_mut().zip(lambda) {
            part.push((m.clone(), l));
        }
    }
    let witness = D3Witness {
        h: XPoly::from_terms(&ctx, h),
        g: g.into_iter().map(|t| XPoly::from_terms(&ctx, t)).collect(),
    };
    debug_assert_eq!(&witness.recompose(&ctx, eps), f);
    Ok(witness)
}

/// Decides `f ∈ im(σ) + Σ ε_j im(φ)` for homogeneous `f` and returns a
/// witness when it holds.
pub fn d3_decompose(f: &XPoly, eps: &[RatFunc]) -> Result<Option<D3Witness>> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(d3_split(f, eps).ok())
}

/// Runs [`d3_decompose`] on each homogeneous component and adds up the
/// witnesses.
pub fn d3_decompose_components(f: &XPoly, eps: &[RatFunc]) -> Option<D3Witness> {
    let ctx = *f.ctx();
    let mut total = D3Witness {
        h: XPoly::zero(&ctx),
        g: vec![XPoly::zero(&ctx); eps.len()],
    };
    for part in f.homogeneous_components().values() {
        let w = d3_decompose(part, eps).expect("components are homogeneous")?;
        total.h = &total.h + &w.h;
        for (acc, g) in total.g.iter_mut().zip(&w.g) {
            *acc = &*acc + g;
        }
    }
    Some(total)
}

/// The (D3) hypothesis: `∂_i(f) ∈ Σ ε_j im(φ)` for every variable, checked
/// on the derivatives themselves.
pub fn d3_hypothesis(f: &XPoly, eps: &[RatFunc]) -> bool {
    f.variables().into_iter().all(|i| {
        HasseDerivative::new(i)
            .apply(1, f)
            .terms()
            .all(|(_, c)| in_kp_span(c, eps).is_some())
    })
}

/// `∂^{[s]}(σ^r(f))` against `σ^r(∂^{[s-r]}(f))` for `r ≤ s`, and against
/// zero for `r > s`.
pub fn sigma_commute_check(d: HasseDerivative, r: u32, s: u32, f: &XPoly) -> Result<bool> {
    let lhs = hasse_bracket(d, s, &sigma_pow(f, r))?;
    let rhs = if r <= s {
        sigma_pow(&hasse_bracket(d, s - r, f)?, r)
    } else {
        XPoly::zero(f.ctx())
    };
    Ok(lhs == rhs)
}

/// `∂^{[r]}(f^{p^s})` against `(∂^{[r-s]}(f))^{p^s}` for `r ≥ s`, and against
/// zero for `r < s`. Powers are taken by ring multiplication.
pub fn frobenius_commute_check(d: HasseDerivative, r: u32, s: u32, f: &XPoly) -> Result<bool> {
    let frob_s = |x: &XPoly| (0..s).fold(x.clone(), |acc, _| frobenius(&acc));
    let lhs = hasse_bracket(d, r, &frob_s(f))?;
    let rhs = if r >= s {
        frob_s(&hasse_bracket(d, r - s, f)?)
    } else {
        XPoly::zero(f.ctx())
    };
    Ok(lhs == rhs)
}

/// Level computed as the first `r` where some `∂_i^{[r]}` does not vanish.
pub fn level_via_derivations(f: &XPoly) -> Level {
    if f.is_constant() {
        return Level::Infinite;
    }
    let p = f.ctx().p;
    let vars = f.variables();
    let mut r = 0u32;
    while let Some(order) = p.checked_power(r) {
        if order > f.max_exponent() {
            break;
        }
        if vars
            .iter()
            .any(|&i| !hasse_derive(HasseDerivative::new(i), order, f).is_zero())
        {
            return Level::Finite(r);
        }
        r += 1;
    }
    unreachable!("a nonconstant polynomial has a nonvanishing derivative")
}

/// `∂^{[t]}(f^n) = n f^{n-1} ∂^{[t]}(f)` for `f` of level at least `t`.
pub fn power_rule_check(d: HasseDerivative, t: u32, n: u64, f: &XPoly) -> Result<bool> {
    let lhs = hasse_bracket(d, t, &f.pow(n))?;
    let factor = RatFunc::from_int(*f.ctx(), n as i64);
    let rhs = if n == 0 {
        XPoly::zero(f.ctx())
    } else {
        (&f.pow(n - 1) * &hasse_bracket(d, t, f)?).scale(&factor)
    };
    Ok(lhs == rhs)
}

/// All monomials in `x1..xn` of total degree at most `max_deg`.
pub fn monomials_up_to(nvars: usize, max_deg: u64) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for i in 1..=nvars {
        let mut next = Vec::new();
        for m in &out {
            for e in 0..=max_deg - m.degree() {
                next.push(m.mul(&Monomial::from_pairs([(i, e)])));
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.grlex_cmp(b));
    out
}

/// Outcome of an exhaustive kernel comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub checked: u128,
    /// First polynomial on which kernel and image membership disagree.
    pub counterexample: Option<XPoly>,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Enumerates every polynomial with the given support and coefficients from
/// `pool` and compares `⋂ ker ∂_i` with `im(σ)` on each.
///
/// Refuses with [`Error::TooLarge`] when `|pool|^|support|` exceeds `cap`.
pub fn kernel_equals_sigma_check(
    ctx: &FieldCtx,
    support: &[Monomial],
    pool: &[RatFunc],
    cap: u128,
) -> Result<KernelReport> {
    let support: Vec<Monomial> = support
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let size = (pool.len() as u128)
        .checked_pow(support.len() as u32)
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let vars: BTreeSet<usize> = support.iter().flat_map(|m| m.vars()).collect();
    let mut digits = vec![0usize; support.len()];
    let mut checked = 0u128;
    if pool.is_empty() && !support.is_empty() {
        return Ok(KernelReport { checked, counterexample: None });
    }
    loop {
        let f = XPoly::from_terms(
            ctx,
            support
                .iter()
                .zip(&digits)
                .map(|(m, &d)| (m.clone(), pool[d].clone())),
        );
        let in_kernel = vars
            .iter()
            .all(|&i| HasseDerivative::new(i).apply(1, &f).is_zero());
        let in_image = sigma_preimage(&f).is_some();
        checked += 1;
        if in_kernel != in_image {
            return Ok(KernelReport {
                checked,
                counterexample: Some(f),
            });
        }
        // Mixed-radix increment.
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(KernelReport {
                    checked,
                    counterexample: None,
                });
            }
            digits[k] += 1;
            if digits[k] < pool.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Result of [`levelder_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelDerOutcome {
    /// `f = σ^{r+1}(c) + Σ ε_j σ^r(φ(b_j))`.
    Witness { c: XPoly, b: Vec<XPoly> },
    /// `∂_var^{[r]}(f)` is not in `Σ ε_j R^p`.
    HypothesisFailed { var: usize },
}

/// `σ^{r+1}(c) + Σ ε_j σ^r(φ(b_j))`.
pub fn recompose_levelder(ctx: &FieldCtx, eps: &[RatFunc], r: u32, c: &XPoly, b: &[XPoly]) -> XPoly {
    sigma_pow(&(&sigma(c) + &recompose_phi_span(ctx, eps, b)), r)
}

/// For `f` of level at least `r ≥ 1`, decides whether every `∂_i^{[r]}(f)`
/// lies in `Σ ε_j R^p` and, if so, writes
/// `f = σ^{r+1}(c) + Σ ε_j σ^r(φ(b_j))`.
///
/// The witness comes from pulling `f` back through `σ^r` and splitting the
/// preimage as in (D3).
pub fn levelder_decompose(f: &XPoly, eps: &[RatFunc], r: u32) -> Result<LevelDerOutcome> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let lev = crate::frobfactor::level(f);
    if lev < Level::Finite(r) {
        return Err(Error::Precondition(format!("level {lev} is below {r}")));
    }
    for i in f.variables() {
        let dr = hasse_bracket(HasseDerivative::new(i), r, f)?;
        if f4_decompose(&dr, eps).is_err() {
            return Ok(LevelDerOutcome::HypothesisFailed { var: i });
        }
    }
    let y = (0..r).try_fold(f.clone(), |acc, _| sigma_preimage(&acc));
    let y = y.expect("level at least r");
    let w = d3_split(&y, eps).map_err(|m| {
        Error::Precondition(format!("preimage coefficient of {m} outside the span"))
    })?;
    debug_assert_eq!(&recompose_levelder(f.ctx(), eps, r, &w.h, &w.g), f);
    Ok(LevelDerOutcome::Witness { c: w.h, b: w.g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobfactor::level;
    use crate::scalar::Prime;

    fn k(p: u64) -> FieldCtx {
        FieldCtx::new(Prime::new(p).unwrap(), 1)
    }

    #[test]
    fn d3_examples() {
        let k = k(2);
        let t = k.t(1).unwrap();
        let x1 = XPoly::var(&k, 1);
        let x2 = XPoly::var(&k, 2);
        let f = &x1.scale(&t) + &x2.pow(2);
        assert_eq!(d3_decompose(&f, std::slice::from_ref(&t)), Err(Error::NotHomogeneous));
        let w = d3_decompose_components(&f, std::slice::from_ref(&t)).unwrap();
        assert_eq!(w.h, x2);
        assert_eq!(w.g, vec![x1.clone()]);
        assert_eq!(w.recompose(&k, std::slice::from_ref(&t)), f);

        assert_eq!(d3_decompose(&x1.scale(&t), &[]).unwrap(), None);
        let w = d3_decompose(&x1.pow(2), &[]).unwrap().unwrap();
        assert_eq!(w.h, x1);
        assert!(w.g.is_empty());

        assert_eq!(d3_decompose(&(&x1 + &x2.pow(2)), &[]), Err(Error::NotHomogeneous));
    }

    #[test]
    fn d3_hypothesis_matches_split() {
        let k = k(3);
        let t = k.t(1).unwrap();
        let x1 = XPoly::var(&k, 1);
        let x2 = XPoly::var(&k, 2);
        let cases = [
            (&(&x1 * &x2).scale(&t), vec![t.clone()]),
            (&(&x1 * &x2).scale(&t), vec![k.one()]),
            (&x1.pow(3).scale(&t), vec![]),
            (&(&x1.pow(2) * &x2).scale(&t.pow(3)), vec![]),
        ]
        .map(|(f, e)| (f.clone(), e));
        for (f, eps) in cases {
            assert_eq!(d3_hypothesis(&f, &eps), d3_split(&f, &eps).is_ok(), "{f}");
        }
    }

    #[test]
    fn sigma_commute_examples() {
        let k = k(2);
        let x1 = XPoly::var(&k, 1);
        let d1 = HasseDerivative::new(1);
        assert_eq!(sigma_commute_check(d1, 1, 1, &x1), Ok(true));
        assert_eq!(sigma_commute_check(d1, 2, 1, &x1), Ok(true));
        assert!(hasse_bracket(d1, 1, &x1.pow(4)).unwrap().is_zero());
        assert_eq!(sigma_commute_check(d1, 0, 0, &x1), Ok(true));
        let t = XPoly::constant(k.t(1).unwrap());
        let f = &(&t * &x1.pow(3)) + &x1;
        for r in 0..3 {
            for s in 0..3 {
                assert_eq!(frobenius_commute_check(d1, r, s, &f), Ok(true), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn level_examples() {
        let k = k(2);
        let t = k.t(1).unwrap();
        let x1 = XPoly::var(&k, 1);
        assert_eq!(level_via_derivations(&x1), Level::Finite(0));
        assert_eq!(level_via_derivations(&x1.pow(2).scale(&t)), Level::Finite(1));
        assert_eq!(level_via_derivations(&x1.pow(4)), Level::Finite(2));
        assert_eq!(level_via_derivations(&XPoly::constant(t)), Level::Infinite);
        let f = &x1.pow(12) + &XPoly::var(&k, 2).pow(8);
        assert_eq!(level_via_derivations(&f), level(&f));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(1, 2).len(), 3);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_up_to(0, 3), vec![Monomial::one()]);
    }

    #[test]
    fn kernel_examples() {
        let k2 = k(2);
        let pool = [k2.zero(), k2.one()];
        let r = kernel_equals_sigma_check(&k2, &monomials_up_to(1, 2), &pool, 1000).unwrap();
        assert!(r.holds());
        assert_eq!(r.checked, 8);
        let r = kernel_equals_sigma_check(&k2, &[], &pool, 1000).unwrap();
        assert!(r.holds() && r.checked == 1);
        let k3 = k(3);
        let pool: Vec<RatFunc> = (0..3).map(|i| k3.int(i)).collect();
        assert!(kernel_equals_sigma_check(&k3, &monomials_up_to(1, 3), &pool, 1000)
            .unwrap()
            .holds());
        assert!(matches!(
            kernel_equals_sigma_check(&k3, &monomials_up_to(2, 3), &pool, 1000),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn levelder_examples() {
        let k = k(2);
        let t = k.t(1).unwrap();
        let x1 = XPoly::var(&k, 1);
        assert_eq!(
            levelder_decompose(&x1.pow(4), &[], 1),
            Ok(LevelDerOutcome::Witness { c: x1.clone(), b: vec![] })
        );
        let f = x1.pow(4).scale(&t);
        let out = levelder_decompose(&f, std::slice::from_ref(&t), 1).unwrap();
        let LevelDerOutcome::Witness { c, b } = out else {
            panic!("expected a witness");
        };
        assert_eq!(c, x1.scale(&t));
        assert_eq!(b, vec![XPoly::zero(&k)]);
        assert_eq!(recompose_levelder(&k, std::slice::from_ref(&t), 1, &c, &b), f);

        assert_eq!(
            levelder_decompose(&x1.pow(2), &[], 1),
            Ok(LevelDerOutcome::HypothesisFailed { var: 1 })
        );
        assert!(matches!(levelder_decompose(&x1, &[], 1), Err(Error::Precondition(_))));
        assert!(matches!(levelder_decompose(&x1.pow(2), &[], 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn family_axioms() {
        let k = k(3);
        let t = k.t(1).unwrap();
        let x1 = XPoly::var(&k, 1);
        let x2 = XPoly::var(&k, 2);
        let samples = [(&x1.pow(2) * &x2).scale(&t), x1.pow(3), &x1 + &x2.scale(&t)];
        let fam = HasseFamily::for_vars(2);
        assert!(fam.check_d1(&samples));
        assert!(fam.check_d2(&samples));
    }
}
