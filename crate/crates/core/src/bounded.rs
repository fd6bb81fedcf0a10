//! Subrings `A ⊂ K = F_p(t1..tm)` with `Frac(A) = K`, the uniform
//! denominator conditions against them, and polynomials whose coefficients
//! have a common bounded denominator.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{in_kp_span, kp_independent, recompose_span, FieldCtx, RatFunc, TPoly};
use crate::frobfactor::{recompose_phi_span, sigma};
use crate::poly::Monomial;
use crate::scalar::Coefficient;
use crate::XPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// `F_p[t1..tn]`.
    Poly,
    /// `F_p[t_i^2, t_i^3 : i ≤ n]`.
    Cusp,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Poly => "poly",
            RingKind::Cusp => "cusp",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundedSubring {
    pub kind: RingKind,
    /// Number of t-variables generating the ring.
    pub n: usize,
}

impl BoundedSubring {
    pub fn poly(n: usize) -> Self {
        BoundedSubring {
            kind: RingKind::Poly,
            n,
        }
    }

    pub fn cusp(n: usize) -> Self {
        BoundedSubring {
            kind: RingKind::Cusp,
            n,
        }
    }

    fn monomial_ok(&self, e: &[u32]) -> bool {
        e.iter().enumerate().all(|(i, &x)| {
            x == 0 || (i < self.n && (self.kind == RingKind::Poly || x != 1))
        })
    }

    pub fn contains_poly(&self, f: &TPoly) -> bool {
        f.terms().all(|(e, _)| self.monomial_ok(e))
    }

    /// Monomials of `A` with total degree at most `deg`, coefficient 1.
    pub fn monomials(&self, ctx: &FieldCtx, deg: u32) -> Vec<TPoly> {
        let mut exps: Vec<Vec<u32>> = vec![vec![0; ctx.m]];
        for i in 0..self.n.min(ctx.m) {
            let mut next = Vec::new();
            for e in &exps {
                let used: u32 = e.iter().sum();
                for x in 0..=deg - used {
                    if self.kind == RingKind::Cusp && x == 1 {
                        continue;
                    }
                    let mut e = e.clone();
                    e[i] = x;
                    next.push(e);
                }
            }
            exps = next;
        }
        exps.sort_by_key(|e| e.iter().sum::<u32>());
        exps.into_iter()
            .map(|e| TPoly::monomial(ctx.p, e, 1))
            .collect()
    }
}

/// Membership of a field element in `A`.
pub fn subring_member(ring: &BoundedSubring, a: &RatFunc) -> bool {
    a.is_polynomial() && ring.contains_poly(a.num())
}

/// Outcome of a condition check that may run out of search budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CMembership {
    /// `λ_j ∈ A` with `b^p a = Σ ε_j λ_j^p`.
    Verified(Vec<RatFunc>),
    Refuted,
    Inconclusive,
}

impl CMembership {
    pub fn exit_code(&self) -> i32 {
        match self {
            CMembership::Verified(_) => 0,
            CMembership::Refuted => 1,
            CMembership::Inconclusive => 3,
        }
    }
}

/// Largest total degree of the candidate `λ` tried for dependent `eps`.
pub const SEARCH_DEGREE: u32 = 3;

/// Decides `b^p a ∈ Σ ε_j A^p`.
///
/// For `k^p`-independent `eps` the coefficients over `K` are unique, so the
/// answer is exact. Otherwise the coordinates outside a maximal independent
/// subfamily are searched over small multiples of `A`-monomials, at most
/// `cap` assignments, and a failed search is inconclusive.
pub fn c_membership(
    ring: &BoundedSubring,
    eps: &[RatFunc],
    a: &RatFunc,
    b: &RatFunc,
    cap: usize,
) -> Result<CMembership> {
    if b.is_zero() {
        return Err(Error::Precondition("b must be nonzero".into()));
    }
    let ctx = a.ctx();
    let target = &b.frobenius() * a;
    let in_a = |l: &[RatFunc]| l.iter().all(|x| subring_member(ring, x));
    let ind = kp_independent(eps);
    if ind.independent {
        return Ok(match in_kp_span(&target, eps) {
            Some(l) if in_a(&l) => CMembership::Verified(l),
            _ => CMembership::Refuted,
        });
    }
    let basis_eps: Vec<RatFunc> = ind.basis.iter().map(|&j| eps[j].clone()).collect();
    let free: Vec<usize> = (0..eps.len()).filter(|j| !ind.basis.contains(j)).collect();
    if in_kp_span(&target, &basis_eps).is_none() {
        return Ok(CMembership::Refuted);
    }
    let p = ctx.p.get();
    let mut pool = vec![ctx.zero()];
    for m in ring.monomials(&ctx, SEARCH_DEGREE) {
        for c in 1..p {
            pool.push(RatFunc::from_poly(m.scale(c)));
        }
    }
    let mut digits = vec![0usize; free.len()];
    for _ in 0..cap.max(1) {
        let mut rest = target.clone();
        for (&j, &d) in free.iter().zip(&digits) {
            rest = &rest - &(&eps[j] * &pool[d].frobenius());
        }
        if let Some(l) = in_kp_span(&rest, &basis_eps) {
            if in_a(&l) {
                let mut lambda = vec![ctx.zero(); eps.len()];
                for (&j, x) in ind.basis.iter().zip(l) {
                    lambda[j] = x;
                }
                for (&j, &d) in free.iter().zip(&digits) {
                    lambda[j] = pool[d].clone();
                }
                debug_assert_eq!(recompose_span(ctx, eps, &lambda), target);
                return Ok(CMembership::Verified(lambda));
            }
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(CMembership::Inconclusive);
            }
            digits[k] += 1;
            if digits[k] < pool.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
    Ok(CMembership::Inconclusive)
}

/// For a nonzero cusp member `b` in `t1..tn`, decides
/// `t_{n+1}^p ∉ b^{-p} A^p`. Since `p`-th roots are unique, this is
/// `b t_{n+1} ∉ A`.
pub fn cusp_counterexample_check(n: usize, b: &RatFunc) -> Result<bool> {
    if b.is_zero() {
        return Err(Error::Precondition("b must be nonzero".into()));
    }
    let cusp = BoundedSubring::cusp(n);
    if !subring_member(&cusp, b) {
        return Err(Error::Precondition(format!(
            "{b} is not a member of the cusp ring in t1..t{n}"
        )));
    }
    let ctx = FieldCtx::new(b.ctx().p, n + 1);
    let b = b.with_nvars(n + 1).expect("uses only t1..tn");
    let shifted = &b * &ctx.t(n + 1)?;
    Ok(!subring_member(&BoundedSubring::cusp(n + 1), &shifted))
}

/// A polynomial with a certified common denominator: `bound · c ∈ A` for
/// every coefficient `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatElement {
    pub poly: XPoly,
    pub bound: TPoly,
}

impl FlatElement {
    pub fn new(ring: &BoundedSubring, poly: XPoly, bound: TPoly) -> Result<Self> {
        let f = FlatElement { poly, bound };
        if !f.check(ring) {
            return Err(Error::Precondition(format!(
                "bound {} does not clear the coefficients of {}",
                f.bound, f.poly
            )));
        }
        Ok(f)
    }

    pub fn check(&self, ring: &BoundedSubring) -> bool {
        if self.bound.is_zero() {
            return false;
        }
        let b = RatFunc::from_poly(self.bound.clone());
        self.poly
            .terms()
            .all(|(_, c)| subring_member(ring, &(c * &b)))
    }
}

/// Result of [`d3_flat_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatD3Outcome {
    Witness { h: FlatElement, g: Vec<FlatElement> },
    /// The coefficient of this monomial fails the condition with bound `b`.
    Refuted(Monomial),
    Inconclusive(Monomial),
}

/// The (D3) split of `f` with every coefficient of `g_j` in `b^{-1}A`.
///
/// Terms with `p`-divisible exponents go to `σ(h)` and keep the bound of
/// `f`. Every other coefficient `c` must satisfy `b^p c = Σ ε_j λ_j^p` with
/// `λ_j ∈ A`, giving `c = Σ ε_j (λ_j/b)^p`.
pub fn d3_flat_decompose(
    ring: &BoundedSubring,
    f: &FlatElement,
    eps: &[RatFunc],
    b: &TPoly,
    cap: usize,
) -> Result<FlatD3Outcome> {
    let ctx = *f.poly.ctx();
    let p = ctx.p.get();
    let b_field = RatFunc::from_poly(b.clone());
    let b_inv = b_field.recip()?;
    let mut h = Vec::new();
    let mut g: Vec<Vec<(Monomial, RatFunc)>> = vec![Vec::new(); eps.len()];
    for (m, c) in f.poly.terms() {
        if let Some(root) = m.divide(p) {
            h.push((root, c.clone()));
            continue;
        }
        match c_membership(ring, eps, c, &b_field, cap)? {
            CMembership::Verified(lambda) => {
                for (part, l) in g.iter_mut().zip(lambda) {
                    part.push((m.clone(), &l * &b_inv));
                }
            }
            CMembership::Refuted => return Ok(FlatD3Outcome::Refuted(m.clone())),
            CMembership::Inconclusive => return Ok(FlatD3Outcome::Inconclusive(m.clone())),
        }
    }
    let h = FlatElement {
        poly: XPoly::from_terms(&ctx, h),
        bound: f.bound.clone(),
    };
    let g: Vec<FlatElement> = g
        .into_iter()
        .map(|t| FlatElement {
            poly: XPoly::from_terms(&ctx, t),
            bound: b.clone(),
        })
        .collect();
    debug_assert_eq!(recompose_flat(&ctx, eps, &h, &g), f.poly);
    Ok(FlatD3Outcome::Witness { h, g })
}

/// `σ(h) + Σ ε_j φ(g_j)`.
pub fn recompose_flat(ctx: &FieldCtx, eps: &[RatFunc], h: &FlatElement, g: &[FlatElement]) -> XPoly {
    let parts: Vec<XPoly> = g.iter().map(|x| x.poly.clone()).collect();
    &sigma(&h.poly) + &recompose_phi_span(ctx, eps, &parts)
}

/// Least common multiple of the denominators of `eps`.
pub fn common_denominator(ctx: &FieldCtx, eps: &[RatFunc]) -> TPoly {
    eps.iter().fold(TPoly::one(ctx.p, ctx.m), |acc, e| {
        let g = TPoly::gcd(&acc, e.den());
        let q = e.den().div_exact(&g).expect("gcd divides");
        (&acc * &q).monic()
    })
}

/// An element `Σ ε_j μ_j^p` with its denominator cleared by a `p`-th power,
/// so that it lies in `F_p[t] ∩ Σ ε_j K^p`.
pub fn cleared_span_element(ctx: &FieldCtx, eps: &[RatFunc], mu: &[RatFunc]) -> RatFunc {
    let a = recompose_span(*ctx, eps, mu);
    let d = RatFunc::from_poly(a.den().clone());
    &a * &d.frobenius()
}

/// Tries `b = δ^k` for `k = 1..=max_k`, with `δ` the common denominator of
/// `eps`, and returns the first `b` verified against every sample.
pub fn find_c_witness(
    ring: &BoundedSubring,
    eps: &[RatFunc],
    samples: &[RatFunc],
    max_k: u32,
    cap: usize,
) -> Result<Option<(u32, TPoly)>> {
    let Some(first) = samples.first().or(eps.first()) else {
        return Ok(None);
    };
    let ctx = first.ctx();
    let delta = common_denominator(&ctx, eps);
    for k in 1..=max_k {
        let b = delta.pow(k as u64);
        let bf = RatFunc::from_poly(b.clone());
        let mut ok = true;
        for a in samples {
            if !matches!(c_membership(ring, eps, a, &bf, cap)?, CMembership::Verified(_)) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some((k, b)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Prime;

    fn k(p: u64, m: usize) -> FieldCtx {
        FieldCtx::new(Prime::new(p).unwrap(), m)
    }

    #[test]
    fn membership_examples() {
        let k = k(2, 2);
        let t1 = k.t(1).unwrap();
        let t2 = k.t(2).unwrap();
        let cusp = BoundedSubring::cusp(2);
        assert!(subring_member(&cusp, &(&t1.pow(2) * &t2.pow(3))));
        assert!(!subring_member(&cusp, &t1));
        assert!(!subring_member(&BoundedSubring::poly(1), &t1.recip().unwrap()));
        assert!(!subring_member(&BoundedSubring::poly(1), &t2));
        assert!(subring_member(&cusp, &k.one()));
    }

    #[test]
    fn c_membership_examples() {
        let k = k(2, 1);
        let t = k.t(1).unwrap();
        let poly1 = BoundedSubring::poly(1);
        let eps = [t.recip().unwrap()];
        assert_eq!(
            c_membership(&poly1, &eps, &t, &t, 100).unwrap(),
            CMembership::Verified(vec![t.pow(2)])
        );
        assert_eq!(
            c_membership(&poly1, &[k.one()], &t.pow(2), &k.one(), 100).unwrap(),
            CMembership::Verified(vec![t.clone()])
        );
        assert_eq!(
            c_membership(&poly1, &[k.one()], &t, &k.one(), 100).unwrap(),
            CMembership::Refuted
        );
        assert!(c_membership(&poly1, &[k.one()], &t, &k.zero(), 100).is_err());
    }

    #[test]
    fn c_membership_dependent_eps() {
        let k = k(2, 1);
        let t = k.t(1).unwrap();
        let poly1 = BoundedSubring::poly(1);
        // 1 and t^2 are dependent over k^2.
        let eps = [k.one(), t.pow(2), t.clone()];
        let a = &t.pow(2) + &t.pow(3);
        let CMembership::Verified(l) = c_membership(&poly1, &eps, &a, &k.one(), 100).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(recompose_span(k, &eps, &l), a);
        assert!(l.iter().all(|x| subring_member(&poly1, x)));
        assert_eq!(
            c_membership(&poly1, &eps[..2], &t, &k.one(), 100).unwrap(),
            CMembership::Refuted
        );
    }

    #[test]
    fn cusp_examples() {
        let k1 = k(2, 1);
        let t1 = k1.t(1).unwrap();
        assert_eq!(cusp_counterexample_check(1, &t1.pow(2)), Ok(true));
        assert_eq!(cusp_counterexample_check(1, &(&t1.pow(3) + &t1.pow(2))), Ok(true));
        let k2 = k(2, 2);
        let b = &k2.t(1).unwrap().pow(2) * &k2.t(2).unwrap().pow(3);
        assert_eq!(cusp_counterexample_check(2, &b), Ok(true));
        assert!(cusp_counterexample_check(1, &k2.t(2).unwrap().pow(2)).is_err());
        assert!(cusp_counterexample_check(1, &t1).is_err());
    }

    #[test]
    fn cusp_check_agrees_with_c_membership() {
        let k2 = k(3, 2);
        let b = k2.t(1).unwrap().pow(3);
        let a = k2.t(2).unwrap().pow(3);
        let via_c = c_membership(&BoundedSubring::cusp(2), &[k2.one()], &a, &b, 10).unwrap();
        assert_eq!(via_c, CMembership::Refuted);
        assert_eq!(cusp_counterexample_check(1, &k(3, 1).t(1).unwrap().pow(3)), Ok(true));
    }

    #[test]
    fn flat_examples() {
        let k = k(2, 2);
        let t1 = k.t(1).unwrap();
        let x1 = XPoly::var(&k, 1);
        let x2 = XPoly::var(&k, 2);
        let one = TPoly::one(k.p, k.m);
        let poly1 = BoundedSubring::poly(1);
        let f = FlatElement::new(&poly1, &x1.scale(&t1.pow(2)) + &x2.pow(2), one.clone()).unwrap();
        let out = d3_flat_decompose(&poly1, &f, &[k.one()], &one, 100).unwrap();
        let FlatD3Outcome::Witness { h, g } = out else {
            panic!("expected a witness");
        };
        assert_eq!(h.poly, x2);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].poly, x1.scale(&t1));
        assert!(h.check(&poly1) && g[0].check(&poly1));

        let f = FlatElement::new(&poly1, x1.pow(2), one.clone()).unwrap();
        let out = d3_flat_decompose(&poly1, &f, &[], &one, 100).unwrap();
        assert!(matches!(out, FlatD3Outcome::Witness { ref h, ref g } if h.poly == x1 && g.is_empty()));

        let cusp2 = BoundedSubring::cusp(2);
        let f = FlatElement::new(&cusp2, x1.scale(&t1.pow(2)), one.clone()).unwrap();
        assert_eq!(
            d3_flat_decompose(&cusp2, &f, &[k.one()], &one, 100).unwrap(),
            FlatD3Outcome::Refuted(Monomial::var(1))
        );
    }

    #[test]
    fn ladder_finds_denominator() {
        let k = k(2, 1);
        let t = k.t(1).unwrap();
        let poly1 = BoundedSubring::poly(1);
        let eps = [t.recip().unwrap(), k.one()];
        assert_eq!(common_denominator(&k, &eps), TPoly::var(k.p, 1, 1));
        let samples = [
            cleared_span_element(&k, &eps, &[&t + &k.one(), t.clone()]),
            cleared_span_element(&k, &eps, &[k.one(), k.zero()]),
        ];
        let found = find_c_witness(&poly1, &eps, &samples, 4, 100).unwrap();
        let (_, b) = found.expect("a ladder step works");
        let bf = RatFunc::from_poly(b);
        for a in &samples {
            assert!(matches!(
                c_membership(&poly1, &eps, a, &bf, 100).unwrap(),
                CMembership::Verified(_)
            ));
        }
    }
}
