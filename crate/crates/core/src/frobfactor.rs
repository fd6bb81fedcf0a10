//! The standard F-factorization `(φ, σ)` of the Frobenius map.
//!
//! `φ` raises coefficients to the `p`-th power and `σ` raises variables to
//! the `p`-th power; together `φ∘σ = σ∘φ = (·)^p`. The level of an element
//! is how many times it can be pulled back through `σ`.

use std::fmt;

use crate::fields::{in_kp_span, FieldCtx, RatFunc};
use crate::poly::{Monomial, Poly};
use crate::scalar::Coefficient;
use crate::XPoly;

/// `φ(Σ c_e x^e) = Σ c_e^p x^e`.
pub fn phi<C: Coefficient>(f: &Poly<C>) -> Poly<C> {
    f.map_coefficients(C::frobenius)
}

/// `σ(Σ c_e x^e) = Σ c_e x^{pe}`.
pub fn sigma<C: Coefficient>(f: &Poly<C>) -> Poly<C> {
    let p = C::characteristic(f.ctx()).get();
    f.filter_map_terms(|m, c| Some((m.scale(p), c.clone())))
}

/// `σ^r`.
pub fn sigma_pow<C: Coefficient>(f: &Poly<C>, r: u32) -> Poly<C> {
    (0..r).fold(f.clone(), |acc, _| sigma(&acc))
}

/// The Frobenius map `f ↦ f^p`, computed by ring multiplication.
pub fn frobenius<C: Coefficient>(f: &Poly<C>) -> Poly<C> {
    f.pow(C::characteristic(f.ctx()).get())
}

/// The unique `g` with `σ(g) = f`, when every exponent of `f` is divisible
/// by `p`.
pub fn sigma_preimage<C: Coefficient>(f: &Poly<C>) -> Option<Poly<C>> {
    let p = C::characteristic(f.ctx()).get();
    let terms = f
        .terms()
        .map(|(m, c)| m.divide(p).map(|q| (q, c.clone())))
        .collect::<Option<Vec<_>>>()?;
    Some(Poly::from_terms(f.ctx(), terms))
}

/// A level: a natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(r) => write!(f, "{r}"),
            Level::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `r` with `f ∈ im(σ^r)`. Zero and nonzero constants are fixed by
/// `σ` and have infinite level.
pub fn level<C: Coefficient>(f: &Poly<C>) -> Level {
    if f.is_constant() {
        return Level::Infinite;
    }
    let mut r = 0;
    let mut cur = f.clone();
    while let Some(pre) = sigma_preimage(&cur) {
        cur = pre;
        r += 1;
    }
    Level::Finite(r)
}

/// Why an element fails the (F4) membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F4Failure {
    /// The monomial has an exponent not divisible by `p`, so `f ∉ im(σ)`.
    NotInSigmaImage(Monomial),
    /// The coefficient of `x^{pe}` is outside the `k^p`-span of `eps`.
    SpanFailure(Monomial),
}

impl fmt::Display for F4Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F4Failure::NotInSigmaImage(m) => write!(f, "monomial {m} is not a p-th power"),
            F4Failure::SpanFailure(m) => {
                write!(f, "coefficient of {m} is outside the k^p-span of eps")
            }
        }
    }
}

/// `Σ_j eps[j] · parts[j]^p`.
pub fn recompose_f4(f_ctx: &FieldCtx, eps: &[RatFunc], parts: &[XPoly]) -> XPoly {
    assert_eq!(eps.len(), parts.len());
    eps.iter()
        .zip(parts)
        .fold(XPoly::zero(f_ctx), |acc, (e, h)| {
            &acc + &frobenius(h).scale(e)
        })
}

/// Decides `f ∈ im(σ) ∩ Σ ε_j im(φ)`, which equals `Σ ε_j R^p`, and returns
/// `h` with `f = Σ ε_j h_j^p`.
///
/// Every exponent must be divisible by `p`; then each coefficient `a_{pe}`
/// is solved as `Σ ε_j λ_{j,e}^p`, and `h_j = Σ_e λ_{j,e} x^e`.
pub fn f4_decompose(f: &XPoly, eps: &[RatFunc]) -> Result<Vec<XPoly>, F4Failure> {
    let ctx = *f.ctx();
    let p = ctx.p.get();
    let mut parts = vec![XPoly::zero(&ctx); eps.len()];
    for (m, c) in f.terms() {
        let root = m
            .divide(p)
            .ok_or_else(|| F4Failure::NotInSigmaImage(m.clone()))?;
        let lambda = in_kp_span(c, eps).ok_or_else(|| F4Failure::SpanFailure(m.clone()))?;
        for (part, l) in parts.iter_mut().zip(lambda) {
            *part = &*part + &XPoly::monomial(root.clone(), l);
        }
    }
    debug_assert_eq!(&recompose_f4(&ctx, eps, &parts), f);
    Ok(parts)
}

/// `Σ_j eps[j] · φ(parts[j])`.
pub fn recompose_phi_span(
    f_ctx: &FieldCtx,
    eps: &[RatFunc],
    parts: &[XPoly],
) -> XPoly {
    assert_eq!(eps.len(), parts.len());
    eps.iter()
        .zip(parts)
        .fold(XPoly::zero(f_ctx), |acc, (e, g)| &acc + &phi(g).scale(e))
}

/// Given `σ(x) ∈ Σ ε_j im(φ)`, returns `y` with `x = Σ ε_j φ(y_j)`.
///
/// Runs [`f4_decompose`] on `σ(x)` to get `σ(x) = Σ ε_j y_j^p`; since
/// `y^p = σ(φ(y))` and `σ` is injective, `x = Σ ε_j φ(y_j)`.
pub fn pfac2_descend(x: &XPoly, eps: &[RatFunc]) -> Result<Vec<XPoly>, F4Failure> {
    let ys = f4_decompose(&sigma(x), eps)?;
    debug_assert_eq!(&recompose_phi_span(x.ctx(), eps, &ys), x);
    Ok(ys)
}
