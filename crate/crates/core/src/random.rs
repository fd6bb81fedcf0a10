//! Seeded generators for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::{FieldCtx, RatFunc, TPoly};
use crate::hahn::{GammaExp, HahnElement};
use crate::poly::Monomial;
use crate::scalar::{Coefficient, Prime};
use crate::XPoly;

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A polynomial in `t1..tm` with at most `max_terms` terms, each exponent
/// at most `max_deg`. May be zero.
pub fn tpoly<R: Rng>(rng: &mut R, ctx: &FieldCtx, max_deg: u32, max_terms: usize) -> TPoly {
    let p = ctx.p;
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(Vec<u32>, u64)> = (0..n)
        .map(|_| {
            let e = (0..ctx.m).map(|_| rng.gen_range(0..=max_deg)).collect();
            (e, rng.gen_range(1..p.get()))
        })
        .collect();
    TPoly::from_terms(p, ctx.m, terms)
}

/// A nonzero polynomial in `t1..tm`.
pub fn nonzero_tpoly<R: Rng>(rng: &mut R, ctx: &FieldCtx, max_deg: u32, max_terms: usize) -> TPoly {
    loop {
        let f = tpoly(rng, ctx, max_deg, max_terms.max(1));
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random element of `k`; numerator and denominator have degree at most
/// `max_deg` in each variable.
pub fn ratfunc<R: Rng>(rng: &mut R, ctx: &FieldCtx, max_deg: u32) -> RatFunc {
    let num = tpoly(rng, ctx, max_deg, 3);
    let den = if rng.gen_bool(0.4) {
        TPoly::one(ctx.p, ctx.m)
    } else {
        nonzero_tpoly(rng, ctx, max_deg, 2)
    };
    RatFunc::new(num, den).expect("nonzero denominator")
}

pub fn nonzero_ratfunc<R: Rng>(rng: &mut R, ctx: &FieldCtx, max_deg: u32) -> RatFunc {
    loop {
        let a = ratfunc(rng, ctx, max_deg);
        if !a.is_zero() {
            return a;
        }
    }
}

/// A monomial in `x1..xn` of total degree exactly `deg`.
pub fn monomial_of_degree<R: Rng>(rng: &mut R, nvars: usize, deg: u64) -> Monomial {
    let mut exps = vec![0u64; nvars];
    if nvars == 0 {
        return Monomial::one();
    }
    for _ in 0..deg {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_pairs(exps.into_iter().enumerate().map(|(i, e)| (i + 1, e)))
}

/// Shape parameters for random polynomials.
#[derive(Clone, Copy, Debug)]
pub struct PolyShape {
    pub nvars: usize,
    pub max_deg: u64,
    pub max_terms: usize,
    pub coeff_deg: u32,
}

impl PolyShape {
    pub fn new(nvars: usize, max_deg: u64, max_terms: usize, coeff_deg: u32) -> Self {
        PolyShape {
            nvars,
            max_deg,
            max_terms,
            coeff_deg,
        }
    }
}

pub fn xpoly<R: Rng>(rng: &mut R, ctx: &FieldCtx, shape: PolyShape) -> XPoly {
    let n = rng.gen_range(0..=shape.max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let d = rng.gen_range(0..=shape.max_deg);
            (
                monomial_of_degree(rng, shape.nvars, d),
                ratfunc(rng, ctx, shape.coeff_deg),
            )
        })
        .collect();
    XPoly::from_terms(ctx, terms)
}

pub fn homogeneous_xpoly<R: Rng>(rng: &mut R, ctx: &FieldCtx, shape: PolyShape, deg: u64) -> XPoly {
    let n = rng.gen_range(0..=shape.max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            (
                monomial_of_degree(rng, shape.nvars, deg),
                ratfunc(rng, ctx, shape.coeff_deg),
            )
        })
        .collect();
    XPoly::from_terms(ctx, terms)
}

/// A random element of `Γ` supported on `1..=index_size` with coordinates
/// in `-bound..=bound`.
pub fn gamma<R: Rng>(rng: &mut R, index_size: usize, bound: i64) -> GammaExp {
    let k = rng.gen_range(0..=index_size.min(3));
    GammaExp::from_pairs((0..k).map(|_| {
        (
            rng.gen_range(1..=index_size),
            rng.gen_range(-bound..=bound),
        )
    }))
}

/// A random element of `Δ` with top index at most `max_index`; zero only if
/// `max_index` is zero.
pub fn delta<R: Rng>(rng: &mut R, max_index: usize, bound: i64) -> GammaExp {
    if max_index == 0 {
        return GammaExp::zero();
    }
    let top = rng.gen_range(1..=max_index);
    let lower = gamma(rng, top - 1, bound);
    let lower = GammaExp::from_pairs(lower.coords().filter(|(i, _)| *i < top));
    &lower + &GammaExp::unit(top).scale(rng.gen_range(2..=bound.max(2)))
}

/// A random nonzero element of `A` with at most `max_terms` terms.
pub fn a_element<R: Rng>(
    rng: &mut R,
    p: Prime,
    index_size: usize,
    max_terms: usize,
    bound: i64,
) -> HahnElement {
    loop {
        let n = rng.gen_range(1..=max_terms.max(1));
        let h = HahnElement::from_terms(
            p,
            (0..n).map(|_| {
                let g = if rng.gen_bool(0.2) {
                    GammaExp::zero()
                } else {
                    delta(rng, index_size, bound)
                };
                (g, rng.gen_range(1..p.get()) as i64)
            }),
        );
        if !h.is_zero() {
            return h;
        }
    }
}
