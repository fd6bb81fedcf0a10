//! Linear algebra over the subfield `k^p` of `k = F_p(t1..tm)`.
//!
//! The monomials `t^e` with `e ∈ [0,p)^m` form a basis of `k` over `k^p`, so
//! every `a ∈ k` is uniquely `Σ_e c_e^p t^e`. Writing each element in this
//! basis turns a `k^p`-linear question into an ordinary `k`-linear system
//! in the `p`-th roots `c_e`.

use std::collections::{BTreeMap, BTreeSet};


use super::ratfunc::{FieldCtx, RatFunc};
use super::tpoly::{TExp, TPoly};
use crate::linalg::{self, EchelonBasis};
use crate::scalar::Coefficient;

/// `a = Σ_e entries[e]^p · t^e` over residue vectors `e ∈ [0,p)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPowerDecomposition {
    ctx: FieldCtx,
    entries: BTreeMap<TExp, RatFunc>,
}

impl PPowerDecomposition {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn entries(&self) -> &BTreeMap<TExp, RatFunc> {
        &self.entries
    }

    /// The entry at residue `e`, zero when absent.
    pub fn get(&self, e: &[u32]) -> RatFunc {
        self.entries
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn recompose(&self) -> RatFunc {
        let ctx = self.ctx;
        self.entries.iter().fold(ctx.zero(), |acc, (e, c)| {
            let basis = RatFunc::from_poly(TPoly::monomial(ctx.p, e.clone(), 1));
            &acc + &(&c.pow(ctx.p.get()) * &basis)
        })
    }
}

/// Decomposes `a` in the monomial basis of `k` over `k^p`.
///
/// With `a = g/h`, rewrite `a = g·h^(p-1) / h^p` and split the numerator's
/// monomials by exponent residue mod `p`; each residue class is `t^e` times a
/// `p`-th power, whose root is read off by dividing exponents by `p`.
pub fn ppow_decompose(a: &RatFunc) -> PPowerDecomposition {
    let ctx = a.ctx();
    let p = ctx.p.get() as u32;
    let mut entries = BTreeMap::new();
    if a.is_zero() {
        return PPowerDecomposition { ctx, entries };
    }
    let h = a.den();
    let numerator = a.num() * &h.pow(p as u64 - 1);
    let mut classes: BTreeMap<TExp, Vec<(TExp, u64)>> = BTreeMap::new();
    for (e, c) in numerator.terms() {
        let residue: TExp = e.iter().map(|x| x % p).collect();
        let root: TExp = e.iter().map(|x| x / p).collect();
        classes.entry(residue).or_default().push((root, c));
    }
    let h = RatFunc::from_poly(h.clone());
    for (residue, terms) in classes {
        let root = RatFunc::from_poly(TPoly::from_terms(ctx.p, ctx.m, terms));
        let entry = root.checked_div(&h).expect("denominator is nonzero");
        entries.insert(residue, entry);
    }
    PPowerDecomposition { ctx, entries }
}

fn residue_union<'a>(decomps: impl IntoIterator<Item = &'a PPowerDecomposition>) -> Vec<TExp> {
    let keys: BTreeSet<TExp> = decomps
        .into_iter()
        .flat_map(|d| d.entries.keys().cloned())
        .collect();
    keys.into_iter().collect()
}

/// Searches for `λ` with `a = Σ_j eps[j] · λ_j^p`.
///
/// Returns `None` when `a` is not in the `k^p`-span of `eps`. When `eps` is
/// dependent over `k^p` one of the solutions is returned.
pub fn in_kp_span(a: &RatFunc, eps: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let ctx = a.ctx();
    if eps.is_empty() {
        return a.is_zero().then(Vec::new);
    }
    let target = ppow_decompose(a);
    let columns: Vec<PPowerDecomposition> = eps.iter().map(ppow_decompose).collect();
    let residues = residue_union(std::iter::once(&target).chain(&columns));
    let matrix: Vec<Vec<RatFunc>> = residues
        .iter()
        .map(|e| columns.iter().map(|c| c.get(e)).collect())
        .collect();
    let rhs: Vec<RatFunc> = residues.iter().map(|e| target.get(e)).collect();
    let lambda = linalg::solve(&ctx, &matrix, &rhs, eps.len())?;
    debug_assert_eq!(&recompose_span(ctx, eps, &lambda), a);
    Some(lambda)
}

/// `Σ_j eps[j] · lambda[j]^p`.
pub fn recompose_span(ctx: FieldCtx, eps: &[RatFunc], lambda: &[RatFunc]) -> RatFunc {
    assert_eq!(eps.len(), lambda.len());
    eps.iter().zip(lambda).fold(ctx.zero(), |acc, (e, l)| {
        &acc + &(e * &l.frobenius())
    })
}

/// Result of [`kp_independent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    /// A maximal independent subfamily, chosen greedily in input order.
    pub basis: Vec<usize>,
}

/// Decides linear independence of `eps` over `k^p`.
pub fn kp_independent(eps: &[RatFunc]) -> Independence {
    let decomps: Vec<PPowerDecomposition> = eps.iter().map(ppow_decompose).collect();
    let residues = residue_union(&decomps);
    let mut echelon = EchelonBasis::new();
    let mut basis = Vec::new();
    for (j, d) in decomps.iter().enumerate() {
        let v: Vec<RatFunc> = residues.iter().map(|e| d.get(e)).collect();
        if echelon.insert(&v) {
            basis.push(j);
        }
    }
    Independence {
        independent: basis.len() == eps.len(),
        basis,
    }
}
