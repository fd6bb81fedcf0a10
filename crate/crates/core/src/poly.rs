//! Sparse graded polynomials in `x1, x2, ...` over a coefficient field.
//!
//! Each `x_i` has degree 1. Only finitely many variables ever occur, so a
//! polynomial here is a finitely supported element of the inverse-limit ring
//! `k[[x_i]]`; every identity checked in this crate is term-local.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Coefficient;

/// Exponent of a monomial in the `x` variables: sorted `(index, exponent)`
/// pairs with positive exponents. Indices count from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(usize, u64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Monomial::from_pairs([(index, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut map: BTreeMap<usize, u64> = BTreeMap::new();
        for (i, e) in pairs {
            *map.entry(i).or_default() += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn pairs(&self) -> &[(usize, u64)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, index: usize) -> u64 {
        self.0
            .iter()
            .find(|(i, _)| *i == index)
            .map_or(0, |(_, e)| *e)
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|(i, _)| *i)
    }

    pub fn max_exponent(&self) -> u64 {
        self.0.iter().map(|(_, e)| *e).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.0.iter().chain(&other.0).copied())
    }

    /// Multiplies every exponent by `k`.
    pub fn scale(&self, k: u64) -> Monomial {
        Monomial(self.0.iter().map(|(i, e)| (*i, e * k)).collect())
    }

    /// Divides every exponent by `k`, if all are divisible.
    pub fn divide(&self, k: u64) -> Option<Monomial> {
        self.0
            .iter()
            .map(|(i, e)| (e % k == 0).then_some((*i, e / k)))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divisible_by(&self, k: u64) -> bool {
        self.0.iter().all(|(_, e)| e % k == 0)
    }

    /// Lowers the exponent of `x_index` by `n`; `None` if it is below `n`.
    pub fn lower(&self, index: usize, n: u64) -> Option<Monomial> {
        let e = self.exponent(index);
        if e < n {
            return None;
        }
        Some(Monomial::from_pairs(
            self.0
                .iter()
                .map(|&(i, k)| if i == index { (i, k - n) } else { (i, k) }),
        ))
    }

    /// Graded lexicographic comparison: degree first, then `x1` before `x2`.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let vars: BTreeSet<usize> = self.vars().chain(other.vars()).collect();
            for v in vars {
                match self.exponent(v).cmp(&other.exponent(v)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (i, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial `Σ c_e x^e` with nonzero coefficients in `C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C: Coefficient> {
    ctx: C::Context,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn zero(ctx: &C::Context) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &C::Context) -> Self {
        Poly::constant(C::one_in(ctx))
    }

    pub fn constant(c: C) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut out = Poly::zero(&c.context());
        out.add_term(m, c);
        out
    }

    /// The variable `x_index`.
    pub fn var(ctx: &C::Context, index: usize) -> Self {
        Poly::monomial(Monomial::var(index), C::one_in(ctx))
    }

    pub fn from_terms(ctx: &C::Context, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut out = Poly::zero(ctx);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn ctx(&self) -> &C::Context {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| C::zero_in(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for zero and for nonzero elements of degree 0.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    /// Largest term degree; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Splits into homogeneous pieces keyed by degree. Zero gives an empty map.
    pub fn homogeneous_components(&self) -> BTreeMap<u64, Poly<C>> {
        let mut out: BTreeMap<u64, Poly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Poly::zero(&self.ctx))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Membership in the homogeneous maximal ideal `R_+`.
    pub fn in_positive_ideal(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Variables with a positive exponent somewhere.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn max_exponent(&self) -> u64 {
        self.terms.keys().map(Monomial::max_exponent).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::from_terms(
            &self.ctx,
            self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())),
        )
    }

    /// Applies `f` to every coefficient, keeping exponents.
    pub fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        Poly::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Applies `f` to every monomial; terms mapped to `None` are dropped.
    pub fn filter_map_terms(&self, f: impl Fn(&Monomial, &C) -> Option<(Monomial, C)>) -> Self {
        Poly::from_terms(&self.ctx, self.terms.iter().filter_map(|(m, c)| f(m, c)))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Terms sorted by descending graded lex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    #[cfg(test)]
    pub(crate) fn assert_no_zero_terms(&self) {
        assert!(self.terms.values().all(|c| !c.is_zero()));
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map_coefficients(|c| -c.clone())
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let mut out = Poly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coefficient> std::iter::Sum for Poly<C> {
    /// Panics on an empty iterator, which has no context to build zero from.
    fn sum<I: Iterator<Item = Poly<C>>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of an empty polynomial iterator");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    /// Descending graded lex order. Coefficients containing a sum are
    /// parenthesized so the output reparses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let cs = c.to_string();
            let wrapped = if cs.contains(' ') { format!("({cs})") } else { cs };
            if m.is_one() {
                f.write_str(&wrapped)?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{wrapped}*{m}")?;
            }
        }
        Ok(())
    }
}
