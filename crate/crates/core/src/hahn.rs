//! Finitely supported Hahn series over `F_p` with exponents in a
//! lexicographically ordered group.
//!
//! `Γ` is the group of finitely supported maps `I → Z` for an ordered index
//! set `I = {1, 2, ...}`, ordered by comparing at the largest index where two
//! elements differ. `Γ₊` collects `0` and the elements with top value `≥ 1`;
//! `Δ` collects `0` and those with top value `≥ 2`. The ring `A` consists of
//! series with exponents in `Δ`.
//!
//! Every element here has finite support. Any index set used in a run is
//! finite, which is enough for the statements that only look at finitely
//! many indices at a time.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::hasse::binom_mod_p;
use crate::scalar::Prime;

/// An element of `Γ`: finitely many nonzero integer coordinates, indexed
/// from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GammaExp(BTreeMap<usize, i64>);

impl GammaExp {
    pub fn zero() -> Self {
        GammaExp::default()
    }

    /// `δ_i`, the element that is 1 at `i` and 0 elsewhere.
    pub fn unit(index: usize) -> Self {
        GammaExp::from_pairs([(index, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut map: BTreeMap<usize, i64> = BTreeMap::new();
        for (i, v) in pairs {
            *map.entry(i).or_default() += v;
        }
        map.retain(|_, v| *v != 0);
        GammaExp(map)
    }

    pub fn get(&self, index: usize) -> i64 {
        self.0.get(&index).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(i, v)| (*i, *v))
    }

    /// Largest index with a nonzero coordinate.
    pub fn top_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn top_value(&self) -> Option<i64> {
        self.0.values().next_back().copied()
    }

    pub fn scale(&self, k: i64) -> Self {
        GammaExp::from_pairs(self.coords().map(|(i, v)| (i, v * k)))
    }

    /// Membership in `Γ₊`: zero, or top value at least 1.
    pub fn in_gamma_plus(&self) -> bool {
        self.top_value().is_none_or(|v| v >= 1)
    }

    /// Membership in `Δ`: zero, or top value at least 2.
    pub fn in_delta(&self) -> bool {
        self.top_value().is_none_or(|v| v >= 2)
    }

    /// Exact division of every coordinate by `k`.
    pub fn divide(&self, k: i64) -> Option<Self> {
        self.coords()
            .map(|(i, v)| (v % k == 0).then_some((i, v / k)))
            .collect::<Option<Vec<_>>>()
            .map(GammaExp::from_pairs)
    }
}

/// The lexicographic order of `Γ`, decided at the largest differing index.
pub fn gamma_compare(a: &GammaExp, b: &GammaExp) -> Ordering {
    let indices: BTreeSet<usize> = a.0.keys().chain(b.0.keys()).copied().collect();
    for i in indices.into_iter().rev() {
        match a.get(i).cmp(&b.get(i)) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

impl Ord for GammaExp {
    fn cmp(&self, other: &Self) -> Ordering {
        gamma_compare(self, other)
    }
}

impl PartialOrd for GammaExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &GammaExp {
    type Output = GammaExp;
    fn add(self, rhs: &GammaExp) -> GammaExp {
        GammaExp::from_pairs(self.coords().chain(rhs.coords()))
    }
}

impl Neg for &GammaExp {
    type Output = GammaExp;
    fn neg(self) -> GammaExp {
        self.scale(-1)
    }
}

impl Sub for &GammaExp {
    type Output = GammaExp;
    fn sub(self, rhs: &GammaExp) -> GammaExp {
        self + &(-rhs)
    }
}

impl fmt::Display for GammaExp {
    /// `2g1-1g3` for `2δ₁ − δ₃`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, v)) in self.coords().enumerate() {
            if k > 0 && v > 0 {
                f.write_str("+")?;
            }
            write!(f, "{v}g{i}")?;
        }
        Ok(())
    }
}

/// A finitely supported series `Σ c_γ t^γ` with `c_γ ∈ F_p`.
///
/// Terms are kept in increasing `Γ` order, so the valuation is the first key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HahnElement {
    p: Prime,
    terms: BTreeMap<GammaExp, u64>,
}

impl HahnElement {
    pub fn zero(p: Prime) -> Self {
        HahnElement {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: Prime) -> Self {
        HahnElement::monomial(p, GammaExp::zero(), 1)
    }

    /// `c · t^γ`.
    pub fn monomial(p: Prime, gamma: GammaExp, c: i64) -> Self {
        let mut out = HahnElement::zero(p);
        out.add_term(gamma, p.reduce(c));
        out
    }

    pub fn from_terms(p: Prime, terms: impl IntoIterator<Item = (GammaExp, i64)>) -> Self {
        let mut out = HahnElement::zero(p);
        for (g, c) in terms {
            out.add_term(g, p.reduce(c));
        }
        out
    }

    fn add_term(&mut self, gamma: GammaExp, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.p.get();
        let entry = self.terms.entry(gamma).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GammaExp, u64)> {
        self.terms.iter().map(|(g, c)| (g, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &GammaExp> {
        self.terms.keys()
    }

    /// `v(f)`, the smallest exponent in the support.
    pub fn valuation(&self) -> Result<GammaExp> {
        self.terms.keys().next().cloned().ok_or(Error::ZeroValuation)
    }

    pub fn leading_coefficient(&self) -> Result<u64> {
        self.terms.values().next().copied().ok_or(Error::ZeroValuation)
    }

    pub fn scale(&self, c: u64) -> Self {
        HahnElement::from_terms(
            self.p,
            self.terms
                .iter()
                .map(|(g, v)| (g.clone(), self.p.mul_mod(*v, c) as i64)),
        )
    }

    /// Multiplication by `t^γ`.
    pub fn shift(&self, gamma: &GammaExp) -> Self {
        HahnElement {
            p: self.p,
            terms: self.terms.iter().map(|(g, c)| (g + gamma, *c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = HahnElement::one(self.p);
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

    /// The unique `r` with `r^p = self`, if it exists. Over `F_p`,
    /// `(Σ c t^γ)^p = Σ c t^{pγ}`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p.get() as i64;
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| g.divide(p).map(|r| (r, *c as i64)))
            .collect::<Option<Vec<_>>>()?;
        Some(HahnElement::from_terms(self.p, terms))
    }

    /// Membership in `A`: every exponent lies in `Δ`.
    pub fn a_member(&self) -> bool {
        self.terms.keys().all(GammaExp::in_delta)
    }

    /// Membership in the valuation ring: every exponent lies in `Γ₊`.
    pub fn in_valuation_ring(&self) -> bool {
        self.terms.keys().all(GammaExp::in_gamma_plus)
    }

    /// Membership in `A^p`.
    pub fn in_a_pth_powers(&self) -> bool {
        self.pth_root().is_some_and(|r| r.a_member())
    }

    /// Largest index used anywhere in the support.
    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .filter_map(GammaExp::top_index)
            .max()
            .unwrap_or(0)
    }
}

impl Add for &HahnElement {
    type Output = HahnElement;
    fn add(self, rhs: &HahnElement) -> HahnElement {
        debug_assert_eq!(self.p, rhs.p);
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), *c);
        }
        out
    }
}

impl Neg for &HahnElement {
    type Output = HahnElement;
    fn neg(self) -> HahnElement {
        self.scale(self.p.get() - 1)
    }
}

impl Sub for &HahnElement {
    type Output = HahnElement;
    fn sub(self, rhs: &HahnElement) -> HahnElement {
        self + &(-rhs)
    }
}

impl Mul for &HahnElement {
    type Output = HahnElement;
    fn mul(self, rhs: &HahnElement) -> HahnElement {
        debug_assert_eq!(self.p, rhs.p);
        let mut out = HahnElement::zero(self.p);
        for (ga, ca) in &self.terms {
            for (gb, cb) in &rhs.terms {
                out.add_term(ga + gb, self.p.mul_mod(*ca, *cb));
            }
        }
        out
    }
}

impl Mul for HahnElement {
    type Output = HahnElement;
    fn mul(self, rhs: HahnElement) -> HahnElement {
        &self * &rhs
    }
}

impl fmt::Display for HahnElement {
    /// Increasing `Γ` order, e.g. `t[2g1] + 2*t[3g1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if g.is_zero() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "t[{g}]")?;
            } else {
                write!(f, "{c}*t[{g}]")?;
            }
        }
        Ok(())
    }
}

/// Output of [`hahn_invert_truncated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedInverse {
    /// The partial sum approximating `g^{-1}`.
    pub value: HahnElement,
    /// `g · value − 1`.
    pub residual: HahnElement,
    /// Valuation of the approximation error `value − g^{-1} = g^{-1}·residual`,
    /// i.e. `v(residual) − v(g)`. `None` when the residual vanishes.
    pub error_valuation: Option<GammaExp>,
    /// Valuations of the retained geometric terms `t^{-γ}(−s)^k`, `k < terms`.
    pub retained_valuations: Vec<GammaExp>,
}

impl TruncatedInverse {
    /// The error sits strictly above every retained term.
    pub fn is_adequate(&self) -> bool {
        match &self.error_valuation {
            None => true,
            Some(err) => self.retained_valuations.iter().all(|v| err > v),
        }
    }
}

/// Truncated inverse of a nonzero `g`.
///
/// Write `g = c·t^γ(1 + u + w)` where `u` collects the terms whose top index
/// is at most that of `γ` and `w` the rest. Then
/// `g^{-1} = c^{-1} t^{-γ} Σ_{n,m} C(n+m, n)(−u)^n(−w)^m`, and the sum is cut
/// at `n + m < terms`.
pub fn hahn_invert_truncated(g: &HahnElement, terms: usize) -> Result<TruncatedInverse> {
    if terms == 0 {
        return Err(Error::Precondition("truncation needs at least one term".into()));
    }
    let p = g.prime();
    let gamma = g.valuation()?;
    let lead = g.leading_coefficient()?;
    let lead_inv = p.inv_mod(lead).expect("nonzero coefficient");
    let top = gamma.top_index().unwrap_or(0);
    let neg_gamma = -&gamma;

    let normalized = g.scale(lead_inv).shift(&neg_gamma);
    let tail = &normalized - &HahnElement::one(p);
    let mut u = HahnElement::zero(p);
    let mut w = HahnElement::zero(p);
    for (e, c) in tail.terms() {
        let part = HahnElement::monomial(p, e.clone(), c as i64);
        if e.top_index().unwrap_or(0) <= top {
            u = &u + &part;
        } else {
            w = &w + &part;
        }
    }
    let neg_u = -&u;
    let neg_w = -&w;

    let u_pows: Vec<HahnElement> = powers(&neg_u, terms);
    let w_pows: Vec<HahnElement> = powers(&neg_w, terms);
    let mut sum = HahnElement::zero(p);
    let mut retained_valuations = Vec::new();
    for k in 0..terms {
        let mut group = HahnElement::zero(p);
        for (n, un) in u_pows.iter().enumerate().take(k + 1) {
            let b = binom_mod_p(k as u64, n as u64, p);
            if b == 0 {
                continue;
            }
            group = &group + &(un * &w_pows[k - n]).scale(b);
        }
        if let Ok(v) = group.valuation() {
            retained_valuations.push(&v + &neg_gamma);
        }
        sum = &sum + &group;
    }
    let value = sum.shift(&neg_gamma).scale(lead_inv);
    let residual = &(g * &value) - &HahnElement::one(p);
    let error_valuation = residual.valuation().ok().map(|v| &v - &gamma);
    Ok(TruncatedInverse {
        value,
        residual,
        error_valuation,
        retained_valuations,
    })
}

fn powers(x: &HahnElement, n: usize) -> Vec<HahnElement> {
    let mut out = Vec::with_capacity(n);
    let mut cur = HahnElement::one(x.prime());
    for _ in 0..n {
        out.push(cur.clone());
        cur = &cur * x;
    }
    out
}

/// Checks that `t^δ · g^{-1}` lands in `A` term by term, for `g ∈ A` nonzero
/// and `δ ∈ Δ` whose top index exceeds the top index of `v(g)`.
///
/// Returns the verdict on the truncated inverse with `terms` terms.
pub fn shift_into_a_check(g: &HahnElement, delta: &GammaExp, terms: usize) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !g.a_member() {
        return Err(Error::Precondition(format!("{g} is not in A")));
    }
    if !delta.in_delta() || delta.is_zero() {
        return Err(Error::Precondition(format!("{delta} is not a nonzero element of Δ")));
    }
    let g_top = g.valuation()?.top_index().unwrap_or(0);
    let d_top = delta.top_index().expect("nonzero");
    if d_top <= g_top {
        return Err(Error::Precondition(format!(
            "top index {d_top} of δ must exceed top index {g_top} of v(g)"
        )));
    }
    let inv = hahn_invert_truncated(g, terms)?;
    Ok(inv.value.shift(delta).a_member())
}

/// For nonzero `b ∈ A` and an index `j` above the top index of `v(b)`,
/// decides `t^{pδ_j} ∉ b^{-p}A^p` by valuations: any `a` with
/// `a^p = b^p t^{pδ_j}` has `v(a) = v(b) + δ_j`, whose top value is 1.
pub fn aleph1_failure_check(b: &HahnElement, j: usize) -> Result<bool> {
    if b.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !b.a_member() {
        return Err(Error::Precondition(format!("{b} is not in A")));
    }
    let gamma = b.valuation()?;
    let top = gamma.top_index().unwrap_or(0);
    if j <= top {
        return Err(Error::Precondition(format!(
            "index {j} must exceed top index {top} of v(b)"
        )));
    }
    let shifted = &gamma + &GammaExp::unit(j);
    Ok(!shifted.in_delta())
}

/// For a finite `S ⊂ A ∩ K^p`, picks `δ* = 2δ_{i*}` with `i*` above every
/// index used by the `p`-th roots of `S`, so that `b = t^{δ*}` satisfies
/// `b^p s ∈ A^p` for all `s ∈ S`.
///
/// Returns `None` if `i*` would exceed `index_size`.
pub fn aleph0_bound(samples: &[HahnElement], index_size: usize) -> Result<Option<GammaExp>> {
    let mut top = 0;
    for s in samples {
        let root = s
            .pth_root()
            .ok_or_else(|| Error::Precondition(format!("{s} is not a p-th power")))?;
        top = top.max(root.max_index());
    }
    let i_star = top + 1;
    if i_star > index_size {
        return Ok(None);
    }
    Ok(Some(GammaExp::unit(i_star).scale(2)))
}

/// Verifies `b^p s ∈ A^p` for every sample, with `b = t^δ`.
pub fn aleph0_check(samples: &[HahnElement], delta: &GammaExp) -> bool {
    samples.iter().all(|s| {
        let p = s.prime().get() as i64;
        s.shift(&delta.scale(p)).in_a_pth_powers()
    })
}
