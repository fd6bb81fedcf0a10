//! Sparse polynomials in `t1..tm` over `F_p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Prime;

/// Exponent vector of length `m`.
pub type TExp = Vec<u32>;

/// A polynomial in `F_p[t1, ..., tm]`.
///
/// Terms are keyed by exponent vector. `BTreeMap` order on `Vec<u32>` is the
/// lexicographic order with `t1` most significant, so the leading term is the
/// last entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TPoly {
    p: Prime,
    m: usize,
    terms: BTreeMap<TExp, u64>,
}

impl TPoly {
    pub fn zero(p: Prime, m: usize) -> Self {
        TPoly {
            p,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: Prime, m: usize, c: i64) -> Self {
        let mut out = TPoly::zero(p, m);
        out.add_term(vec![0; m], p.reduce(c));
        out
    }

    pub fn one(p: Prime, m: usize) -> Self {
        TPoly::constant(p, m, 1)
    }

    /// The variable `t_index`, with `index` counted from 1.
    pub fn var(p: Prime, m: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= m, "t{index} outside 1..={m}");
        let mut exp = vec![0; m];
        exp[index - 1] = 1;
        TPoly::monomial(p, exp, 1)
    }

    pub fn monomial(p: Prime, exp: TExp, c: u64) -> Self {
        let mut out = TPoly::zero(p, exp.len());
        out.add_term(exp, c % p.get());
        out
    }

    pub fn from_terms(p: Prime, m: usize, terms: impl IntoIterator<Item = (TExp, u64)>) -> Self {
        let mut out = TPoly::zero(p, m);
        for (e, c) in terms {
            assert_eq!(e.len(), m);
            out.add_term(e, c % p.get());
        }
        out
    }

    fn add_term(&mut self, exp: TExp, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.p.get();
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TExp, u64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant value if this polynomial is a constant.
    pub fn constant_value(&self) -> Option<u64> {
        if self.is_zero() {
            Some(0)
        } else if self.is_constant() {
            self.terms.values().next().copied()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value() == Some(1)
    }

    /// Leading term under lex order.
    pub fn leading(&self) -> Option<(&TExp, u64)> {
        self.terms.iter().next_back().map(|(e, c)| (e, *c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn deg_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Indices (0-based) of variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.m)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p.get();
        if c == 0 {
            return TPoly::zero(self.p, self.m);
        }
        TPoly {
            p: self.p,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), self.p.mul_mod(*v, c)))
                .collect(),
        }
    }

    /// Scales so that the lex-leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.p.inv_mod(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = TPoly::one(self.p, self.m);
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

    /// `f ↦ f^p`; over `F_p` this multiplies every exponent by `p`.
    pub fn frobenius(&self) -> Self {
        let p = self.p.get() as u32;
        TPoly {
            p: self.p,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * p).collect(), *c))
                .collect(),
        }
    }

    /// Inverse of [`frobenius`](Self::frobenius): defined when every exponent
    /// is divisible by `p`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p.get() as u32;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.iter().any(|x| x % p != 0) {
                return None;
            }
            terms.insert(e.iter().map(|x| x / p).collect(), *c);
        }
        Some(TPoly {
            p: self.p,
            m: self.m,
            terms,
        })
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &[u32]) -> Self {
        TPoly {
            p: self.p,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), *c))
                .collect(),
        }
    }

    /// Re-embeds into a field with `m` variables; fails if a dropped
    /// variable occurs.
    pub fn with_nvars(&self, m: usize) -> Option<Self> {
        let mut out = TPoly::zero(self.p, m);
        for (e, c) in &self.terms {
            if e.iter().skip(m).any(|&x| x > 0) {
                return None;
            }
            let mut ne: TExp = e.iter().copied().take(m).collect();
            ne.resize(m, 0);
            out.add_term(ne, *c);
        }
        Some(out)
    }

    /// Exact division. `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &TPoly) -> Option<TPoly> {
        let (lead_e, lead_c) = divisor.leading()?;
        let lead_e = lead_e.clone();
        let lead_inv = self.p.inv_mod(lead_c).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = TPoly::zero(self.p, self.m);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: TExp = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = self.p.mul_mod(rc, lead_inv);
            let step = TPoly::monomial(self.p, qe, qc);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Coefficient of `t_var^k`, as a polynomial free of `t_var`.
    fn coeff_in(&self, var: usize, k: u32) -> TPoly {
        let mut out = TPoly::zero(self.p, self.m);
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut ne = e.clone();
                ne[var] = 0;
                out.add_term(ne, *c);
            }
        }
        out
    }

    /// Content with respect to `t_var`: gcd of the coefficients when viewed
    /// as a univariate polynomial in that variable.
    fn content_in(&self, var: usize) -> TPoly {
        let mut ks: Vec<u32> = self.terms.keys().map(|e| e[var]).collect();
        ks.sort_unstable();
        ks.dedup();
        let mut g = TPoly::zero(self.p, self.m);
        for k in ks {
            g = TPoly::gcd(&g, &self.coeff_in(var, k));
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_in(&self, var: usize) -> TPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(var);
        self.div_exact(&c).expect("content divides")
    }

    /// Pseudo-remainder of `a` by `b` as univariate polynomials in `t_var`.
    fn prem(a: &TPoly, b: &TPoly, var: usize) -> TPoly {
        let db = b.deg_in(var);
        let lb = b.coeff_in(var, db);
        let mut r = a.clone();
        while !r.is_zero() && r.deg_in(var) >= db {
            let dr = r.deg_in(var);
            let lr = r.coeff_in(var, dr);
            let mut sh = vec![0; r.m];
            sh[var] = dr - db;
            r = &(&r * &lb) - &(&lr * &b.shift(&sh));
        }
        r
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(a: &TPoly, b: &TPoly) -> TPoly {
        debug_assert_eq!(a.p, b.p);
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return TPoly::one(a.p, a.m);
        }
        let var = (0..a.m)
            .rev()
            .find(|&i| a.deg_in(i) > 0 || b.deg_in(i) > 0)
            .expect("non-constant input has a variable");
        if a.deg_in(var) == 0 {
            return TPoly::gcd(a, &b.content_in(var));
        }
        if b.deg_in(var) == 0 {
            return TPoly::gcd(&a.content_in(var), b);
        }
        let ca = a.content_in(var);
        let cb = b.content_in(var);
        let content = TPoly::gcd(&ca, &cb);
        let mut f = a.div_exact(&ca).expect("content divides");
        let mut g = b.div_exact(&cb).expect("content divides");
        if f.deg_in(var) < g.deg_in(var) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = TPoly::prem(&f, &g, var);
            if r.is_zero() {
                break;
            }
            if r.deg_in(var) == 0 {
                g = TPoly::one(a.p, a.m);
                break;
            }
            f = g;
            g = r.primitive_in(var);
        }
        (&content * &g.primitive_in(var)).monic()
    }

    /// Evaluates at a point of `F_p^m`.
    pub fn eval(&self, point: &[u64]) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (e, c)| {
            let v = e
                .iter()
                .zip(point)
                .fold(*c, |a, (k, x)| p.mul_mod(a, p.pow_mod(*x, *k as u64)));
            (acc + v) % p.get()
        })
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        debug_assert_eq!((self.p, self.m), (rhs.p, rhs.m));
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        self.scale(self.p.get() - 1)
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        self + &(-rhs)
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        debug_assert_eq!((self.p, self.m), (rhs.p, rhs.m));
        let mut out = TPoly::zero(self.p, self.m);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, self.p.mul_mod(*ca, *cb));
            }
        }
        out
    }
}

fn fmt_texp(e: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "t{}", i + 1)?;
        } else {
            write!(f, "t{}^{}", i + 1, k)?;
        }
    }
    Ok(())
}

impl fmt::Display for TPoly {
    /// Terms in descending lex order, coefficients as residues in `[0, p)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                write!(f, "{c}")?;
            } else {
                if *c != 1 {
                    write!(f, "{c}*")?;
                }
                fmt_texp(e, f)?;
            }
        }
        Ok(())
    }
}
