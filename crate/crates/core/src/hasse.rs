//! Hasse derivatives with respect to the variables.
//!
//! `∂_i^n` sends `x_i^k` to `C(k, n) x_i^(k-n)` and is linear over the other
//! variables and the coefficient field. `∂^{[r]}` abbreviates `∂^{p^r}`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Coefficient, Prime};

/// `C(k, n) mod p` by Lucas' theorem: the product of the digit-wise binomials
/// of `k` and `n` in base `p`.
pub fn binom_mod_p(mut k: u64, mut n: u64, p: Prime) -> u64 {
    if n > k {
        return 0;
    }
    let pp = p.get();
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (kd, nd) = (k % pp, n % pp);
        if nd > kd {
            return 0;
        }
        acc = p.mul_mod(acc, small_binom(kd, nd, p));
        k /= pp;
        n /= pp;
    }
    acc % pp
}

// C(k, n) mod p for k < p, where every factorial involved is a unit.
fn small_binom(k: u64, n: u64, p: Prime) -> u64 {
    let n = n.min(k - n);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..n {
        num = p.mul_mod(num, k - i);
        den = p.mul_mod(den, i + 1);
    }
    p.mul_mod(num, p.inv_mod(den).expect("den < p is a unit"))
}

/// The Hasse derivative with respect to `x_var`. Homogeneous of degree −1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HasseDerivative {
    pub var: usize,
}

impl HasseDerivative {
    pub fn new(var: usize) -> Self {
        HasseDerivative { var }
    }

    /// `∂^n(f)`.
    pub fn apply<C: Coefficient>(&self, n: u64, f: &Poly<C>) -> Poly<C> {
        hasse_derive(*self, n, f)
    }

    /// `∂^{[r]}(f) = ∂^{p^r}(f)`.
    pub fn bracket<C: Coefficient>(&self, r: u32, f: &Poly<C>) -> Result<Poly<C>> {
        hasse_bracket(*self, r, f)
    }
}

pub fn hasse_derive<C: Coefficient>(d: HasseDerivative, n: u64, f: &Poly<C>) -> Poly<C> {
    if n == 0 {
        return f.clone();
    }
    let ctx = f.ctx().clone();
    let p = C::characteristic(&ctx);
    f.filter_map_terms(|m, c| {
        let lowered = m.lower(d.var, n)?;
        let b = binom_mod_p(m.exponent(d.var), n, p);
        (b != 0).then(|| (lowered, c.clone() * C::from_int_in(&ctx, b as i64)))
    })
}

pub fn hasse_bracket<C: Coefficient>(d: HasseDerivative, r: u32, f: &Poly<C>) -> Result<Poly<C>> {
    let p = C::characteristic(f.ctx());
    let order = p.checked_power(r).ok_or(Error::ExponentOverflow {
        base: p.get(),
        exp: r,
    })?;
    Ok(hasse_derive(d, order, f))
}
