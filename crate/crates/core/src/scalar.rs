//! Coefficient scalars.
//!
//! Polynomials in this crate are generic over a [`Coefficient`] type: an exact
//! field of prime characteristic whose elements carry their own context (the
//! prime, and for rational function fields the number of `t` variables).
//! Two coefficient fields are provided: the prime field [`Fp`] and the
//! rational function field [`RatFunc`](crate::fields::RatFunc).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Pow;

use crate::error::FieldError;

/// Largest prime accepted. Keeps every product of two residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// A verified prime number, the characteristic of every field in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(2..=MAX_PRIME).contains(&p) {
            return Err(FieldError::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(FieldError::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(self, n: i64) -> u64 {
        n.rem_euclid(self.0 as i64) as u64
    }

    pub fn mul_mod(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow_mod(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue, by Fermat.
    pub fn inv_mod(self, a: u64) -> Option<u64> {
        let a = a % self.0;
        if a == 0 {
            None
        } else {
            Some(self.pow_mod(a, self.0 - 2))
        }
    }

    /// `p^r`, or `None` if it does not fit in a `u64`.
    pub fn checked_power(self, r: u32) -> Option<u64> {
        self.0.checked_pow(r)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An exact field of characteristic `p`, usable as a polynomial coefficient.
///
/// Elements know their context, so constructors that produce fresh values
/// (`zero_in`, `one_in`, `from_int_in`) take it explicitly.
pub trait Coefficient:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Pow<u64, Output = Self>
{
    type Context: Clone + Eq + fmt::Debug;

    fn context(&self) -> Self::Context;
    fn characteristic(ctx: &Self::Context) -> Prime;
    fn zero_in(ctx: &Self::Context) -> Self;
    fn one_in(ctx: &Self::Context) -> Self;
    fn from_int_in(ctx: &Self::Context, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    /// The Frobenius map `c ↦ c^p`.
    fn frobenius(&self) -> Self;
}

/// An element of the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: Prime,
}

impl Fp {
    pub fn new(p: Prime, n: i64) -> Self {
        Fp {
            value: p.reduce(n),
            p,
        }
    }

    pub fn from_residue(p: Prime, value: u64) -> Self {
        Fp {
            value: value % p.get(),
            p,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.p
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp::from_residue(self.p, self.value + rhs.value)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp::from_residue(self.p, self.value + self.p.get() - rhs.value)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp::from_residue(self.p, self.p.mul_mod(self.value, rhs.value))
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::from_residue(self.p, self.p.get() - self.value)
    }
}

impl Pow<u64> for Fp {
    type Output = Fp;
    fn pow(self, exp: u64) -> Fp {
        Fp::from_residue(self.p, self.p.pow_mod(self.value, exp))
    }
}

impl Coefficient for Fp {
    type Context = Prime;

    fn context(&self) -> Prime {
        self.p
    }
    fn characteristic(ctx: &Prime) -> Prime {
        *ctx
    }
    fn zero_in(ctx: &Prime) -> Self {
        Fp::from_residue(*ctx, 0)
    }
    fn one_in(ctx: &Prime) -> Self {
        Fp::from_residue(*ctx, 1)
    }
    fn from_int_in(ctx: &Prime, n: i64) -> Self {
        Fp::new(*ctx, n)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn inv(&self) -> Option<Self> {
        self.p.inv_mod(self.value).map(|v| Fp::from_residue(self.p, v))
    }
    // c^p = c on the prime field.
    fn frobenius(&self) -> Self {
        *self
    }
}
