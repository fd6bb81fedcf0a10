use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::tpoly::TPoly;
use crate::error::FieldError;
use crate::scalar::{Coefficient, Prime};

/// The field `F_p(t1, ..., tm)`, identified by its characteristic and
/// transcendence degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    pub p: Prime,
    pub m: usize,
}

impl FieldCtx {
    pub fn new(p: Prime, m: usize) -> Self {
        FieldCtx { p, m }
    }

    pub fn zero(&self) -> RatFunc {
        RatFunc::zero(*self)
    }

    pub fn one(&self) -> RatFunc {
        RatFunc::one(*self)
    }

    pub fn int(&self, n: i64) -> RatFunc {
        RatFunc::from_int(*self, n)
    }

    /// The generator `t_index`, counted from 1.
    pub fn t(&self, index: usize) -> Result<RatFunc, FieldError> {
        if index == 0 || index > self.m {
            return Err(FieldError::VariableOutOfRange {
                index,
                count: self.m,
            });
        }
        Ok(RatFunc::from_poly(TPoly::var(self.p, self.m, index)))
    }
}

/// An element of `F_p(t1..tm)` stored as a reduced fraction.
///
/// The numerator and denominator are coprime and the denominator is monic
/// under lex order, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: TPoly,
    den: TPoly,
}

impl RatFunc {
    pub fn zero(ctx: FieldCtx) -> Self {
        RatFunc {
            num: TPoly::zero(ctx.p, ctx.m),
            den: TPoly::one(ctx.p, ctx.m),
        }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        RatFunc::from_int(ctx, 1)
    }

    pub fn from_int(ctx: FieldCtx, n: i64) -> Self {
        RatFunc::from_poly(TPoly::constant(ctx.p, ctx.m, n))
    }

    pub fn from_poly(num: TPoly) -> Self {
        let den = TPoly::one(num.prime(), num.nvars());
        RatFunc { num, den }
    }

    /// Builds `num / den` in lowest terms.
    pub fn new(num: TPoly, den: TPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatFunc::normalized(num, den))
    }

    fn normalized(num: TPoly, den: TPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero(FieldCtx::new(num.prime(), num.nvars()));
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = TPoly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lead = den.leading().expect("nonzero denominator").1;
        if lead == 1 {
            return RatFunc { num, den };
        }
        let inv = num.prime().inv_mod(lead).expect("nonzero");
        RatFunc {
            num: num.scale(inv),
            den: den.scale(inv),
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        FieldCtx::new(self.num.prime(), self.num.nvars())
    }

    pub fn num(&self) -> &TPoly {
        &self.num
    }

    pub fn den(&self) -> &TPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` if this is the constant `c ∈ F_p`.
    pub fn as_constant(&self) -> Option<u64> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self, FieldError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, FieldError> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: u64) -> Self {
        num_traits::Pow::pow(self, exp)
    }

    pub fn powi(&self, exp: i64) -> Result<Self, FieldError> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.recip()?.pow(exp.unsigned_abs()))
        }
    }

    /// Moves the element into a field with `m` variables. Fails if a
    /// variable that would be dropped occurs.
    pub fn with_nvars(&self, m: usize) -> Option<Self> {
        Some(RatFunc {
            num: self.num.with_nvars(m)?,
            den: self.den.with_nvars(m)?,
        })
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero(self.ctx());
        }
        // Cross-cancel first so the products stay small.
        let g1 = TPoly::gcd(&self.num, &rhs.den);
        let g2 = TPoly::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("divides");
        let d2 = rhs.den.div_exact(&g1).expect("divides");
        let n2 = rhs.num.div_exact(&g2).expect("divides");
        let d1 = self.den.div_exact(&g2).expect("divides");
        RatFunc::normalized(&n1 * &n2, &d1 * &d2)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl num_traits::Pow<u64> for &RatFunc {
    type Output = RatFunc;
    fn pow(self, exp: u64) -> RatFunc {
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }
}

impl num_traits::Pow<u64> for RatFunc {
    type Output = RatFunc;
    fn pow(self, exp: u64) -> RatFunc {
        RatFunc::pow(&self, exp)
    }
}

impl Coefficient for RatFunc {
    type Context = FieldCtx;

    fn context(&self) -> FieldCtx {
        self.ctx()
    }
    fn characteristic(ctx: &FieldCtx) -> Prime {
        ctx.p
    }
    fn zero_in(ctx: &FieldCtx) -> Self {
        RatFunc::zero(*ctx)
    }
    fn one_in(ctx: &FieldCtx) -> Self {
        RatFunc::one(*ctx)
    }
    fn from_int_in(ctx: &FieldCtx, n: i64) -> Self {
        RatFunc::from_int(*ctx, n)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn frobenius(&self) -> Self {
        RatFunc {
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }
}

fn fmt_part(poly: &TPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if poly.num_terms() > 1 {
        write!(f, "({poly})")
    } else {
        write!(f, "{poly}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        fmt_part(&self.num, f)?;
        f.write_str("/")?;
        // `a/t1*t2` would parse as `(a/t1)*t2`.
        let den = self.den.to_string();
        if den.contains(['*', '+', '-']) {
            write!(f, "({den})")
        } else {
            f.write_str(&den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, m: usize) -> FieldCtx {
        FieldCtx::new(Prime::new(p).unwrap(), m)
    }

    #[test]
    fn normal_form_is_canonical() {
        let k = ctx(3, 2);
        let t1 = k.t(1).unwrap();
        let t2 = k.t(2).unwrap();
        let a = (&t1 * &t2).checked_div(&(&t1 * &t1)).unwrap();
        let b = t2.checked_div(&t1).unwrap();
        assert_eq!(a, b);
        // Scaling numerator and denominator by a constant changes nothing.
        let c = (&t2 * &k.int(2)).checked_div(&(&t1 * &k.int(2))).unwrap();
        assert_eq!(c, b);
        assert!(b.den().leading().unwrap().1 == 1);
    }

    #[test]
    fn field_axioms_spot_checks() {
        let k = ctx(2, 1);
        let t = k.t(1).unwrap();
        let one = k.one();
        let a = (&t + &one).checked_div(&(&t * &t)).unwrap();
        assert_eq!(&a * &a.recip().unwrap(), one);
        assert_eq!(&a - &a, k.zero());
        assert!(k.zero().recip().is_err());
        assert_eq!(a.frobenius(), a.pow(2));
    }

    #[test]
    fn display_forms() {
        let k = ctx(2, 1);
        let t = k.t(1).unwrap();
        let one = k.one();
        let a = (&t + &one).checked_div(&(&t.pow(3) + &t)).unwrap();
        // (t+1)/(t^3+t) = 1/(t^2+t) since t^3+t = t(t+1)^2
        assert_eq!(a.to_string(), "1/(t1^2 + t1)");
        assert_eq!(t.recip().unwrap().to_string(), "1/t1");
    }
}
