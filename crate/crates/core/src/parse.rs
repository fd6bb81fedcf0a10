//! Text grammars for field elements, polynomials and Hahn series.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ['^' ['-'] INT]
//! atom   := INT | tVAR | xVAR | '(' expr ')'
//! ```
//!
//! `t` and `x` without an index mean `t1` and `x1`. Integer literals are
//! reduced mod `p`. Division and negative powers are allowed only for
//! nonzero values free of x-variables.

use crate::error::ParseError;
use crate::fields::{FieldCtx, RatFunc};
use crate::hahn::{GammaExp, HahnElement};
use crate::poly::Monomial;
use crate::scalar::Prime;
use crate::XPoly;

/// Largest exponent accepted after `^`.
pub const MAX_LITERAL_EXPONENT: u64 = 1 << 12;

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u128),
    TVar(usize),
    XVar(usize),
    Sym(char),
}

fn tokenize(src: &str) -> PResult<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let read_int = |i: &mut usize| -> PResult<Option<u128>> {
        let start = *i;
        let mut v: u128 = 0;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(chars[*i].1 as u128 - '0' as u128))
                .ok_or_else(|| ParseError::Invalid("integer literal too large".into()))?;
            *i += 1;
        }
        Ok((*i > start).then_some(v))
    };
    while i < chars.len() {
        let (off, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let v = read_int(&mut i)?.expect("digit present");
                out.push((off, Tok::Int(v)));
            }
            't' | 'x' => {
                i += 1;
                let idx = match read_int(&mut i)? {
                    None => 1,
                    Some(v) => usize::try_from(v)
                        .ok()
                        .filter(|v| *v >= 1)
                        .ok_or_else(|| ParseError::Unexpected {
                            offset: off,
                            message: format!("bad variable index {v}"),
                        })?,
                };
                out.push((off, if c == 't' { Tok::TVar(idx) } else { Tok::XVar(idx) }));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((off, Tok::Sym(c)));
                i += 1;
            }
            _ => return Err(ParseError::UnexpectedChar { found: c, offset: off }),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a FieldCtx,
    xvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(o, _)| *o)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, message: &str) -> ParseError {
        match self.toks.get(self.pos) {
            None => ParseError::UnexpectedEnd,
            Some((offset, _)) => ParseError::Unexpected {
                offset: *offset,
                message: message.into(),
            },
        }
    }

    fn expr(&mut self) -> PResult<XPoly> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<XPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let offset = self.offset();
                self.pos += 1;
                let rhs = self.power()?;
                acc = acc.scale(&self.invertible(&rhs, offset)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn invertible(&self, value: &XPoly, offset: usize) -> PResult<RatFunc> {
        if !value.is_constant() {
            return Err(ParseError::Unexpected {
                offset,
                message: "can only divide by values free of x-variables".into(),
            });
        }
        Ok(value.constant_term().recip()?)
    }

    fn power(&mut self) -> PResult<XPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let offset = self.offset();
        let negative = self.eat('-');
        let exp = match self.peek() {
            Some(Tok::Int(v)) => *v,
            _ => return Err(self.unexpected("expected an integer exponent")),
        };
        self.pos += 1;
        if exp > MAX_LITERAL_EXPONENT as u128 {
            return Err(ParseError::Invalid(format!(
                "exponent {exp} above the limit {MAX_LITERAL_EXPONENT}"
            )));
        }
        let exp = exp as u64;
        if negative {
            Ok(XPoly::constant(self.invertible(&base, offset)?.pow(exp)))
        } else {
            Ok(base.pow(exp))
        }
    }

    fn atom(&mut self) -> PResult<XPoly> {
        let Some((offset, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(ParseError::UnexpectedEnd);
        };
        self.pos += 1;
        match tok {
            Tok::Int(v) => {
                let p = self.ctx.p.get() as u128;
                Ok(XPoly::constant(self.ctx.int((v % p) as i64)))
            }
            Tok::TVar(i) => Ok(XPoly::constant(self.ctx.t(i)?)),
            Tok::XVar(i) => {
                if i > self.xvars {
                    return Err(ParseError::Unexpected {
                        offset,
                        message: format!("x{i} outside the {} x-variables", self.xvars),
                    });
                }
                Ok(XPoly::var(self.ctx, i))
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected("expected ')'"));
                }
                Ok(inner)
            }
            Tok::Sym(c) => Err(ParseError::UnexpectedChar { found: c, offset }),
        }
    }
}

/// Parses a polynomial in `x1..x{xvars}` over `ctx`.
pub fn parse_poly(ctx: &FieldCtx, xvars: usize, src: &str) -> PResult<XPoly> {
    let mut parser = Parser {
        toks: tokenize(src)?,
        pos: 0,
        ctx,
        xvars,
    };
    let value = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(parser.unexpected("trailing input"));
    }
    Ok(value)
}

/// Parses an element of `ctx`; x-variables are rejected.
pub fn parse_field(ctx: &FieldCtx, src: &str) -> PResult<RatFunc> {
    Ok(parse_poly(ctx, 0, src)?.constant_term())
}

/// Splits at commas outside parentheses.
pub fn split_list(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = src[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

/// Parses a comma-separated list of field elements. The empty string gives
/// the empty list.
pub fn parse_field_list(ctx: &FieldCtx, src: &str) -> PResult<Vec<RatFunc>> {
    split_list(src)
        .into_iter()
        .map(|s| parse_field(ctx, s))
        .collect()
}

/// Parses a monomial such as `x1^2*x3` or `1`.
pub fn parse_monomial(src: &str) -> PResult<Monomial> {
    let ctx = FieldCtx::new(Prime::new(2).expect("2 is prime"), 0);
    let f = parse_poly(&ctx, usize::MAX, src)?;
    match f.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] if c.as_constant() == Some(1) => Ok((*m).clone()),
        _ => Err(ParseError::Invalid(format!("{src:?} is not a monomial"))),
    }
}

struct Chars<'a> {
    src: &'a str,
    pos: usize,
}

impl Chars<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Option<u64> {
        self.skip_ws();
        let digits = self.src[self.pos..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        if digits == 0 {
            return None;
        }
        let v = self.src[self.pos..self.pos + digits].parse().ok();
        self.pos += digits;
        v
    }

    fn error(&mut self, message: &str) -> ParseError {
        match self.peek() {
            None => ParseError::UnexpectedEnd,
            Some(_) => ParseError::Unexpected {
                offset: self.pos,
                message: message.into(),
            },
        }
    }

    fn done(&mut self) -> bool {
        self.peek().is_none()
    }

    // gamma := '0' | [sign] [INT] 'g' INT (sign [INT] 'g' INT)*
    fn gamma(&mut self) -> PResult<GammaExp> {
        let save = self.pos;
        if self.int() == Some(0) && self.peek() != Some('g') {
            return Ok(GammaExp::zero());
        }
        self.pos = save;
        let mut pairs = Vec::new();
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                break;
            };
            first = false;
            let coeff = self.int().unwrap_or(1);
            if !self.eat('g') {
                return Err(self.error("expected 'g'"));
            }
            let index = self
                .int()
                .filter(|i| *i >= 1)
                .ok_or_else(|| self.error("expected a positive index after 'g'"))?;
            let coeff = i64::try_from(coeff)
                .map_err(|_| ParseError::Invalid("exponent coordinate too large".into()))?;
            pairs.push((index as usize, sign * coeff));
        }
        Ok(GammaExp::from_pairs(pairs))
    }
}

/// Parses an element of `Γ`, e.g. `2g1-1g3`, `g2` or `0`.
pub fn parse_gamma(src: &str) -> PResult<GammaExp> {
    let mut c = Chars { src, pos: 0 };
    let g = c.gamma()?;
    if !c.done() {
        return Err(c.error("trailing input"));
    }
    Ok(g)
}

/// Parses a Hahn element such as `t[2g1] + 2*t[3g1]` or `1 - t[g2]`.
pub fn parse_hahn(p: Prime, src: &str) -> PResult<HahnElement> {
    let mut c = Chars { src, pos: 0 };
    let mut acc = HahnElement::zero(p);
    let mut first = true;
    loop {
        let sign = if c.eat('-') {
            -1
        } else if c.eat('+') || first {
            1
        } else {
            break;
        };
        first = false;
        let coeff = c.int();
        let gamma = if coeff.is_some() && !c.eat('*') {
            GammaExp::zero()
        } else {
            if !c.eat('t') || !c.eat('[') {
                return Err(c.error("expected t[...]"));
            }
            let g = c.gamma()?;
            if !c.eat(']') {
                return Err(c.error("expected ']'"));
            }
            g
        };
        let coeff = (coeff.unwrap_or(1) % p.get()) as i64;
        acc = &acc + &HahnElement::monomial(p, gamma, sign * coeff);
    }
    if !c.done() {
        return Err(c.error("trailing input"));
    }
    Ok(acc)
}
