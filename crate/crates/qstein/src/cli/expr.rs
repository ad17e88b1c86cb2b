//! Expression syntax.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' UINT)?
//! primary := INT ('/' INT)? | 'i' | 'z' | 'zinv' | 't'
//!          | 'd[' SINT ']' | 'zeta[' SINT ']' | 'tau[' UINT ']' | 'one[' SINT ']'
//!          | '(' expr ')'
//! ```
//!
//! Numbers in the tree are nonnegative; signs are `Neg` nodes. Printing
//! emits the fewest parentheses that parse back to the same tree.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::azb::{GeneratorWord, Letter};
use crate::combination::Combination;
use crate::hopf::{self, HopfAlgebra};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: expected {}", expected.join(" or "))]
pub struct SyntaxError {
    pub position: usize,
    pub expected: Vec<String>,
}

/// Indexed basis atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    /// `d[n]`: point charge `δ^n`.
    D,
    /// `zeta[n]`: current `ζ_n`.
    Zeta,
    /// `tau[k]`: current `τ^k`.
    Tau,
    /// `one[n]`: indicator function `1_n`.
    One,
}

impl AtomKind {
    fn name(self) -> &'static str {
        match self {
            AtomKind::D => "d",
            AtomKind::Zeta => "zeta",
            AtomKind::Tau => "tau",
            AtomKind::One => "one",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    Z,
    Zinv,
    T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    I,
    Gen(Gen),
    Atom(AtomKind, i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Expr::I => write!(f, "i"),
            Expr::Gen(Gen::Z) => write!(f, "z"),
            Expr::Gen(Gen::Zinv) => write!(f, "zinv"),
            Expr::Gen(Gen::T) => write!(f, "t"),
            Expr::Atom(k, n) => write!(f, "{}[{n}]", k.name()),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T, SyntaxError> {
        Err(SyntaxError { position: self.pos, expected: expected.iter().map(|s| s.to_string()).collect() })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(&["unsigned integer"]);
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").parse().expect("digits"))
    }

    fn sint(&mut self) -> Result<i64, SyntaxError> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let v = self.uint()?;
        let v: i64 = v
            .try_into()
            .map_err(|_| SyntaxError { position: start, expected: vec!["index fitting in 64 bits".into()] })?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| SyntaxError { position: start, expected: vec!["exponent fitting in 32 bits".into()] })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        const EXPECTED: [&str; 10] = ["number", "i", "z", "zinv", "t", "d[n]", "zeta[n]", "tau[k]", "one[n]", "("];
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                if self.eat(b'/') {
                    let d = self.uint()?;
                    if d.is_zero() {
                        return self.err(&["nonzero denominator"]);
                    }
                    return Ok(Expr::Num(BigRational::new(n, d)));
                }
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err(&[")"]);
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let word = self.ident();
                let atom = match word {
                    "i" => return Ok(Expr::I),
                    "z" => return Ok(Expr::Gen(Gen::Z)),
                    "zinv" => return Ok(Expr::Gen(Gen::Zinv)),
                    "t" => return Ok(Expr::Gen(Gen::T)),
                    "d" => AtomKind::D,
                    "zeta" => AtomKind::Zeta,
                    "tau" => AtomKind::Tau,
                    "one" => AtomKind::One,
                    _ => {
                        self.pos = start;
                        return self.err(&EXPECTED);
                    }
                };
                if !self.eat(b'[') {
                    return self.err(&["["]);
                }
                let n = if atom == AtomKind::Tau {
                    self.skip_ws();
                    let at = self.pos;
                    self.uint()?
                        .try_into()
                        .map_err(|_| SyntaxError { position: at, expected: vec!["small index".into()] })?
                } else {
                    self.sint()?
                };
                if !self.eat(b']') {
                    return self.err(&["]"]);
                }
                Ok(Expr::Atom(atom, n))
            }
            _ => self.err(&EXPECTED),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err(&["+", "-", "*", "^", "end of input"]);
    }
    Ok(e)
}

/// Error raised when an expression uses a symbol the target algebra lacks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{symbol} is not available in {algebra}")]
pub struct SymbolError {
    pub symbol: String,
    pub algebra: String,
}

/// Evaluates `e` in a Hopf algebra; numbers and `i` are multiples of the
/// unit, and `symbol` interprets generators and atoms.
pub fn eval_in<H: HopfAlgebra>(
    h: &H,
    e: &Expr,
    symbol: &dyn Fn(&Expr) -> Option<Combination<H::Index>>,
    algebra: &str,
) -> Result<Combination<H::Index>, SymbolError> {
    let go = |x: &Expr| eval_in(h, x, symbol, algebra);
    Ok(match e {
        Expr::Num(r) => h.unit().scale(&GaussianRational::from_real(r.clone())),
        Expr::I => h.unit().scale(&GaussianRational::i()),
        Expr::Gen(_) | Expr::Atom(..) => {
            symbol(e).ok_or_else(|| SymbolError { symbol: e.to_string(), algebra: algebra.to_string() })?
        }
        Expr::Neg(a) => -&go(a)?,
        Expr::Add(a, b) => go(a)? + go(b)?,
        Expr::Sub(a, b) => go(a)? - go(b)?,
        Expr::Mul(a, b) => hopf::mul(h, &go(a)?, &go(b)?),
        Expr::Pow(a, k) => {
            let base = go(a)?;
            (0..*k).fold(h.unit(), |acc, _| hopf::mul(h, &acc, &base))
        }
    })
}

/// Expands `e` into a sum of scalar multiples of generator words, without
/// applying any relation.
pub fn expand_words(e: &Expr) -> Result<Vec<GeneratorWord>, SymbolError> {
    let scalar = |c: GaussianRational| vec![GeneratorWord::scaled(c, Vec::new())];
    Ok(match e {
        Expr::Num(r) => scalar(GaussianRational::from_real(r.clone())),
        Expr::I => scalar(GaussianRational::i()),
        Expr::Gen(g) => vec![GeneratorWord::new(vec![match g {
            Gen::Z => Letter::Z,
            Gen::Zinv => Letter::Zinv,
            Gen::T => Letter::T,
        }])],
        Expr::Atom(..) => return Err(SymbolError { symbol: e.to_string(), algebra: "azb generator words".into() }),
        Expr::Neg(a) => expand_words(a)?.into_iter().map(|w| GeneratorWord::scaled(-w.coeff, w.letters)).collect(),
        Expr::Add(a, b) => {
            let mut v = expand_words(a)?;
            v.extend(expand_words(b)?);
            v
        }
        Expr::Sub(a, b) => expand_words(&Expr::Add(a.clone(), Box::new(Expr::Neg(b.clone()))))?,
        Expr::Mul(a, b) => {
            let (x, y) = (expand_words(a)?, expand_words(b)?);
            x.iter().flat_map(|u| y.iter().map(move |v| u.concat(v))).collect()
        }
        Expr::Pow(a, k) => {
            let base = expand_words(a)?;
            (0..*k).fold(scalar(GaussianRational::one()), |acc, _| {
                acc.iter().flat_map(|u| base.iter().map(move |v| u.concat(v))).collect()
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse("t*z").unwrap(), Expr::Mul(Box::new(Expr::Gen(Gen::T)), Box::new(Expr::Gen(Gen::Z))));
        let e = parse("(1/2+1/3*i)*z^2*t").unwrap();
        assert_eq!(e.to_string(), "(1/2+1/3*i)*z^2*t");
        let err = parse("z^-1").unwrap_err();
        assert_eq!(err.position, 2);
        assert!(err.expected.contains(&"unsigned integer".to_string()));
    }

    #[test]
    fn precedence_and_printing() {
        let e = parse("1 - (2 - 3) * -z^2 + d[-4]").unwrap();
        assert_eq!(e.to_string(), "1-(2-3)*-z^2+d[-4]");
        assert_eq!(parse(&e.to_string()).unwrap(), e);
        let p = parse("(z*t)^3").unwrap();
        assert!(matches!(p, Expr::Pow(_, 3)));
        assert_eq!(p.to_string(), "(z*t)^3");
        assert!(parse("1/0").is_err());
        assert!(parse("w").is_err());
        assert!(parse("z z").is_err());
    }

    #[test]
    fn expansion() {
        let w = expand_words(&parse("(z+t)^2").unwrap()).unwrap();
        assert_eq!(w.len(), 4);
        let w = expand_words(&parse("-2*t*z").unwrap()).unwrap();
        assert_eq!(w, vec![GeneratorWord::scaled(GaussianRational::from_int(-2), vec![Letter::T, Letter::Z])]);
    }
}
