//! A small expression language for ring elements:
//! integers, `chi`, `f`, `fk(k)`, `fpk(k)`, `+`, `-`, `*` (or `·`), `^` and
//! parentheses. A negative exponent inverts.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{element_f, element_f_k, element_f_prime, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Chi,
    F,
    Fk(u64),
    Fpk(u64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn eval(&self, level: u32) -> Result<RingElement> {
        Ok(match self {
            Expr::Int(n) => RingElement::one(level)?.scale_int(n),
            Expr::Chi => RingElement::chi_pow(level, 1)?,
            Expr::F => element_f(level)?,
            Expr::Fk(k) => element_f_k(level, *k)?,
            Expr::Fpk(k) => element_f_prime(level, *k)?,
            Expr::Neg(a) => -a.eval(level)?,
            Expr::Add(a, b) => a.eval(level)?.checked_add(&b.eval(level)?)?,
            Expr::Sub(a, b) => a.eval(level)?.checked_sub(&b.eval(level)?)?,
            Expr::Mul(a, b) => a.eval(level)?.checked_mul(&b.eval(level)?)?,
            Expr::Pow(a, e) => {
                let base = a.eval(level)?;
                if *e >= 0 {
                    base.pow(*e as u32)
                } else {
                    base.invert()?.pow(e.unsigned_abs() as u32)
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' || c == '\'' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '\u{00b7}' | '\u{22c5}' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} at {i}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(Error::Parse(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.next() {
            Some(Token::Int(n)) => i64::try_from(n)
                .ok()
                .filter(|&e| e <= u32::MAX as i64)
                .ok_or_else(|| Error::Parse("exponent too large".into()))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn index_argument(&mut self) -> Result<u64> {
        self.expect(Token::LParen)?;
        let k = match self.next() {
            Some(Token::Int(n)) => {
                u64::try_from(n).map_err(|_| Error::Parse("index too large".into()))?
            }
            other => return Err(Error::Parse(format!("expected index, found {other:?}"))),
        };
        self.expect(Token::RParen)?;
        Ok(k)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Expr::Int(n)),
            Some(Token::Ident(name)) => match name.as_str() {
                "chi" => Ok(Expr::Chi),
                "f" => Ok(Expr::F),
                "fk" => Ok(Expr::Fk(self.index_argument()?)),
                "fpk" | "f'k" => Ok(Expr::Fpk(self.index_argument()?)),
                other => Err(Error::Parse(format!("unknown name {other:?}"))),
            },
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { tokens: tokenize(s)?, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str, level: u32) -> RingElement {
        s.parse::<Expr>().unwrap().eval(level).unwrap()
    }

    #[test]
    fn precedence() {
        let level = 3;
        let chi = RingElement::chi_pow(level, 1).unwrap();
        let one = RingElement::one(level).unwrap();
        assert_eq!(eval("1 + chi*chi^2", level), &one + &chi.pow(3));
        assert_eq!(eval("-chi^2", level), -chi.pow(2));
        assert_eq!(eval("(1 - chi)^-1 * (1 + chi)", level), element_f(level).unwrap());
        assert_eq!(eval("2^3 − 8", level), RingElement::zero(level).unwrap());
        assert_eq!(eval("f·fpk(3)", level), element_f_k(level, 3).unwrap());
        assert_eq!(eval("fk(5)", level), element_f_k(level, 5).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!("f +".parse::<Expr>(), Err(Error::Parse(_))));
        assert!(matches!("g".parse::<Expr>(), Err(Error::Parse(_))));
        assert!(matches!("(f".parse::<Expr>(), Err(Error::Parse(_))));
        assert!(matches!("f f".parse::<Expr>(), Err(Error::Parse(_))));
        assert!(matches!("fk(2)".parse::<Expr>().unwrap().eval(3), Err(Error::EvenK(2))));
    }
}
