use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{Monomial, Polynomial};
use super::scalar::Scalar;
use super::space::VariableSpace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

/// Whitespace- and `#`-comment-insensitive tokenizer shared by the polynomial
/// and multivector grammars.
pub(crate) struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, peeked: None }
    }

    fn skip_ws(&mut self) {
        let b = self.src.as_bytes();
        while self.pos < b.len() {
            if b[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            } else if b[self.pos] == b'#' {
                while self.pos < b.len() && b[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn lex(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let b = self.src.as_bytes();
        if start >= b.len() {
            return Ok((Tok::End, start));
        }
        let c = b[start];
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, start));
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while end < b.len() && b[end].is_ascii_digit() {
                end += 1;
            }
            self.pos = end;
            let n: BigInt = self.src[start..end].parse().expect("digits");
            return Ok((Tok::Num(n), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let mut end = start;
            while end < b.len() && (b[end].is_ascii_alphanumeric() || b[end] == b'_') {
                end += 1;
            }
            self.pos = end;
            return Ok((Tok::Ident(self.src[start..end].to_string()), start));
        }
        Err(Error::Parse { pos: start, msg: format!("unexpected character `{}`", c as char) })
    }

    pub(crate) fn peek(&mut self) -> Result<&Tok> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(&self.peeked.as_ref().unwrap().0)
    }

    pub(crate) fn peek_pos(&mut self) -> Result<usize> {
        self.peek()?;
        Ok(self.peeked.as_ref().unwrap().1)
    }

    pub(crate) fn next(&mut self) -> Result<(Tok, usize)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    pub(crate) fn expect(&mut self, want: Tok, what: &str) -> Result<usize> {
        let (t, p) = self.next()?;
        if t == want {
            Ok(p)
        } else {
            Err(Error::Parse { pos: p, msg: format!("expected {what}, found {}", describe(&t)) })
        }
    }
}

pub(crate) fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::End => "end of input".into(),
        other => format!("`{}`", match other {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            _ => unreachable!(),
        }),
    }
}

fn parse_nat(lx: &mut Lexer) -> Result<BigInt> {
    match lx.next()? {
        (Tok::Num(n), _) => Ok(n),
        (t, p) => Err(Error::Parse { pos: p, msg: format!("expected a natural number, found {}", describe(&t)) }),
    }
}

/// `rat := int ('/' nat)?`, with an optional leading minus already consumed by the caller.
fn parse_rat(lx: &mut Lexer, neg: bool) -> Result<BigRational> {
    let n = parse_nat(lx)?;
    let mut r = BigRational::from_integer(if neg { -n } else { n });
    if *lx.peek()? == Tok::Slash {
        lx.next()?;
        let p = lx.peek_pos()?;
        let d = parse_nat(lx)?;
        if d.is_zero() {
            return Err(Error::Parse { pos: p, msg: "zero denominator".into() });
        }
        r /= BigRational::from_integer(d);
    }
    Ok(r)
}

fn imaginary_suffix(lx: &mut Lexer) -> Result<bool> {
    if let Tok::Ident(s) = lx.peek()? {
        if s == "i" {
            lx.next()?;
            return Ok(true);
        }
    }
    Ok(false)
}

/// Parse a coefficient starting at the current token (a number or `(`).
fn parse_coeff(lx: &mut Lexer) -> Result<Scalar> {
    if *lx.peek()? == Tok::LParen {
        lx.next()?;
        let neg = if *lx.peek()? == Tok::Minus {
            lx.next()?;
            true
        } else {
            false
        };
        let re = parse_rat(lx, neg)?;
        let (sign, p) = lx.next()?;
        let neg_im = match sign {
            Tok::Plus => false,
            Tok::Minus => true,
            t => return Err(Error::Parse { pos: p, msg: format!("expected `+` or `-`, found {}", describe(&t)) }),
        };
        let im = parse_rat(lx, neg_im)?;
        let p = lx.peek_pos()?;
        if !imaginary_suffix(lx)? {
            return Err(Error::Parse { pos: p, msg: "expected `i`".into() });
        }
        lx.expect(Tok::RParen, "`)`")?;
        return Ok(Scalar::new(re, im));
    }
    let r = parse_rat(lx, false)?;
    if imaginary_suffix(lx)? {
        Ok(Scalar::new(BigRational::zero(), r))
    } else {
        Ok(Scalar::from_rational(r))
    }
}

/// Variable lookup strategy used while parsing.
pub(crate) trait VarResolver {
    fn resolve(&mut self, name: &str, pos: usize) -> Result<usize>;
}

pub(crate) struct FixedSpace<'s>(pub &'s VariableSpace);

impl VarResolver for FixedSpace<'_> {
    fn resolve(&mut self, name: &str, pos: usize) -> Result<usize> {
        self.0
            .index_of(name)
            .ok_or_else(|| Error::Parse { pos, msg: format!("unknown variable `{name}`") })
    }
}

fn parse_factor(lx: &mut Lexer, res: &mut dyn VarResolver, exps: &mut Vec<(usize, u32)>) -> Result<()> {
    let (t, p) = lx.next()?;
    let name = match t {
        Tok::Ident(s) => s,
        t => return Err(Error::Parse { pos: p, msg: format!("expected a variable, found {}", describe(&t)) }),
    };
    let idx = res.resolve(&name, p)?;
    let mut e = 1u32;
    if *lx.peek()? == Tok::Caret {
        lx.next()?;
        let p = lx.peek_pos()?;
        let n = parse_nat(lx)?;
        e = u32::try_from(n).map_err(|_| Error::Parse { pos: p, msg: "exponent too large".into() })?;
    }
    exps.push((idx, e));
    Ok(())
}

/// Raw term list: (coefficient, (variable, exponent) factors).
pub(crate) type RawTerm = (Scalar, Vec<(usize, u32)>);

pub(crate) fn parse_terms(lx: &mut Lexer, res: &mut dyn VarResolver) -> Result<Vec<RawTerm>> {
    let mut out = Vec::new();
    let mut sign = match lx.peek()? {
        Tok::Minus => {
            lx.next()?;
            -1
        }
        Tok::Plus => {
            lx.next()?;
            1
        }
        _ => 1,
    };
    loop {
        let mut coeff = Scalar::one();
        let mut exps = Vec::new();
        match lx.peek()?.clone() {
            Tok::Num(_) | Tok::LParen => {
                coeff = parse_coeff(lx)?;
                while *lx.peek()? == Tok::Star {
                    lx.next()?;
                    parse_factor(lx, res, &mut exps)?;
                }
            }
            Tok::Ident(_) => {
                parse_factor(lx, res, &mut exps)?;
                while *lx.peek()? == Tok::Star {
                    lx.next()?;
                    parse_factor(lx, res, &mut exps)?;
                }
            }
            t => {
                let p = lx.peek_pos()?;
                return Err(Error::Parse { pos: p, msg: format!("expected a term, found {}", describe(&t)) });
            }
        }
        if sign < 0 {
            coeff = -coeff;
        }
        out.push((coeff, exps));
        match lx.peek()? {
            Tok::Plus => sign = 1,
            Tok::Minus => sign = -1,
            _ => break,
        }
        lx.next()?;
    }
    Ok(out)
}

pub(crate) fn assemble(space: &Arc<VariableSpace>, raw: Vec<RawTerm>) -> Polynomial {
    let mut p = Polynomial::zero(space);
    for (c, fs) in raw {
        let mut e = vec![0u32; space.len()];
        for (i, k) in fs {
            e[i] += k;
        }
        p.add_term(Monomial::from_exponents(e), c);
    }
    p
}

/// Parse text in the polynomial grammar over a fixed space.
pub fn parse_polynomial(text: &str, space: &Arc<VariableSpace>) -> Result<Polynomial> {
    let mut lx = Lexer::new(text);
    let raw = parse_terms(&mut lx, &mut FixedSpace(space))?;
    let (t, p) = lx.next()?;
    if t != Tok::End {
        return Err(Error::Parse { pos: p, msg: format!("trailing input: {}", describe(&t)) });
    }
    Ok(assemble(space, raw))
}

/// Collect identifiers in order of first appearance, skipping the imaginary unit
/// after a number and (optionally) stripping a leading `d` from wedge factors.
pub(crate) struct Collecting {
    pub names: Vec<String>,
}

impl VarResolver for Collecting {
    fn resolve(&mut self, name: &str, _pos: usize) -> Result<usize> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(i);
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }
}

/// Parse a polynomial, building the variable space from the identifiers in
/// order of first appearance.
pub fn parse_polynomial_inferred(text: &str) -> Result<Polynomial> {
    let mut lx = Lexer::new(text);
    let mut col = Collecting { names: Vec::new() };
    let raw = parse_terms(&mut lx, &mut col)?;
    let (t, p) = lx.next()?;
    if t != Tok::End {
        return Err(Error::Parse { pos: p, msg: format!("trailing input: {}", describe(&t)) });
    }
    let space = VariableSpace::new(col.names)?;
    Ok(assemble(&space, raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_coefficients() {
        let s = VariableSpace::new(["x", "y", "xy_02"]).unwrap();
        let p = parse_polynomial("3/2*x^2 - 2i*y + (1/2-3i)*xy_02 - 4", &s).unwrap();
        assert_eq!(p.to_string(), "3/2*x^2 - 2i*y + (1/2-3i)*xy_02 - 4");
        let q = parse_polynomial(" -x*y + x*y ", &s).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn parse_errors_carry_position() {
        let s = VariableSpace::new(["x"]).unwrap();
        match parse_polynomial("x + y", &s) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x +", &s).is_err());
        assert!(parse_polynomial("1/0*x", &s).is_err());
        assert!(parse_polynomial("x $", &s).is_err());
    }

    #[test]
    fn inferred_space_order() {
        let p = parse_polynomial_inferred("v*w - u^3").unwrap();
        assert_eq!(p.space().names(), ["v", "w", "u"]);
        assert_eq!(p.len(), 2);
    }
}
