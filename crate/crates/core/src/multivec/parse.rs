use std::sync::Arc;

use super::multivector::Multivector;
use crate::error::{Error, Result};
use crate::exactring::parse::{assemble, describe, parse_terms, Collecting, FixedSpace, Lexer, RawTerm, Tok, VarResolver};
use crate::exactring::VariableSpace;

type RawMvTerm = (Vec<RawTerm>, Vec<usize>);

fn parse_raw(text: &str, res: &mut dyn VarResolver) -> Result<Vec<RawMvTerm>> {
    let mut lx = Lexer::new(text);
    let mut out = Vec::new();
    if *lx.peek()? == Tok::End {
        return Ok(out);
    }
    // a lone `0` denotes the zero multivector
    if let Tok::Num(n) = lx.peek()?.clone() {
        if n == 0.into() {
            lx.next()?;
            let (t, p) = lx.next()?;
            if t != Tok::End {
                return Err(Error::Parse { pos: p, msg: format!("trailing input: {}", describe(&t)) });
            }
            return Ok(out);
        }
    }
    let mut negate = false;
    match lx.peek()? {
        Tok::Minus => {
            lx.next()?;
            negate = true;
        }
        Tok::Plus => {
            lx.next()?;
        }
        _ => {}
    }
    loop {
        lx.expect(Tok::LParen, "`(` opening a coefficient")?;
        let mut coeff = parse_terms(&mut lx, res)?;
        lx.expect(Tok::RParen, "`)`")?;
        if negate {
            for t in coeff.iter_mut() {
                t.0 = -t.0.clone();
            }
        }
        let mut wedge = Vec::new();
        if *lx.peek()? == Tok::Star {
            lx.next()?;
            loop {
                let (t, p) = lx.next()?;
                let name = match t {
                    Tok::Ident(s) if s.len() > 1 && s.starts_with('d') => s[1..].to_string(),
                    t => return Err(Error::Parse { pos: p, msg: format!("expected `d<variable>`, found {}", describe(&t)) }),
                };
                wedge.push(res.resolve(&name, p + 1)?);
                if *lx.peek()? == Tok::Caret {
                    lx.next()?;
                } else {
                    break;
                }
            }
        }
        out.push((coeff, wedge));
        match lx.peek()? {
            Tok::Plus => negate = false,
            Tok::Minus => negate = true,
            Tok::End => break,
            t => {
                let t = t.clone();
                let p = lx.peek_pos()?;
                return Err(Error::Parse { pos: p, msg: format!("expected `+`, `-` or end, found {}", describe(&t)) });
            }
        }
        lx.next()?;
    }
    Ok(out)
}

fn build(space: &Arc<VariableSpace>, raw: Vec<RawMvTerm>) -> Result<Multivector> {
    let mut acc: Option<Multivector> = None;
    for (coeff, wedge) in raw {
        let t = Multivector::term(assemble(space, coeff), &wedge);
        match acc.as_mut() {
            None => acc = Some(t),
            Some(a) => {
                if a.degree() != t.degree() && !t.is_zero() && !a.is_zero() {
                    return Err(Error::Degree { expected: a.degree(), found: t.degree() });
                }
                a.add_assign(&t);
            }
        }
    }
    Ok(acc.unwrap_or_else(|| Multivector::zero(space, 0)))
}

/// Parse the multivector grammar `(poly)*da^db + ...` over a fixed space.
pub fn parse_multivector(text: &str, space: &Arc<VariableSpace>) -> Result<Multivector> {
    let raw = parse_raw(text, &mut FixedSpace(space))?;
    build(space, raw)
}

/// Parse, building the space from variables in order of first appearance.
pub fn parse_multivector_inferred(text: &str) -> Result<Multivector> {
    let mut col = Collecting { names: Vec::new() };
    let raw = parse_raw(text, &mut col)?;
    let space = VariableSpace::new(col.names)?;
    build(&space, raw)
}

/// Parse with the variables of `base` first and any further names appended.
pub fn parse_multivector_extending(text: &str, base: &[String]) -> Result<Multivector> {
    let mut col = Collecting { names: base.to_vec() };
    let raw = parse_raw(text, &mut col)?;
    let space = VariableSpace::new(col.names)?;
    build(&space, raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = parse_multivector_inferred("(6*a0*a1 - 6*a2*a3)*da2^dx1^dy0 - (x1)*dy0^dx1^da2").unwrap();
        assert_eq!(m.degree(), 3);
        let again = parse_multivector(&m.to_listing(), m.space()).unwrap();
        assert_eq!(m, again);
        assert_eq!(m.to_string(), "(6*a0*a1 - 6*a2*a3 + x1)*da2^dx1^dy0");
    }

    #[test]
    fn errors_carry_positions() {
        let s = VariableSpace::new(["x", "y"]).unwrap();
        match parse_multivector("(x)*dz", &s) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_multivector("(x)*dx + (y)*dx^dy", &s), Err(Error::Degree { .. })));
    }
}
