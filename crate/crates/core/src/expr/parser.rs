use num::ToPrimitive;

use super::lexer::{tokenize, Spanned, Tok};
use super::ParseError;
use crate::ncalg::{Central, Letter, NCPoly, Unit, VectorField};
use crate::quat::{Quaternion, Rational};

/// Exponents above this are rejected before any expansion happens.
pub const MAX_EXPONENT: u32 = 64;

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// Accept `3/2k` (a number immediately followed by a unit), used for
    /// quaternion literals only.
    juxtaposed_units: bool,
}

impl Parser {
    fn new(src: &str, juxtaposed_units: bool) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, juxtaposed_units })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn sum(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.signed()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc += &self.signed()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= &self.signed()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed(&mut self) -> Result<NCPoly, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-self.signed()?)
            }
            Tok::Plus => {
                self.bump();
                self.signed()
            }
            _ => self.product(),
        }
    }

    fn product(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.power()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        match self.peek().tok {
            Tok::Int(_) | Tok::Ratio(..) | Tok::Ident(_) | Tok::LParen => {
                Err(self.error(&["`*`", "`^`", "`+`", "`-`", "`)`", "end of input"]))
            }
            _ => Ok(acc),
        }
    }

    fn power(&mut self) -> Result<NCPoly, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.peek().clone();
        match at.tok {
            Tok::Int(ref n) => {
                let e = n.to_u32().filter(|&e| e <= MAX_EXPONENT).ok_or(ParseError::ExponentTooLarge {
                    line: at.line,
                    column: at.column,
                    max: MAX_EXPONENT,
                })?;
                self.bump();
                Ok(base.pow(e))
            }
            _ => Err(self.error(&["nonnegative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<NCPoly, ParseError> {
        let t = self.peek().clone();
        if matches!(t.tok, Tok::Int(_) | Tok::Ratio(..) | Tok::Ident(_) | Tok::LParen) {
            self.bump();
        }
        let is_number = matches!(t.tok, Tok::Int(_) | Tok::Ratio(..));
        let p = match t.tok {
            Tok::Int(ref n) => NCPoly::scalar(Rational::from_integer(n.clone())),
            Tok::Ratio(ref p, ref q) => NCPoly::scalar(Rational::new(p.clone(), q.clone())),
            Tok::Ident(ref name) => {
                ident(name).ok_or_else(|| ParseError::UnknownIdentifier { line: t.line, column: t.column, name: name.clone() })?
            }
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, &["`)`"])?;
                inner
            }
            _ => return Err(self.error(&["number", "variable", "unit", "`(`", "`-`"])),
        };
        if self.juxtaposed_units && is_number {
            let next = self.peek().clone();
            if next.start == t.end {
                if let Tok::Ident(name) = &next.tok {
                    if let Some(u) = unit_named(name) {
                        self.bump();
                        return Ok(&p * &NCPoly::unit(u));
                    }
                }
            }
        }
        Ok(p)
    }
}

fn unit_named(name: &str) -> Option<Unit> {
    match name {
        "i" => Some(Unit::I),
        "j" => Some(Unit::J),
        "k" => Some(Unit::K),
        _ => None,
    }
}

fn ident(name: &str) -> Option<NCPoly> {
    if let Some(u) = unit_named(name) {
        return Some(NCPoly::unit(u));
    }
    Some(match name {
        "z" => NCPoly::var(Letter::Z),
        "w" => NCPoly::var(Letter::W),
        "h1" => NCPoly::var(Letter::H1),
        "h2" => NCPoly::var(Letter::H2),
        "t" => NCPoly::central(Central::T, 1),
        "s" => NCPoly::central(Central::S, 1),
        _ => return None,
    })
}

/// Parse a polynomial expression.
pub fn parse(src: &str) -> Result<NCPoly, ParseError> {
    let mut p = Parser::new(src, false)?;
    let out = p.sum()?;
    p.expect(Tok::Eof, &["`+`", "`-`", "`*`", "end of input"])?;
    Ok(out)
}

/// Parse `F ; G`.
pub fn parse_field(src: &str) -> Result<VectorField, ParseError> {
    let mut p = Parser::new(src, false)?;
    let f = p.sum()?;
    p.expect(Tok::Semi, &["`;`"])?;
    let g = p.sum()?;
    p.expect(Tok::Eof, &["`+`", "`-`", "`*`", "end of input"])?;
    VectorField::new(f, g).map_err(|e| ParseError::Invalid(e.to_string()))
}

fn constant(p: &NCPoly) -> Option<Quaternion> {
    if p.terms().any(|(w, _)| w.degree() > 0 || w.central_degree() > 0) {
        return None;
    }
    let mut q = Quaternion::zero();
    for (w, c) in p.terms() {
        q += &w.units()[0].to_quaternion().scale(c);
    }
    Some(q)
}

fn quaternion_in(p: &mut Parser) -> Result<Quaternion, ParseError> {
    let at = p.peek().clone();
    let e = p.sum()?;
    constant(&e).ok_or_else(|| ParseError::Invalid(format!("line {}, column {}: expected a quaternion constant", at.line, at.column)))
}

/// Parse a quaternion literal such as `1+i-3/2k`.
pub fn parse_quaternion(src: &str) -> Result<Quaternion, ParseError> {
    let mut p = Parser::new(src, true)?;
    let q = quaternion_in(&mut p)?;
    p.expect(Tok::Eof, &["end of input"])?;
    Ok(q)
}

/// Parse `[[a, b], [c, d]]` with quaternion entries, row-major.
pub fn parse_matrix(src: &str) -> Result<[[Quaternion; 2]; 2], ParseError> {
    let mut p = Parser::new(src, true)?;
    p.expect(Tok::LBracket, &["`[`"])?;
    let mut rows: Vec<[Quaternion; 2]> = Vec::with_capacity(2);
    for r in 0..2 {
        if r > 0 {
            p.expect(Tok::Comma, &["`,`"])?;
        }
        p.expect(Tok::LBracket, &["`[`"])?;
        let a = quaternion_in(&mut p)?;
        p.expect(Tok::Comma, &["`,`"])?;
        let b = quaternion_in(&mut p)?;
        p.expect(Tok::RBracket, &["`]`"])?;
        rows.push([a, b]);
    }
    p.expect(Tok::RBracket, &["`]`"])?;
    p.expect(Tok::Eof, &["end of input"])?;
    let r1 = rows.pop().expect("two rows");
    let r0 = rows.pop().expect("two rows");
    Ok([r0, r1])
}

/// Parse a rational literal, optionally signed: `-3/2`.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let q = parse_quaternion(src)?;
    if !q.is_real() {
        return Err(ParseError::Invalid(format!("expected a rational number, got `{src}`")));
    }
    Ok(q.r)
}
