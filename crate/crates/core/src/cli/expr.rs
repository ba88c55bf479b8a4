//! Polynomial and ideal expressions.
//!
//! Atoms are integers, `t`, `X`, `Z` and `sqrt(d)`; operators `+ - * / ^`
//! with `^` binding tightest and taking a nonnegative integer exponent.
//! Division is by nonzero constants only. Expressions are evaluated in the
//! normalization of the ring and restricted back at the end.

use crate::error::{Error, Result};
use crate::ideals::{Ambient, IdealPresentation};
use crate::poly::{EvalHom, UniPoly, ZPoly};
use crate::rings::{RingElement, RingKind, RingSpec};
use num_bigint::BigInt;

const MAX_EXPONENT: u64 = 4096;

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

/// The ring expressions are evaluated in.
fn working_ring(ring: RingSpec) -> RingSpec {
    ring.normalization().map_or(ring, |n| n.target)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ring: RingSpec,
    allow_z: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: RingSpec, allow_z: bool) -> Self {
        Parser { src, pos: 0, ring: working_ring(ring), allow_z }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(syntax(self.pos, format!("expected `{s}`")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(syntax(self.pos, "expected an integer"));
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn constant(&self, e: RingElement) -> ZPoly {
        ZPoly::lift(&UniPoly::constant(e))
    }

    fn expr(&mut self) -> Result<ZPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = acc.add(&self.term()?);
            } else if self.peek() == Some('-') && !self.rest().starts_with("->") {
                self.pos += 1;
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ZPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                acc = self.divide(&acc, &d, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&self, n: &ZPoly, d: &ZPoly, at: usize) -> Result<ZPoly> {
        let d = d
            .as_unipoly()
            .and_then(|p| p.as_constant())
            .filter(|c| !c.is_zero())
            .ok_or_else(|| syntax(at, "division only by nonzero constants"))?;
        let coeffs: Option<Vec<UniPoly>> = n.coeffs().iter().map(|p| p.exact_div_scalar(&d)).collect();
        let coeffs = coeffs.ok_or_else(|| syntax(at, format!("division by {d} is not exact in {}", self.ring)))?;
        ZPoly::new(self.ring, coeffs)
    }

    fn unary(&mut self) -> Result<ZPoly> {
        if self.peek() == Some('-') && !self.rest().starts_with("->") {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.eat("+") {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ZPoly> {
        let base = self.atom()?;
        if self.eat("^") {
            let at = self.pos;
            let e = self.integer()?;
            let e: u64 = e
                .try_into()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| syntax(at, format!("exponent larger than {MAX_EXPONENT}")))?;
            if self.peek() == Some('^') {
                return Err(syntax(self.pos, "chained exponents need parentheses"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ZPoly> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let ring = self.ring;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(RingElement::from_int(ring, n)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some('X') => {
                self.pos += 1;
                Ok(ZPoly::lift(&UniPoly::x(ring)))
            }
            Some('Z') => {
                self.pos += 1;
                if !self.allow_z {
                    return Err(syntax(at, "Z is only available in the extended ambient"));
                }
                Ok(ZPoly::z(ring))
            }
            Some('t') => {
                self.pos += 1;
                let t = RingElement::t(ring).map_err(|_| syntax(at, format!("{ring} has no variable t")))?;
                Ok(self.constant(t))
            }
            Some('s') if self.rest().starts_with("sqrt") => {
                self.pos += 4;
                self.expect("(")?;
                let neg = self.eat("-");
                let n = self.integer()?;
                self.expect(")")?;
                let d = if neg { -n } else { n };
                match ring.kind() {
                    RingKind::QuadraticOrder(r) if BigInt::from(r) == d => {
                        Ok(self.constant(RingElement::quad(ring, 0, 1).expect("quad")))
                    }
                    _ => Err(syntax(at, format!("sqrt({d}) is not an element of {ring}"))),
                }
            }
            Some(c) => Err(syntax(at, format!("unexpected `{c}`"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }

    /// Expressions separated by `;` or `,` up to (not including) `close`.
    fn list(&mut self, close: Option<char>) -> Result<Vec<(usize, ZPoly)>> {
        let mut out = Vec::new();
        if self.peek() == close || (close.is_none() && self.at_end()) {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let at = self.pos;
            out.push((at, self.expr()?));
            if !(self.eat(";") || self.eat(",")) {
                return Ok(out);
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(syntax(self.pos, format!("unexpected `{}`", self.rest().chars().next().unwrap_or(' '))))
        }
    }
}

/// Restrict a parsed value to `R[X]`.
fn to_poly(ring: RingSpec, at: usize, v: &ZPoly) -> Result<UniPoly> {
    let p = v.as_unipoly().ok_or_else(|| syntax(at, "Z is not allowed here"))?;
    p.restrict(ring).map_err(|_| syntax(at, format!("{p} is not an element of {ring}[X]")))
}

pub fn parse_poly(ring: RingSpec, s: &str) -> Result<UniPoly> {
    let mut p = Parser::new(s, ring, false);
    let v = p.expr()?;
    p.finish()?;
    to_poly(ring, 0, &v)
}

/// A polynomial in `R[X][Z]`.
pub fn parse_zpoly(ring: RingSpec, s: &str) -> Result<ZPoly> {
    let mut p = Parser::new(s, ring, true);
    let v = p.expr()?;
    p.finish()?;
    let coeffs: Result<Vec<UniPoly>> = v.coeffs().iter().map(|c| c.restrict(ring)).collect();
    ZPoly::new(ring, coeffs.map_err(|_| syntax(0, format!("{v} is not over {ring}")))?)
}

/// An element of the normalization of `ring` (or of `ring` itself).
pub fn parse_element(ring: RingSpec, s: &str) -> Result<RingElement> {
    let mut p = Parser::new(s, ring, false);
    let v = p.expr()?;
    p.finish()?;
    v.as_unipoly()
        .and_then(|u| u.as_constant())
        .or_else(|| v.is_zero().then(|| RingElement::zero(working_ring(ring))))
        .ok_or_else(|| syntax(0, "expected a constant"))
}

/// `g1; g2; ...`.
pub fn parse_poly_list(ring: RingSpec, s: &str) -> Result<Vec<UniPoly>> {
    let mut p = Parser::new(s, ring, false);
    let items = p.list(None)?;
    p.finish()?;
    items.iter().map(|(at, v)| to_poly(ring, *at, v)).collect()
}

pub fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split([';', ',']) {
        let trimmed = part.trim();
        if !(trimmed.is_empty() && out.is_empty() && s.trim().is_empty()) {
            out.push(trimmed.parse().map_err(|_| syntax(offset, format!("expected a nonnegative integer, found `{trimmed}`")))?);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

/// `ideal(g1; ...)`, `ker(X -> e)` or `qideal(b1; ...)`.
pub fn parse_ideal(ring: RingSpec, ambient: Ambient, s: &str) -> Result<IdealPresentation> {
    let mut p = Parser::new(s, ring, false);
    let pres = if p.eat("ideal") {
        p.expect("(")?;
        let items = p.list(Some(')'))?;
        p.expect(")")?;
        let gens: Result<Vec<UniPoly>> = items.iter().map(|(at, v)| to_poly(ring, *at, v)).collect();
        let gens = gens?;
        if ambient == Ambient::Base {
            if let Some(g) = gens.iter().find(|g| !g.is_constant()) {
                return Err(Error::Usage(format!("{g} is not an element of {ring}")));
            }
        }
        IdealPresentation::Generators { ring, ambient, gens }
    } else if p.eat("ker") {
        p.expect("(")?;
        p.expect("X")?;
        p.expect("->")?;
        p.skip_ws();
        let at = p.pos;
        let v = p.expr()?;
        p.expect(")")?;
        let image = v
            .as_unipoly()
            .and_then(|u| u.as_constant())
            .ok_or_else(|| syntax(at, "the image of X must be a constant"))?;
        IdealPresentation::Kernel(EvalHom::new(ring, image)?)
    } else if p.eat("qideal") {
        p.expect("(")?;
        let items = p.list(Some(')'))?;
        p.expect(")")?;
        let gens: Result<Vec<RingElement>> = items
            .iter()
            .map(|(at, v)| to_poly(ring, *at, v)?.as_constant().ok_or_else(|| syntax(*at, "lattice generators are constants")))
            .collect();
        IdealPresentation::Lattice { ring, ambient, gens: gens? }
    } else {
        p.skip_ws();
        return Err(syntax(p.pos, "expected `ideal(`, `ker(` or `qideal(`"));
    };
    p.finish()?;
    Ok(pres)
}
