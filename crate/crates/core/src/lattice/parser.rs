//! Recursive-descent parser for the descriptor language.
//!
//! ```text
//! lattice  = summand { "+" summand } | "0" ;
//! summand  = [ nat "*" ] atom ;
//! atom     = "Z" | "b(" class ")" | "c(" class ")" | "Eb(" class ")" | "Ec(" class ")"
//!          | type "(" class "," class ";" nat [ "," unit ] ")" ;
//! type     = "B" | "C" | "D" | "E" | "F" ;
//! class    = nat { ":" nat } ;
//! unit     = term { ("+" | "-") term } ;      e.g. 1, 1+2l, 1+l^2, 3-l
//! term     = nat [ ["*"] "l" [ "^" nat ] ] | "l" [ "^" nat ] ;
//! ```
//!
//! Whitespace is ignored. A class written as a single `0` denotes the
//! identity of any class group.

use std::sync::Arc;

use crate::abelian::{AbGroup, GroupElement};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::modring::PolyMod;

use super::{ExtKind, LatticeDescriptor, Summand};

/// Parses `text` over `ctx`. With `lenient` set, units are replaced by their
/// canonical representatives; otherwise a non-canonical unit is an error.
pub fn parse(text: &str, ctx: &Arc<Context>, lenient: bool) -> Result<LatticeDescriptor> {
    let mut ps = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
        lenient,
    };
    ps.skip_ws();
    if ps.eof() {
        return Err(ps.err("empty descriptor (write 0 for the zero module)"));
    }
    if ps.peek() == Some(b'0') {
        let save = ps.pos;
        ps.pos += 1;
        ps.skip_ws();
        if ps.eof() {
            return Ok(LatticeDescriptor::zero(ctx.clone()));
        }
        ps.pos = save;
    }
    let mut summands = Vec::new();
    loop {
        ps.summand(&mut summands)?;
        ps.skip_ws();
        if ps.eof() {
            break;
        }
        ps.expect(b'+')?;
    }
    Ok(LatticeDescriptor::from_sorted_parts(ctx.clone(), summands))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Arc<Context>,
    lenient: bool,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn invalid_at(&self, pos: usize, e: Error) -> Error {
        match e {
            Error::InvalidDescriptor(msg) | Error::OutOfRange(msg) => {
                Error::InvalidDescriptor(format!("at position {pos}: {msg}"))
            }
            other => other,
        }
    }

    fn eof(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = match self.peek() {
                Some(f) => format!("'{}'", f as char),
                None => "end of input".into(),
            };
            Err(self.err(format!("expected '{}', found {found}", c as char)))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Syntax {
                pos: start,
                msg: "number too large".into(),
            })
    }

    fn at_digit(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }

    fn summand(&mut self, out: &mut Vec<Summand>) -> Result<()> {
        let mut mult = 1;
        if self.at_digit() {
            let at = self.pos;
            mult = self.nat()?;
            if mult == 0 {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "multiplicity must be positive".into(),
                });
            }
            self.expect(b'*')?;
        }
        self.skip_ws();
        let start = self.pos;
        let s = self.atom()?;
        let s = if self.lenient {
            s.canonicalize(self.ctx).map_err(|e| self.invalid_at(start, e))?
        } else {
            s
        };
        s.validate(self.ctx).map_err(|e| self.invalid_at(start, e))?;
        for _ in 0..mult {
            out.push(s.clone());
        }
        Ok(())
    }

    fn atom(&mut self) -> Result<Summand> {
        self.skip_ws();
        let c = self.peek().ok_or_else(|| self.err("expected a summand"))?;
        self.pos += 1;
        let classes = self.ctx.classes();
        let hp = classes.h_p.target().clone();
        let hp2 = classes.h_p2.target().clone();
        match c {
            b'Z' => Ok(Summand::Z),
            b'b' => Ok(Summand::IdealR {
                b: self.paren_class(&hp)?,
            }),
            b'c' => Ok(Summand::IdealS {
                c: self.paren_class(&hp2)?,
            }),
            b'E' if self.peek() == Some(b'b') => {
                self.pos += 1;
                Ok(Summand::ExtB {
                    b: self.paren_class(&hp)?,
                })
            }
            b'E' if self.peek() == Some(b'c') => {
                self.pos += 1;
                Ok(Summand::ExtC {
                    c: self.paren_class(&hp2)?,
                })
            }
            b'B' | b'C' | b'D' | b'E' | b'F' => {
                let kind = match c {
                    b'B' => ExtKind::B,
                    b'C' => ExtKind::C,
                    b'D' => ExtKind::D,
                    b'E' => ExtKind::E,
                    _ => ExtKind::F,
                };
                self.extension(kind, &hp, &hp2)
            }
            other => {
                self.pos -= 1;
                Err(self.err(format!("unexpected '{}'", other as char)))
            }
        }
    }

    fn paren_class(&mut self, g: &AbGroup) -> Result<GroupElement> {
        self.expect(b'(')?;
        let x = self.class(g)?;
        self.expect(b')')?;
        Ok(x)
    }

    fn class(&mut self, g: &AbGroup) -> Result<GroupElement> {
        self.skip_ws();
        let start = self.pos;
        let mut parts = vec![self.nat()?];
        while self.eat(b':') {
            parts.push(self.nat()?);
        }
        if parts == [0] {
            return Ok(g.identity());
        }
        let x = GroupElement(parts);
        if x.0.len() != g.rank() {
            return Err(Error::InvalidDescriptor(format!(
                "at position {start}: class {x} has {} components, the class group has {}",
                x.0.len(),
                g.rank()
            )));
        }
        if !g.contains(&x) {
            return Err(Error::InvalidDescriptor(format!(
                "at position {start}: class exponent out of range for invariant factors {:?}",
                g.invariant_factors()
            )));
        }
        Ok(x)
    }

    fn extension(&mut self, kind: ExtKind, hp: &AbGroup, hp2: &AbGroup) -> Result<Summand> {
        let p = self.ctx.p();
        let start = self.pos - 1;
        self.expect(b'(')?;
        let b = self.class(hp)?;
        self.expect(b',')?;
        let c = self.class(hp2)?;
        self.expect(b';')?;
        self.skip_ws();
        let r_pos = self.pos;
        let r = self.nat()?;
        if kind == ExtKind::D && !crate::arith::is_one_mod_four(p) {
            return Err(Error::InvalidDescriptor(format!(
                "at position {start}: type D needs p = 1 mod 4, got p = {p}"
            )));
        }
        if !kind.r_range(p).contains(&(r as i64)) {
            return Err(Error::InvalidDescriptor(format!(
                "at position {r_pos}: r = {r} is out of range {}..={} for type {} at p = {p}",
                kind.r_range(p).start(),
                kind.r_range(p).end(),
                kind.letter()
            )));
        }
        let r = r as u32;
        let m = kind.unit_degree(p, r);
        let u = if self.eat(b',') {
            self.unit(m)?
        } else {
            PolyMod::one(p, m)
        };
        self.expect(b')')?;
        Ok(Summand::Ext { kind, b, c, r, u })
    }

    /// Reads a polynomial in `l`, reduced into `F_p[l]/(l^m)`.
    fn unit(&mut self, m: usize) -> Result<PolyMod> {
        let p = self.ctx.p();
        self.skip_ws();
        let start = self.pos;
        let mut coeffs = vec![0i64; m];
        let mut sign = 1i64;
        if self.eat(b'-') {
            sign = -1;
        }
        loop {
            let (c, e) = self.term()?;
            if (e as usize) < m {
                let c = (c % p as u64) as i64;
                coeffs[e as usize] += sign * c;
            }
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        let u = PolyMod::from_coeffs(p, m, &coeffs);
        if !u.is_unit() {
            return Err(Error::InvalidDescriptor(format!(
                "at position {start}: {u} is not a unit (constant term divisible by {p})"
            )));
        }
        Ok(u)
    }

    fn term(&mut self) -> Result<(u64, u64)> {
        let mut coeff = None;
        if self.at_digit() {
            coeff = Some(self.nat()?);
            if !self.eat(b'*') {
                self.skip_ws();
                if self.peek() != Some(b'l') {
                    return Ok((coeff.unwrap(), 0));
                }
            }
        }
        self.skip_ws();
        if self.peek() != Some(b'l') {
            return Err(self.err("expected a coefficient or 'l'"));
        }
        self.pos += 1;
        let e = if self.eat(b'^') { self.nat()? } else { 1 };
        Ok((coeff.unwrap_or(1), e))
    }
}
