//! Lie-expression DSL.
//!
//! ```text
//! expr := ("-"|"+")? term (("+"|"-") term)*
//! term := number ("*" atom)? | atom
//! atom := ident | "[" expr "," expr "]" | "(" expr ")"
//! ```
//!
//! A bare number is only accepted when it is `0`.

use crate::error::{Error, Result};
use crate::freelie::{lie_bracket, LieElement};
use crate::scalar::CoefficientRing;
use crate::words::{Alphabet, Cursor};

struct LieParser<'a, 'b> {
    cur: Cursor<'a>,
    alphabet: &'b Alphabet,
    ring: CoefficientRing,
}

impl LieParser<'_, '_> {
    fn expr(&mut self) -> Result<LieElement> {
        let mut acc = LieElement::zero(self.alphabet, self.ring);
        let mut negate = match self.cur.peek() {
            Some(b'-') => {
                self.cur.pos += 1;
                true
            }
            Some(b'+') => {
                self.cur.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t)? } else { acc.add(&t)? };
            negate = match self.cur.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Ok(acc),
            };
            self.cur.pos += 1;
        }
    }

    fn term(&mut self) -> Result<LieElement> {
        match self.cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.cur.pos;
                let k = self.cur.number()?;
                if self.cur.peek() == Some(b'*') {
                    self.cur.pos += 1;
                    let a = self.atom()?;
                    a.scale(&k)
                } else if k.is_zero() {
                    Ok(LieElement::zero(self.alphabet, self.ring))
                } else {
                    Err(Error::SyntaxError {
                        pos: start,
                        msg: "a nonzero scalar is not a Lie element".into(),
                    })
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<LieElement> {
        match self.cur.peek() {
            Some(b'[') => {
                self.cur.pos += 1;
                let u = self.expr()?;
                self.cur.expect(b',')?;
                let v = self.expr()?;
                self.cur.expect(b']')?;
                lie_bracket(&u, &v)
            }
            Some(b'(') => {
                self.cur.pos += 1;
                let u = self.expr()?;
                self.cur.expect(b')')?;
                Ok(u)
            }
            _ => {
                let (pos, name) = self
                    .cur
                    .ident()
                    .ok_or_else(|| self.cur.error("expected generator"))?;
                let gen = self
                    .alphabet
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownGenerator {
                        name: name.to_string(),
                        pos,
                    })?;
                Ok(LieElement::generator(self.alphabet, self.ring, gen))
            }
        }
    }
}

/// Parses and evaluates a Lie expression such as `2 * [a,[a,b]] - [b,c]`.
pub fn parse_lie(text: &str, alphabet: &Alphabet, ring: CoefficientRing) -> Result<LieElement> {
    let mut p = LieParser {
        cur: Cursor::new(text),
        alphabet,
        ring,
    };
    let e = p.expr()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("unexpected character"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_brackets() {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        let q = CoefficientRing::Rationals;
        let e = parse_lie("[b,a] + 2*[a,b]", &al, q).unwrap();
        assert_eq!(e.render(), "1 * [a,b]");
        assert!(parse_lie("0", &al, q).unwrap().is_zero());
        assert!(parse_lie("[a,[b,a]] + [a,[a,b]]", &al, q)
            .unwrap()
            .is_zero());
        assert!(matches!(
            parse_lie("3", &al, q),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_lie("[a,c]", &al, q),
            Err(Error::UnknownGenerator { .. })
        ));
        assert_eq!(
            parse_lie("-1/2 * [a,b]", &al, q).unwrap().render(),
            "-1/2 * [a,b]"
        );
    }
}
