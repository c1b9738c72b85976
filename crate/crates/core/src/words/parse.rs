//! Word DSL.
//!
//! ```text
//! word   := factor*
//! factor := atom ("^" int)?
//! atom   := ident | "(" word ")" | "[" word "," word "]" | "1"
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! int    := "-"? [0-9]+
//! ```
//!
//! Juxtaposition is the group product and whitespace separates factors, so
//! `ab` is a single identifier while `a b` is a product. Brackets follow the
//! convention `[g, h] = g h g⁻¹ h⁻¹`; `1` is the empty word.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::words::{Alphabet, ReducedWord};

pub(crate) struct Cursor<'a> {
    pub(crate) src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> Error {
        Error::SyntaxError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return None,
        }
        while let Some(c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some((
            start,
            std::str::from_utf8(&self.src[start..self.pos]).unwrap(),
        ))
    }

    pub(crate) fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let d = self
            .digits()
            .ok_or_else(|| self.error("expected integer"))?;
        let v: i64 = d.parse().map_err(|_| Error::SyntaxError {
            pos: start,
            msg: "integer out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    /// `int ("/" int)?`, unsigned.
    pub(crate) fn number(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let start = self.pos;
        let num = self.digits().ok_or_else(|| self.error("expected number"))?;
        let mut text = num.to_string();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self
                .digits()
                .ok_or_else(|| self.error("expected denominator"))?;
            text = format!("{text}/{den}");
        }
        text.parse().map_err(|_| Error::SyntaxError {
            pos: start,
            msg: "bad number".into(),
        })
    }
}

struct WordParser<'a, 'b> {
    cur: Cursor<'a>,
    alphabet: &'b Alphabet,
}

impl WordParser<'_, '_> {
    fn starts_atom(&mut self) -> bool {
        match self.cur.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'(' || c == b'[' => true,
            // `1` only as a whole token, so that `12` stays an error
            Some(b'1') => {
                !matches!(self.cur.src.get(self.cur.pos + 1), Some(c) if c.is_ascii_alphanumeric())
            }
            _ => false,
        }
    }

    fn word(&mut self) -> Result<ReducedWord> {
        let mut acc = ReducedWord::identity(self.alphabet);
        while self.starts_atom() {
            let f = self.factor()?;
            acc = acc.mul_unchecked(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ReducedWord> {
        let a = self.atom()?;
        if self.cur.peek() == Some(b'^') {
            self.cur.pos += 1;
            let k = self.cur.int()?;
            Ok(a.pow(k))
        } else {
            Ok(a)
        }
    }

    fn atom(&mut self) -> Result<ReducedWord> {
        match self.cur.peek() {
            Some(b'(') => {
                self.cur.pos += 1;
                let w = self.word()?;
                self.cur.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.cur.pos += 1;
                let u = self.word()?;
                self.cur.expect(b',')?;
                let v = self.word()?;
                self.cur.expect(b']')?;
                Ok(u.commutator(&v).expect("same alphabet"))
            }
            Some(b'1') => {
                self.cur.pos += 1;
                Ok(ReducedWord::identity(self.alphabet))
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
                Ok(ReducedWord::generator(self.alphabet, gen))
            }
        }
    }
}

/// Parses the word DSL into a freely reduced word.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<ReducedWord> {
    let mut p = WordParser {
        cur: Cursor::new(text),
        alphabet,
    };
    let w = p.word()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("unexpected character"));
    }
    Ok(w)
}

/// A finite formal linear combination `Σ c_w · w` of group elements.
pub type WordCombination = Vec<(Scalar, ReducedWord)>;

/// Parses `term (("+"|"-") term)*` where `term := number "*" word | number | word`.
///
/// Example: `a b - a - b + 1` is `(a − 1)(b − 1)` in the group ring.
pub fn parse_combination(text: &str, alphabet: &Alphabet) -> Result<WordCombination> {
    let mut p = WordParser {
        cur: Cursor::new(text),
        alphabet,
    };
    let mut out = Vec::new();
    let mut sign = match p.cur.peek() {
        Some(b'-') => {
            p.cur.pos += 1;
            -1
        }
        Some(b'+') => {
            p.cur.pos += 1;
            1
        }
        _ => 1,
    };
    loop {
        let coef;
        let word;
        match p.cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                coef = p.cur.number()?;
                if p.cur.peek() == Some(b'*') {
                    p.cur.pos += 1;
                    word = p.word()?;
                } else {
                    word = ReducedWord::identity(alphabet);
                }
            }
            _ => {
                if !p.starts_atom() {
                    return Err(p.cur.error("expected term"));
                }
                coef = Scalar::one();
                word = p.word()?;
            }
        }
        let coef = if sign < 0 { -coef } else { coef };
        out.push((coef, word));
        sign = match p.cur.peek() {
            Some(b'+') => 1,
            Some(b'-') => -1,
            None => break,
            Some(_) => return Err(p.cur.error("expected `+` or `-`")),
        };
        p.cur.pos += 1;
    }
    Ok(out)
}
