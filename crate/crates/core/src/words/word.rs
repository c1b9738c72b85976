use std::fmt;

use crate::error::{Error, Result};
use crate::words::Alphabet;

/// A power `gen^exp` with `exp != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A freely reduced word in syllable (run-length) form.
///
/// Adjacent syllables always have distinct generators and no exponent is
/// zero, so two words are equal as group elements iff they are equal as
/// values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    alphabet: Alphabet,
    syllables: Vec<Syllable>,
}

/// The group operations exposed by [`word_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOp {
    Product,
    Inverse,
    /// `conjugate(u, v) = u v u⁻¹`
    Conjugate,
    /// `commutator(u, v) = u v u⁻¹ v⁻¹`
    Commutator,
}

/// Single-stack free reduction of a syllable stream.
fn reduce_into(out: &mut Vec<Syllable>, input: impl IntoIterator<Item = Syllable>) {
    for s in input {
        if s.exp == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.gen == s.gen => {
                top.exp += s.exp;
                if top.exp == 0 {
                    out.pop();
                }
            }
            _ => out.push(s),
        }
    }
}

impl ReducedWord {
    pub fn identity(alphabet: &Alphabet) -> Self {
        ReducedWord {
            alphabet: alphabet.clone(),
            syllables: Vec::new(),
        }
    }

    pub fn generator(alphabet: &Alphabet, gen: usize) -> Self {
        Self::power_of(alphabet, gen, 1)
    }

    pub fn power_of(alphabet: &Alphabet, gen: usize, exp: i64) -> Self {
        assert!(gen < alphabet.rank(), "generator index out of range");
        Self::from_syllables(alphabet, [Syllable { gen, exp }])
    }

    /// Reduces an arbitrary syllable stream.
    pub fn from_syllables(
        alphabet: &Alphabet,
        syllables: impl IntoIterator<Item = Syllable>,
    ) -> Self {
        let mut out = Vec::new();
        reduce_into(&mut out, syllables);
        debug_assert!(out.iter().all(|s| s.gen < alphabet.rank()));
        ReducedWord {
            alphabet: alphabet.clone(),
            syllables: out,
        }
    }

    /// Builds from signed letters: `(gen, true)` is `gen`, `(gen, false)` its inverse.
    pub fn from_letters(
        alphabet: &Alphabet,
        letters: impl IntoIterator<Item = (usize, bool)>,
    ) -> Self {
        Self::from_syllables(
            alphabet,
            letters.into_iter().map(|(gen, pos)| Syllable {
                gen,
                exp: if pos { 1 } else { -1 },
            }),
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of |exponents|.
    pub fn length(&self) -> usize {
        self.syllables
            .iter()
            .map(|s| s.exp.unsigned_abs() as usize)
            .sum()
    }

    /// Signed letters, one per unit of exponent.
    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.syllables
            .iter()
            .flat_map(|s| std::iter::repeat_n((s.gen, s.exp > 0), s.exp.unsigned_abs() as usize))
    }

    fn check(&self, other: &ReducedWord) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn mul(&self, other: &ReducedWord) -> Result<ReducedWord> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &ReducedWord) -> ReducedWord {
        let mut out = Vec::with_capacity(self.syllables.len() + other.syllables.len());
        out.extend_from_slice(&self.syllables);
        reduce_into(&mut out, other.syllables.iter().copied());
        ReducedWord {
            alphabet: self.alphabet.clone(),
            syllables: out,
        }
    }

    pub fn inverse(&self) -> ReducedWord {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable {
                gen: s.gen,
                exp: -s.exp,
            })
            .collect();
        ReducedWord {
            alphabet: self.alphabet.clone(),
            syllables,
        }
    }

    pub fn pow(&self, k: i64) -> ReducedWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            reduce_into(&mut out, base.syllables.iter().copied());
        }
        ReducedWord {
            alphabet: self.alphabet.clone(),
            syllables: out,
        }
    }

    /// `g · self · g⁻¹`, the left conjugate `ᵍself`.
    pub fn conjugated_by(&self, g: &ReducedWord) -> Result<ReducedWord> {
        self.check(g)?;
        Ok(g.mul_unchecked(self).mul_unchecked(&g.inverse()))
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &ReducedWord) -> Result<ReducedWord> {
        self.check(other)?;
        Ok(self
            .mul_unchecked(other)
            .mul_unchecked(&self.inverse())
            .mul_unchecked(&other.inverse()))
    }

    /// Exponent sum of each generator (the image in the abelianization).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0; self.alphabet.rank()];
        for s in &self.syllables {
            v[s.gen] += s.exp;
        }
        v
    }

    /// Reinterprets the word over another alphabet with the same names.
    pub fn rebase(&self, alphabet: &Alphabet) -> Result<ReducedWord> {
        if !self.alphabet.same_names(alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(ReducedWord {
            alphabet: alphabet.clone(),
            syllables: self.syllables.clone(),
        })
    }
}

/// Dispatches one of the four group operations; `v` is ignored for `Inverse`.
pub fn word_op(op: WordOp, u: &ReducedWord, v: Option<&ReducedWord>) -> Result<ReducedWord> {
    let need = || v.ok_or_else(|| Error::InvalidInput(format!("{op:?} needs two operands")));
    match op {
        WordOp::Product => u.mul(need()?),
        WordOp::Inverse => Ok(u.inverse()),
        WordOp::Conjugate => need()?.conjugated_by(u),
        WordOp::Commutator => u.commutator(need()?),
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.name(s.gen))?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedWord({self})")
    }
}
