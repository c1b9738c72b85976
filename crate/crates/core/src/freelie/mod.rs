//! The free Lie algebra on a weighted alphabet, in Lyndon coordinates.
//!
//! Elements are stored as coefficients on Lyndon words; the basis element of a
//! Lyndon word is its standard bracketing. All products go through the tensor
//! representation, where a Lie element is a primitive polynomial.

mod lyndon;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{CoefficientRing, Scalar};
use crate::tensor::{Monomial, TruncatedSeries};
use crate::words::Alphabet;

pub use lyndon::{
    is_lyndon, lyndon_basis, standard_bracketing, standard_factorization, Bracketing, LyndonBasis,
};
pub use parse::parse_lie;

/// A finite sum of Lyndon basis elements, possibly of several degrees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    alphabet: Alphabet,
    ring: CoefficientRing,
    terms: BTreeMap<Monomial, Scalar>,
}

/// One exact coordinate of a Lie element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieRecord {
    pub degree: u32,
    pub lyndon_word: Vec<String>,
    pub coefficient: Scalar,
}

impl LieElement {
    pub fn zero(alphabet: &Alphabet, ring: CoefficientRing) -> Self {
        LieElement {
            alphabet: alphabet.clone(),
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(alphabet: &Alphabet, ring: CoefficientRing, gen: usize) -> Self {
        Self::basis_element(alphabet, ring, &[gen as u8]).expect("letters are Lyndon")
    }

    /// The standard bracketing of a Lyndon word.
    pub fn basis_element(alphabet: &Alphabet, ring: CoefficientRing, word: &[u8]) -> Result<Self> {
        if !is_lyndon(word) || word.iter().any(|&l| l as usize >= alphabet.rank()) {
            return Err(Error::InvalidInput(format!(
                "{word:?} is not a Lyndon word"
            )));
        }
        Self::from_terms(
            alphabet,
            ring,
            [(Monomial::new(alphabet, word), Scalar::one())],
        )
    }

    pub fn from_terms(
        alphabet: &Alphabet,
        ring: CoefficientRing,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(alphabet, ring);
        for (m, c) in terms {
            if !is_lyndon(m.letters()) {
                return Err(Error::InvalidInput(
                    "coordinate on a non-Lyndon word".into(),
                ));
            }
            out.add_term(m, ring.convert(&c)?);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        let v = self
            .ring
            .add(&self.terms.get(&m).cloned().unwrap_or_default(), &c);
        if v.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    /// Coordinates keyed by Lyndon word, ordered by degree then lexicographically.
    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Monomial) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        d.dedup();
        d
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn homogeneous_part(&self, d: u32) -> LieElement {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        LieElement {
            terms,
            ..Self::zero(&self.alphabet, self.ring)
        }
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn compatible(&self, other: &LieElement) -> Result<()> {
        if self.alphabet != other.alphabet {
            Err(Error::AlphabetMismatch)
        } else if self.ring != other.ring {
            Err(Error::RingMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LieElement {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.ring.neg(c)))
            .collect();
        LieElement {
            terms,
            ..Self::zero(&self.alphabet, self.ring)
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<LieElement> {
        let c = self.ring.convert(c)?;
        let mut out = Self::zero(&self.alphabet, self.ring);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(v, &c));
        }
        Ok(out)
    }

    pub fn change_ring(&self, ring: CoefficientRing) -> Result<LieElement> {
        Self::from_terms(&self.alphabet, ring, self.terms.clone())
    }

    /// Rewrites the element over another alphabet with the same names.
    pub fn rebase(&self, alphabet: &Alphabet) -> Result<LieElement> {
        if !self.alphabet.same_names(alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Self::from_terms(
            alphabet,
            self.ring,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(alphabet, m.letters()), c.clone())),
        )
    }

    /// `c * [standard bracketing]` lines, `0` for zero.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                format!(
                    "{c} * {}",
                    standard_bracketing(m.letters()).render(&self.alphabet)
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Single-line rendering `c1 * [..] + c2 * [..]`, parseable by [`parse_lie`].
    pub fn render_inline(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let b = standard_bracketing(m.letters()).render(&self.alphabet);
            let (sign, abs) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => out.push('-'),
                _ => out.push_str(&format!(" {sign} ")),
            }
            if abs.is_one() {
                out.push_str(&b);
            } else {
                out.push_str(&format!("{abs} * {b}"));
            }
        }
        out
    }

    pub fn to_records(&self) -> Vec<LieRecord> {
        self.terms
            .iter()
            .map(|(m, c)| LieRecord {
                degree: m.degree(),
                lyndon_word: m.names(&self.alphabet),
                coefficient: c.clone(),
            })
            .collect()
    }

    pub fn from_records(
        alphabet: &Alphabet,
        ring: CoefficientRing,
        records: &[LieRecord],
    ) -> Result<Self> {
        let mut terms = Vec::new();
        for r in records {
            let letters =
                r.lyndon_word
                    .iter()
                    .map(|n| {
                        alphabet.index_of(n).map(|i| i as u8).ok_or_else(|| {
                            Error::UnknownGenerator {
                                name: n.clone(),
                                pos: 0,
                            }
                        })
                    })
                    .collect::<Result<Vec<u8>>>()?;
            let m = Monomial::new(alphabet, &letters);
            if m.degree() != r.degree {
                return Err(Error::InvalidInput(format!(
                    "record degree {} does not match its word",
                    r.degree
                )));
            }
            terms.push((m, r.coefficient.clone()));
        }
        Self::from_terms(alphabet, ring, terms)
    }
}

/// Tensor image of a Lie element, truncated at `cap`.
pub fn lie_to_tensor(u: &LieElement, cap: u32) -> Result<TruncatedSeries> {
    if u.max_degree() > cap {
        return Err(Error::CapTooSmall {
            needed: u.max_degree(),
            cap,
        });
    }
    let mut terms = Vec::new();
    for (w, c) in &u.terms {
        for (m, e) in lyndon::expansion(&u.alphabet, w.letters()).iter() {
            terms.push((m.clone(), c * e));
        }
    }
    TruncatedSeries::from_terms(u.ring, &u.alphabet, cap, terms)
}

/// Lyndon coordinates of a homogeneous tensor of degree `d`.
///
/// Each basis expansion is its Lyndon word plus lexicographically larger
/// words, so eliminating the smallest surviving monomial is an exact
/// triangular solve over any of the coefficient rings.
pub fn tensor_to_lie(s: &TruncatedSeries, d: u32) -> Result<LieElement> {
    if !s.is_homogeneous_of(d) {
        return Err(Error::NotHomogeneous);
    }
    eliminate(s)
}

/// Lyndon coordinates of a tensor without constant term, degree by degree.
pub fn tensor_to_lie_all(s: &TruncatedSeries) -> Result<LieElement> {
    eliminate(s)
}

fn eliminate(s: &TruncatedSeries) -> Result<LieElement> {
    let ring = s.ring();
    let al = s.alphabet();
    let mut residual = s.terms().clone();
    let mut out = LieElement::zero(al, ring);
    while let Some((m, c)) = residual.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
        if !is_lyndon(m.letters()) {
            let rest = TruncatedSeries::from_terms(ring, al, s.cap(), residual)?;
            return Err(Error::NotALieElement {
                residual: rest.to_string(),
            });
        }
        for (e, k) in lyndon::expansion(al, m.letters()).iter() {
            let v = ring.sub(
                &residual.get(e).cloned().unwrap_or_default(),
                &ring.mul(&c, &ring.normalize(k.clone())),
            );
            if v.is_zero() {
                residual.remove(e);
            } else {
                residual.insert(e.clone(), v);
            }
        }
        out.add_term(m, c);
    }
    Ok(out)
}

/// `[u, v]`, computed as `uv − vu` in the tensor algebra.
pub fn lie_bracket(u: &LieElement, v: &LieElement) -> Result<LieElement> {
    u.compatible(v)?;
    if u.is_zero() || v.is_zero() {
        return Ok(LieElement::zero(&u.alphabet, u.ring));
    }
    let cap = u.max_degree() + v.max_degree();
    let (tu, tv) = (lie_to_tensor(u, cap)?, lie_to_tensor(v, cap)?);
    let comm = tu.mul(&tv)?.sub(&tv.mul(&tu)?)?;
    tensor_to_lie_all(&comm)
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_inline())
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement[{}]({self})", self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientRing = CoefficientRing::Rationals;
    const Z: CoefficientRing = CoefficientRing::Integers;

    fn abc() -> Alphabet {
        Alphabet::uniform(&["a", "b", "c"]).unwrap()
    }

    fn gen(i: usize) -> LieElement {
        LieElement::generator(&abc(), Z, i)
    }

    #[test]
    fn bracket_examples() {
        let (a, b, c) = (gen(0), gen(1), gen(2));
        assert!(lie_bracket(&a, &a).unwrap().is_zero());
        let ab = lie_bracket(&a, &b).unwrap();
        assert_eq!(ab.render(), "1 * [a,b]");
        let ba = lie_bracket(&b, &a).unwrap();
        assert_eq!(ba, ab.neg());
        let jac = lie_bracket(&a, &lie_bracket(&b, &c).unwrap())
            .unwrap()
            .add(&lie_bracket(&b, &lie_bracket(&c, &a).unwrap()).unwrap())
            .unwrap()
            .add(&lie_bracket(&c, &ab).unwrap())
            .unwrap();
        assert!(jac.is_zero());
    }

    #[test]
    fn tensor_round_trips() {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        let aab = LieElement::basis_element(&al, Z, &[0, 0, 1]).unwrap();
        let t = lie_to_tensor(&aab, 3).unwrap();
        assert_eq!(t.render(), "1 * a a b\n-2 * a b a\n1 * b a a");
        assert_eq!(tensor_to_lie(&t, 3).unwrap(), aab);
        assert_eq!(
            lie_to_tensor(&aab, 2),
            Err(Error::CapTooSmall { needed: 3, cap: 2 })
        );
        let sym = TruncatedSeries::from_named(Q, &al, 2, &[("a b", 1), ("b a", 1)]).unwrap();
        assert!(matches!(
            tensor_to_lie(&sym, 2),
            Err(Error::NotALieElement { .. })
        ));
        let mixed = TruncatedSeries::from_named(Q, &al, 2, &[("a", 1), ("b a", 1)]).unwrap();
        assert_eq!(tensor_to_lie(&mixed, 2), Err(Error::NotHomogeneous));
        let a = TruncatedSeries::from_named(Z, &al, 2, &[("a", 1)]).unwrap();
        assert_eq!(tensor_to_lie(&a, 1).unwrap().render(), "1 * a");
    }

    #[test]
    fn weighted_bracket() {
        let al = Alphabet::new([("y", 1), ("x", 2)]).unwrap();
        let y = LieElement::generator(&al, Z, 0);
        let x = LieElement::generator(&al, Z, 1);
        let yx = lie_bracket(&y, &x).unwrap();
        assert_eq!(yx.degrees(), [3]);
        assert_eq!(yx.render(), "1 * [y,x]");
    }

    #[test]
    fn records_round_trip() {
        let al = abc();
        let e = parse_lie("2 * [a,[a,b]] - 1/3 * c", &al, Q).unwrap();
        assert_eq!(
            LieElement::from_records(&al, Q, &e.to_records()).unwrap(),
            e
        );
        assert_eq!(parse_lie(&e.render_inline(), &al, Q).unwrap(), e);
    }
}
