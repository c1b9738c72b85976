//! Truncated series in the completed tensor algebra over a weighted alphabet.
//!
//! Generator `x_i` corresponds to the variable `X_i` of weight `wt(x_i)`; a
//! monomial's degree is the sum of its letters' weights. Everything above the
//! cap is discarded as soon as it would be produced.

mod coproduct;
mod magnus;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::scalar::{CoefficientRing, Scalar};
use crate::words::Alphabet;

pub use coproduct::{coproduct_split, hopf_check, HopfMode, TensorSquare};
pub use magnus::{magnus_expand, magnus_valuation};

/// A word in the variables, ordered by weighted degree and then
/// lexicographically by letter index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    degree: u32,
    letters: SmallVec<[u8; 14]>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn new(alphabet: &Alphabet, letters: &[u8]) -> Self {
        let degree = letters.iter().map(|&l| alphabet.weight(l as usize)).sum();
        Monomial {
            degree,
            letters: SmallVec::from_slice(letters),
        }
    }

    pub fn letter(alphabet: &Alphabet, gen: usize) -> Self {
        Monomial::new(alphabet, &[gen as u8])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Monomial {
            degree: self.degree + other.degree,
            letters,
        }
    }

    pub(crate) fn push(&mut self, alphabet: &Alphabet, gen: u8) {
        self.degree += alphabet.weight(gen as usize);
        self.letters.push(gen);
    }

    /// Generator names, e.g. `["a", "b"]`.
    pub fn names(&self, alphabet: &Alphabet) -> Vec<String> {
        self.letters
            .iter()
            .map(|&l| alphabet.name(l as usize).to_string())
            .collect()
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_unit() {
            "1".into()
        } else {
            self.names(alphabet).join(" ")
        }
    }
}

/// Element of the completed tensor algebra truncated at weighted degree `cap`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: CoefficientRing,
    alphabet: Alphabet,
    cap: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

/// The three binary operations of [`series_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithMode {
    Add,
    Mul,
    Scale,
}

/// Second operand of [`series_arith`].
pub enum Operand<'a> {
    Series(&'a TruncatedSeries),
    Scalar(&'a Scalar),
}

/// Dispatches addition, multiplication or scaling.
pub fn series_arith(
    mode: ArithMode,
    s: &TruncatedSeries,
    t: Operand<'_>,
) -> Result<TruncatedSeries> {
    match (mode, t) {
        (ArithMode::Add, Operand::Series(t)) => s.add(t),
        (ArithMode::Mul, Operand::Series(t)) => s.mul(t),
        (ArithMode::Scale, Operand::Scalar(c)) | (ArithMode::Mul, Operand::Scalar(c)) => s.scale(c),
        (ArithMode::Add, Operand::Scalar(c)) => {
            s.add(&TruncatedSeries::constant(s.ring, &s.alphabet, s.cap, c)?)
        }
        (ArithMode::Scale, Operand::Series(_)) => {
            Err(Error::InvalidInput("scale needs a scalar operand".into()))
        }
    }
}

pub(crate) fn add_into(
    ring: CoefficientRing,
    map: &mut BTreeMap<Monomial, Scalar>,
    m: Monomial,
    c: Scalar,
) {
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let v = ring.add(e.get(), &c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

impl TruncatedSeries {
    pub fn zero(ring: CoefficientRing, alphabet: &Alphabet, cap: u32) -> Self {
        TruncatedSeries {
            ring,
            alphabet: alphabet.clone(),
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: CoefficientRing, alphabet: &Alphabet, cap: u32) -> Self {
        let mut s = Self::zero(ring, alphabet, cap);
        s.terms.insert(Monomial::unit(), Scalar::one());
        s
    }

    pub fn constant(
        ring: CoefficientRing,
        alphabet: &Alphabet,
        cap: u32,
        c: &Scalar,
    ) -> Result<Self> {
        Self::from_terms(ring, alphabet, cap, [(Monomial::unit(), c.clone())])
    }

    /// The variable `X_gen` (zero if its weight exceeds the cap).
    pub fn letter(ring: CoefficientRing, alphabet: &Alphabet, cap: u32, gen: usize) -> Self {
        let mut s = Self::zero(ring, alphabet, cap);
        let m = Monomial::letter(alphabet, gen);
        if m.degree <= cap {
            s.terms.insert(m, Scalar::one());
        }
        s
    }

    /// Builds a series from arbitrary terms: coefficients are converted into
    /// the ring, like monomials are merged, above-cap monomials dropped.
    pub fn from_terms(
        ring: CoefficientRing,
        alphabet: &Alphabet,
        cap: u32,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut s = Self::zero(ring, alphabet, cap);
        for (m, c) in terms {
            if m.letters.iter().any(|&l| l as usize >= alphabet.rank()) {
                return Err(Error::AlphabetMismatch);
            }
            if m.degree <= cap {
                add_into(ring, &mut s.terms, m, ring.convert(&c)?);
            }
        }
        Ok(s)
    }

    /// Parses monomials written as space-separated generator names, as in
    /// `[("a b", 1), ("b a", -1)]`.
    pub fn from_named(
        ring: CoefficientRing,
        alphabet: &Alphabet,
        cap: u32,
        terms: &[(&str, i64)],
    ) -> Result<Self> {
        let mut out = Vec::new();
        for (text, c) in terms {
            out.push((parse_monomial(text, alphabet)?, Scalar::from_int(*c)));
        }
        Self::from_terms(ring, alphabet, cap, out)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::unit())
    }

    /// Terms of exactly degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> TruncatedSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries {
            terms,
            ..Self::zero(self.ring, &self.alphabet, self.cap)
        }
    }

    /// True if every term has degree `d` (the zero series is homogeneous).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree == d)
    }

    /// Drops the constant term.
    pub fn without_constant(&self) -> TruncatedSeries {
        let mut s = self.clone();
        s.terms.remove(&Monomial::unit());
        s
    }

    /// Re-truncates at a lower cap, or raises the cap (the new high-degree
    /// coefficients are then zero, which is the caller's responsibility).
    pub fn with_cap(&self, cap: u32) -> TruncatedSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree <= cap)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries {
            terms,
            ..Self::zero(self.ring, &self.alphabet, cap)
        }
    }

    /// Same coefficients read in another ring.
    pub fn change_ring(&self, ring: CoefficientRing) -> Result<TruncatedSeries> {
        Self::from_terms(ring, &self.alphabet, self.cap, self.terms.clone())
    }

    fn compatible(&self, other: &TruncatedSeries) -> Result<()> {
        if self.alphabet != other.alphabet {
            Err(Error::AlphabetMismatch)
        } else if self.cap != other.cap {
            Err(Error::CapMismatch(self.cap, other.cap))
        } else if self.ring != other.ring {
            Err(Error::RingMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into(self.ring, &mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.ring.neg(c)))
            .collect();
        TruncatedSeries {
            terms,
            ..Self::zero(self.ring, &self.alphabet, self.cap)
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<TruncatedSeries> {
        let c = self.ring.convert(c)?;
        let mut out = Self::zero(self.ring, &self.alphabet, self.cap);
        if c.is_zero() {
            return Ok(out);
        }
        for (m, v) in &self.terms {
            let p = self.ring.mul(v, &c);
            if !p.is_zero() {
                out.terms.insert(m.clone(), p);
            }
        }
        Ok(out)
    }

    /// Concatenation product, skipping every pair whose degree exceeds the cap.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let mut out = Self::zero(self.ring, &self.alphabet, self.cap);
        let Some(low) = other.terms.keys().next().map(|m| m.degree) else {
            return out;
        };
        for (m1, c1) in &self.terms {
            if m1.degree + low > self.cap {
                break;
            }
            for (m2, c2) in &other.terms {
                if m1.degree + m2.degree > self.cap {
                    break;
                }
                add_into(
                    self.ring,
                    &mut out.terms,
                    m1.concat(m2),
                    self.ring.mul(c1, c2),
                );
            }
        }
        out
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> TruncatedSeries {
        let mut acc = Self::one(self.ring, &self.alphabet, self.cap);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// `self · X_gen`.
    pub fn mul_letter(&self, gen: usize) -> TruncatedSeries {
        self.mul_unchecked(&Self::letter(self.ring, &self.alphabet, self.cap, gen))
    }

    /// Least degree carrying a nonzero coefficient, optionally ignoring the
    /// constant term; `AboveCap(cap)` when nothing survives.
    pub fn valuation(&self, ignore_constant: bool) -> Degree {
        self.terms
            .keys()
            .find(|m| !(ignore_constant && m.is_unit()))
            .map_or(Degree::AboveCap(self.cap), |m| Degree::Finite(m.degree))
    }

    fn require_rational(&self) -> Result<()> {
        if self.ring == CoefficientRing::Rationals {
            Ok(())
        } else {
            Err(Error::RingNotRational)
        }
    }

    /// `Σ_k s^k / k!`, for `s` without constant term.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        self.require_rational()?;
        if !self.constant_term().is_zero() {
            return Err(Error::BadConstantTerm(format!(
                "exp needs 0, found {}",
                self.constant_term()
            )));
        }
        let mut acc = Self::one(self.ring, &self.alphabet, self.cap);
        let mut power = acc.clone();
        let mut k = 1i64;
        loop {
            power = power.mul_unchecked(self).scale(&Scalar::ratio(1, k))?;
            if power.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&power)?;
            k += 1;
        }
    }

    /// `Σ_k (−1)^{k+1} (s − 1)^k / k`, for `s` with constant term 1.
    pub fn log(&self) -> Result<TruncatedSeries> {
        self.require_rational()?;
        if !self.constant_term().is_one() {
            return Err(Error::BadConstantTerm(format!(
                "log needs 1, found {}",
                self.constant_term()
            )));
        }
        let t = self.without_constant();
        let mut acc = Self::zero(self.ring, &self.alphabet, self.cap);
        let mut power = Self::one(self.ring, &self.alphabet, self.cap);
        let mut k = 1i64;
        loop {
            power = power.mul_unchecked(&t);
            if power.is_zero() {
                return Ok(acc);
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Scalar::ratio(sign, k))?)?;
            k += 1;
        }
    }

    /// Applies the continuous algebra endomorphism `X_i ↦ images[i]`.
    ///
    /// Images must have no constant term and valuation at least the weight of
    /// their variable, so that truncation commutes with substitution.
    pub fn substitute(&self, images: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        self.check_images(images, "substitute")?;
        let mut prefix: BTreeMap<SmallVec<[u8; 14]>, TruncatedSeries> = BTreeMap::new();
        prefix.insert(
            SmallVec::new(),
            Self::one(self.ring, &self.alphabet, self.cap),
        );
        let mut out = Self::zero(self.ring, &self.alphabet, self.cap);
        for (m, c) in &self.terms {
            let product = prefix_product(&mut prefix, &m.letters, images);
            out = out.add(&product.scale(c)?)?;
        }
        Ok(out)
    }

    /// Applies the derivation determined by `X_i ↦ values[i]` (Leibniz rule).
    pub fn apply_derivation(&self, values: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        self.check_images(values, "derivation")?;
        let mut out = Self::zero(self.ring, &self.alphabet, self.cap);
        for (m, c) in &self.terms {
            for (pos, &l) in m.letters.iter().enumerate() {
                let left = Monomial::new(&self.alphabet, &m.letters[..pos]);
                let right = Monomial::new(&self.alphabet, &m.letters[pos + 1..]);
                if left.degree + right.degree > self.cap {
                    continue;
                }
                for (mv, cv) in &values[l as usize].terms {
                    if left.degree + mv.degree + right.degree > self.cap {
                        break;
                    }
                    let mono = left.concat(mv).concat(&right);
                    add_into(self.ring, &mut out.terms, mono, self.ring.mul(c, cv));
                }
            }
        }
        Ok(out)
    }

    fn check_images(&self, images: &[TruncatedSeries], what: &str) -> Result<()> {
        if images.len() != self.alphabet.rank() {
            return Err(Error::AlphabetMismatch);
        }
        for (i, s) in images.iter().enumerate() {
            self.compatible(s)?;
            if !s.valuation(false).is_at_least(self.alphabet.weight(i)) {
                return Err(Error::InvalidInput(format!(
                    "{what}: image of {} has degree below its weight",
                    self.alphabet.name(i)
                )));
            }
        }
        Ok(())
    }

    /// Sorted `coef * X1 X2 …` lines.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.is_unit() {
                    c.to_string()
                } else {
                    format!("{c} * {}", m.render(&self.alphabet))
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Machine-readable records in term order.
    pub fn to_records(&self) -> Vec<SeriesRecord> {
        self.terms
            .iter()
            .map(|(m, c)| SeriesRecord {
                monomial: m.names(&self.alphabet),
                coefficient: c.clone(),
            })
            .collect()
    }

    pub fn from_records(
        ring: CoefficientRing,
        alphabet: &Alphabet,
        cap: u32,
        records: &[SeriesRecord],
    ) -> Result<Self> {
        let mut terms = Vec::new();
        for r in records {
            let letters =
                r.monomial
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
            terms.push((Monomial::new(alphabet, &letters), r.coefficient.clone()));
        }
        Self::from_terms(ring, alphabet, cap, terms)
    }
}

fn prefix_product<'a>(
    memo: &'a mut BTreeMap<SmallVec<[u8; 14]>, TruncatedSeries>,
    letters: &[u8],
    images: &[TruncatedSeries],
) -> &'a TruncatedSeries {
    if !memo.contains_key(letters) {
        let (last, init) = letters.split_last().expect("unit prefix is seeded");
        let head = prefix_product(memo, init, images).clone();
        let value = head.mul_unchecked(&images[*last as usize]);
        memo.insert(SmallVec::from_slice(letters), value);
    }
    &memo[letters]
}

/// Parses a monomial written as space-separated generator names (`1` for the unit).
pub fn parse_monomial(text: &str, alphabet: &Alphabet) -> Result<Monomial> {
    let text = text.trim();
    if text == "1" || text.is_empty() {
        return Ok(Monomial::unit());
    }
    let letters = text
        .split_whitespace()
        .map(|n| {
            alphabet
                .index_of(n)
                .map(|i| i as u8)
                .ok_or_else(|| Error::UnknownGenerator {
                    name: n.to_string(),
                    pos: 0,
                })
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(Monomial::new(alphabet, &letters))
}

/// One exact term of a series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub monomial: Vec<String>,
    pub coefficient: Scalar,
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_unit() {
                    c.to_string()
                } else {
                    format!("{c}*{}", m.render(&self.alphabet))
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{} N={}]({self})", self.ring, self.cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, ReducedWord};

    const Q: CoefficientRing = CoefficientRing::Rationals;
    const Z: CoefficientRing = CoefficientRing::Integers;

    fn ab() -> Alphabet {
        Alphabet::uniform(&["A", "B"]).unwrap()
    }

    fn series(cap: u32, terms: &[(&str, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_named(Q, &ab(), cap, terms).unwrap()
    }

    #[test]
    fn telescoping_product() {
        let s = series(2, &[("1", 1), ("A", 1)]);
        let t = series(2, &[("1", 1), ("A", -1), ("A A", 1)]);
        assert_eq!(s.mul(&t).unwrap(), TruncatedSeries::one(Q, &ab(), 2));
        let a = series(2, &[("A", 1)]);
        let b = series(2, &[("B", 1)]);
        let comm = a.mul(&b).unwrap().sub(&b.mul(&a).unwrap()).unwrap();
        assert_eq!(comm, series(2, &[("A B", 1), ("B A", -1)]));
        assert_eq!(comm.valuation(false), Degree::Finite(2));
    }

    #[test]
    fn mismatches() {
        let s = series(2, &[("A", 1)]);
        let t = series(3, &[("A", 1)]);
        assert_eq!(s.add(&t), Err(Error::CapMismatch(2, 3)));
        let u = s.change_ring(Z).unwrap();
        assert_eq!(s.mul(&u), Err(Error::RingMismatch));
    }

    #[test]
    fn magnus_examples() {
        let al = ab();
        let inv = magnus_expand(&parse_word("A^-1", &al).unwrap(), Z, 2);
        assert_eq!(inv.render(), "1\n-1 * A\n1 * A A");
        let c = magnus_expand(&parse_word("[A,B]", &al).unwrap(), Z, 3);
        assert_eq!(c.homogeneous_part(1).len(), 0);
        assert_eq!(
            c.homogeneous_part(2),
            series(3, &[("A B", 1), ("B A", -1)])
                .change_ring(Z)
                .unwrap()
        );
        let nested = magnus_expand(&parse_word("[A,[A,B]]", &al).unwrap(), Z, 5);
        assert_eq!(nested.valuation(true), Degree::Finite(3));
        let trivial = magnus_expand(&ReducedWord::identity(&al), Z, 4);
        assert_eq!(trivial.valuation(true), Degree::AboveCap(4));
    }

    #[test]
    fn magnus_mod_p() {
        let al = ab();
        let s = magnus_expand(
            &parse_word("A^2", &al).unwrap(),
            CoefficientRing::PrimeField(2),
            4,
        );
        assert_eq!(s.render(), "1\n1 * A A");
    }

    #[test]
    fn exp_log_examples() {
        let a = series(3, &[("A", 1)]);
        assert_eq!(
            a.exp().unwrap().render(),
            "1\n1 * A\n1/2 * A A\n1/6 * A A A"
        );
        let one_plus = series(3, &[("1", 1), ("A", 1)]);
        assert_eq!(
            one_plus.log().unwrap().render(),
            "1 * A\n-1/2 * A A\n1/3 * A A A"
        );
        let b = series(3, &[("B", 1)]);
        let z = a
            .exp()
            .unwrap()
            .mul(&b.exp().unwrap())
            .unwrap()
            .log()
            .unwrap();
        assert_eq!(
            z.homogeneous_part(2),
            series(3, &[("A B", 1), ("B A", -1)])
                .scale(&Scalar::ratio(1, 2))
                .unwrap()
        );
        assert!(matches!(one_plus.exp(), Err(Error::BadConstantTerm(_))));
        assert_eq!(a.change_ring(Z).unwrap().exp(), Err(Error::RingNotRational));
    }

    #[test]
    fn substitution_and_derivation() {
        // X_A ↦ A + AB, X_B ↦ B
        let images = vec![series(3, &[("A", 1), ("A B", 1)]), series(3, &[("B", 1)])];
        let s = series(3, &[("A A", 1)]);
        assert_eq!(
            s.substitute(&images).unwrap(),
            series(3, &[("A A", 1), ("A B A", 1), ("A A B", 1)])
        );
        let d = vec![series(3, &[("A B", 1)]), TruncatedSeries::zero(Q, &ab(), 3)];
        assert_eq!(
            s.apply_derivation(&d).unwrap(),
            series(3, &[("A B A", 1), ("A A B", 1)])
        );
        let bad = vec![series(3, &[("1", 1)]), series(3, &[("B", 1)])];
        assert!(s.substitute(&bad).is_err());
    }

    #[test]
    fn records_round_trip() {
        let s = series(3, &[("A B", 3), ("B", -2), ("1", 1)])
            .scale(&Scalar::ratio(1, 3))
            .unwrap();
        let back = TruncatedSeries::from_records(Q, &ab(), 3, &s.to_records()).unwrap();
        assert_eq!(back, s);
        let json = serde_json::to_string(&s.to_records()).unwrap();
        assert!(json.contains("\"2/3\"") || json.contains("\"-2/3\""));
    }
}
