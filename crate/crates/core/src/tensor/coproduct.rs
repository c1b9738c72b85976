use std::collections::BTreeMap;

use crate::error::Result;
use crate::scalar::{CoefficientRing, Scalar};
use crate::tensor::{Monomial, TruncatedSeries};
use crate::words::Alphabet;

/// A truncated element of `T̂ ⊗ T̂`, kept to total degree at most the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquare {
    ring: CoefficientRing,
    alphabet: Alphabet,
    cap: u32,
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorSquare {
    fn empty(s: &TruncatedSeries) -> Self {
        TensorSquare {
            ring: s.ring,
            alphabet: s.alphabet.clone(),
            cap: s.cap,
            terms: BTreeMap::new(),
        }
    }

    fn insert(&mut self, key: (Monomial, Monomial), c: Scalar) {
        if key.0.degree() + key.1.degree() > self.cap {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry = self.ring.add(entry, &c);
        // zero entries are swept by `normalized`
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), Scalar> {
        &self.terms
    }

    /// `s ⊗ t`.
    pub fn tensor(s: &TruncatedSeries, t: &TruncatedSeries) -> Result<Self> {
        s.compatible(t)?;
        let mut out = Self::empty(s);
        for (m1, c1) in &s.terms {
            for (m2, c2) in &t.terms {
                out.insert((m1.clone(), m2.clone()), s.ring.mul(c1, c2));
            }
        }
        Ok(out.normalized())
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorSquare) -> TensorSquare {
        let mut out = TensorSquare {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                out.insert((a.concat(c), b.concat(d)), self.ring.mul(c1, c2));
            }
        }
        out.normalized()
    }

    pub fn add(&self, other: &TensorSquare) -> TensorSquare {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out.normalized()
    }

    /// `Σ c · (m1 ⊗ m2)` rendered one pair per line.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((l, r), c)| {
                format!(
                    "{c} * {} ⊗ {}",
                    l.render(&self.alphabet),
                    r.render(&self.alphabet)
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// The coproduct for which every variable is primitive: each monomial splits
/// into all (subword at S) ⊗ (subword at the complement of S).
pub fn coproduct_split(s: &TruncatedSeries) -> TensorSquare {
    let mut out = TensorSquare::empty(s);
    for (m, c) in &s.terms {
        let k = m.len();
        for mask in 0u64..(1u64 << k) {
            let mut left = Monomial::unit();
            let mut right = Monomial::unit();
            for (i, &l) in m.letters().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(&s.alphabet, l);
                } else {
                    right.push(&s.alphabet, l);
                }
            }
            out.insert((left, right), c.clone());
        }
    }
    out.normalized()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfMode {
    Primitive,
    Grouplike,
}

/// Primitive: `Δs = s ⊗ 1 + 1 ⊗ s`. Grouplike: constant term 1 and
/// `Δs = s ⊗ s`. Both compared at total degree up to the cap.
pub fn hopf_check(mode: HopfMode, s: &TruncatedSeries) -> bool {
    let delta = coproduct_split(s);
    let one = TruncatedSeries::one(s.ring, &s.alphabet, s.cap);
    let expected = match mode {
        HopfMode::Primitive => {
            let l = TensorSquare::tensor(s, &one).expect("compatible");
            let r = TensorSquare::tensor(&one, s).expect("compatible");
            l.add(&r)
        }
        HopfMode::Grouplike => {
            if !s.constant_term().is_one() {
                return false;
            }
            TensorSquare::tensor(s, s).expect("compatible")
        }
    };
    delta == expected
}
