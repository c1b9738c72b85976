//! Expansions of a free group into the completed tensor algebra, the
//! automorphism they induce there, and its logarithm.
//!
//! An expansion is exponential: `θ(b_i) = exp(λ_i)` with `λ_i` a rational
//! Lie series whose lowest part is the generator itself. An automorphism `f`
//! of the group becomes the algebra automorphism `r` with
//! `r(θ(w)) = θ(f(w))`; its operator logarithm is a derivation whose leading
//! component is the Johnson homomorphism of `f`.

mod quillen;
mod tail;

pub use quillen::{jfiltration_degree, upsilon_checks, RankCheck, UpsilonReport};
pub use tail::{bch_product, exp_operator, operator_log, rho, DerivationTail};

use crate::degree::Degree;
use crate::eglie::{Derivation, EgLie};
use crate::error::{Error, Result};
use crate::freelie::{lie_to_tensor, LieElement};
use crate::scalar::CoefficientRing;
use crate::tensor::TruncatedSeries;
use crate::words::{Alphabet, GroupMap, ReducedWord};

const Q: CoefficientRing = CoefficientRing::Rationals;

/// `θ(b_i) = exp(λ_i)`, truncated at `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    alphabet: Alphabet,
    cap: u32,
    logs: Vec<LieElement>,
    thetas: Vec<TruncatedSeries>,
    inverses: Vec<TruncatedSeries>,
}

impl Expansion {
    /// `θ(b_i) = exp(X_i)`.
    pub fn standard(alphabet: &Alphabet, cap: u32) -> Expansion {
        let logs = (0..alphabet.rank())
            .map(|i| LieElement::generator(alphabet, Q, i))
            .collect();
        Self::new(alphabet, cap, logs).expect("generators are valid logarithms")
    }

    /// An expansion from its logarithms; each must be the generator plus
    /// terms of higher degree. Parts above the cap are dropped.
    pub fn new(alphabet: &Alphabet, cap: u32, logs: Vec<LieElement>) -> Result<Expansion> {
        if logs.len() != alphabet.rank() {
            return Err(Error::StructureMismatch(
                "one logarithm per generator expected".into(),
            ));
        }
        let mut kept = Vec::new();
        let (mut thetas, mut inverses) = (Vec::new(), Vec::new());
        for (i, l) in logs.iter().enumerate() {
            let l = l.rebase(alphabet)?.change_ring(Q)?;
            let wt = alphabet.weight(i);
            let gen = LieElement::generator(alphabet, Q, i);
            if l.min_degree() != Some(wt) || l.homogeneous_part(wt) != gen {
                return Err(Error::InvalidInput(format!(
                    "logarithm for {} must be {} plus higher terms",
                    alphabet.name(i),
                    alphabet.name(i)
                )));
            }
            let mut trimmed = LieElement::zero(alphabet, Q);
            for d in l.degrees() {
                if d <= cap {
                    trimmed = trimmed.add(&l.homogeneous_part(d))?;
                }
            }
            let t = lie_to_tensor(&trimmed, cap)?;
            thetas.push(t.exp()?);
            inverses.push(t.neg().exp()?);
            kept.push(trimmed);
        }
        Ok(Expansion {
            alphabet: alphabet.clone(),
            cap,
            logs: kept,
            thetas,
            inverses,
        })
    }

    /// `λ_i = b_i + d(b_i)` for a derivation `d` of positive degree over the
    /// rationals (the tail format shared with derivation files).
    pub fn with_tail(alphabet: &Alphabet, cap: u32, tail: &Derivation) -> Result<Expansion> {
        if tail.parent().alphabet() != alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let logs = (0..alphabet.rank())
            .map(|i| LieElement::generator(alphabet, Q, i).add(&tail.value(i).change_ring(Q)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, cap, logs)
    }

    /// Reads a tail in the derivation file format.
    pub fn parse_tail_file(text: &str, alphabet: &Alphabet, cap: u32) -> Result<Expansion> {
        let d = Derivation::parse_file(text, &EgLie::free(alphabet, Q))?;
        Self::with_tail(alphabet, cap, &d)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn log_of(&self, gen: usize) -> &LieElement {
        &self.logs[gen]
    }

    pub fn theta(&self, gen: usize) -> &TruncatedSeries {
        &self.thetas[gen]
    }

    pub fn is_standard(&self) -> bool {
        self.logs.iter().all(|l| l.degrees().len() == 1)
    }

    /// The multiplicative extension `θ(w)`.
    pub fn expand_word(&self, w: &ReducedWord) -> Result<TruncatedSeries> {
        let w = w.rebase(&self.alphabet)?;
        let mut acc = TruncatedSeries::one(Q, &self.alphabet, self.cap);
        for s in w.syllables() {
            let base = if s.exp > 0 {
                &self.thetas[s.gen]
            } else {
                &self.inverses[s.gen]
            };
            for _ in 0..s.exp.unsigned_abs() {
                acc = acc.mul(base)?;
            }
        }
        Ok(acc)
    }
}

/// An algebra endomorphism of the truncated tensor algebra, stored by the
/// images of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorEndo {
    alphabet: Alphabet,
    cap: u32,
    images: Vec<TruncatedSeries>,
}

impl OperatorEndo {
    pub fn identity(alphabet: &Alphabet, cap: u32) -> OperatorEndo {
        let images = (0..alphabet.rank())
            .map(|i| TruncatedSeries::letter(Q, alphabet, cap, i))
            .collect();
        OperatorEndo {
            alphabet: alphabet.clone(),
            cap,
            images,
        }
    }

    /// Images must be rational, without constant term, of valuation at least
    /// the variable's weight.
    pub fn new(
        alphabet: &Alphabet,
        cap: u32,
        images: Vec<TruncatedSeries>,
    ) -> Result<OperatorEndo> {
        if images.len() != alphabet.rank() {
            return Err(Error::StructureMismatch(
                "one image per variable expected".into(),
            ));
        }
        for (i, s) in images.iter().enumerate() {
            if s.ring() != Q {
                return Err(Error::RingNotRational);
            }
            if s.cap() != cap {
                return Err(Error::CapMismatch(s.cap(), cap));
            }
            if s.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            if !s.valuation(false).is_at_least(alphabet.weight(i)) {
                return Err(Error::InvalidInput(format!(
                    "image of {} is too shallow",
                    alphabet.name(i)
                )));
            }
        }
        Ok(OperatorEndo {
            alphabet: alphabet.clone(),
            cap,
            images,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn images(&self) -> &[TruncatedSeries] {
        &self.images
    }

    pub fn apply(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        s.substitute(&self.images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OperatorEndo) -> Result<OperatorEndo> {
        if other.cap != self.cap {
            return Err(Error::CapMismatch(self.cap, other.cap));
        }
        let images = other
            .images
            .iter()
            .map(|s| self.apply(s))
            .collect::<Result<_>>()?;
        Ok(OperatorEndo {
            images,
            ..self.clone()
        })
    }

    /// Largest `m` with `r(X_i) − X_i` of degree `≥ wt(X_i) + m` for all `i`;
    /// 0 when `r` is not unipotent, `AboveCap` for the identity.
    pub fn unipotency_degree(&self) -> Degree {
        let mut best = Degree::AboveCap(self.cap);
        for (i, s) in self.images.iter().enumerate() {
            let wt = self.alphabet.weight(i);
            let delta = s
                .sub(&TruncatedSeries::letter(Q, &self.alphabet, self.cap, i))
                .expect("same shape");
            if let Degree::Finite(v) = delta.valuation(false) {
                best = best.min(Degree::Finite(v.saturating_sub(wt)));
            }
        }
        best
    }

    pub fn render(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{} ↦ {}", self.alphabet.name(i), s))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// The automorphism `r` of the tensor algebra with `r(θ(w)) = θ(f(w))`.
///
/// With `R_j = log θ(f(b_j))` and `L_j = λ_j(X)`, the relation reads
/// `r(L_j) = R_j`. Writing `ψ` for the inverse of the substitution
/// `X_j ↦ L_j`, found by fixed-point iteration, gives `r(X_i) = ψ_i(R)`.
pub fn conjugated_endo(theta: &Expansion, f: &GroupMap) -> Result<OperatorEndo> {
    let al = theta.alphabet();
    if !f.alphabet().same_names(al) {
        return Err(Error::AlphabetMismatch);
    }
    if !f.verify_automorphism()? {
        return Err(Error::NotAnAutomorphism);
    }
    let r_images = f
        .images()
        .iter()
        .map(|w| theta.expand_word(w)?.log())
        .collect::<Result<Vec<_>>>()?;
    let images = if theta.is_standard() {
        r_images
    } else {
        let psi = invert_substitution(theta)?;
        psi.iter()
            .map(|p| p.substitute(&r_images))
            .collect::<Result<Vec<_>>>()?
    };
    OperatorEndo::new(al, theta.cap(), images)
}

/// `ψ` with `L_i(ψ) = X_i`, where `L_i = lie_to_tensor(λ_i)`.
fn invert_substitution(theta: &Expansion) -> Result<Vec<TruncatedSeries>> {
    let al = theta.alphabet();
    let cap = theta.cap();
    let letters: Vec<TruncatedSeries> = (0..al.rank())
        .map(|i| TruncatedSeries::letter(Q, al, cap, i))
        .collect();
    let logs = (0..al.rank())
        .map(|i| lie_to_tensor(theta.log_of(i), cap))
        .collect::<Result<Vec<_>>>()?;
    let tails = logs
        .iter()
        .zip(&letters)
        .map(|(l, x)| l.sub(x))
        .collect::<Result<Vec<_>>>()?;
    let mut psi = letters.clone();
    for _ in 0..=cap {
        let next = tails
            .iter()
            .zip(&letters)
            .map(|(t, x)| x.sub(&t.substitute(&psi)?))
            .collect::<Result<Vec<_>>>()?;
        if next == psi {
            break;
        }
        psi = next;
    }
    for (l, x) in logs.iter().zip(&letters) {
        if l.substitute(&psi)? != *x {
            return Err(Error::InversionFailure(
                "substitution did not invert".into(),
            ));
        }
    }
    Ok(psi)
}
