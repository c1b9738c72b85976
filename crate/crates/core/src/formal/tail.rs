use std::fmt;
use std::sync::Arc;

use crate::degree::Degree;
use crate::eglie::{Derivation, EgLie};
use crate::error::{Error, Result};
use crate::formal::{conjugated_endo, Expansion, OperatorEndo, Q};
use crate::freelie::{lie_to_tensor, tensor_to_lie, LieElement};
use crate::scalar::Scalar;
use crate::tensor::TruncatedSeries;
use crate::words::GroupMap;

/// A truncated derivation `d^(m) + d^(m+1) + …` of positive degree over the
/// rationals, one homogeneous component per degree up to the cap.
#[derive(Clone, Debug)]
pub struct DerivationTail {
    parent: Arc<EgLie>,
    cap: u32,
    leading: u32,
    components: Vec<Derivation>,
}

/// Tails are equal when their components are; the stored lower bound of a
/// zero tail does not matter.
impl PartialEq for DerivationTail {
    fn eq(&self, other: &Self) -> bool {
        *self.parent == *other.parent
            && self.cap == other.cap
            && self.components == other.components
    }
}

impl Eq for DerivationTail {}

impl DerivationTail {
    pub fn zero(parent: &Arc<EgLie>, cap: u32, leading: u32) -> DerivationTail {
        DerivationTail {
            parent: parent.clone(),
            cap,
            leading,
            components: Vec::new(),
        }
    }

    /// Splits per-generator tensor values into homogeneous components of
    /// degree `min_degree..=cap − max weight`, dropping leading zeros.
    fn from_values(
        parent: &Arc<EgLie>,
        cap: u32,
        min_degree: u32,
        values: &[TruncatedSeries],
    ) -> Result<DerivationTail> {
        let al = parent.alphabet();
        let top = cap.saturating_sub(al.max_weight());
        let mut components = Vec::new();
        let mut leading = None;
        for e in min_degree..=top {
            let vals = values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let d = e + al.weight(i);
                    tensor_to_lie(&v.homogeneous_part(d), d)
                })
                .collect::<Result<Vec<_>>>()?;
            let d = Derivation::new(parent, e, Vec::new(), vals)?;
            if leading.is_none() && d.is_zero() {
                continue;
            }
            leading.get_or_insert(e);
            components.push(d);
        }
        match leading {
            Some(m) => Ok(DerivationTail {
                parent: parent.clone(),
                cap,
                leading: m,
                components,
            }),
            None => Ok(DerivationTail::zero(parent, cap, min_degree)),
        }
    }

    pub fn parent(&self) -> &Arc<EgLie> {
        &self.parent
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// The degree of the first nonzero component (the requested lower bound
    /// for the zero tail).
    pub fn leading_degree(&self) -> u32 {
        self.leading
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Derivation] {
        &self.components
    }

    pub fn leading(&self) -> Option<&Derivation> {
        self.components.first()
    }

    /// The homogeneous component of degree `e` (zero when outside the range).
    pub fn component(&self, e: u32) -> Derivation {
        self.components
            .iter()
            .find(|d| d.degree() == e)
            .cloned()
            .unwrap_or_else(|| Derivation::zero(&self.parent, e.max(1)))
    }

    /// The derivation of the tensor algebra as values on the variables.
    pub fn tensor_values(&self) -> Result<Vec<TruncatedSeries>> {
        let al = self.parent.alphabet();
        (0..al.rank())
            .map(|i| {
                let mut acc = LieElement::zero(al, Q);
                for d in &self.components {
                    acc = acc.add(d.value(i))?;
                }
                lie_to_tensor(&acc, self.cap)
            })
            .collect()
    }
}

impl fmt::Display for DerivationTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let lines: Vec<String> = self
            .components
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| format!("degree {}: {}", d.degree(), d.render_inline()))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

fn check_rational(parent: &Arc<EgLie>) -> Result<()> {
    if parent.ring() != Q {
        return Err(Error::RingNotRational);
    }
    Ok(())
}

/// `log r = Σ_{k≥1} (−1)^{k+1}/k · (r − id)^k` evaluated on the variables and
/// split into homogeneous derivations. `r − id` must raise degrees by at
/// least `m_hint ≥ 1`, so the sum stops after `cap / m_hint` terms.
pub fn operator_log(r: &OperatorEndo, m_hint: u32) -> Result<DerivationTail> {
    let al = r.alphabet();
    let cap = r.cap();
    if m_hint == 0 || !r.unipotency_degree().is_at_least(m_hint) {
        return Err(Error::NotUnipotent(format!(
            "r − id raises degree by {} but {m_hint} ≥ 1 is required",
            r.unipotency_degree()
        )));
    }
    let values = (0..al.rank())
        .map(|i| {
            let x = TruncatedSeries::letter(Q, al, cap, i);
            let mut power = x.clone();
            let mut acc = TruncatedSeries::zero(Q, al, cap);
            let mut k = 1i64;
            loop {
                power = r.apply(&power)?.sub(&power)?;
                if power.is_zero() {
                    return Ok(acc);
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc = acc.add(&power.scale(&Scalar::ratio(sign, k))?)?;
                k += 1;
            }
        })
        .collect::<Result<Vec<_>>>()?;
    DerivationTail::from_values(&EgLie::free(al, Q), cap, m_hint, &values)
}

/// `exp(D)` for the tensor derivation `D` of a tail, as an endomorphism.
pub fn exp_operator(s: &DerivationTail) -> Result<OperatorEndo> {
    check_rational(&s.parent)?;
    let al = s.parent.alphabet();
    let values = s.tensor_values()?;
    let images = (0..al.rank())
        .map(|i| {
            let x = TruncatedSeries::letter(Q, al, s.cap, i);
            let mut term = x.clone();
            let mut acc = x;
            let mut k = 1i64;
            loop {
                term = term
                    .apply_derivation(&values)?
                    .scale(&Scalar::ratio(1, k))?;
                if term.is_zero() {
                    return Ok(acc);
                }
                acc = acc.add(&term)?;
                k += 1;
            }
        })
        .collect::<Result<Vec<_>>>()?;
    OperatorEndo::new(al, s.cap, images)
}

/// The group law `s · t = log(exp(s) ∘ exp(t))`.
pub fn bch_product(s: &DerivationTail, t: &DerivationTail) -> Result<DerivationTail> {
    if s.cap != t.cap {
        return Err(Error::CapMismatch(s.cap, t.cap));
    }
    if *s.parent != *t.parent {
        return Err(Error::StructureMismatch(
            "tails over different structures".into(),
        ));
    }
    let m = s.leading.min(t.leading);
    let r = exp_operator(s)?.compose(&exp_operator(t)?)?;
    if r.unipotency_degree() == Degree::AboveCap(s.cap) {
        return Ok(DerivationTail::zero(&s.parent, s.cap, m));
    }
    operator_log(&r, m)
}

/// `ρ^θ(f) = log r` for the conjugated endomorphism of `f`, with the
/// unipotency degree of `r` as the lower bound.
pub fn rho(theta: &Expansion, f: &GroupMap) -> Result<DerivationTail> {
    let r = conjugated_endo(theta, f)?;
    match r.unipotency_degree() {
        Degree::Finite(m) => operator_log(&r, m),
        _ => Ok(DerivationTail::zero(
            &EgLie::free(theta.alphabet(), Q),
            theta.cap(),
            1,
        )),
    }
}
