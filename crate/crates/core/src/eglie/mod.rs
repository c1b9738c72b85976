//! Extended graded Lie algebras: a group `L_0` acting on a free graded Lie
//! algebra `L_+` generated in degrees 1 and 2, and their derivations.
//!
//! Conventions: `ᵍx` is the action of `g ∈ L_0` on `x ∈ L_+`, and the mixed
//! bracket is `[x, g] = x − ᵍx`.

mod derivation;
mod file;

pub use file::{DerivationRecord, GeneratorValue};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freelie::{lie_to_tensor, tensor_to_lie_all, LieElement};
use crate::scalar::CoefficientRing;
use crate::tensor::TruncatedSeries;
use crate::words::{Alphabet, GroupMap, ReducedWord};

pub use derivation::{
    adjoint, adjoint_l0, der_action, der_bracket, extend, truncate, Derivation, DerivationReport,
    TruncatedDerivation,
};

/// A graded automorphism of the free Lie algebra given by generator images
/// (each homogeneous of its generator's weight) and a checked inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieMap {
    alphabet: Alphabet,
    ring: CoefficientRing,
    images: Vec<LieElement>,
    inverse: Vec<LieElement>,
}

impl LieMap {
    pub fn identity(alphabet: &Alphabet, ring: CoefficientRing) -> Self {
        let gens: Vec<LieElement> = (0..alphabet.rank())
            .map(|i| LieElement::generator(alphabet, ring, i))
            .collect();
        LieMap {
            alphabet: alphabet.clone(),
            ring,
            images: gens.clone(),
            inverse: gens,
        }
    }

    /// Validates degrees and that the witness inverts the map on generators.
    pub fn new(
        alphabet: &Alphabet,
        ring: CoefficientRing,
        images: Vec<LieElement>,
        inverse: Vec<LieElement>,
    ) -> Result<Self> {
        let check = |v: &[LieElement]| -> Result<Vec<LieElement>> {
            if v.len() != alphabet.rank() {
                return Err(Error::StructureMismatch(
                    "one image per generator expected".into(),
                ));
            }
            v.iter()
                .enumerate()
                .map(|(i, x)| {
                    let x = x.rebase(alphabet)?.change_ring(ring)?;
                    if x.is_zero() || !x.is_homogeneous_of(alphabet.weight(i)) {
                        return Err(Error::StructureMismatch(format!(
                            "image of {} must be nonzero of degree {}",
                            alphabet.name(i),
                            alphabet.weight(i)
                        )));
                    }
                    Ok(x)
                })
                .collect()
        };
        let map = LieMap {
            alphabet: alphabet.clone(),
            ring,
            images: check(&images)?,
            inverse: check(&inverse)?,
        };
        let id = LieMap::identity(alphabet, ring);
        if map.compose(&map.inverse())?.images != id.images
            || map.inverse().compose(&map)?.images != id.images
        {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(map)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn images(&self) -> &[LieElement] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images == LieMap::identity(&self.alphabet, self.ring).images
    }

    /// The Lie homomorphic extension, evaluated through the tensor algebra.
    pub fn apply(&self, x: &LieElement) -> Result<LieElement> {
        apply_images(&self.images, x)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LieMap) -> Result<LieMap> {
        let images = g
            .images
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<_>>()?;
        let inverse = self
            .inverse
            .iter()
            .map(|x| apply_images(&g.inverse, x))
            .collect::<Result<_>>()?;
        Ok(LieMap {
            images,
            inverse,
            ..self.clone()
        })
    }

    pub fn inverse(&self) -> LieMap {
        LieMap {
            images: self.inverse.clone(),
            inverse: self.images.clone(),
            ..self.clone()
        }
    }

    pub fn pow(&self, k: i64) -> Result<LieMap> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = LieMap::identity(&self.alphabet, self.ring);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }
}

fn apply_images(images: &[LieElement], x: &LieElement) -> Result<LieElement> {
    if x.is_zero() {
        return Ok(x.clone());
    }
    let cap = x.max_degree();
    let al = x.alphabet();
    let tensors = images
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if al.weight(i) > cap {
                Ok(TruncatedSeries::zero(x.ring(), al, cap))
            } else {
                lie_to_tensor(&v.change_ring(x.ring())?, cap)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    tensor_to_lie_all(&lie_to_tensor(x, cap)?.substitute(&tensors)?)
}

/// The degree-0 group: a finite presentation and its action on `L_+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeZero {
    alphabet: Alphabet,
    relations: Vec<ReducedWord>,
    action: Vec<LieMap>,
}

/// An eg-Lie algebra with free positive part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgLie {
    alphabet: Alphabet,
    ring: CoefficientRing,
    degree_zero: Option<DegreeZero>,
}

impl EgLie {
    /// Trivial `L_0`; positive generators of weight 1 (and optionally 2).
    pub fn free(alphabet: &Alphabet, ring: CoefficientRing) -> Arc<EgLie> {
        Arc::new(EgLie {
            alphabet: alphabet.clone(),
            ring,
            degree_zero: None,
        })
    }

    /// Nontrivial `L_0 = ⟨l0 | relations⟩` acting through one automorphism per
    /// generator; every relation must act as the identity.
    pub fn with_degree_zero(
        alphabet: &Alphabet,
        ring: CoefficientRing,
        l0: &Alphabet,
        relations: Vec<ReducedWord>,
        action: Vec<LieMap>,
    ) -> Result<Arc<EgLie>> {
        if action.len() != l0.rank() || action.iter().any(|f| f.alphabet != *alphabet) {
            return Err(Error::StructureMismatch(
                "one action automorphism per L_0 generator".into(),
            ));
        }
        if relations.iter().any(|r| r.alphabet() != l0) {
            return Err(Error::AlphabetMismatch);
        }
        let dz = DegreeZero {
            alphabet: l0.clone(),
            relations,
            action,
        };
        let out = EgLie {
            alphabet: alphabet.clone(),
            ring,
            degree_zero: Some(dz),
        };
        for r in &out.degree_zero.as_ref().unwrap().relations {
            if !out.action_of(r)?.is_identity() {
                return Err(Error::StructureMismatch(format!(
                    "relation {r} does not act trivially"
                )));
            }
        }
        Ok(Arc::new(out))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn degree_zero(&self) -> Option<&DegreeZero> {
        self.degree_zero.as_ref()
    }

    /// Generators of `L_0` (empty when trivial).
    pub fn l0_alphabet(&self) -> Option<&Alphabet> {
        self.degree_zero.as_ref().map(|d| &d.alphabet)
    }

    pub fn l0_rank(&self) -> usize {
        self.degree_zero.as_ref().map_or(0, |d| d.alphabet.rank())
    }

    pub fn relations(&self) -> &[ReducedWord] {
        self.degree_zero.as_ref().map_or(&[], |d| &d.relations)
    }

    /// The automorphism by which an `L_0` word acts.
    pub fn action_of(&self, g: &ReducedWord) -> Result<LieMap> {
        let mut acc = LieMap::identity(&self.alphabet, self.ring);
        if g.is_identity() {
            return Ok(acc);
        }
        let dz = self
            .degree_zero
            .as_ref()
            .ok_or_else(|| Error::StructureMismatch("L_0 is trivial".into()))?;
        if g.alphabet() != &dz.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        for s in g.syllables() {
            acc = acc.compose(&dz.action[s.gen].pow(s.exp)?)?;
        }
        Ok(acc)
    }

    /// `ᵍx`.
    pub fn act(&self, g: &ReducedWord, x: &LieElement) -> Result<LieElement> {
        self.action_of(g)?.apply(x)
    }

    /// Brings a Lie element into this structure's alphabet and ring.
    pub fn element(&self, x: &LieElement) -> Result<LieElement> {
        x.rebase(&self.alphabet)?.change_ring(self.ring)
    }
}

/// A degree-0 automorphism: an automorphism `f0` of `L_0` (absent when `L_0`
/// is trivial) and a graded automorphism of `L_+`, equivariant in the sense
/// `f(ᵃx) = ^{f0(a)} f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aut0 {
    parent: Arc<EgLie>,
    f0: Option<GroupMap>,
    map: LieMap,
}

impl Aut0 {
    pub fn new(parent: &Arc<EgLie>, f0: Option<GroupMap>, map: LieMap) -> Result<Aut0> {
        if map.alphabet != parent.alphabet {
            return Err(Error::StructureMismatch(
                "automorphism over another alphabet".into(),
            ));
        }
        let map = LieMap::new(&parent.alphabet, parent.ring, map.images, map.inverse)?;
        match (&f0, parent.l0_alphabet()) {
            (Some(f), Some(l0)) => {
                if f.alphabet() != l0 {
                    return Err(Error::AlphabetMismatch);
                }
                if !f.verify_automorphism()? {
                    return Err(Error::NotAnAutomorphism);
                }
            }
            (Some(_), None) => return Err(Error::StructureMismatch("L_0 is trivial".into())),
            _ => {}
        }
        let out = Aut0 {
            parent: parent.clone(),
            f0,
            map,
        };
        out.check_equivariance()?;
        Ok(out)
    }

    pub fn identity(parent: &Arc<EgLie>) -> Aut0 {
        Aut0 {
            parent: parent.clone(),
            f0: None,
            map: LieMap::identity(&parent.alphabet, parent.ring),
        }
    }

    fn check_equivariance(&self) -> Result<()> {
        let Some(l0) = self.parent.l0_alphabet() else {
            return Ok(());
        };
        for a in 0..l0.rank() {
            let aw = ReducedWord::generator(l0, a);
            let fa = self.apply_l0(&aw)?;
            for x in 0..self.parent.alphabet.rank() {
                let xe = LieElement::generator(&self.parent.alphabet, self.parent.ring, x);
                let lhs = self.map.apply(&self.parent.act(&aw, &xe)?)?;
                let rhs = self.parent.act(&fa, &self.map.apply(&xe)?)?;
                if lhs != rhs {
                    return Err(Error::StructureMismatch(format!(
                        "automorphism is not equivariant at ({}, {})",
                        l0.name(a),
                        self.parent.alphabet.name(x)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn parent(&self) -> &Arc<EgLie> {
        &self.parent
    }

    pub fn map(&self) -> &LieMap {
        &self.map
    }

    pub fn f0(&self) -> Option<&GroupMap> {
        self.f0.as_ref()
    }

    pub fn apply(&self, x: &LieElement) -> Result<LieElement> {
        self.map.apply(&self.parent.element(x)?)
    }

    /// `f0(g)` (identity on `L_0` when no `f0` is stored).
    pub fn apply_l0(&self, g: &ReducedWord) -> Result<ReducedWord> {
        match &self.f0 {
            Some(f) => f.apply(g),
            None => Ok(g.clone()),
        }
    }

    pub fn inverse(&self) -> Result<Aut0> {
        let f0 = self.f0.as_ref().map(GroupMap::inverse).transpose()?;
        Ok(Aut0 {
            parent: self.parent.clone(),
            f0,
            map: self.map.inverse(),
        })
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Aut0) -> Result<Aut0> {
        let f0 = match (&self.f0, &g.f0) {
            (Some(a), Some(b)) => Some(a.compose(b)?),
            (Some(a), None) => Some(a.clone()),
            (None, b) => b.clone(),
        };
        Ok(Aut0 {
            parent: self.parent.clone(),
            f0,
            map: self.map.compose(&g.map)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::parse_lie;

    const Z: CoefficientRing = CoefficientRing::Integers;

    pub(crate) fn swap_map(al: &Alphabet) -> LieMap {
        let g = |i| LieElement::generator(al, Z, i);
        LieMap::new(al, Z, vec![g(1), g(0)], vec![g(1), g(0)]).unwrap()
    }

    #[test]
    fn lie_maps() {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        let s = swap_map(&al);
        let ab = parse_lie("[a,b]", &al, Z).unwrap();
        assert_eq!(s.apply(&ab).unwrap(), ab.neg());
        assert!(s.compose(&s).unwrap().is_identity());
        let g = |i| LieElement::generator(&al, Z, i);
        assert_eq!(
            LieMap::new(&al, Z, vec![g(0), g(0)], vec![g(0), g(1)]),
            Err(Error::NotAnAutomorphism)
        );
    }

    #[test]
    fn degree_zero_relations() {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        let l0 = Alphabet::uniform(&["t"]).unwrap();
        let t2 = ReducedWord::power_of(&l0, 0, 2);
        assert!(EgLie::with_degree_zero(&al, Z, &l0, vec![t2], vec![swap_map(&al)]).is_ok());
        let t = ReducedWord::generator(&l0, 0);
        assert!(EgLie::with_degree_zero(&al, Z, &l0, vec![t], vec![swap_map(&al)]).is_err());
    }
}
