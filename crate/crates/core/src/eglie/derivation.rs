use std::sync::Arc;

use serde::Serialize;

use crate::eglie::{Aut0, EgLie, LieMap};
use crate::error::{Error, Result};
use crate::freelie::{lie_bracket, lie_to_tensor, parse_lie, tensor_to_lie_all, LieElement};
use crate::sample;
use crate::scalar::Scalar;
use crate::tensor::TruncatedSeries;
use crate::words::{GroupMap, ReducedWord};

/// A degree-`m` derivation, stored by its values on generators: a cocycle
/// value of degree `m` per `L_0` generator and a value of degree `m + wt(x)`
/// per positive generator `x`. Everything else follows from the Leibniz rule
/// and the cocycle rule `d₀(gh) = d₀(g) + ᵍd₀(h)`.
#[derive(Clone, Debug)]
pub struct Derivation {
    parent: Arc<EgLie>,
    degree: u32,
    d0: Vec<LieElement>,
    values: Vec<LieElement>,
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        *self.parent == *other.parent
            && self.degree == other.degree
            && self.d0 == other.d0
            && self.values == other.values
    }
}

impl Eq for Derivation {}

impl Derivation {
    /// Validates shapes and that the cocycle vanishes on every relation.
    pub fn new(
        parent: &Arc<EgLie>,
        degree: u32,
        d0: Vec<LieElement>,
        values: Vec<LieElement>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput(
                "derivations here have degree at least 1".into(),
            ));
        }
        let al = parent.alphabet();
        if values.len() != al.rank() || d0.len() != parent.l0_rank() {
            return Err(Error::StructureMismatch(
                "wrong number of generator values".into(),
            ));
        }
        let values = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let v = parent.element(v)?;
                if !v.is_homogeneous_of(degree + al.weight(i)) {
                    return Err(Error::StructureMismatch(format!(
                        "value on {} must have degree {}",
                        al.name(i),
                        degree + al.weight(i)
                    )));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let d0 = d0
            .iter()
            .map(|v| {
                let v = parent.element(v)?;
                if !v.is_homogeneous_of(degree) {
                    return Err(Error::StructureMismatch(format!(
                        "cocycle values must have degree {degree}"
                    )));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Derivation {
            parent: parent.clone(),
            degree,
            d0,
            values,
        };
        for r in parent.relations() {
            if !d.eval_l0(r)?.is_zero() {
                return Err(Error::StructureMismatch(format!(
                    "cocycle does not vanish on relation {r}"
                )));
            }
        }
        Ok(d)
    }

    pub fn zero(parent: &Arc<EgLie>, degree: u32) -> Self {
        let z = LieElement::zero(parent.alphabet(), parent.ring());
        Derivation {
            parent: parent.clone(),
            degree,
            d0: vec![z.clone(); parent.l0_rank()],
            values: vec![z; parent.alphabet().rank()],
        }
    }

    /// Values written in the Lie-expression DSL, in generator order.
    pub fn from_strs(
        parent: &Arc<EgLie>,
        degree: u32,
        d0: &[&str],
        values: &[&str],
    ) -> Result<Self> {
        let parse = |s: &&str| parse_lie(s, parent.alphabet(), parent.ring());
        let d0 = d0.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let values = values.iter().map(parse).collect::<Result<Vec<_>>>()?;
        Self::new(parent, degree, d0, values)
    }

    pub fn parent(&self) -> &Arc<EgLie> {
        &self.parent
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Cocycle values on the `L_0` generators.
    pub fn d0(&self) -> &[LieElement] {
        &self.d0
    }

    /// Values on all positive generators, in alphabet order.
    pub fn values(&self) -> &[LieElement] {
        &self.values
    }

    pub fn value(&self, gen: usize) -> &LieElement {
        &self.values[gen]
    }

    pub fn is_zero(&self) -> bool {
        self.d0.iter().chain(&self.values).all(LieElement::is_zero)
    }

    /// `d(x)` for a positive element, via the Leibniz rule in the tensor algebra.
    pub fn eval(&self, x: &LieElement) -> Result<LieElement> {
        let x = self.parent.element(x)?;
        if x.is_zero() {
            return Ok(x);
        }
        let cap = x.max_degree() + self.degree;
        let al = self.parent.alphabet();
        let vals = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if self.degree + al.weight(i) > cap {
                    Ok(TruncatedSeries::zero(self.parent.ring(), al, cap))
                } else {
                    lie_to_tensor(v, cap)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        tensor_to_lie_all(&lie_to_tensor(&x, cap)?.apply_derivation(&vals)?)
    }

    /// `d₀(g)` for an `L_0` word, via the cocycle rule.
    pub fn eval_l0(&self, g: &ReducedWord) -> Result<LieElement> {
        let mut acc = LieElement::zero(self.parent.alphabet(), self.parent.ring());
        if g.is_identity() {
            return Ok(acc);
        }
        let dz = self
            .parent
            .degree_zero()
            .ok_or_else(|| Error::StructureMismatch("L_0 is trivial".into()))?;
        let l0 = self.parent.l0_alphabet().unwrap();
        if g.alphabet() != l0 {
            return Err(Error::AlphabetMismatch);
        }
        let mut prefix = LieMap::identity(self.parent.alphabet(), self.parent.ring());
        for (gen, positive) in g.letters() {
            let act = &dz.action[gen];
            let (value, step) = if positive {
                (self.d0[gen].clone(), act.clone())
            } else {
                let inv = act.inverse();
                (inv.apply(&self.d0[gen])?.neg(), inv)
            };
            acc = acc.add(&prefix.apply(&value)?)?;
            prefix = prefix.compose(&step)?;
        }
        Ok(acc)
    }

    fn same_shape(&self, other: &Derivation) -> Result<()> {
        if *self.parent != *other.parent {
            Err(Error::StructureMismatch(
                "derivations of different structures".into(),
            ))
        } else if self.degree != other.degree {
            Err(Error::StructureMismatch(format!(
                "degrees {} and {} differ",
                self.degree, other.degree
            )))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        self.same_shape(other)?;
        let zip = |a: &[LieElement], b: &[LieElement]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.add(y))
                .collect::<Result<Vec<_>>>()
        };
        Ok(Derivation {
            d0: zip(&self.d0, &other.d0)?,
            values: zip(&self.values, &other.values)?,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Derivation {
        Derivation {
            d0: self.d0.iter().map(LieElement::neg).collect(),
            values: self.values.iter().map(LieElement::neg).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Derivation) -> Result<Derivation> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Result<Derivation> {
        Ok(Derivation {
            d0: self.d0.iter().map(|x| x.scale(c)).collect::<Result<_>>()?,
            values: self
                .values
                .iter()
                .map(|x| x.scale(c))
                .collect::<Result<_>>()?,
            ..self.clone()
        })
    }

    /// The same derivation over another coefficient ring's structure
    /// (e.g. integral values read rationally).
    pub fn with_parent(&self, parent: &Arc<EgLie>) -> Result<Derivation> {
        Derivation::new(parent, self.degree, self.d0.clone(), self.values.clone())
    }

    /// Condition `d(ᵍx) = [d₀(g), ᵍx] + ᵍd(x)`, returning the two sides.
    fn condition3(&self, g: &ReducedWord, x: &LieElement) -> Result<(LieElement, LieElement)> {
        let gx = self.parent.act(g, x)?;
        let lhs = self.eval(&gx)?;
        let rhs = lie_bracket(&self.eval_l0(g)?, &gx)?.add(&self.parent.act(g, &self.eval(x)?)?)?;
        Ok((lhs, rhs))
    }

    /// Checks the three derivation conditions: Leibniz on generator pairs and
    /// sampled pairs, the cocycle rule on sampled pairs and on relations, and
    /// compatibility with the action on every (`L_0` generator, positive
    /// generator) pair plus sampled pairs.
    pub fn check(&self, samples: usize, seed: u64) -> Result<DerivationReport> {
        let mut report = DerivationReport::default();
        let al = self.parent.alphabet().clone();
        let ring = self.parent.ring();
        let mut rng = sample::rng(seed);
        let gens: Vec<LieElement> = (0..al.rank())
            .map(|i| LieElement::generator(&al, ring, i))
            .collect();

        let mut pairs: Vec<(LieElement, LieElement)> = Vec::new();
        for x in &gens {
            for y in &gens {
                pairs.push((x.clone(), y.clone()));
            }
        }
        for _ in 0..samples {
            let dx = rand::Rng::gen_range(&mut rng, 1..=2);
            let dy = rand::Rng::gen_range(&mut rng, 1..=2);
            pairs.push((
                sample::random_lie(&al, ring, &mut rng, dx),
                sample::random_lie(&al, ring, &mut rng, dy),
            ));
        }
        for (x, y) in &pairs {
            let lhs = self.eval(&lie_bracket(x, y)?)?;
            let rhs = lie_bracket(&self.eval(x)?, y)?.add(&lie_bracket(x, &self.eval(y)?)?)?;
            report.record("leibniz", lhs == rhs, || {
                format!("x = {x}, y = {y}: {lhs} vs {rhs}")
            });
        }

        if let Some(l0) = self.parent.l0_alphabet().cloned() {
            for r in self.parent.relations() {
                let v = self.eval_l0(r)?;
                report.record("cocycle relation", v.is_zero(), || format!("d0({r}) = {v}"));
            }
            let mut words: Vec<ReducedWord> = Vec::new();
            for t in 0..l0.rank() {
                words.push(ReducedWord::generator(&l0, t));
                words.push(ReducedWord::power_of(&l0, t, -1));
            }
            for _ in 0..samples {
                let g = sample::random_word(&l0, &mut rng, 3);
                let h = sample::random_word(&l0, &mut rng, 3);
                let lhs = self.eval_l0(&g.mul(&h)?)?;
                let rhs = self
                    .eval_l0(&g)?
                    .add(&self.parent.act(&g, &self.eval_l0(&h)?)?)?;
                report.record("cocycle", lhs == rhs, || format!("g = {g}, h = {h}"));
                words.push(g);
            }
            for (k, g) in words.iter().enumerate() {
                let targets: Vec<LieElement> = if k < 2 * l0.rank() {
                    gens.clone()
                } else {
                    vec![sample::random_lie(&al, ring, &mut rng, 2)]
                };
                for x in &targets {
                    let (lhs, rhs) = self.condition3(g, x)?;
                    report.record("action", lhs == rhs, || {
                        format!("g = {g}, x = {x}: {lhs} vs {rhs}")
                    });
                }
            }
        }
        Ok(report)
    }
}

/// Outcome of [`Derivation::check`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct DerivationReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl DerivationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(format!("{law}: {}", witness()));
        }
    }
}

/// `[d, e]` of degree `m + n`: on positive generators `d∘e − e∘d`, on `L_0`
/// generators `d(e₀(a)) − e(d₀(a)) − [d₀(a), e₀(a)]`.
pub fn der_bracket(d: &Derivation, e: &Derivation) -> Result<Derivation> {
    if *d.parent != *e.parent {
        return Err(Error::StructureMismatch(
            "derivations of different structures".into(),
        ));
    }
    let values = d
        .values
        .iter()
        .zip(&e.values)
        .map(|(dx, ex)| d.eval(ex)?.sub(&e.eval(dx)?))
        .collect::<Result<Vec<_>>>()?;
    let d0 =
        d.d0.iter()
            .zip(&e.d0)
            .map(|(da, ea)| d.eval(ea)?.sub(&e.eval(da)?)?.sub(&lie_bracket(da, ea)?))
            .collect::<Result<Vec<_>>>()?;
    Derivation::new(&d.parent, d.degree + e.degree, d0, values)
}

/// `ᶠd = f ∘ d ∘ f⁻¹`, componentwise.
pub fn der_action(f: &Aut0, d: &Derivation) -> Result<Derivation> {
    if *f.parent != *d.parent {
        return Err(Error::StructureMismatch(
            "automorphism of a different structure".into(),
        ));
    }
    let finv = f.inverse()?;
    let al = d.parent.alphabet();
    let values = (0..al.rank())
        .map(|i| {
            let x = LieElement::generator(al, d.parent.ring(), i);
            f.apply(&d.eval(&finv.apply(&x)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let d0 = match d.parent.l0_alphabet() {
        None => Vec::new(),
        Some(l0) => (0..l0.rank())
            .map(|a| {
                let g = finv.apply_l0(&ReducedWord::generator(l0, a))?;
                f.apply(&d.eval_l0(&g)?)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Derivation::new(&d.parent, d.degree, d0, values)
}

/// `ad(x)`: `y ↦ [x, y]` on positive generators and `g ↦ x − ᵍx` on `L_0`.
pub fn adjoint(parent: &Arc<EgLie>, x: &LieElement) -> Result<Derivation> {
    let x = parent.element(x)?;
    let m = x.min_degree().unwrap_or(1);
    if !x.is_homogeneous_of(m) {
        return Err(Error::NotHomogeneous);
    }
    let al = parent.alphabet();
    let values = (0..al.rank())
        .map(|i| lie_bracket(&x, &LieElement::generator(al, parent.ring(), i)))
        .collect::<Result<Vec<_>>>()?;
    let d0 = match parent.l0_alphabet() {
        None => Vec::new(),
        Some(l0) => (0..l0.rank())
            .map(|a| x.sub(&parent.act(&ReducedWord::generator(l0, a), &x)?))
            .collect::<Result<Vec<_>>>()?,
    };
    Derivation::new(parent, m, d0, values)
}

/// `ad(g)` for `g ∈ L_0`: inner conjugation on `L_0` and the action on `L_+`.
pub fn adjoint_l0(parent: &Arc<EgLie>, g: &ReducedWord) -> Result<Aut0> {
    let map = parent.action_of(g)?;
    let f0 = parent.l0_alphabet().map(|_| GroupMap::conjugation(g));
    Aut0::new(parent, f0, map)
}

/// The finite data `(d₀, d₁, d₂)` that determines a derivation: values on
/// `L_0` generators, on weight-1 and on weight-2 generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDerivation {
    pub degree: u32,
    pub d0: Vec<LieElement>,
    pub d1: Vec<LieElement>,
    pub d2: Vec<LieElement>,
}

pub fn truncate(d: &Derivation) -> TruncatedDerivation {
    let al = d.parent.alphabet();
    let pick = |w: u32| {
        al.letters_of_weight(w)
            .into_iter()
            .map(|i| d.values[i].clone())
            .collect()
    };
    TruncatedDerivation {
        degree: d.degree,
        d0: d.d0.clone(),
        d1: pick(1),
        d2: pick(2),
    }
}

/// Rebuilds the derivation from truncated data after checking, for every
/// `L_0` generator `a` (and its inverse) and positive generator `x`, that
/// `d(ᵃx) = [d₀(a), ᵃx] + ᵃd(x)`.
pub fn extend(parent: &Arc<EgLie>, t: &TruncatedDerivation) -> Result<Derivation> {
    let al = parent.alphabet();
    let (ones, twos) = (al.letters_of_weight(1), al.letters_of_weight(2));
    if t.d1.len() != ones.len() || t.d2.len() != twos.len() || ones.len() + twos.len() != al.rank()
    {
        return Err(Error::StructureMismatch(
            "truncated data does not match the generators".into(),
        ));
    }
    let mut values = vec![LieElement::zero(al, parent.ring()); al.rank()];
    for (i, v) in ones.iter().zip(&t.d1).chain(twos.iter().zip(&t.d2)) {
        values[*i] = v.clone();
    }
    let d = Derivation::new(parent, t.degree, t.d0.clone(), values)?;
    if let Some(l0) = parent.l0_alphabet() {
        for a in 0..l0.rank() {
            for g in [
                ReducedWord::generator(l0, a),
                ReducedWord::power_of(l0, a, -1),
            ] {
                for x in 0..al.rank() {
                    let xe = LieElement::generator(al, parent.ring(), x);
                    let (lhs, rhs) = d.condition3(&g, &xe)?;
                    if lhs != rhs {
                        return Err(Error::IncompatiblePair(format!(
                            "d({}·{}) = {lhs}, but the action rule gives {rhs}",
                            g,
                            al.name(x)
                        )));
                    }
                }
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::lyndon_basis;
    use crate::freelie::Bracketing;
    use crate::scalar::CoefficientRing;
    use crate::words::Alphabet;

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn free_ab() -> Arc<EgLie> {
        EgLie::free(&Alphabet::uniform(&["a", "b"]).unwrap(), Z)
    }

    /// `L_0 = ⟨t | t²⟩` swapping `a` and `b`.
    fn swapped() -> Arc<EgLie> {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        let l0 = Alphabet::uniform(&["t"]).unwrap();
        let g = |i| LieElement::generator(&al, Z, i);
        let swap = LieMap::new(&al, Z, vec![g(1), g(0)], vec![g(1), g(0)]).unwrap();
        EgLie::with_degree_zero(
            &al,
            Z,
            &l0,
            vec![ReducedWord::power_of(&l0, 0, 2)],
            vec![swap],
        )
        .unwrap()
    }

    fn lie(p: &Arc<EgLie>, s: &str) -> LieElement {
        parse_lie(s, p.alphabet(), p.ring()).unwrap()
    }

    /// Independent evaluation: recurse over the standard bracketing of each
    /// Lyndon basis element.
    fn eval_by_brackets(d: &Derivation, x: &LieElement) -> LieElement {
        fn go(d: &Derivation, b: &Bracketing) -> (LieElement, LieElement) {
            let p = d.parent();
            match b {
                Bracketing::Letter(i) => (
                    LieElement::generator(p.alphabet(), p.ring(), *i as usize),
                    d.value(*i as usize).clone(),
                ),
                Bracketing::Bracket(u, v) => {
                    let ((u, du), (v, dv)) = (go(d, u), go(d, v));
                    let value = lie_bracket(&du, &v)
                        .unwrap()
                        .add(&lie_bracket(&u, &dv).unwrap())
                        .unwrap();
                    (lie_bracket(&u, &v).unwrap(), value)
                }
            }
        }
        let al = d.parent().alphabet();
        let mut acc = LieElement::zero(al, d.parent().ring());
        for (w, c) in x.terms() {
            let basis = lyndon_basis(al, w.degree());
            let b = &basis.entries[basis.index_of(w).unwrap()].1;
            acc = acc.add(&go(d, b).1.scale(c).unwrap()).unwrap();
        }
        acc
    }

    #[test]
    fn bracket_of_two_degree_one_derivations() {
        let p = free_ab();
        let d = Derivation::from_strs(&p, 1, &[], &["0", "[a,b]"]).unwrap();
        let e = Derivation::from_strs(&p, 1, &[], &["[a,b]", "0"]).unwrap();
        let de = der_bracket(&d, &e).unwrap();
        assert_eq!(de.degree(), 2);
        assert_eq!(de.value(0), &lie(&p, "[a,[a,b]]"));
        assert_eq!(de.value(1), &lie(&p, "-[[a,b],b]"));
        assert_eq!(der_bracket(&e, &d).unwrap(), de.neg());
    }

    #[test]
    fn swap_acts_by_conjugation() {
        let p = free_ab();
        let al = p.alphabet();
        let g = |i| LieElement::generator(al, Z, i);
        let swap = LieMap::new(al, Z, vec![g(1), g(0)], vec![g(1), g(0)]).unwrap();
        let f = Aut0::new(&p, None, swap).unwrap();
        let d = Derivation::from_strs(&p, 1, &[], &["0", "[a,b]"]).unwrap();
        let fd = der_action(&f, &d).unwrap();
        assert_eq!(fd.value(0), &lie(&p, "[b,a]"));
        assert!(fd.value(1).is_zero());
        assert_eq!(fd.render_inline(), "d1: a ↦ -[a,b], b ↦ 0");
    }

    #[test]
    fn eval_agrees_with_bracket_recursion() {
        let p = EgLie::free(&Alphabet::uniform(&["a", "b", "c"]).unwrap(), Z);
        let mut rng = sample::rng(3);
        for m in 1..=2 {
            let vals: Vec<LieElement> = (0..3)
                .map(|_| sample::random_lie(p.alphabet(), Z, &mut rng, m + 1))
                .collect();
            let d = Derivation::new(&p, m, vec![], vals).unwrap();
            for k in 1..=3 {
                let x = sample::random_lie(p.alphabet(), Z, &mut rng, k);
                assert_eq!(d.eval(&x).unwrap(), eval_by_brackets(&d, &x));
            }
            assert!(d.check(10, 1).unwrap().passed());
        }
    }

    #[test]
    fn weighted_generators() {
        let al = Alphabet::new([("a", 1), ("b", 1), ("z", 2)]).unwrap();
        let p = EgLie::free(&al, Z);
        let d = Derivation::from_strs(&p, 1, &[], &["[a,b]", "0", "[a,[a,b]] + [a,z]"]).unwrap();
        let x = lie(&p, "[z,[a,b]]");
        assert_eq!(d.eval(&x).unwrap(), eval_by_brackets(&d, &x));
        assert!(Derivation::from_strs(&p, 1, &[], &["[a,b]", "0", "[a,b]"]).is_err());
        assert!(d.check(10, 2).unwrap().passed());
    }

    /// `d₀(t) = c` must be antisymmetric for the cocycle to vanish on `t²`,
    /// and `d(b)` is then forced to be `[c, b] + ᵗd(a)`.
    #[test]
    fn nontrivial_degree_zero_part() {
        let p = swapped();
        let t = ReducedWord::generator(p.l0_alphabet().unwrap(), 0);
        assert!(Derivation::from_strs(&p, 1, &["a"], &["0", "0"]).is_err());
        let u = lie(&p, "2*[a,b]");
        let c = lie(&p, "a - b");
        let db = lie_bracket(&c, &lie(&p, "b"))
            .unwrap()
            .add(&p.act(&t, &u).unwrap())
            .unwrap();
        assert_eq!(db, lie(&p, "-[a,b]"));
        let good = TruncatedDerivation {
            degree: 1,
            d0: vec![c.clone()],
            d1: vec![u.clone(), db.clone()],
            d2: vec![],
        };
        let d = extend(&p, &good).unwrap();
        assert!(d.check(20, 4).unwrap().passed());
        assert_eq!(truncate(&d), good);
        assert_eq!(
            d.eval_l0(&ReducedWord::power_of(t.alphabet(), 0, -1))
                .unwrap(),
            c
        );

        let bad = TruncatedDerivation {
            d1: vec![u, db.add(&lie(&p, "[a,b]")).unwrap()],
            ..good
        };
        assert!(matches!(extend(&p, &bad), Err(Error::IncompatiblePair(_))));
        let raw = Derivation::new(&p, 1, bad.d0.clone(), bad.d1.clone()).unwrap();
        let report = raw.check(5, 4).unwrap();
        assert!(report.failures.iter().any(|f| f.starts_with("action")));
    }

    #[test]
    fn bracket_laws() {
        let p = swapped();
        let mut rng = sample::rng(11);
        let mut random = |m: u32| {
            // d(a) free, d(b) forced; d₀(t) antisymmetric.
            let t = ReducedWord::generator(p.l0_alphabet().unwrap(), 0);
            let c0 = sample::random_lie(p.alphabet(), Z, &mut rng, m);
            let c = c0.sub(&p.act(&t, &c0).unwrap()).unwrap();
            let u = sample::random_lie(p.alphabet(), Z, &mut rng, m + 1);
            let db = lie_bracket(&c, &lie(&p, "b"))
                .unwrap()
                .add(&p.act(&t, &u).unwrap())
                .unwrap();
            extend(
                &p,
                &TruncatedDerivation {
                    degree: m,
                    d0: vec![c],
                    d1: vec![u, db],
                    d2: vec![],
                },
            )
            .unwrap()
        };
        let (d, e, f) = (random(1), random(1), random(2));
        let de = der_bracket(&d, &e).unwrap();
        assert!(
            de.check(5, 0).unwrap().passed(),
            "{:?}",
            de.check(5, 0).unwrap().failures
        );
        assert_eq!(der_bracket(&e, &d).unwrap(), de.neg());
        let jacobi = der_bracket(&d, &der_bracket(&e, &f).unwrap())
            .unwrap()
            .add(&der_bracket(&e, &der_bracket(&f, &d).unwrap()).unwrap())
            .unwrap()
            .add(&der_bracket(&f, &de).unwrap())
            .unwrap();
        assert!(jacobi.is_zero());

        // Conjugation by the swap (with f₀ = id) respects brackets.
        let al = p.alphabet();
        let g = |i| LieElement::generator(al, Z, i);
        let s = Aut0::new(
            &p,
            None,
            LieMap::new(al, Z, vec![g(1), g(0)], vec![g(1), g(0)]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            der_action(&s, &de).unwrap(),
            der_bracket(&der_action(&s, &d).unwrap(), &der_action(&s, &e).unwrap()).unwrap()
        );
    }

    #[test]
    fn adjoint_is_a_morphism() {
        let p = swapped();
        let x = lie(&p, "a + 2*b");
        let y = lie(&p, "[a,b]");
        let (ax, ay) = (adjoint(&p, &x).unwrap(), adjoint(&p, &y).unwrap());
        assert!(ax.check(5, 0).unwrap().passed());
        assert_eq!(
            der_bracket(&ax, &ay).unwrap(),
            adjoint(&p, &lie_bracket(&x, &y).unwrap()).unwrap()
        );
        let d = Derivation::from_strs(&p, 1, &["a - b"], &["2*[a,b]", "-[a,b]"]).unwrap();
        let a = lie(&p, "a");
        assert_eq!(
            der_bracket(&d, &adjoint(&p, &a).unwrap()).unwrap(),
            adjoint(&p, &d.eval(&a).unwrap()).unwrap()
        );
        assert_eq!(
            adjoint(&p, &lie(&p, "a + [a,b]")),
            Err(Error::NotHomogeneous)
        );

        let t = ReducedWord::generator(p.l0_alphabet().unwrap(), 0);
        let ad_t = adjoint_l0(&p, &t).unwrap();
        assert_eq!(
            der_action(&ad_t, &ax).unwrap(),
            adjoint(&p, &p.act(&t, &x).unwrap()).unwrap()
        );
    }

    #[test]
    fn file_and_json_round_trip() {
        let p = swapped();
        let d = Derivation::from_strs(&p, 1, &["a - b"], &["2*[a,b]", "-[a,b]"]).unwrap();
        let text = d.to_file_string();
        assert_eq!(Derivation::parse_file(&text, &p).unwrap(), d);
        let json = serde_json::to_string(&d.to_record()).unwrap();
        let back: crate::eglie::DerivationRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Derivation::from_record(&back, &p).unwrap(), d);
        let sparse = "# only d1(a)\ndegree: 2\nd1:\na -> [a,[a,b]]\n";
        let q = free_ab();
        let e = Derivation::parse_file(sparse, &q).unwrap();
        assert!(e.value(1).is_zero());
        assert!(matches!(
            Derivation::parse_file("degree: 1\nd1:\nq -> a\n", &q),
            Err(Error::UnknownGenerator { .. })
        ));
    }
}
