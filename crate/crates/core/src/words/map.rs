use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::words::{parse_word, Alphabet, ReducedWord};

/// An endomorphism of the free group given by generator images.
///
/// An optional inverse witness lists the images of a claimed inverse map;
/// [`GroupMap::verify_automorphism`] checks it exactly. The verdict is
/// cached, and maps built from verified automorphisms (compositions,
/// inverses, inner automorphisms) are certified without substitution.
#[derive(Clone)]
pub struct GroupMap {
    alphabet: Alphabet,
    images: Vec<ReducedWord>,
    inverse: Option<Vec<ReducedWord>>,
    verified: OnceLock<bool>,
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.images == other.images
            && self.inverse == other.inverse
    }
}

impl Eq for GroupMap {}

impl Hash for GroupMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.alphabet.hash(state);
        self.images.hash(state);
        self.inverse.hash(state);
    }
}

fn certified() -> OnceLock<bool> {
    OnceLock::from(true)
}

impl GroupMap {
    pub fn new(
        alphabet: &Alphabet,
        images: Vec<ReducedWord>,
        inverse: Option<Vec<ReducedWord>>,
    ) -> Result<Self> {
        let ok = |v: &[ReducedWord]| {
            v.len() == alphabet.rank() && v.iter().all(|w| w.alphabet() == alphabet)
        };
        if !ok(&images) || inverse.as_deref().is_some_and(|v| !ok(v)) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(GroupMap {
            alphabet: alphabet.clone(),
            images,
            inverse,
            verified: OnceLock::new(),
        })
    }

    /// Convenience constructor from DSL strings.
    pub fn from_strs(
        alphabet: &Alphabet,
        images: &[&str],
        inverse: Option<&[&str]>,
    ) -> Result<Self> {
        let parse = |v: &[&str]| {
            v.iter()
                .map(|s| parse_word(s, alphabet))
                .collect::<Result<Vec<_>>>()
        };
        let images = parse(images)?;
        let inverse = inverse.map(parse).transpose()?;
        Self::new(alphabet, images, inverse)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let gens: Vec<_> = (0..alphabet.rank())
            .map(|i| ReducedWord::generator(alphabet, i))
            .collect();
        GroupMap {
            alphabet: alphabet.clone(),
            images: gens.clone(),
            inverse: Some(gens),
            verified: certified(),
        }
    }

    /// Inner automorphism `x ↦ w x w⁻¹`, with witness conjugation by `w⁻¹`.
    pub fn conjugation(w: &ReducedWord) -> Self {
        let al = w.alphabet();
        let winv = w.inverse();
        let conj = |g: &ReducedWord| {
            (0..al.rank())
                .map(|i| ReducedWord::generator(al, i).conjugated_by(g).unwrap())
                .collect::<Vec<_>>()
        };
        GroupMap {
            alphabet: al.clone(),
            images: conj(w),
            inverse: Some(conj(&winv)),
            verified: certified(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn images(&self) -> &[ReducedWord] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &ReducedWord {
        &self.images[gen]
    }

    pub fn inverse_witness(&self) -> Option<&[ReducedWord]> {
        self.inverse.as_deref()
    }

    pub fn without_witness(&self) -> GroupMap {
        GroupMap {
            inverse: None,
            verified: OnceLock::new(),
            ..self.clone()
        }
    }

    pub fn with_witness(&self, inverse: Vec<ReducedWord>) -> Result<GroupMap> {
        GroupMap::new(&self.alphabet, self.images.clone(), Some(inverse))
    }

    /// The homomorphic image of `w`, freely reduced.
    pub fn apply(&self, w: &ReducedWord) -> Result<ReducedWord> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(apply_images(&self.alphabet, &self.images, w))
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &GroupMap) -> Result<GroupMap> {
        if g.alphabet != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let images = g
            .images
            .iter()
            .map(|w| apply_images(&self.alphabet, &self.images, w))
            .collect();
        let inverse = match (&self.inverse, &g.inverse) {
            (Some(fi), Some(gi)) => Some(
                fi.iter()
                    .map(|w| apply_images(&self.alphabet, gi, w))
                    .collect(),
            ),
            _ => None,
        };
        let verified = OnceLock::new();
        if self.verified.get() == Some(&true) && g.verified.get() == Some(&true) {
            let _ = verified.set(true);
        }
        Ok(GroupMap {
            alphabet: self.alphabet.clone(),
            images,
            inverse,
            verified,
        })
    }

    /// True iff both compositions with the witness fix every generator.
    pub fn verify_automorphism(&self) -> Result<bool> {
        let inv = self.inverse.as_ref().ok_or(Error::MissingWitness)?;
        if let Some(&v) = self.verified.get() {
            return Ok(v);
        }
        let fixes = |outer: &[ReducedWord], inner: &[ReducedWord]| {
            inner.iter().enumerate().all(|(i, w)| {
                let img = apply_images(&self.alphabet, outer, w);
                img.syllables().len() == 1
                    && img.syllables()[0].gen == i
                    && img.syllables()[0].exp == 1
            })
        };
        Ok(*self
            .verified
            .get_or_init(|| fixes(&self.images, inv) && fixes(inv, &self.images)))
    }

    /// The witness map, carrying `self` as its own witness.
    pub fn inverse(&self) -> Result<GroupMap> {
        let inv = self.inverse.clone().ok_or(Error::MissingWitness)?;
        Ok(GroupMap {
            alphabet: self.alphabet.clone(),
            images: inv,
            inverse: Some(self.images.clone()),
            verified: self.verified.clone(),
        })
    }

    /// `f^k` for any integer `k` (negative powers need the witness).
    pub fn pow(&self, k: i64) -> Result<GroupMap> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = GroupMap::identity(&self.alphabet);
        if base.inverse.is_none() {
            acc.inverse = None;
            acc.verified = OnceLock::new();
        }
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    /// Group commutator `f g f⁻¹ g⁻¹` in the automorphism group.
    pub fn commutator(&self, g: &GroupMap) -> Result<GroupMap> {
        self.compose(g)?
            .compose(&self.inverse()?)?
            .compose(&g.inverse()?)
    }

    /// `h f h⁻¹`.
    pub fn conjugated_by(&self, h: &GroupMap) -> Result<GroupMap> {
        h.compose(self)?.compose(&h.inverse()?)
    }

    /// Reads the map file format: `name -> word` lines, `#` comments, and an
    /// optional `inverse:` section with witness lines in the same format.
    pub fn parse_file(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut images: Vec<Option<ReducedWord>> = vec![None; alphabet.rank()];
        let mut inverse: Vec<Option<ReducedWord>> = vec![None; alphabet.rank()];
        let mut in_inverse = false;
        let mut saw_inverse = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::InvalidInput(format!("line {}: {msg}", lineno + 1));
            if line == "inverse:" {
                in_inverse = true;
                saw_inverse = true;
                continue;
            }
            let (name, rhs) = line
                .split_once("->")
                .ok_or_else(|| err("expected `name -> word`".into()))?;
            let name = name.trim();
            let gen = alphabet
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator {
                    name: name.to_string(),
                    pos: 0,
                })?;
            let w = parse_word(rhs, alphabet).map_err(|e| match e {
                Error::SyntaxError { pos, msg } => err(format!("column {pos}: {msg}")),
                other => other,
            })?;
            let slot = if in_inverse {
                &mut inverse[gen]
            } else {
                &mut images[gen]
            };
            if slot.replace(w).is_some() {
                return Err(err(format!("generator `{name}` given twice")));
            }
        }
        let complete = |v: Vec<Option<ReducedWord>>, what: &str| {
            v.into_iter()
                .enumerate()
                .map(|(i, w)| {
                    w.ok_or_else(|| {
                        Error::InvalidInput(format!("{what}: no image for `{}`", alphabet.name(i)))
                    })
                })
                .collect::<Result<Vec<_>>>()
        };
        let images = complete(images, "map")?;
        let inverse = if saw_inverse {
            Some(complete(inverse, "inverse")?)
        } else {
            None
        };
        GroupMap::new(alphabet, images, inverse)
    }

    /// Generator names in order of first appearance on the left-hand sides.
    pub fn names_in_file(text: &str) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.starts_with('#') || line == "inverse:" {
                continue;
            }
            if let Some((n, _)) = line.split_once("->") {
                let n = n.trim().to_string();
                if !names.contains(&n) {
                    names.push(n);
                }
            }
        }
        names
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (i, w) in self.images.iter().enumerate() {
            out.push_str(&format!("{} -> {}\n", self.alphabet.name(i), w));
        }
        if let Some(inv) = &self.inverse {
            out.push_str("inverse:\n");
            for (i, w) in inv.iter().enumerate() {
                out.push_str(&format!("{} -> {}\n", self.alphabet.name(i), w));
            }
        }
        out
    }
}

fn apply_images(alphabet: &Alphabet, images: &[ReducedWord], w: &ReducedWord) -> ReducedWord {
    let mut acc = ReducedWord::identity(alphabet);
    for s in w.syllables() {
        acc = acc.mul_unchecked(&images[s.gen].pow(s.exp));
    }
    acc
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{}↦{}", self.alphabet.name(i), w))
            .collect();
        write!(f, "GroupMap[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al() -> Alphabet {
        Alphabet::uniform(&["a", "b"]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let al = al();
        let f = GroupMap::from_strs(&al, &["a b", "b"], None).unwrap();
        let w = parse_word("a^-1", &al).unwrap();
        assert_eq!(f.apply(&w).unwrap().to_string(), "b^-1 a^-1");
        let c = parse_word("[a,b]", &al).unwrap();
        assert_eq!(f.apply(&c).unwrap().to_string(), "a b a^-1 b^-1");
        let id = GroupMap::identity(&al);
        assert_eq!(id.apply(&c).unwrap(), c);
    }

    #[test]
    fn compose_examples() {
        let al = al();
        let f = GroupMap::from_strs(&al, &["a b", "b"], Some(&["a b^-1", "b"])).unwrap();
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff.image(0).to_string(), "a b^2");
        assert_eq!(ff.image(1).to_string(), "b");
        assert_eq!(ff.inverse_witness().unwrap()[0].to_string(), "a b^-2");
        assert_eq!(f.compose(&GroupMap::identity(&al)).unwrap(), f);
        let a = parse_word("a", &al).unwrap();
        let c = GroupMap::conjugation(&a);
        let back = c.compose(&GroupMap::conjugation(&a.inverse())).unwrap();
        assert_eq!(back.images(), GroupMap::identity(&al).images());
    }

    #[test]
    fn automorphism_witnesses() {
        let al = al();
        let f = GroupMap::from_strs(&al, &["a b", "b"], Some(&["a b^-1", "b"])).unwrap();
        assert!(f.verify_automorphism().unwrap());
        let sq = GroupMap::from_strs(&al, &["a^2", "b"], Some(&["a", "b"])).unwrap();
        assert!(!sq.verify_automorphism().unwrap());
        assert!(GroupMap::identity(&al).verify_automorphism().unwrap());
        assert_eq!(
            f.without_witness().verify_automorphism(),
            Err(Error::MissingWitness)
        );
    }

    #[test]
    fn file_round_trip() {
        let al = al();
        let text = "# inner by a\na -> a\nb -> a b a^-1\ninverse:\na -> a\nb -> a^-1 b a\n";
        let f = GroupMap::parse_file(text, &al).unwrap();
        assert!(f.verify_automorphism().unwrap());
        assert_eq!(GroupMap::parse_file(&f.to_file_string(), &al).unwrap(), f);
        assert_eq!(GroupMap::names_in_file(text), ["a", "b"]);
        assert!(GroupMap::parse_file("a -> a\n", &al).is_err());
        assert!(GroupMap::parse_file("a -> a\nb -> b\nb -> a\n", &al).is_err());
    }
}
