use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    names: Vec<String>,
    weights: Vec<u32>,
}

/// An ordered, weighted set of free generators.
///
/// Cloning is cheap. The position of a generator is its letter index and
/// defines the letter order used by Lyndon words.
#[derive(Clone)]
pub struct Alphabet(Arc<Inner>);

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let (names, weights): (Vec<String>, Vec<u32>) =
            gens.into_iter().map(|(n, w)| (n.into(), w)).unzip();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no generators".into()));
        }
        if names.len() > u8::MAX as usize {
            return Err(Error::InvalidAlphabet("more than 255 generators".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_ident(n) {
                return Err(Error::InvalidAlphabet(format!(
                    "`{n}` is not an identifier"
                )));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidAlphabet(format!("duplicate generator `{n}`")));
            }
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidAlphabet(format!(
                "generator `{}` has weight 0",
                names[i]
            )));
        }
        Ok(Alphabet(Arc::new(Inner { names, weights })))
    }

    /// All generators of weight 1.
    pub fn uniform(names: &[&str]) -> Result<Self> {
        Self::new(names.iter().map(|n| (*n, 1)))
    }

    /// Reads the alphabet file format: one `name [weight]` per line, `#`
    /// starts a comment, default weight 1.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let name = parts.next().unwrap();
            let weight = match parts.next() {
                None => 1,
                Some(w) => w.parse::<u32>().map_err(|_| {
                    Error::InvalidAlphabet(format!("line {}: bad weight `{w}`", lineno + 1))
                })?,
            };
            if parts.next().is_some() {
                return Err(Error::InvalidAlphabet(format!(
                    "line {}: trailing text",
                    lineno + 1
                )));
            }
            gens.push((name.to_string(), weight));
        }
        Self::new(gens)
    }

    pub fn to_file_string(&self) -> String {
        self.names()
            .iter()
            .zip(self.weights())
            .map(|(n, w)| format!("{n} {w}\n"))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.0.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.0.weights[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn max_weight(&self) -> u32 {
        *self.0.weights.iter().max().unwrap()
    }

    pub fn min_weight(&self) -> u32 {
        *self.0.weights.iter().min().unwrap()
    }

    pub fn is_uniform(&self) -> bool {
        self.0.weights.iter().all(|&w| w == 1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Same names, all weights reset to 1.
    pub fn unweighted(&self) -> Alphabet {
        if self.is_uniform() {
            return self.clone();
        }
        Alphabet(Arc::new(Inner {
            names: self.0.names.clone(),
            weights: vec![1; self.rank()],
        }))
    }

    /// Same names, new weights.
    pub fn with_weights(&self, weights: Vec<u32>) -> Result<Alphabet> {
        if weights.len() != self.rank() {
            return Err(Error::InvalidAlphabet(
                "weight vector has wrong length".into(),
            ));
        }
        Self::new(self.0.names.iter().cloned().zip(weights))
    }

    /// Generator indices of the given weight, in alphabet order.
    pub fn letters_of_weight(&self, w: u32) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.weight(i) == w).collect()
    }

    /// True when the two alphabets have the same names (weights may differ).
    pub fn same_names(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Alphabet {}

impl Hash for Alphabet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .names()
            .iter()
            .zip(self.weights())
            .map(|(n, w)| {
                if *w == 1 {
                    n.clone()
                } else {
                    format!("{n}:{w}")
                }
            })
            .collect();
        write!(f, "Alphabet{{{}}}", items.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format() {
        let a = Alphabet::parse_file("# weights\ny1\ny2 1\nx 2 # puncture\n").unwrap();
        assert_eq!(a.rank(), 3);
        assert_eq!(a.weights(), &[1, 1, 2]);
        assert_eq!(a.letters_of_weight(2), vec![2]);
        assert_eq!(Alphabet::parse_file(&a.to_file_string()).unwrap(), a);
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::uniform(&[]).is_err());
        assert!(Alphabet::uniform(&["a", "a"]).is_err());
        assert!(Alphabet::uniform(&["1a"]).is_err());
        assert!(Alphabet::new([("a", 0)]).is_err());
        assert!(Alphabet::parse_file("a two").is_err());
    }
}
