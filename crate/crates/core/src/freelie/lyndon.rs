use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::scalar::Scalar;
use crate::tensor::Monomial;
use crate::words::{Alphabet, ReducedWord};

/// Standard bracketing of a Lyndon word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bracketing {
    Letter(u8),
    Bracket(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            Bracketing::Letter(l) => alphabet.name(*l as usize).to_string(),
            Bracketing::Bracket(u, v) => format!("[{},{}]", u.render(alphabet), v.render(alphabet)),
        }
    }

    /// The same bracketing read as a group commutator `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn to_group_word(&self, alphabet: &Alphabet) -> ReducedWord {
        match self {
            Bracketing::Letter(l) => ReducedWord::generator(alphabet, *l as usize),
            Bracketing::Bracket(u, v) => u
                .to_group_word(alphabet)
                .commutator(&v.to_group_word(alphabet))
                .expect("same alphabet"),
        }
    }

    /// The letters read left to right.
    pub fn word(&self) -> Vec<u8> {
        match self {
            Bracketing::Letter(l) => vec![*l],
            Bracketing::Bracket(u, v) => {
                let mut w = u.word();
                w.extend(v.word());
                w
            }
        }
    }
}

/// The Lyndon words of one weighted degree, each with its standard bracketing.
#[derive(Clone, PartialEq, Eq)]
pub struct LyndonBasis {
    pub alphabet: Alphabet,
    pub degree: u32,
    pub entries: Vec<(Monomial, Bracketing)>,
}

impl LyndonBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, word: &Monomial) -> Option<usize> {
        self.entries.binary_search_by(|(m, _)| m.cmp(word)).ok()
    }
}

impl fmt::Debug for LyndonBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .entries
            .iter()
            .map(|(m, _)| m.render(&self.alphabet).replace(' ', ""))
            .collect();
        write!(f, "LyndonBasis(d={}: {})", self.degree, items.join(", "))
    }
}

/// A word is Lyndon iff it is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// `w = u v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| w.split_at(i))
}

pub fn standard_bracketing(w: &[u8]) -> Bracketing {
    match standard_factorization(w) {
        None => Bracketing::Letter(w[0]),
        Some((u, v)) => Bracketing::Bracket(
            Box::new(standard_bracketing(u)),
            Box::new(standard_bracketing(v)),
        ),
    }
}

/// All Lyndon words of length at most `n` over `k` letters, in lexicographic
/// order (Fredricksen–Kessler–Maiorana successor).
fn lyndon_words_up_to(k: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut w: Vec<i32> = vec![-1];
    while let Some(last) = w.last_mut() {
        *last += 1;
        out.push(w.iter().map(|&x| x as u8).collect());
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k as i32 - 1)) {
            w.pop();
        }
    }
    out
}

type BasisCache = Mutex<HashMap<(Alphabet, u32), Arc<LyndonBasis>>>;

/// The Lyndon basis in weighted degree `d`, computed once per alphabet and degree.
pub fn lyndon_basis(alphabet: &Alphabet, d: u32) -> Arc<LyndonBasis> {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    guard
        .entry((alphabet.clone(), d))
        .or_insert_with(|| {
            let entries = if d == 0 {
                Vec::new()
            } else {
                let max_len = (d / alphabet.min_weight()) as usize;
                lyndon_words_up_to(alphabet.rank() as u8, max_len)
                    .into_iter()
                    .map(|w| Monomial::new(alphabet, &w))
                    .filter(|m| m.degree() == d)
                    .map(|m| {
                        let b = standard_bracketing(m.letters());
                        (m, b)
                    })
                    .collect()
            };
            Arc::new(LyndonBasis {
                alphabet: alphabet.clone(),
                degree: d,
                entries,
            })
        })
        .clone()
}

pub(crate) type Expansion = Arc<BTreeMap<Monomial, Scalar>>;

/// Integer tensor expansion of the standard bracketing of a Lyndon word.
pub(crate) fn expansion(alphabet: &Alphabet, word: &[u8]) -> Expansion {
    type Cache = Mutex<HashMap<(Vec<u32>, Vec<u8>), Expansion>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (alphabet.weights().to_vec(), word.to_vec());
    if let Some(e) = cache.lock().unwrap().get(&key) {
        return e.clone();
    }
    let value = match standard_factorization(word) {
        None => Arc::new(BTreeMap::from([(
            Monomial::new(alphabet, word),
            Scalar::one(),
        )])),
        Some((u, v)) => {
            let (pu, pv) = (expansion(alphabet, u), expansion(alphabet, v));
            let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
            for (m1, c1) in pu.iter() {
                for (m2, c2) in pv.iter() {
                    let c = c1 * c2;
                    *out.entry(m1.concat(m2)).or_default() += &c;
                    *out.entry(m2.concat(m1)).or_default() -= &c;
                }
            }
            out.retain(|_, c| !c.is_zero());
            Arc::new(out)
        }
    };
    cache.lock().unwrap().insert(key, value.clone());
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(b: &LyndonBasis) -> Vec<String> {
        b.entries
            .iter()
            .map(|(m, _)| m.render(&b.alphabet).replace(' ', ""))
            .collect()
    }

    #[test]
    fn small_bases() {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        assert_eq!(render(&lyndon_basis(&al, 1)), ["a", "b"]);
        assert_eq!(render(&lyndon_basis(&al, 3)), ["aab", "abb"]);
        let w = Alphabet::new([("y", 1), ("x", 2)]).unwrap();
        let b = lyndon_basis(&w, 3);
        assert_eq!(render(&b), ["yx"]);
        assert_eq!(b.entries[0].1.render(&w), "[y,x]");
    }

    #[test]
    fn bracketings() {
        assert_eq!(
            standard_factorization(&[0, 0, 1]),
            Some((&[0u8][..], &[0u8, 1][..]))
        );
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        assert_eq!(standard_bracketing(&[0, 1, 1]).render(&al), "[[a,b],b]");
        assert_eq!(
            standard_bracketing(&[0, 0, 1, 0, 1]).render(&al),
            "[[a,[a,b]],[a,b]]"
        );
        assert!(is_lyndon(&[0, 0, 1, 0, 1]) && !is_lyndon(&[0, 1, 0, 1]) && !is_lyndon(&[1, 0]));
    }

    #[test]
    fn expansion_examples() {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        let e = expansion(&al, &[0, 0, 1]);
        let got: Vec<(String, String)> = e
            .iter()
            .map(|(m, c)| (m.render(&al).replace(' ', ""), c.to_string()))
            .collect();
        assert_eq!(
            got,
            [
                ("aab".into(), "1".into()),
                ("aba".into(), "-2".into()),
                ("baa".into(), "1".into())
            ]
        );
    }
}
