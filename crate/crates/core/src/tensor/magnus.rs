use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::degree::Degree;
use crate::scalar::{CoefficientRing, Scalar};
use crate::tensor::{add_into, Monomial, TruncatedSeries};
use crate::words::{Alphabet, ReducedWord};

/// Every monomial of degree at most the cap, in term order, with the index of
/// its longest proper prefix. Lets the expansion run on a flat coefficient array.
struct WordTable {
    monos: Vec<Monomial>,
    /// `(index, parent index)` of the words ending in each letter.
    by_last: Vec<Vec<(usize, usize)>>,
}

fn word_table(alphabet: &Alphabet, cap: u32) -> Arc<WordTable> {
    type Cache = Mutex<HashMap<(Vec<u32>, u32), Arc<WordTable>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (alphabet.weights().to_vec(), cap);
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return t.clone();
    }
    let mut monos = vec![Monomial::unit()];
    let mut i = 0;
    while i < monos.len() {
        for g in 0..alphabet.rank() {
            if monos[i].degree() + alphabet.weight(g) <= cap {
                let mut m = monos[i].clone();
                m.push(alphabet, g as u8);
                monos.push(m);
            }
        }
        i += 1;
    }
    monos.sort();
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut by_last = vec![Vec::new(); alphabet.rank()];
    for (i, m) in monos.iter().enumerate().skip(1) {
        let (&last, init) = m.letters().split_last().unwrap();
        by_last[last as usize].push((i, index[&Monomial::new(alphabet, init)]));
    }
    let table = Arc::new(WordTable { monos, by_last });
    cache.lock().unwrap().insert(key, table.clone());
    table
}

/// Dense integer expansion; `None` on overflow.
fn dense(w: &ReducedWord, modulus: Option<i128>, cap: u32) -> Option<Vec<i128>> {
    let table = word_table(w.alphabet(), cap);
    let mut c = vec![0i128; table.monos.len()];
    c[0] = 1;
    let reduce = |x: i128| modulus.map_or(x, |p| x.rem_euclid(p));
    for s in w.syllables() {
        let slots = &table.by_last[s.gen];
        for _ in 0..s.exp.unsigned_abs() {
            if s.exp > 0 {
                // right multiplication by 1 + X: parents come first, so walk backwards
                for &(i, p) in slots.iter().rev() {
                    c[i] = reduce(c[i].checked_add(c[p])?);
                }
            } else {
                // right division by 1 + X: reuse the already divided parents
                for &(i, p) in slots.iter() {
                    c[i] = reduce(c[i].checked_sub(c[p])?);
                }
            }
        }
    }
    Some(c)
}

/// Multiplicative extension of `x_i ↦ 1 + X_i`, with `x_i⁻¹ ↦ Σ (−X_i)^k`.
pub fn magnus_expand(w: &ReducedWord, ring: CoefficientRing, cap: u32) -> TruncatedSeries {
    let modulus = match ring {
        CoefficientRing::PrimeField(p) => Some(p as i128),
        _ => None,
    };
    match dense(w, modulus, cap) {
        Some(c) => {
            let table = word_table(w.alphabet(), cap);
            let terms: BTreeMap<Monomial, Scalar> = table
                .monos
                .iter()
                .zip(c)
                .filter(|(_, v)| *v != 0)
                .map(|(m, v)| {
                    let s = i64::try_from(v)
                        .map_or_else(|_| Scalar::from_bigint(v.into()), Scalar::from_int);
                    (m.clone(), s)
                })
                .collect();
            TruncatedSeries {
                ring,
                alphabet: w.alphabet().clone(),
                cap,
                terms,
            }
        }
        None => magnus_sparse(w, ring, cap),
    }
}

/// The lowest degree of a nonconstant term of the expansion, `AboveCap(cap)`
/// when there is none. Expands at increasing caps and stops at the first
/// nonzero degree, so the cost tracks the degree rather than the cap.
pub fn magnus_valuation(w: &ReducedWord, ring: CoefficientRing, cap: u32) -> Degree {
    let modulus = match ring {
        CoefficientRing::PrimeField(p) => Some(p as i128),
        _ => None,
    };
    let mut k = cap.min(1);
    while k > 0 {
        let Some(c) = dense(w, modulus, k) else {
            return magnus_expand(w, ring, cap).valuation(true);
        };
        let table = word_table(w.alphabet(), k);
        let lowest = c
            .iter()
            .zip(&table.monos)
            .skip(1)
            .filter(|(v, _)| **v != 0)
            .map(|(_, m)| m.degree())
            .min();
        if let Some(d) = lowest {
            return Degree::Finite(d);
        }
        if k == cap {
            break;
        }
        k += 1;
    }
    Degree::AboveCap(cap)
}

/// Coefficients of `(1 + X)^e` up to `X^kmax`.
fn binomial_series(e: i64, kmax: u32) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let mut c = Scalar::one();
    out.push(c.clone());
    for k in 1..=kmax as i64 {
        c = c * Scalar::ratio(e - k + 1, k);
        if c.is_zero() {
            break;
        }
        out.push(c.clone());
    }
    out
}

/// Arbitrary-precision fallback, one binomial series per syllable.
pub(crate) fn magnus_sparse(w: &ReducedWord, ring: CoefficientRing, cap: u32) -> TruncatedSeries {
    let al = w.alphabet();
    let mut acc = TruncatedSeries::one(ring, al, cap);
    for s in w.syllables() {
        let wt = al.weight(s.gen);
        let coeffs: Vec<Scalar> = binomial_series(s.exp, cap / wt)
            .into_iter()
            .map(|c| ring.normalize(c))
            .collect();
        let mut out = TruncatedSeries::zero(ring, al, cap);
        for (m, c) in &acc.terms {
            let mut mono = m.clone();
            for (k, ck) in coeffs.iter().enumerate() {
                if k > 0 {
                    if mono.degree() + wt > cap {
                        break;
                    }
                    mono.push(al, s.gen as u8);
                }
                add_into(ring, &mut out.terms, mono.clone(), ring.mul(c, ck));
            }
        }
        acc = out;
    }
    acc
}
