//! Seeded samplers for words and automorphisms. Every randomized check in the
//! crate draws from these with an explicit seed, so failures replay exactly.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eglie::{extend, Derivation, EgLie, LieMap, TruncatedDerivation};
use crate::freelie::{lie_bracket, lyndon_basis, LieElement};
use crate::scalar::{CoefficientRing, Scalar};
use crate::words::{Alphabet, GroupMap, ReducedWord, Syllable};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A reduced word of at most `max_len` random letters (possibly trivial).
pub fn random_word(al: &Alphabet, rng: &mut SampleRng, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(1..=max_len.max(1));
    ReducedWord::from_letters(
        al,
        (0..len).map(|_| (rng.gen_range(0..al.rank()), rng.gen_bool(0.5))),
    )
}

/// A nontrivial reduced word.
pub fn random_nontrivial_word(al: &Alphabet, rng: &mut SampleRng, max_len: usize) -> ReducedWord {
    loop {
        let w = random_word(al, rng, max_len);
        if !w.is_identity() {
            return w;
        }
    }
}

/// A random nested commutator with `depth` leaves, each a short random word.
/// Its lower-central degree is at least `depth` (it may be trivial).
pub fn random_commutator(
    al: &Alphabet,
    rng: &mut SampleRng,
    depth: u32,
    leaf_len: usize,
) -> ReducedWord {
    if depth <= 1 {
        return random_nontrivial_word(al, rng, leaf_len);
    }
    let left = rng.gen_range(1..depth);
    let u = random_commutator(al, rng, left, leaf_len);
    let v = random_commutator(al, rng, depth - left, leaf_len);
    u.commutator(&v).unwrap()
}

/// A nontrivial element that is a product of one or two conjugated
/// commutators of depth `depth`, so it lies at least that deep in the
/// lower central series.
pub fn random_deep_element(
    al: &Alphabet,
    rng: &mut SampleRng,
    depth: u32,
    leaf_len: usize,
) -> ReducedWord {
    loop {
        let mut w = random_commutator(al, rng, depth, leaf_len);
        if rng.gen_bool(0.3) {
            let g = random_word(al, rng, 2);
            w = w.conjugated_by(&g).unwrap();
        }
        if rng.gen_bool(0.3) {
            w = w.mul(&random_commutator(al, rng, depth, leaf_len)).unwrap();
        }
        if !w.is_identity() {
            return w;
        }
    }
}

/// A random homogeneous Lie element of degree `d`: small integer
/// coefficients on the Lyndon basis (zero when the degree is empty).
pub fn random_lie(al: &Alphabet, ring: CoefficientRing, rng: &mut SampleRng, d: u32) -> LieElement {
    let basis = lyndon_basis(al, d);
    let terms = basis
        .entries
        .iter()
        .map(|(m, _)| (m.clone(), Scalar::from_int(rng.gen_range(-2..=2))))
        .collect::<Vec<_>>();
    LieElement::from_terms(al, ring, terms).expect("Lyndon coordinates")
}

/// A random degree-`m` derivation of the free structure over `parent`
/// (trivial degree-0 part): random homogeneous values on every generator.
pub fn random_derivation(parent: &Arc<EgLie>, rng: &mut SampleRng, m: u32) -> Derivation {
    let al = parent.alphabet();
    let values = (0..al.rank())
        .map(|i| random_lie(al, parent.ring(), rng, m + al.weight(i)))
        .collect();
    Derivation::new(parent, m, Vec::new(), values).expect("free structure")
}

/// The structure with positive generators `a, b` and degree-0 group
/// `⟨t | t²⟩`, where `t` swaps `a` and `b`.
pub fn swap_structure(ring: CoefficientRing) -> Arc<EgLie> {
    let al = Alphabet::uniform(&["a", "b"]).expect("valid names");
    let l0 = Alphabet::uniform(&["t"]).expect("valid names");
    let g = |i| LieElement::generator(&al, ring, i);
    let swap = LieMap::new(&al, ring, vec![g(1), g(0)], vec![g(1), g(0)]).expect("an involution");
    EgLie::with_degree_zero(
        &al,
        ring,
        &l0,
        vec![ReducedWord::power_of(&l0, 0, 2)],
        vec![swap],
    )
    .expect("t² acts trivially")
}

/// A random degree-`m` derivation of [`swap_structure`] with a nonzero
/// cocycle in general: `d₀(t) = c − ᵗc` (so the cocycle vanishes on `t²`),
/// `d(a)` random, and `d(b) = [d₀(t), b] + ᵗd(a)` as the action forces.
pub fn random_swap_derivation(parent: &Arc<EgLie>, rng: &mut SampleRng, m: u32) -> Derivation {
    let al = parent.alphabet();
    let ring = parent.ring();
    let t = ReducedWord::generator(parent.l0_alphabet().expect("swap structure"), 0);
    let c0 = random_lie(al, ring, rng, m);
    let c = c0.sub(&parent.act(&t, &c0).unwrap()).unwrap();
    let u = random_lie(al, ring, rng, m + 1);
    let b = LieElement::generator(al, ring, 1);
    let db = lie_bracket(&c, &b)
        .unwrap()
        .add(&parent.act(&t, &u).unwrap())
        .unwrap();
    extend(
        parent,
        &TruncatedDerivation {
            degree: m,
            d0: vec![c],
            d1: vec![u, db],
            d2: vec![],
        },
    )
    .expect("compatible by construction")
}

fn gen_word(al: &Alphabet, i: usize) -> ReducedWord {
    ReducedWord::generator(al, i)
}

/// A random elementary Nielsen move (with witness): permutation of two
/// generators, inversion of one, or a transvection `x_i ↦ x_i x_j^{±1}` /
/// `x_i ↦ x_j^{±1} x_i`.
pub fn random_nielsen(al: &Alphabet, rng: &mut SampleRng) -> GroupMap {
    let r = al.rank();
    let gens: Vec<ReducedWord> = (0..r).map(|i| gen_word(al, i)).collect();
    let mut images = gens.clone();
    let mut inverse = gens.clone();
    match rng.gen_range(0..4) {
        0 if r >= 2 => {
            let mut idx: Vec<usize> = (0..r).collect();
            idx.shuffle(rng);
            let (i, j) = (idx[0], idx[1]);
            images.swap(i, j);
            inverse.swap(i, j);
        }
        1 => {
            let i = rng.gen_range(0..r);
            images[i] = gens[i].inverse();
            inverse[i] = gens[i].inverse();
        }
        _ if r >= 2 => {
            let i = rng.gen_range(0..r);
            let j = (i + rng.gen_range(1..r)) % r;
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            let xj = gens[j].pow(e);
            if rng.gen_bool(0.5) {
                images[i] = gens[i].mul(&xj).unwrap();
                inverse[i] = gens[i].mul(&xj.inverse()).unwrap();
            } else {
                images[i] = xj.mul(&gens[i]).unwrap();
                inverse[i] = xj.inverse().mul(&gens[i]).unwrap();
            }
        }
        _ => {
            images[0] = gens[0].inverse();
            inverse[0] = gens[0].inverse();
        }
    }
    GroupMap::new(al, images, Some(inverse)).unwrap()
}

/// A product of `moves` random Nielsen moves (degree 0 in general).
pub fn random_degree_zero(al: &Alphabet, rng: &mut SampleRng, moves: usize) -> GroupMap {
    let mut f = GroupMap::identity(al);
    for _ in 0..moves {
        f = f.compose(&random_nielsen(al, rng)).unwrap();
    }
    f
}

/// An automorphism that lies at least `m ≥ 1` deep in the Johnson filtration
/// of the lower central series, possibly conjugated by a short degree-0 map.
///
/// The building blocks are inner automorphisms by depth-`m` elements,
/// transvections `x_i ↦ x_i c` with `c` a depth-`(m+1)` commutator in the
/// other generators, and partial conjugations `x_i ↦ c x_i c⁻¹` with `c` a
/// depth-`m` word in the other generators. In rank 2 only the inner ones and
/// depth-1 partial conjugations exist.
pub fn random_filtered_aut(al: &Alphabet, rng: &mut SampleRng, m: u32) -> GroupMap {
    if m == 0 {
        return random_degree_zero(al, rng, 3);
    }
    let r = al.rank();
    let i = rng.gen_range(0..r);
    let others: Vec<usize> = (0..r).filter(|&j| j != i).collect();
    let mut kinds = vec![0];
    if others.len() >= 2 {
        kinds.push(1);
    }
    if !others.is_empty() && (m == 1 || others.len() >= 2) {
        kinds.push(2);
    }
    let sub = |rng: &mut SampleRng, depth: u32| loop {
        let w = sub_commutator(al, rng, &others, depth);
        if !w.is_identity() {
            break w;
        }
    };
    let f = match kinds[rng.gen_range(0..kinds.len())] {
        0 => GroupMap::conjugation(&random_deep_element(al, rng, m, 2)),
        1 => {
            let c = sub(rng, m + 1);
            transvection(al, i, &c)
        }
        _ => {
            let c = sub(rng, m);
            let mut images: Vec<ReducedWord> = (0..r).map(|j| gen_word(al, j)).collect();
            let mut inverse = images.clone();
            images[i] = gen_word(al, i).conjugated_by(&c).unwrap();
            inverse[i] = gen_word(al, i).conjugated_by(&c.inverse()).unwrap();
            GroupMap::new(al, images, Some(inverse)).unwrap()
        }
    };
    if rng.gen_bool(0.4) {
        let h = random_degree_zero(al, rng, 2);
        f.conjugated_by(&h).unwrap()
    } else {
        f
    }
}

/// A random filtration-preserving automorphism for the weight series on an
/// alphabet with letters of weight 1 and 2: Nielsen moves among weight-1
/// letters, inversions, and `z ↦ z·[x, y]` for weight-2 `z`.
pub fn random_weight_degree_zero(al: &Alphabet, rng: &mut SampleRng, moves: usize) -> GroupMap {
    let ones = al.letters_of_weight(1);
    let twos = al.letters_of_weight(2);
    let mut f = GroupMap::identity(al);
    for _ in 0..moves {
        let r = al.rank();
        let gens: Vec<ReducedWord> = (0..r).map(|i| gen_word(al, i)).collect();
        let mut images = gens.clone();
        let mut inverse = gens.clone();
        let kind = rng.gen_range(0..3);
        if kind == 0 && ones.len() >= 2 {
            let i = ones[rng.gen_range(0..ones.len())];
            let j = *ones.iter().filter(|&&j| j != i).collect::<Vec<_>>()
                [rng.gen_range(0..ones.len() - 1)];
            let xj = gens[j].pow(if rng.gen_bool(0.5) { 1 } else { -1 });
            images[i] = gens[i].mul(&xj).unwrap();
            inverse[i] = gens[i].mul(&xj.inverse()).unwrap();
        } else if kind == 1 && !twos.is_empty() && ones.len() >= 2 {
            let z = twos[rng.gen_range(0..twos.len())];
            let mut pick = ones.clone();
            pick.shuffle(rng);
            let c = gens[pick[0]].commutator(&gens[pick[1]]).unwrap();
            images[z] = gens[z].mul(&c).unwrap();
            inverse[z] = gens[z].mul(&c.inverse()).unwrap();
        } else {
            let i = rng.gen_range(0..r);
            images[i] = gens[i].inverse();
            inverse[i] = gens[i].inverse();
        }
        f = f
            .compose(&GroupMap::new(al, images, Some(inverse)).unwrap())
            .unwrap();
    }
    f
}

/// An automorphism of weight-filtration degree at least `m ≥ 1`: an inner
/// automorphism by a depth-`m` element or a transvection `x ↦ x·c` with `c`
/// a commutator of depth `m + wt(x)` in the other letters, possibly
/// conjugated by [`random_weight_degree_zero`]. Needs rank at least 3.
pub fn random_weight_aut(al: &Alphabet, rng: &mut SampleRng, m: u32) -> GroupMap {
    if m == 0 {
        return random_weight_degree_zero(al, rng, 3);
    }
    let f = if rng.gen_bool(0.3) {
        GroupMap::conjugation(&random_deep_element(al, rng, m, 2))
    } else {
        let i = rng.gen_range(0..al.rank());
        let others: Vec<usize> = (0..al.rank()).filter(|&j| j != i).collect();
        let c = loop {
            let w = sub_commutator(al, rng, &others, m + al.weight(i));
            if !w.is_identity() {
                break w;
            }
        };
        transvection(al, i, &c)
    };
    if rng.gen_bool(0.4) {
        f.conjugated_by(&random_weight_degree_zero(al, rng, 2))
            .unwrap()
    } else {
        f
    }
}

/// `x_i ↦ x_i c` with `c` free of `x_i`, witnessed by `x_i ↦ x_i c⁻¹`.
pub fn transvection(al: &Alphabet, i: usize, c: &ReducedWord) -> GroupMap {
    let mut images: Vec<ReducedWord> = (0..al.rank()).map(|j| gen_word(al, j)).collect();
    let mut inverse = images.clone();
    images[i] = gen_word(al, i).mul(c).unwrap();
    inverse[i] = gen_word(al, i).mul(&c.inverse()).unwrap();
    GroupMap::new(al, images, Some(inverse)).unwrap()
}

fn sub_commutator(
    al: &Alphabet,
    rng: &mut SampleRng,
    letters: &[usize],
    depth: u32,
) -> ReducedWord {
    if depth <= 1 {
        let len = rng.gen_range(1..=2);
        return ReducedWord::from_syllables(
            al,
            (0..len).map(|_| Syllable {
                gen: letters[rng.gen_range(0..letters.len())],
                exp: if rng.gen_bool(0.5) { 1 } else { -1 },
            }),
        );
    }
    let left = rng.gen_range(1..depth);
    let u = sub_commutator(al, rng, letters, left);
    let v = sub_commutator(al, rng, letters, depth - left);
    u.commutator(&v).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samplers_are_deterministic_automorphisms() {
        let al = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        let (mut r1, mut r2) = (rng(7), rng(7));
        for m in 0..4 {
            let f = random_filtered_aut(&al, &mut r1, m);
            assert!(f.verify_automorphism().unwrap(), "{f:?}");
            assert_eq!(f, random_filtered_aut(&al, &mut r2, m));
        }
        let ab = Alphabet::uniform(&["a", "b"]).unwrap();
        for m in 1..4 {
            assert!(random_filtered_aut(&ab, &mut r1, m)
                .verify_automorphism()
                .unwrap());
        }
        let g = random_degree_zero(&al, &mut r1, 5);
        assert!(g.verify_automorphism().unwrap());
    }
}
