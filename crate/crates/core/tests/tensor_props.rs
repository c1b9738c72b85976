use nseries::freelie::{lie_bracket, lie_to_tensor, lyndon_basis, tensor_to_lie, LieElement};
use nseries::sample;
use nseries::scalar::{CoefficientRing, Scalar};
use nseries::tensor::{
    coproduct_split, hopf_check, magnus_expand, HopfMode, Monomial, TruncatedSeries,
};
use nseries::words::Alphabet;
use proptest::prelude::*;

const Q: CoefficientRing = CoefficientRing::Rationals;
const Z: CoefficientRing = CoefficientRing::Integers;

fn ab() -> Alphabet {
    Alphabet::uniform(&["a", "b"]).unwrap()
}

/// Sparse random series: a few monomials of length ≤ 3 with small coefficients.
fn series(ring: CoefficientRing, cap: u32) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((prop::collection::vec(0u8..2, 0..4), -3i64..=3), 0..6).prop_map(
        move |terms| {
            let al = ab();
            let terms = terms
                .into_iter()
                .map(|(l, c)| (Monomial::new(&al, &l), Scalar::from_int(c)));
            TruncatedSeries::from_terms(ring, &al, cap, terms).unwrap()
        },
    )
}

fn random_lie_sum(seed: u64, max_degree: u32) -> LieElement {
    let mut rng = sample::rng(seed);
    let mut acc = LieElement::zero(&ab(), Q);
    for d in 1..=max_degree {
        acc = acc.add(&sample::random_lie(&ab(), Q, &mut rng, d)).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(s in series(Z, 5), t in series(Z, 5), u in series(Z, 5)) {
        prop_assert_eq!(s.mul(&t).unwrap().mul(&u).unwrap(), s.mul(&t.mul(&u).unwrap()).unwrap());
        prop_assert_eq!(s.mul(&t.add(&u).unwrap()).unwrap(), s.mul(&t).unwrap().add(&s.mul(&u).unwrap()).unwrap());
        prop_assert_eq!(s.add(&t).unwrap().mul(&u).unwrap(), s.mul(&u).unwrap().add(&t.mul(&u).unwrap()).unwrap());
    }

    #[test]
    fn exp_and_log_are_inverse(s in series(Q, 5)) {
        let s = s.without_constant();
        let e = s.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), s.clone());
        let one_plus = TruncatedSeries::one(Q, &ab(), 5).add(&s).unwrap();
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
    }

    #[test]
    fn magnus_is_multiplicative(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let u = sample::random_word(&ab(), &mut rng, 8);
        let v = sample::random_word(&ab(), &mut rng, 8);
        let uv = u.mul(&v).unwrap();
        prop_assert_eq!(magnus_expand(&uv, Z, 5), magnus_expand(&u, Z, 5).mul(&magnus_expand(&v, Z, 5)).unwrap());
        let p = CoefficientRing::PrimeField(3);
        prop_assert_eq!(magnus_expand(&uv, p, 5), magnus_expand(&u, p, 5).mul(&magnus_expand(&v, p, 5)).unwrap());
    }

    #[test]
    fn coproduct_is_an_algebra_map(s in series(Z, 4), t in series(Z, 4)) {
        let lhs = coproduct_split(&s.mul(&t).unwrap());
        let rhs = coproduct_split(&s).mul(&coproduct_split(&t));
        prop_assert_eq!(lhs.terms(), rhs.terms());
    }

    #[test]
    fn grouplike_iff_log_primitive(seed in any::<u64>(), noise in series(Q, 4)) {
        let x = lie_to_tensor(&random_lie_sum(seed, 4), 4).unwrap();
        prop_assert!(hopf_check(HopfMode::Primitive, &x));
        let g = x.exp().unwrap();
        prop_assert!(hopf_check(HopfMode::Grouplike, &g));
        let other = g.add(&noise.without_constant()).unwrap();
        prop_assert_eq!(
            hopf_check(HopfMode::Grouplike, &other),
            hopf_check(HopfMode::Primitive, &other.log().unwrap())
        );
    }

    #[test]
    fn lie_round_trip_and_primitivity(seed in any::<u64>()) {
        let u = random_lie_sum(seed, 5);
        let t = lie_to_tensor(&u, 5).unwrap();
        prop_assert!(hopf_check(HopfMode::Primitive, &t));
        let mut back = LieElement::zero(&ab(), Q);
        for d in 1..=5 {
            back = back.add(&tensor_to_lie(&t.homogeneous_part(d), d).unwrap()).unwrap();
        }
        prop_assert_eq!(back, u);
    }

    #[test]
    fn antisymmetry_and_jacobi(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let al = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        let x = sample::random_lie(&al, Z, &mut rng, 1);
        let y = sample::random_lie(&al, Z, &mut rng, 2);
        let z = sample::random_lie(&al, Z, &mut rng, 1);
        let br = |u: &LieElement, v: &LieElement| lie_bracket(u, v).unwrap();
        prop_assert_eq!(br(&x, &y), br(&y, &x).neg());
        let jacobi = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).unwrap().add(&br(&z, &br(&x, &y))).unwrap();
        prop_assert!(jacobi.is_zero());
    }

    /// Dynkin–Specht–Wever: a primitive homogeneous `s` of degree `d` equals
    /// `1/d` times the left-normed bracketing of its words.
    #[test]
    fn coordinates_agree_with_the_dynkin_map(seed in any::<u64>(), d in 1u32..=5) {
        let mut rng = sample::rng(seed);
        let u = sample::random_lie(&ab(), Q, &mut rng, d);
        let s = lie_to_tensor(&u, d).unwrap().homogeneous_part(d);
        let mut dynkin = LieElement::zero(&ab(), Q);
        for (m, c) in s.terms() {
            let letters = m.letters();
            let mut b = LieElement::generator(&ab(), Q, letters[0] as usize);
            for &l in &letters[1..] {
                b = lie_bracket(&b, &LieElement::generator(&ab(), Q, l as usize)).unwrap();
            }
            dynkin = dynkin.add(&b.scale(c).unwrap()).unwrap();
        }
        let dynkin = dynkin.scale(&Scalar::ratio(1, d as i64)).unwrap();
        prop_assert_eq!(tensor_to_lie(&s, d).unwrap(), dynkin);
    }
}

/// Brute force: `w` is Lyndon iff it is strictly smaller than each proper rotation.
fn brute_lyndon(w: &[u8]) -> bool {
    (1..w.len()).all(|i| {
        let rot: Vec<u8> = w[i..].iter().chain(&w[..i]).copied().collect();
        w < rot.as_slice()
    })
}

fn words_of_weight(weights: &[u32], d: u32) -> Vec<Vec<u8>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (g, &w) in weights.iter().enumerate() {
        if w <= d {
            for mut rest in words_of_weight(weights, d - w) {
                rest.insert(0, g as u8);
                out.push(rest);
            }
        }
    }
    out
}

#[test]
fn weighted_basis_matches_brute_enumeration() {
    let al = Alphabet::new([("a", 1), ("b", 1), ("z", 2)]).unwrap();
    for d in 1..=8 {
        let mut expected: Vec<Vec<u8>> = words_of_weight(al.weights(), d)
            .into_iter()
            .filter(|w| brute_lyndon(w))
            .collect();
        expected.sort();
        let got: Vec<Vec<u8>> = lyndon_basis(&al, d)
            .entries
            .iter()
            .map(|(m, _)| m.letters().to_vec())
            .collect();
        assert_eq!(got, expected, "degree {d}");
    }
}

#[test]
fn rank_three_dimensions_match_witt() {
    let mobius = |n: u32| -> i64 {
        let f: Vec<u32> = (2..=n)
            .filter(|p| n.is_multiple_of(*p) && (2..*p).all(|q| p % q != 0))
            .collect();
        if f.iter().any(|p| n.is_multiple_of(p * p)) {
            0
        } else if f.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    };
    let al = Alphabet::uniform(&["a", "b", "c"]).unwrap();
    for d in 1..=6u32 {
        let witt: i64 = (1..=d)
            .filter(|e| d % e == 0)
            .map(|e| mobius(e) * 3i64.pow(d / e))
            .sum::<i64>()
            / d as i64;
        assert_eq!(lyndon_basis(&al, d).len() as i64, witt, "degree {d}");
    }
}
