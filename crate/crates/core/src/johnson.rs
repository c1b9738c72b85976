//! Johnson filtration and Johnson homomorphisms of free-group automorphisms
//! relative to an N-series.
//!
//! For an automorphism `f` and a word `x` the group commutator in
//! `Aut(F) ⋉ F` is `[f, x] = f(x)·x⁻¹`. The filtration degree of `f` is the
//! largest `m` with `[f, x] ∈ K_{m+wt(x)}` for every generator `x`; by the
//! identity `[f, uv] = [f, u]·ᵘ[f, v]` and normality of the terms, checking
//! generators suffices. For the weight series the weight-2 generators are
//! checked one step deeper, which also covers their conjugates.
//!
//! `τ_m(f)` sends each generator `x` to the class of `[f, x]` in
//! `K_{m+wt(x)} / K_{m+wt(x)+1}`; `τ_0(f)` is the graded automorphism induced
//! on the generator classes.

use serde::Serialize;

use crate::degree::Degree;
use crate::eglie::{der_action, der_bracket, Aut0, Derivation, EgLie, LieMap};
use crate::error::{Error, Result};
use crate::freelie::LieElement;
use crate::series::SeriesSpec;
use crate::words::{GroupMap, ReducedWord};

/// An automorphism together with its filtration degree for a series,
/// computed once under a cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredAut {
    map: GroupMap,
    spec: SeriesSpec,
    cap: u32,
    degree: Degree,
}

impl FilteredAut {
    pub fn new(map: &GroupMap, spec: &SeriesSpec, cap: u32) -> Result<Self> {
        let degree = filtration_degree(map, spec, cap)?;
        Ok(FilteredAut {
            map: map.clone(),
            spec: spec.clone(),
            cap,
            degree,
        })
    }

    pub fn map(&self) -> &GroupMap {
        &self.map
    }

    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }
}

fn generator_commutator(f: &GroupMap, i: usize) -> Result<ReducedWord> {
    let x = ReducedWord::generator(f.alphabet(), i);
    f.image(i).mul(&x.inverse())
}

/// Largest `m ≤ cap` with `f(x)·x⁻¹ ∈ K_{m+wt(x)}` for every generator;
/// `AboveCap(cap)` when that holds for `m = cap + 1`.
pub fn filtration_degree(f: &GroupMap, spec: &SeriesSpec, cap: u32) -> Result<Degree> {
    let al = spec.alphabet();
    if !f.alphabet().same_names(al) {
        return Err(Error::AlphabetMismatch);
    }
    if !f.verify_automorphism()? {
        return Err(Error::NotAnAutomorphism);
    }
    let mut best: Option<u32> = None;
    for i in 0..al.rank() {
        let wt = al.weight(i);
        let c = generator_commutator(f, i)?;
        if let Degree::Finite(v) = spec.degree(&c, cap + 1 + wt)? {
            if v < wt {
                return Err(Error::NotFiltrationPreserving(format!(
                    "{} is sent outside K_{wt}",
                    al.name(i)
                )));
            }
            best = Some(best.map_or(v - wt, |b| b.min(v - wt)));
        }
    }
    Ok(match best {
        Some(m) if m <= cap => Degree::Finite(m),
        _ => Degree::AboveCap(cap),
    })
}

/// `τ_m(f)` as a degree-`m` derivation of the free graded Lie algebra.
pub fn tau(f: &FilteredAut, m: u32) -> Result<Derivation> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "τ_m needs m ≥ 1; use tau0 for degree 0".into(),
        ));
    }
    if !f.degree.is_at_least(m) {
        return Err(Error::DegreeTooLow {
            required: m,
            found: f.degree.to_string(),
        });
    }
    let al = f.spec.alphabet();
    let needed = m + al.max_weight();
    if f.cap < needed {
        return Err(Error::CapTooSmall { needed, cap: f.cap });
    }
    let values = (0..al.rank())
        .map(|i| {
            f.spec
                .gr_class(&generator_commutator(&f.map, i)?, m + al.weight(i))
        })
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(&EgLie::free(al, f.spec.ring()), m, Vec::new(), values)
}

fn graded_images(f: &GroupMap, spec: &SeriesSpec) -> Result<Vec<LieElement>> {
    let al = spec.alphabet();
    (0..al.rank())
        .map(|i| {
            spec.gr_class(f.image(i), al.weight(i))
                .map_err(|e| match e {
                    Error::DegreeTooLow { .. } => Error::NotFiltrationPreserving(format!(
                        "{} is sent outside K_{}",
                        al.name(i),
                        al.weight(i)
                    )),
                    other => other,
                })
        })
        .collect()
}

/// `τ_0(f)`: the induced automorphism of the associated graded Lie algebra,
/// given by the classes of the generator images.
pub fn tau0(f: &GroupMap, spec: &SeriesSpec) -> Result<Aut0> {
    if !f.alphabet().same_names(spec.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    if !f.verify_automorphism()? {
        return Err(Error::NotAnAutomorphism);
    }
    let images = graded_images(f, spec)?;
    let inverse = graded_images(&f.inverse()?, spec)?;
    let map = LieMap::new(spec.alphabet(), spec.ring(), images, inverse)?;
    Aut0::new(&EgLie::free(spec.alphabet(), spec.ring()), None, map)
}

/// One executed identity.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MorphismReport {
    pub checks: Vec<IdentityCheck>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, identity: &str, passed: bool, detail: impl FnOnce() -> String) {
        let detail = if passed { String::new() } else { detail() };
        self.checks.push(IdentityCheck {
            identity: identity.into(),
            passed,
            detail,
        });
    }
}

/// Checks the morphism identities for `f` of degree `≥ m`, `g` of degree
/// `≥ n` (both `≥ 1`) and any automorphism `h`:
///
/// 1. `[f, g]` has degree `≥ m + n`;
/// 2. `τ_k(fg) = τ_k(f) + τ_k(g)` for `k = min(m, n)`;
/// 3. `τ_{m+n}([f, g]) = [τ_m(f), τ_n(g)]`;
/// 4. `τ_m(h f h⁻¹) = ᵗ⁰⁽ʰ⁾τ_m(f)`;
/// 5. `τ_m(f) = 0` exactly when `f` has degree `≥ m + 1` (and likewise for `g`).
///
/// The cap must hold classes of degree `m + n + wt`.
pub fn verify_morphism_identities(
    f: &FilteredAut,
    m: u32,
    g: &FilteredAut,
    n: u32,
    h: &GroupMap,
) -> Result<MorphismReport> {
    let spec = f.spec.clone();
    let cap = f.cap;
    if g.spec != spec || g.cap != cap {
        return Err(Error::StructureMismatch(
            "both automorphisms need the same series and cap".into(),
        ));
    }
    for (x, k) in [(f, m), (g, n)] {
        if k == 0 || !x.degree.is_at_least(k) {
            return Err(Error::DegreeTooLow {
                required: k.max(1),
                found: x.degree.to_string(),
            });
        }
    }
    let needed = m + n + spec.alphabet().max_weight();
    if cap < needed {
        return Err(Error::CapTooSmall { needed, cap });
    }
    let mut report = MorphismReport::default();
    let (tf, tg) = (tau(f, m)?, tau(g, n)?);

    let comm = FilteredAut::new(&f.map.commutator(&g.map)?, &spec, cap)?;
    report.record("degree of [f,g]", comm.degree.is_at_least(m + n), || {
        format!("degree {} < {}", comm.degree, m + n)
    });

    let k = m.min(n);
    let fg = FilteredAut::new(&f.map.compose(&g.map)?, &spec, cap)?;
    let lhs = tau(&fg, k)?;
    let rhs = tau(f, k)?.add(&tau(g, k)?)?;
    report.record("additivity", lhs == rhs, || {
        format!("{} vs {}", lhs.render_inline(), rhs.render_inline())
    });

    if comm.degree.is_at_least(m + n) {
        let lhs = tau(&comm, m + n)?;
        let rhs = der_bracket(&tf, &tg)?;
        report.record("bracket", lhs == rhs, || {
            format!("{} vs {}", lhs.render_inline(), rhs.render_inline())
        });
    } else {
        report.record("bracket", false, || "[f,g] is not deep enough".into());
    }

    let conj = FilteredAut::new(&f.map.conjugated_by(h)?, &spec, cap)?;
    let lhs = tau(&conj, m)?;
    let rhs = der_action(&tau0(h, &spec)?, &tf)?;
    report.record("equivariance", lhs == rhs, || {
        format!("{} vs {}", lhs.render_inline(), rhs.render_inline())
    });

    for (name, x, k, t) in [("f", f, m, &tf), ("g", g, n, &tg)] {
        let deeper = x.degree.is_at_least(k + 1);
        report.record(&format!("kernel for {name}"), t.is_zero() == deeper, || {
            format!("τ_{k} = {} but degree {}", t.render_inline(), x.degree)
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eglie::adjoint;
    use crate::freelie::parse_lie;
    use crate::sample;
    use crate::words::{parse_word, Alphabet};

    fn ab() -> Alphabet {
        Alphabet::uniform(&["a", "b"]).unwrap()
    }

    fn map(al: &Alphabet, images: &[&str], inverse: &[&str]) -> GroupMap {
        GroupMap::from_strs(al, images, Some(inverse)).unwrap()
    }

    #[test]
    fn degrees_of_simple_maps() {
        let al = ab();
        let lcs = SeriesSpec::lower_central(&al);
        assert_eq!(
            filtration_degree(&GroupMap::identity(&al), &lcs, 6).unwrap(),
            Degree::AboveCap(6)
        );
        let conj_a = GroupMap::conjugation(&parse_word("a", &al).unwrap());
        assert_eq!(
            filtration_degree(&conj_a, &lcs, 6).unwrap(),
            Degree::Finite(1)
        );
        let f = map(&al, &["b^-1 a b", "b"], &["b a b^-1", "b"]);
        assert_eq!(filtration_degree(&f, &lcs, 6).unwrap(), Degree::Finite(1));
        let g = map(&al, &["a b", "b"], &["a b^-1", "b"]);
        assert_eq!(filtration_degree(&g, &lcs, 6).unwrap(), Degree::Finite(0));
        let bad = GroupMap::from_strs(&al, &["a b", "b"], Some(&["a", "b"])).unwrap();
        assert_eq!(
            filtration_degree(&bad, &lcs, 6),
            Err(Error::NotAnAutomorphism)
        );
        let deep = GroupMap::conjugation(&parse_word("[[a,b],[[a,b],b]]", &al).unwrap());
        assert_eq!(
            filtration_degree(&deep, &lcs, 5).unwrap(),
            Degree::Finite(5)
        );
        assert_eq!(
            filtration_degree(&deep, &lcs, 4).unwrap(),
            Degree::AboveCap(4)
        );
    }

    #[test]
    fn tau_examples() {
        let al = ab();
        let lcs = SeriesSpec::lower_central(&al);
        let conj_a = FilteredAut::new(
            &GroupMap::conjugation(&parse_word("a", &al).unwrap()),
            &lcs,
            6,
        )
        .unwrap();
        let t = tau(&conj_a, 1).unwrap();
        assert_eq!(t.render_inline(), "d1: a ↦ 0, b ↦ [a,b]");
        let a = parse_lie("a", &al, lcs.ring()).unwrap();
        assert_eq!(t, adjoint(t.parent(), &a).unwrap());

        let f =
            FilteredAut::new(&map(&al, &["b^-1 a b", "b"], &["b a b^-1", "b"]), &lcs, 6).unwrap();
        assert_eq!(tau(&f, 1).unwrap().render_inline(), "d1: a ↦ [a,b], b ↦ 0");
        assert!(matches!(
            tau(&f, 2),
            Err(Error::DegreeTooLow { required: 2, .. })
        ));
        let small = FilteredAut::new(f.map(), &lcs, 1).unwrap();
        assert_eq!(
            tau(&small, 1),
            Err(Error::CapTooSmall { needed: 2, cap: 1 })
        );

        let id = FilteredAut::new(&GroupMap::identity(&al), &lcs, 6).unwrap();
        assert!(tau(&id, 3).unwrap().is_zero());
    }

    #[test]
    fn tau0_examples() {
        let al = ab();
        let lcs = SeriesSpec::lower_central(&al);
        let g = tau0(&map(&al, &["a b", "b"], &["a b^-1", "b"]), &lcs).unwrap();
        let z = lcs.ring();
        assert_eq!(g.map().images()[0], parse_lie("a + b", &al, z).unwrap());
        assert_eq!(g.map().images()[1], parse_lie("b", &al, z).unwrap());
        let w = parse_word("a b a^-2 b^3", &al).unwrap();
        assert!(tau0(&GroupMap::conjugation(&w), &lcs)
            .unwrap()
            .map()
            .is_identity());
        assert!(tau0(&GroupMap::identity(&al), &lcs)
            .unwrap()
            .map()
            .is_identity());
    }

    #[test]
    fn inner_pair_identities() {
        let al = ab();
        let lcs = SeriesSpec::lower_central(&al);
        let conj = |s: &str| {
            FilteredAut::new(
                &GroupMap::conjugation(&parse_word(s, &al).unwrap()),
                &lcs,
                6,
            )
            .unwrap()
        };
        let (f, g) = (conj("a"), conj("b"));
        let h = map(&al, &["a b", "b"], &["a b^-1", "b"]);
        let report = verify_morphism_identities(&f, 1, &g, 1, &h).unwrap();
        assert!(report.passed(), "{report:?}");
        let comm = FilteredAut::new(&f.map().commutator(g.map()).unwrap(), &lcs, 6).unwrap();
        let ab_lie = parse_lie("[a,b]", &al, lcs.ring()).unwrap();
        let t = tau(&comm, 2).unwrap();
        assert_eq!(t, adjoint(t.parent(), &ab_lie).unwrap());
        let id = FilteredAut::new(&GroupMap::identity(&al), &lcs, 6).unwrap();
        assert!(verify_morphism_identities(&f, 1, &id, 1, &h)
            .unwrap()
            .passed());
    }

    #[test]
    fn sampled_identities_rank_three() {
        let al = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        let lcs = SeriesSpec::lower_central(&al);
        let mut rng = sample::rng(5);
        for _ in 0..6 {
            let f =
                FilteredAut::new(&sample::random_filtered_aut(&al, &mut rng, 1), &lcs, 5).unwrap();
            let g =
                FilteredAut::new(&sample::random_filtered_aut(&al, &mut rng, 2), &lcs, 5).unwrap();
            let h = sample::random_degree_zero(&al, &mut rng, 2);
            let report = verify_morphism_identities(&f, 1, &g, 2, &h).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn weight_series() {
        let al = Alphabet::new([("a", 1), ("b", 1), ("z", 2)]).unwrap();
        let spec = SeriesSpec::weight(&al).unwrap();
        // z ↦ z[a,b] acts on the degree-2 block only.
        let f = map(&al, &["a", "b", "z [a,b]"], &["a", "b", "z [b,a]"]);
        assert_eq!(filtration_degree(&f, &spec, 4).unwrap(), Degree::Finite(0));
        let g = tau0(&f, &spec).unwrap();
        assert_eq!(
            g.map().images()[2],
            parse_lie("z + [a,b]", &al, spec.ring()).unwrap()
        );
        // a ↦ a z has degree 1 with τ(a) = z.
        let h = FilteredAut::new(
            &map(&al, &["a z", "b", "z"], &["a z^-1", "b", "z"]),
            &spec,
            5,
        )
        .unwrap();
        assert_eq!(h.degree(), Degree::Finite(1));
        assert_eq!(
            tau(&h, 1).unwrap().render_inline(),
            "d1: a ↦ z, b ↦ 0; d2: z ↦ 0"
        );
        // z ↦ a is not filtration preserving.
        let bad = map(&al, &["z", "b", "a"], &["z", "b", "a"]);
        assert!(matches!(
            filtration_degree(&bad, &spec, 4),
            Err(Error::NotFiltrationPreserving(_))
        ));
    }

    #[test]
    fn sampled_weight_automorphisms() {
        let al = Alphabet::new([("a", 1), ("b", 1), ("z", 2)]).unwrap();
        let spec = SeriesSpec::weight(&al).unwrap();
        let mut rng = sample::rng(9);
        for m in 0..=2 {
            for _ in 0..3 {
                let f = FilteredAut::new(&sample::random_weight_aut(&al, &mut rng, m), &spec, 5)
                    .unwrap();
                assert!(f.degree().is_at_least(m), "{:?}", f.map());
                assert!(tau0(f.map(), &spec).is_ok());
                if m >= 1 {
                    let d = tau(&f, m).unwrap();
                    assert!(d.check(5, 0).unwrap().passed());
                }
            }
        }
    }
}
