//! The acceptance suite: thirteen exact, seeded checks, each with a runtime
//! budget. Shared by the `selftest` command and the integration tests.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::degree::Degree;
use crate::eglie::{
    adjoint, adjoint_l0, der_action, der_bracket, extend, truncate, Aut0, Derivation, EgLie,
};
use crate::formal::{bch_product, rho, upsilon_checks, Expansion};
use crate::freelie::{lyndon_basis, parse_lie, LieElement};
use crate::johnson::{filtration_degree, tau, tau0, verify_morphism_identities, FilteredAut};
use crate::sample;
use crate::scalar::{CoefficientRing, Scalar};
use crate::series::{AxiomConfig, SeriesSpec};
use crate::words::{parse_word, Alphabet, GroupMap, ReducedWord};

type Outcome = std::result::Result<String, String>;

/// One acceptance criterion.
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
    check: fn(u64) -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2} s of {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms as f64 / 1000.0,
            self.budget_ms / 1000,
            self.detail
        )
    }
}

const CRITERIA: [Criterion; 13] = [
    Criterion {
        id: 1,
        name: "free Lie dimensions",
        budget: Duration::from_secs(1),
        check: free_lie_dimensions,
    },
    Criterion {
        id: 2,
        name: "commutator laws",
        budget: Duration::from_secs(5),
        check: commutator_laws,
    },
    Criterion {
        id: 3,
        name: "basis commutators and the series oracle",
        budget: Duration::from_secs(10),
        check: basis_commutators,
    },
    Criterion {
        id: 4,
        name: "Johnson morphism identities",
        budget: Duration::from_secs(60),
        check: morphism_identities,
    },
    Criterion {
        id: 5,
        name: "inner automorphisms and adjoints",
        budget: Duration::from_secs(30),
        check: inner_adjoint,
    },
    Criterion {
        id: 6,
        name: "derivation algebra laws",
        budget: Duration::from_secs(10),
        check: derivation_laws,
    },
    Criterion {
        id: 7,
        name: "Zassenhaus axioms and p-th powers",
        budget: Duration::from_secs(30),
        check: zassenhaus,
    },
    Criterion {
        id: 8,
        name: "kernel of the Johnson homomorphism",
        budget: Duration::from_secs(30),
        check: kernel,
    },
    Criterion {
        id: 9,
        name: "centralizer degree of free-group words",
        budget: Duration::from_secs(20),
        check: centralizer_degree,
    },
    Criterion {
        id: 10,
        name: "formality: leading term of the logarithm",
        budget: Duration::from_secs(60),
        check: formality,
    },
    Criterion {
        id: 11,
        name: "BCH product of logarithms",
        budget: Duration::from_secs(30),
        check: bch,
    },
    Criterion {
        id: 12,
        name: "Quillen map on the group ring",
        budget: Duration::from_secs(30),
        check: quillen,
    },
    Criterion {
        id: 13,
        name: "weight filtration",
        budget: Duration::from_secs(30),
        check: weight,
    },
];

pub fn criteria() -> &'static [Criterion] {
    &CRITERIA
}

impl Criterion {
    /// Runs the check; a criterion passes only if it also meets its budget.
    pub fn run(&self, seed: u64) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.check)(seed);
        let elapsed = start.elapsed();
        let in_budget = elapsed <= self.budget;
        let (passed, mut detail) = match outcome {
            Ok(d) => (in_budget, d),
            Err(d) => (false, d),
        };
        if !in_budget {
            detail.push_str(" [over budget]");
        }
        CriterionResult {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed_ms: elapsed.as_millis(),
            budget_ms: self.budget.as_millis(),
        }
    }
}

pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionResult> {
    CRITERIA.iter().find(|c| c.id == id).map(|c| c.run(seed))
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| c.run(seed)).collect()
}

fn lib<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {e}", e.name()))
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const Z: CoefficientRing = CoefficientRing::Integers;
const Q: CoefficientRing = CoefficientRing::Rationals;

fn uniform(rank: usize) -> Alphabet {
    Alphabet::uniform(&["a", "b", "c"][..rank]).expect("valid names")
}

fn mobius(mut n: u32) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn free_lie_dimensions(_seed: u64) -> Outcome {
    let witt = |d: u32| {
        (1..=d)
            .filter(|e| d.is_multiple_of(*e))
            .map(|e| mobius(e) * 2i64.pow(d / e))
            .sum::<i64>()
            / d as i64
    };
    let expected = [2, 1, 2, 3, 6, 9, 18, 30];
    let al = uniform(2);
    for d in 1..=8u32 {
        let n = lyndon_basis(&al, d).len() as i64;
        ensure!(
            n == expected[d as usize - 1] && n == witt(d),
            "degree {d}: {n} basis elements, Witt gives {}",
            witt(d)
        );
    }
    Ok("rank 2, degrees 1..8: 2 1 2 3 6 9 18 30".into())
}

fn commutator_laws(seed: u64) -> Outcome {
    let al = uniform(3);
    let mut rng = sample::rng(seed);
    let conj = |g: &ReducedWord, h: &ReducedWord| g.mul(h).unwrap().mul(&g.inverse()).unwrap();
    let comm = |g: &ReducedWord, h: &ReducedWord| g.commutator(h).unwrap();
    let triples = 1000;
    for _ in 0..triples {
        let a = sample::random_word(&al, &mut rng, 4);
        let b = sample::random_word(&al, &mut rng, 4);
        let c = sample::random_word(&al, &mut rng, 4);
        let bc = b.mul(&c).unwrap();
        let ab = a.mul(&b).unwrap();
        ensure!(
            comm(&a, &bc) == comm(&a, &b).mul(&conj(&b, &comm(&a, &c))).unwrap(),
            "[a,bc] for {a}, {b}, {c}"
        );
        ensure!(
            comm(&ab, &c) == conj(&a, &comm(&b, &c)).mul(&comm(&a, &c)).unwrap(),
            "[ab,c] for {a}, {b}, {c}"
        );
        ensure!(
            comm(&a, &b.inverse()).inverse() == conj(&b.inverse(), &comm(&a, &b)),
            "[a,b⁻¹]⁻¹ for {a}, {b}"
        );
        ensure!(
            comm(&a.inverse(), &b).inverse() == conj(&a.inverse(), &comm(&a, &b)),
            "[a⁻¹,b]⁻¹ for {a}, {b}"
        );
        let hall_witt = comm(&comm(&a, &b), &conj(&b, &c))
            .mul(&comm(&comm(&b, &c), &conj(&c, &a)))
            .unwrap()
            .mul(&comm(&comm(&c, &a), &conj(&a, &b)))
            .unwrap();
        ensure!(hall_witt.is_identity(), "Hall–Witt for {a}, {b}, {c}");
    }
    Ok(format!(
        "{triples} random triples in rank 3, five identities each"
    ))
}

fn basis_commutators(_seed: u64) -> Outcome {
    let al = uniform(2);
    let lcs = SeriesSpec::lower_central(&al);
    let mut count = 0;
    for m in 1..=5 {
        for (word, bracketing) in &lyndon_basis(&al, m).entries {
            let w = bracketing.to_group_word(&al);
            let deg = lib(lcs.degree(&w, m))?;
            ensure!(
                deg == Degree::Finite(m),
                "{} has degree {deg}",
                bracketing.render(&al)
            );
            let class = lib(lcs.gr_class(&w, m))?;
            let basis = lib(LieElement::basis_element(&al, Z, word.letters()))?;
            ensure!(class == basis, "{}: class {class}", bracketing.render(&al));
            count += 1;
        }
    }
    Ok(format!("{count} basis commutators of degree ≤ 5"))
}

fn morphism_identities(seed: u64) -> Outcome {
    let mut rng = sample::rng(seed);
    let cap = 6;
    let pairs = 100;
    let mut checks = 0;
    for k in 0..pairs {
        let al = uniform(2 + k % 2);
        let lcs = SeriesSpec::lower_central(&al);
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=(5 - m).min(3));
        let f = lib(FilteredAut::new(
            &sample::random_filtered_aut(&al, &mut rng, m),
            &lcs,
            cap,
        ))?;
        let g = lib(FilteredAut::new(
            &sample::random_filtered_aut(&al, &mut rng, n),
            &lcs,
            cap,
        ))?;
        let h = sample::random_degree_zero(&al, &mut rng, 2);
        let report = lib(verify_morphism_identities(&f, m, &g, n, &h))?;
        checks += report.checks.len();
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!(
                "{}: {} (f = {:?}, g = {:?})",
                bad.identity,
                bad.detail,
                f.map(),
                g.map()
            ));
        }
    }
    Ok(format!(
        "{pairs} pairs in ranks 2–3, degrees ≤ 3, cap {cap}: {checks} identities"
    ))
}

fn inner_adjoint(seed: u64) -> Outcome {
    let mut rng = sample::rng(seed);
    let mut done = 0;
    let mut by_degree = [0usize; 5];
    while done < 60 {
        let al = uniform(2 + done % 2);
        let lcs = SeriesSpec::lower_central(&al);
        let target = rng.gen_range(1..=4);
        let w = sample::random_deep_element(&al, &mut rng, target, 2);
        let Degree::Finite(d) = lib(lcs.degree(&w, 4))? else {
            continue;
        };
        let f = lib(FilteredAut::new(&GroupMap::conjugation(&w), &lcs, d + 1))?;
        ensure!(
            f.degree() == Degree::Finite(d),
            "conjugation by {w} has degree {}, word degree {d}",
            f.degree()
        );
        let t = lib(tau(&f, d))?;
        let ad = lib(adjoint(t.parent(), &lib(lcs.gr_class(&w, d))?))?;
        ensure!(
            t == ad,
            "w = {w}: τ = {} but ad = {}",
            t.render_inline(),
            ad.render_inline()
        );
        by_degree[d as usize] += 1;
        done += 1;
    }
    Ok(format!(
        "{done} words; by degree 1..4: {:?}",
        &by_degree[1..]
    ))
}

fn bracket_laws(
    d: &Derivation,
    e: &Derivation,
    f: &Derivation,
    phi: &Aut0,
) -> std::result::Result<(), String> {
    let de = lib(der_bracket(d, e))?;
    ensure!(
        lib(der_bracket(e, d))? == de.neg(),
        "antisymmetry fails for {}",
        d.render_inline()
    );
    let jacobi = lib(lib(der_bracket(d, &lib(der_bracket(e, f))?))?
        .add(&lib(der_bracket(e, &lib(der_bracket(f, d))?))?))?;
    let jacobi = lib(jacobi.add(&lib(der_bracket(f, &de))?))?;
    ensure!(jacobi.is_zero(), "Jacobi fails: {}", jacobi.render_inline());
    let lhs = lib(der_action(phi, &de))?;
    let rhs = lib(der_bracket(
        &lib(der_action(phi, d))?,
        &lib(der_action(phi, e))?,
    ))?;
    ensure!(lhs == rhs, "action does not respect the bracket");
    for x in [d, e, f, &de] {
        let t = truncate(x);
        let back = lib(extend(x.parent(), &t))?;
        ensure!(
            back == *x && truncate(&back) == t,
            "truncate/extend round trip fails for {}",
            x.render_inline()
        );
    }
    Ok(())
}

fn derivation_laws(seed: u64) -> Outcome {
    let mut rng = sample::rng(seed);
    let trials = 8;
    for k in 0..trials {
        let al = uniform(2 + k % 2);
        let parent = EgLie::free(&al, Z);
        let d = sample::random_derivation(&parent, &mut rng, 1);
        let e = sample::random_derivation(&parent, &mut rng, 1);
        let f = sample::random_derivation(&parent, &mut rng, 2);
        let h = sample::random_degree_zero(&al, &mut rng, 3);
        let phi = lib(tau0(&h, &SeriesSpec::lower_central(&al)))?;
        bracket_laws(&d, &e, &f, &phi)?;
    }
    let swap = sample::swap_structure(Z);
    let t = ReducedWord::generator(swap.l0_alphabet().expect("nontrivial"), 0);
    let mut cocycles = 0;
    for k in 0..trials {
        let d = sample::random_swap_derivation(&swap, &mut rng, 1);
        let e = sample::random_swap_derivation(&swap, &mut rng, 1 + k as u32 % 2);
        let f = sample::random_swap_derivation(&swap, &mut rng, 2);
        cocycles += [&d, &e, &f]
            .iter()
            .filter(|x| x.d0().iter().any(|c| !c.is_zero()))
            .count();
        let report = lib(d.check(5, seed))?;
        ensure!(
            report.passed(),
            "fixture derivation fails: {:?}",
            report.failures
        );
        let phi = lib(adjoint_l0(&swap, &t))?;
        bracket_laws(&d, &e, &f, &phi)?;
    }
    ensure!(cocycles > 0, "no sampled derivation had a nonzero cocycle");
    Ok(format!("{trials} free triples (ranks 2–3) and {trials} triples with the swap action ({cocycles} nonzero cocycles)"))
}

fn zassenhaus(seed: u64) -> Outcome {
    let mut rng = sample::rng(seed);
    let cap = 6;
    let mut axioms = 0;
    let mut powers = 0;
    for p in [2u32, 3] {
        for rank in [2, 3] {
            let spec = lib(SeriesSpec::zassenhaus(&uniform(rank), p))?;
            let report = spec.check_axioms(&AxiomConfig {
                samples: 100,
                seed,
                cap,
            });
            ensure!(
                report.passed(),
                "p = {p}, rank {rank}: {:?}",
                report.counterexamples.first()
            );
            axioms += report.checks;
        }
        let mut done = 0;
        while done < 50 {
            let al = uniform(2 + done % 2);
            let spec = lib(SeriesSpec::zassenhaus(&al, p))?;
            let f = {
                let m = rng.gen_range(1..=2);
                sample::random_filtered_aut(&al, &mut rng, m)
            };
            let Degree::Finite(d) = lib(filtration_degree(&f, &spec, cap))? else {
                continue;
            };
            if d == 0 || p * d > cap + 1 {
                continue;
            }
            let fp = lib(f.pow(p as i64))?;
            let dp = lib(filtration_degree(&fp, &spec, cap))?;
            ensure!(
                dp.is_at_least(p * d),
                "p = {p}: f of degree {d} but f^p of degree {dp} (f = {f:?})"
            );
            done += 1;
            powers += 1;
        }
    }
    Ok(format!(
        "{axioms} axiom instances for p = 2, 3 (cap {cap}); {powers} p-th powers"
    ))
}

fn kernel(seed: u64) -> Outcome {
    let mut rng = sample::rng(seed);
    let cap = 5;
    let mut checks = 0;
    let mut zero = 0;
    let samples = 100;
    for k in 0..samples {
        let al = uniform(2 + k % 2);
        let lcs = SeriesSpec::lower_central(&al);
        let f = lib(FilteredAut::new(
            &{
                let m = rng.gen_range(1..=3);
                sample::random_filtered_aut(&al, &mut rng, m)
            },
            &lcs,
            cap,
        ))?;
        for m in 1..=3 {
            if !f.degree().is_at_least(m) {
                break;
            }
            let t = lib(tau(&f, m))?;
            let deeper = f.degree().is_at_least(m + 1);
            ensure!(
                t.is_zero() == deeper,
                "m = {m}: τ = {} but degree {} for {:?}",
                t.render_inline(),
                f.degree(),
                f.map()
            );
            zero += usize::from(t.is_zero());
            checks += 1;
        }
    }
    Ok(format!(
        "{samples} automorphisms, {checks} (f, m) pairs, {zero} with τ_m = 0"
    ))
}

fn centralizer_degree(seed: u64) -> Outcome {
    let mut rng = sample::rng(seed);
    let mut done = 0;
    while done < 120 {
        let al = uniform(2 + done % 2);
        let lcs = SeriesSpec::lower_central(&al);
        let target = rng.gen_range(1..=4);
        let w = sample::random_deep_element(&al, &mut rng, target, 2);
        let Degree::Finite(d) = lib(lcs.degree(&w, 4))? else {
            continue;
        };
        let mut best = Degree::Infinity;
        for x in 0..al.rank() {
            let c = lib(w.commutator(&ReducedWord::generator(&al, x)))?;
            best = best.min(lib(lcs.degree(&c, d + 1))?);
        }
        ensure!(
            best == Degree::Finite(d + 1),
            "w = {w} of degree {d}: min degree of [w, x] is {best}"
        );
        done += 1;
    }
    Ok(format!("{done} words in ranks 2–3 of degree ≤ 4"))
}

fn formality(seed: u64) -> Outcome {
    let al = uniform(2);
    let lcs = SeriesSpec::lower_central(&al);
    let cap = 5;
    let standard = Expansion::standard(&al, cap);
    let tail = lib(Derivation::from_strs(
        &EgLie::free(&al, Q),
        1,
        &[],
        &["[a,b]", "0"],
    ))?;
    let perturbed = lib(Expansion::with_tail(&al, cap, &tail))?;
    let qparent = EgLie::free(&al, Q);
    let mut rng = sample::rng(seed);
    let mut done = 0;
    while done < 30 {
        let f = {
            let m = rng.gen_range(1..=2);
            sample::random_filtered_aut(&al, &mut rng, m)
        };
        let fa = lib(FilteredAut::new(&f, &lcs, cap))?;
        let Degree::Finite(m) = fa.degree() else {
            continue;
        };
        if m > 2 {
            continue;
        }
        let expected = lib(lib(tau(&fa, m))?.with_parent(&qparent))?;
        for (label, theta) in [("standard", &standard), ("perturbed", &perturbed)] {
            let r = lib(rho(theta, &f))?;
            ensure!(
                r.leading_degree() == m,
                "{label}: leading degree {} but filtration degree {m}",
                r.leading_degree()
            );
            ensure!(
                r.component(m) == expected,
                "{label}: leading term {} but τ = {}",
                r.component(m).render_inline(),
                expected.render_inline()
            );
        }
        done += 1;
    }
    Ok(format!(
        "{done} automorphisms of rank 2, cap {cap}, standard and perturbed expansions"
    ))
}

fn bch(seed: u64) -> Outcome {
    let al = uniform(2);
    let cap = 4;
    let theta = Expansion::standard(&al, cap);
    let mut rng = sample::rng(seed);
    let pairs = 20;
    for _ in 0..pairs {
        let f = {
            let m = rng.gen_range(1..=2);
            sample::random_filtered_aut(&al, &mut rng, m)
        };
        let g = {
            let m = rng.gen_range(1..=2);
            sample::random_filtered_aut(&al, &mut rng, m)
        };
        let fg = lib(f.compose(&g))?;
        let lhs = lib(rho(&theta, &fg))?;
        let rhs = lib(bch_product(&lib(rho(&theta, &f))?, &lib(rho(&theta, &g))?))?;
        ensure!(lhs == rhs, "ρ(fg) = {lhs}\nbut ρ(f)·ρ(g) = {rhs}");
    }
    let conj = |s: &str| GroupMap::conjugation(&parse_word(s, &al).unwrap());
    let (s, t) = (lib(rho(&theta, &conj("a")))?, lib(rho(&theta, &conj("b")))?);
    let st = lib(bch_product(&s, &t))?;
    let half =
        lib(lib(der_bracket(&s.component(1), &t.component(1)))?.scale(&Scalar::ratio(1, 2)))?;
    ensure!(
        st.component(2) == half,
        "degree-2 part {} is not ½[d,e]",
        st.component(2).render_inline()
    );
    let expected = lib(parse_lie("1/2 * [a,b]", &al, Q))?;
    ensure!(
        st.component(2) == lib(adjoint(st.parent(), &expected))?,
        "½[ad a, ad b] ≠ ad(½[a,b])"
    );
    Ok(format!(
        "{pairs} pairs at cap {cap}; conjugations by a and b give ½[d,e] = ad(½[a,b])"
    ))
}

fn quillen(seed: u64) -> Outcome {
    let al = uniform(2);
    let theta = Expansion::standard(&al, 5);
    let report = lib(upsilon_checks(
        &SeriesSpec::lower_central(&al),
        &theta,
        5,
        50,
        seed,
    ))?;
    ensure!(report.failures.is_empty(), "{:?}", report.failures.first());
    for r in &report.ranks {
        ensure!(
            r.rank == 2usize.pow(r.degree),
            "degree {}: rank {} of {}",
            r.degree,
            r.rank,
            r.dimension
        );
    }
    let ranks: Vec<String> = report.ranks.iter().map(|r| r.rank.to_string()).collect();
    Ok(format!(
        "ranks {} at degrees 1..5; {} checks",
        ranks.join(" "),
        report.checks
    ))
}

fn weight(seed: u64) -> Outcome {
    let al = Alphabet::new([("a", 1), ("b", 1), ("z", 2)]).expect("valid alphabet");
    let spec = lib(SeriesSpec::weight(&al))?;
    let axioms = spec.check_axioms(&AxiomConfig {
        samples: 100,
        seed,
        cap: 6,
    });
    ensure!(axioms.passed(), "{:?}", axioms.counterexamples.first());
    let mut rng = sample::rng(seed);
    let cap = 5;
    let mut taus = 0;
    let mut blocks = 0;
    let mut sampled = 0;
    while taus < 20 || blocks < 5 {
        ensure!(
            sampled < 400,
            "only {taus} τ and {blocks} blocks in {sampled} samples"
        );
        let k = sampled % 3;
        sampled += 1;
        let f = sample::random_weight_aut(&al, &mut rng, k);
        let fa = lib(FilteredAut::new(&f, &spec, cap))?;
        ensure!(
            fa.degree().is_at_least(k),
            "sampled degree {} below {}",
            fa.degree(),
            k
        );
        match fa.degree() {
            Degree::Finite(0) => {
                let g = lib(tau0(&f, &spec))?;
                ensure!(
                    g.map().images()[2].is_homogeneous_of(2),
                    "degree-2 block missing"
                );
                blocks += 1;
            }
            Degree::Finite(m) if m + 2 <= cap => {
                let t = lib(tau(&fa, m))?;
                ensure!(!t.is_zero(), "τ_{m} vanishes at exact degree {m}");
                let report = lib(t.check(5, seed))?;
                ensure!(
                    report.passed(),
                    "τ is not a derivation: {:?}",
                    report.failures
                );
                let tr = truncate(&t);
                ensure!(
                    tr.d1.len() == 2 && tr.d2.len() == 1,
                    "unexpected truncation shape"
                );
                ensure!(lib(extend(t.parent(), &tr))? == t, "extend ∘ truncate ≠ id");
                taus += 1;
            }
            _ => {}
        }
    }
    Ok(format!(
        "{} axiom instances to cap 6; {sampled} degrees, {taus} τ (d1, d2) computed, {blocks} degree-0 blocks",
        axioms.checks
    ))
}
