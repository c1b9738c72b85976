use serde::Serialize;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::formal::{Expansion, Q};
use crate::sample;
use crate::scalar::{CoefficientRing, Scalar};
use crate::series::{SeriesSpec, SeriesVariant};
use crate::tensor::{Monomial, TruncatedSeries};
use crate::words::{ReducedWord, WordCombination};

fn expand_combination(u: &WordCombination, theta: &Expansion) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(Q, theta.alphabet(), theta.cap());
    for (c, w) in u {
        acc = acc.add(&theta.expand_word(w)?.scale(c)?)?;
    }
    Ok(acc)
}

fn check_pair(spec: &SeriesSpec, theta: &Expansion) -> Result<()> {
    if let SeriesVariant::Zassenhaus(_) = spec.variant() {
        return Err(Error::RingNotRational);
    }
    if spec.alphabet() != theta.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

/// The filtration degree of a group-ring element: the valuation of its
/// expansion, so `0` when the augmentation is nonzero and `AboveCap` when it
/// vanishes through the cap.
pub fn jfiltration_degree(
    u: &WordCombination,
    spec: &SeriesSpec,
    theta: &Expansion,
) -> Result<Degree> {
    check_pair(spec, theta)?;
    Ok(expand_combination(u, theta)?.valuation(false))
}

/// Rank of the leading terms at one degree.
#[derive(Clone, Debug, Serialize)]
pub struct RankCheck {
    pub degree: u32,
    pub products: usize,
    pub rank: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct UpsilonReport {
    pub ranks: Vec<RankCheck>,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl UpsilonReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.ranks.iter().all(|r| r.rank == r.dimension)
    }
}

fn word_minus_one(w: &ReducedWord) -> WordCombination {
    vec![
        (Scalar::one(), w.clone()),
        (Scalar::from_int(-1), ReducedWord::identity(w.alphabet())),
    ]
}

fn comb_mul(u: &WordCombination, v: &WordCombination) -> Result<WordCombination> {
    let mut out = Vec::new();
    for (c, x) in u {
        for (d, y) in v {
            out.push((c * d, x.mul(y)?));
        }
    }
    Ok(out)
}

fn comb_sub(u: &WordCombination, v: &WordCombination) -> WordCombination {
    u.iter()
        .cloned()
        .chain(v.iter().map(|(c, w)| (-c.clone(), w.clone())))
        .collect()
}

/// Rank over the rationals, by Gaussian elimination.
fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ring = CoefficientRing::Rationals;
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ring.inverse(&rows[r][c]).expect("nonzero pivot");
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest {
            if row[c].is_zero() {
                continue;
            }
            let factor = ring.mul(&row[c], &inv);
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x = ring.sub(x, &ring.mul(&factor, p));
            }
        }
        r += 1;
    }
    r
}

/// Evidence that `x K_{i+1} ↦ (x − 1) + J_{i+1}` induces an algebra
/// isomorphism from the enveloping algebra of the graded Lie ring onto the
/// graded group ring (rationally, for the lower central series):
///
/// * for sampled `x ∈ K_i`, `y ∈ K_j` of exact degrees: `x − 1` has
///   J-degree `i`, `(x − 1)(y − 1)` has J-degree `i + j`, and
///   `([x, y] − 1) − ((x − 1)(y − 1) − (y − 1)(x − 1))` has J-degree
///   `≥ i + j + 1`;
/// * for each `m ≤ max_degree`, the `r^m` products `(b_{i₁} − 1)⋯(b_{iₘ} − 1)`
///   have linearly independent leading terms spanning degree `m`.
pub fn upsilon_checks(
    spec: &SeriesSpec,
    theta: &Expansion,
    max_degree: u32,
    samples: usize,
    seed: u64,
) -> Result<UpsilonReport> {
    check_pair(spec, theta)?;
    if spec.variant() != SeriesVariant::LowerCentral {
        return Err(Error::InvalidInput(
            "these checks cover the lower central series".into(),
        ));
    }
    let al = theta.alphabet().clone();
    let cap = theta.cap();
    if max_degree > cap {
        return Err(Error::CapTooSmall {
            needed: max_degree,
            cap,
        });
    }
    if al.rank() > 3 {
        return Err(Error::InvalidInput("rank at most 3 is supported".into()));
    }
    let mut report = UpsilonReport::default();
    let record = |report: &mut UpsilonReport, ok: bool, msg: &dyn Fn() -> String| {
        report.checks += 1;
        if !ok {
            report.failures.push(msg());
        }
    };

    let mut rng = sample::rng(seed);
    let mut done = 0;
    while done < samples {
        let i = rand::Rng::gen_range(&mut rng, 1..=2u32);
        let j = rand::Rng::gen_range(&mut rng, 1..=(cap - 1 - i).clamp(1, 3));
        if i + j + 1 > cap {
            continue;
        }
        let x = sample::random_deep_element(&al, &mut rng, i, 2);
        let y = sample::random_deep_element(&al, &mut rng, j, 2);
        let (Degree::Finite(di), Degree::Finite(dj)) =
            (spec.degree(&x, cap)?, spec.degree(&y, cap)?)
        else {
            continue;
        };
        if di + dj + 1 > cap {
            continue;
        }
        done += 1;
        let (xm, ym) = (word_minus_one(&x), word_minus_one(&y));
        let jx = jfiltration_degree(&xm, spec, theta)?;
        record(&mut report, jx == Degree::Finite(di), &|| {
            format!("x = {x}: J-degree {jx}, series degree {di}")
        });
        let xy = comb_mul(&xm, &ym)?;
        let jxy = jfiltration_degree(&xy, spec, theta)?;
        record(&mut report, jxy == Degree::Finite(di + dj), &|| {
            format!("(x−1)(y−1) for x = {x}, y = {y}: {jxy}")
        });
        let bracket = comb_sub(&xy, &comb_mul(&ym, &xm)?);
        let defect = comb_sub(&word_minus_one(&x.commutator(&y)?), &bracket);
        let jd = jfiltration_degree(&defect, spec, theta)?;
        record(&mut report, jd.is_at_least(di + dj + 1), &|| {
            format!("commutator defect for x = {x}, y = {y}: {jd}")
        });
    }

    let one = TruncatedSeries::one(Q, &al, cap);
    let factors = (0..al.rank())
        .map(|i| theta.theta(i).sub(&one))
        .collect::<Result<Vec<_>>>()?;
    let mut layer = vec![(Vec::<u8>::new(), one.clone())];
    for m in 1..=max_degree {
        let mut next = Vec::new();
        for (idx, s) in &layer {
            for (i, f) in factors.iter().enumerate() {
                let mut k = idx.clone();
                k.push(i as u8);
                next.push((k, s.mul(f)?));
            }
        }
        layer = next;
        let monomials: Vec<Monomial> = layer.iter().map(|(k, _)| Monomial::new(&al, k)).collect();
        let mut rows = Vec::new();
        for (k, s) in &layer {
            let v = s.valuation(false);
            record(&mut report, v == Degree::Finite(m), &|| {
                format!("product {k:?} has J-degree {v}")
            });
            rows.push(monomials.iter().map(|mono| s.coefficient(mono)).collect());
        }
        let dimension = al.rank().pow(m);
        report.ranks.push(RankCheck {
            degree: m,
            products: layer.len(),
            rank: rank(rows),
            dimension,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_combination, Alphabet};

    #[test]
    fn augmentation_powers() {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        let spec = SeriesSpec::lower_central(&al);
        let th = Expansion::standard(&al, 5);
        let j =
            |s: &str| jfiltration_degree(&parse_combination(s, &al).unwrap(), &spec, &th).unwrap();
        assert_eq!(j("a - 1"), Degree::Finite(1));
        assert_eq!(j("a b - a - b + 1"), Degree::Finite(2));
        assert_eq!(j("[a,b] - 1"), Degree::Finite(2));
        assert_eq!(j("a"), Degree::Finite(0));
        assert_eq!(j("a - a"), Degree::AboveCap(5));
        // x = a, y = [a,b]: the commutator defect lies in degree ≥ 4.
        let defect = "[a,[a,b]] - 1 - a [a,b] + [a,b] a";
        assert!(j(defect).is_at_least(4));
    }

    #[test]
    fn quillen_rank_two() {
        let al = Alphabet::uniform(&["a", "b"]).unwrap();
        let spec = SeriesSpec::lower_central(&al);
        let th = Expansion::standard(&al, 5);
        let report = upsilon_checks(&spec, &th, 3, 10, 0).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.ranks[0].rank, 2);
        assert_eq!(report.ranks[2].rank, 8);
        assert!(
            rank(vec![
                vec![Scalar::one(), Scalar::from_int(2)],
                vec![Scalar::from_int(2), Scalar::from_int(4)]
            ]) == 1
        );
    }
}
