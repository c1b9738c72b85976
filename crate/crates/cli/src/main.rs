//! `nseries`: a calculator for filtrations of free groups, Johnson
//! homomorphisms and their rational (formal) counterparts.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nseries::degree::Degree;
use nseries::eglie::{der_bracket, GeneratorValue};
use nseries::formal::{bch_product, jfiltration_degree, rho, upsilon_checks, Expansion};
use nseries::johnson::{filtration_degree, tau, tau0, verify_morphism_identities, FilteredAut};
use nseries::series::{AxiomConfig, SeriesSpec};
use nseries::suite;
use nseries::tensor::magnus_expand;
use nseries::words::{parse_combination, parse_word, Alphabet, GroupMap};
use serde_json::json;

use report::{tail_json, CliError, Out};

#[derive(Parser, Debug)]
#[command(
    name = "nseries",
    version,
    about = "Johnson homomorphisms and N-series of free groups"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Alphabet file: one `name [weight]` per line. Inferred from the inputs when absent.
    #[arg(long, global = true, value_name = "FILE")]
    alphabet: Option<PathBuf>,
    /// lcs, zassenhaus:P or weight.
    #[arg(long, global = true, default_value = "lcs")]
    series: String,
    /// Truncation degree (default 6 in rank ≤ 2, 5 otherwise).
    #[arg(short = 'N', global = true, value_parser = clap::value_parser!(u32).range(1..))]
    cap: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// One JSON record per result.
    #[arg(long, global = true)]
    machine: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free reduction and Magnus expansion of words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Degrees and graded classes in the chosen N-series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Filtration degree, τ_m, τ_0 and the morphism identities of automorphisms.
    #[command(subcommand)]
    Johnson(JohnsonCmd),
    /// Operator logarithms, BCH products and group-ring filtrations over Q.
    #[command(subcommand)]
    Formal(FormalCmd),
    /// Runs the acceptance criteria.
    Selftest {
        /// Only these criteria (repeatable).
        #[arg(long = "only", value_name = "ID")]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    Reduce {
        #[arg(long)]
        word: String,
    },
    Expand {
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    Degree {
        #[arg(long)]
        word: String,
    },
    Class {
        #[arg(long)]
        word: String,
        #[arg(long)]
        degree: u32,
    },
    /// Samples the N-series axioms up to the cap.
    Axioms {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum JohnsonCmd {
    Degree {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    Tau {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// Defaults to the filtration degree of the map.
        #[arg(long)]
        degree: Option<u32>,
    },
    Tau0 {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Checks the identities for `--map F --map G [--map H]`.
    Verify {
        #[arg(long = "map", value_name = "FILE", num_args = 1, required = true)]
        maps: Vec<PathBuf>,
        /// Degrees of F and G (repeat twice); default: their filtration degrees.
        #[arg(long = "degree")]
        degrees: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum FormalCmd {
    Rho {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// Derivation file perturbing the standard expansion.
        #[arg(long, value_name = "FILE")]
        tail: Option<PathBuf>,
    },
    /// `ρ(f)·ρ(g)` compared with `ρ(fg)` for `--map F --map G`.
    Bch {
        #[arg(long = "map", value_name = "FILE", num_args = 1, required = true)]
        maps: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        tail: Option<PathBuf>,
    },
    /// J-degree of a group-ring element such as `"a b - a - b + 1"`.
    Jdeg {
        #[arg(long)]
        word: String,
    },
    Upsilon {
        /// Largest degree for the rank check (default: the cap, at most 5).
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Identifiers of the word language, sorted and deduplicated.
fn names_in_word(text: &str) -> Vec<String> {
    let mut names = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_ascii_alphabetic() {
            let mut end = i + 1;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = j + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            names.push(text[i..end].to_string());
        } else if c.is_ascii_digit() {
            while chars.peek().is_some_and(|&(_, d)| d.is_ascii_digit()) {
                chars.next();
            }
        }
    }
    names.sort();
    names.dedup();
    names
}

struct Ctx {
    alphabet: Alphabet,
    spec: SeriesSpec,
    cap: u32,
    out: Out,
    seed: u64,
}

impl Ctx {
    fn new(common: &Common, words: &[&str], maps: &[&Path]) -> Result<Ctx, CliError> {
        let alphabet = match &common.alphabet {
            Some(path) => Alphabet::parse_file(&read(path)?)?,
            None => {
                let mut names: Vec<String> = Vec::new();
                for m in maps {
                    for n in GroupMap::names_in_file(&read(m)?) {
                        if !names.contains(&n) {
                            names.push(n);
                        }
                    }
                }
                for w in words {
                    for n in names_in_word(w) {
                        if !names.contains(&n) {
                            names.push(n);
                        }
                    }
                }
                if names.is_empty() {
                    names = vec!["a".into(), "b".into()];
                }
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                Alphabet::uniform(&names)?
            }
        };
        let spec = SeriesSpec::parse(&common.series, &alphabet)?;
        let cap = common
            .cap
            .unwrap_or(if alphabet.rank() <= 2 { 6 } else { 5 });
        Ok(Ctx {
            alphabet,
            spec,
            cap,
            out: Out {
                machine: common.machine,
            },
            seed: common.seed,
        })
    }

    fn map(&self, path: &Path) -> Result<GroupMap, CliError> {
        Ok(GroupMap::parse_file(&read(path)?, &self.alphabet)?)
    }

    fn expansion(&self, tail: Option<&PathBuf>) -> Result<Expansion, CliError> {
        Ok(match tail {
            Some(path) => Expansion::parse_tail_file(&read(path)?, &self.alphabet, self.cap)?,
            None => Expansion::standard(&self.alphabet, self.cap),
        })
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let common = &cli.common;
    match &cli.command {
        Command::Word(cmd) => {
            let word = match cmd {
                WordCmd::Reduce { word } | WordCmd::Expand { word } => word,
            };
            let ctx = Ctx::new(common, &[word], &[])?;
            let w = parse_word(word, &ctx.alphabet)?;
            match cmd {
                WordCmd::Reduce { .. } => ctx.out.emit(&w, json!({ "word": w.to_string() })),
                WordCmd::Expand { .. } => {
                    let s = magnus_expand(&w, ctx.spec.ring(), ctx.cap);
                    ctx.out.emit(
                        s.render(),
                        json!({ "cap": ctx.cap, "ring": s.ring(), "terms": s.to_records() }),
                    );
                }
            }
        }
        Command::Series(cmd) => series(common, cmd)?,
        Command::Johnson(cmd) => johnson(common, cmd)?,
        Command::Formal(cmd) => formal(common, cmd)?,
        Command::Selftest { only } => {
            let out = Out {
                machine: common.machine,
            };
            let results: Vec<_> = if only.is_empty() {
                suite::run_all(common.seed)
            } else {
                only.iter()
                    .map(|&id| {
                        suite::run_criterion(id, common.seed)
                            .ok_or_else(|| CliError::Usage(format!("no criterion {id}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            for r in &results {
                out.emit(r, json!(r));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(CliError::Check(format!(
                    "{failed} of {} criteria failed",
                    results.len()
                )));
            }
        }
    }
    Ok(())
}

fn series(common: &Common, cmd: &SeriesCmd) -> Result<(), CliError> {
    let words: Vec<&str> = match cmd {
        SeriesCmd::Degree { word } | SeriesCmd::Class { word, .. } => vec![word],
        SeriesCmd::Axioms { .. } => vec![],
    };
    let ctx = Ctx::new(common, &words, &[])?;
    match cmd {
        SeriesCmd::Degree { word } => {
            let d = ctx
                .spec
                .degree(&parse_word(word, &ctx.alphabet)?, ctx.cap)?;
            ctx.out.emit(d, json!({ "degree": d, "cap": ctx.cap }));
        }
        SeriesCmd::Class { word, degree } => {
            let c = ctx
                .spec
                .gr_class(&parse_word(word, &ctx.alphabet)?, *degree)?;
            ctx.out.emit(
                c.render(),
                json!({ "degree": degree, "ring": c.ring(), "terms": c.to_records() }),
            );
        }
        SeriesCmd::Axioms { samples } => {
            let report = ctx.spec.check_axioms(&AxiomConfig {
                samples: *samples,
                seed: ctx.seed,
                cap: ctx.cap,
            });
            let mut text = format!(
                "{} instances, {} counterexamples",
                report.checks,
                report.counterexamples.len()
            );
            for c in &report.counterexamples {
                text.push_str(&format!(
                    "\n{}: {} has degree {}, needs {}",
                    c.law, c.witness, c.found, c.required
                ));
            }
            ctx.out.emit(text, json!(report));
            if !report.passed() {
                return Err(CliError::Check("axiom counterexamples found".into()));
            }
        }
    }
    Ok(())
}

fn degree_arg(explicit: Option<u32>, computed: Degree) -> Result<u32, CliError> {
    match (explicit, computed) {
        (Some(m), _) => Ok(m),
        (None, Degree::Finite(m)) if m >= 1 => Ok(m),
        (None, d) => Err(CliError::Lib(nseries::Error::InvalidInput(format!(
            "filtration degree is {d}; pass --degree explicitly"
        )))),
    }
}

fn johnson(common: &Common, cmd: &JohnsonCmd) -> Result<(), CliError> {
    let paths: Vec<&Path> = match cmd {
        JohnsonCmd::Degree { map } | JohnsonCmd::Tau { map, .. } | JohnsonCmd::Tau0 { map } => {
            vec![map]
        }
        JohnsonCmd::Verify { maps, .. } => maps.iter().map(PathBuf::as_path).collect(),
    };
    let mut ctx = Ctx::new(common, &[], &paths)?;
    match cmd {
        JohnsonCmd::Degree { map } => {
            let d = filtration_degree(&ctx.map(map)?, &ctx.spec, ctx.cap)?;
            ctx.out.emit(d, json!({ "degree": d, "cap": ctx.cap }));
        }
        JohnsonCmd::Tau { map, degree } => {
            let f = FilteredAut::new(&ctx.map(map)?, &ctx.spec, ctx.cap)?;
            let m = degree_arg(*degree, f.degree())?;
            let t = tau(&f, m)?;
            ctx.out.emit(t.render_inline(), json!(t.to_record()));
        }
        JohnsonCmd::Tau0 { map } => {
            let a = tau0(&ctx.map(map)?, &ctx.spec)?;
            let images: Vec<GeneratorValue> = a
                .map()
                .images()
                .iter()
                .enumerate()
                .map(|(i, v)| GeneratorValue {
                    generator: ctx.alphabet.name(i).to_string(),
                    value: v.to_records(),
                })
                .collect();
            let text = a
                .map()
                .images()
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{} ↦ {}", ctx.alphabet.name(i), v.render_inline()))
                .collect::<Vec<_>>()
                .join(", ");
            ctx.out.emit(text, json!({ "images": images }));
        }
        JohnsonCmd::Verify { maps, degrees } => {
            if !(2..=3).contains(&maps.len()) || !(degrees.is_empty() || degrees.len() == 2) {
                return Err(CliError::Usage(
                    "verify takes --map F --map G [--map H] and zero or two --degree".into(),
                ));
            }
            let f = ctx.map(&maps[0])?;
            let g = ctx.map(&maps[1])?;
            let h = match maps.get(2) {
                Some(p) => ctx.map(p)?,
                None => GroupMap::identity(&ctx.alphabet),
            };
            let (m, n) = match degrees.as_slice() {
                [m, n] => (*m, *n),
                _ => (
                    degree_arg(None, filtration_degree(&f, &ctx.spec, ctx.cap)?)?,
                    degree_arg(None, filtration_degree(&g, &ctx.spec, ctx.cap)?)?,
                ),
            };
            if common.cap.is_none() {
                ctx.cap = ctx.cap.max(m + n + ctx.alphabet.max_weight());
            }
            let fa = FilteredAut::new(&f, &ctx.spec, ctx.cap)?;
            let ga = FilteredAut::new(&g, &ctx.spec, ctx.cap)?;
            let report = verify_morphism_identities(&fa, m, &ga, n, &h)?;
            for c in &report.checks {
                let status = if c.passed { "ok" } else { "FAILED" };
                let text = if c.detail.is_empty() {
                    format!("{status} {}", c.identity)
                } else {
                    format!("{status} {}: {}", c.identity, c.detail)
                };
                ctx.out.emit(text, json!(c));
            }
            if !report.passed() {
                return Err(CliError::Check("an identity failed".into()));
            }
        }
    }
    Ok(())
}

fn formal(common: &Common, cmd: &FormalCmd) -> Result<(), CliError> {
    let (paths, words): (Vec<&Path>, Vec<&str>) = match cmd {
        FormalCmd::Rho { map, .. } => (vec![map], vec![]),
        FormalCmd::Bch { maps, .. } => (maps.iter().map(PathBuf::as_path).collect(), vec![]),
        FormalCmd::Jdeg { word } => (vec![], vec![word]),
        FormalCmd::Upsilon { .. } => (vec![], vec![]),
    };
    let ctx = Ctx::new(common, &words, &paths)?;
    match cmd {
        FormalCmd::Rho { map, tail } => {
            let t = rho(&ctx.expansion(tail.as_ref())?, &ctx.map(map)?)?;
            ctx.out.emit(&t, tail_json(&t));
        }
        FormalCmd::Bch { maps, tail } => {
            if maps.len() != 2 {
                return Err(CliError::Usage("bch takes exactly two --map".into()));
            }
            let theta = ctx.expansion(tail.as_ref())?;
            let (f, g) = (ctx.map(&maps[0])?, ctx.map(&maps[1])?);
            let (s, t) = (rho(&theta, &f)?, rho(&theta, &g)?);
            let st = bch_product(&s, &t)?;
            let direct = rho(&theta, &f.compose(&g)?)?;
            let agrees = st == direct;
            let mut text = st.to_string();
            if let (Some(d), Some(e)) = (s.leading(), t.leading()) {
                let de = der_bracket(d, e)?;
                text.push_str(&format!(
                    "\nbracket of leading terms: {}",
                    de.render_inline()
                ));
            }
            text.push_str(&format!("\nequals rho(fg): {agrees}"));
            let mut record = tail_json(&st);
            record["equals_rho_of_product"] = json!(agrees);
            ctx.out.emit(text, record);
            if !agrees {
                return Err(CliError::Check("ρ(fg) differs from the BCH product".into()));
            }
        }
        FormalCmd::Jdeg { word } => {
            let u = parse_combination(word, &ctx.alphabet)?;
            let d = jfiltration_degree(&u, &ctx.spec, &ctx.expansion(None)?)?;
            ctx.out.emit(d, json!({ "degree": d, "cap": ctx.cap }));
        }
        FormalCmd::Upsilon { degree, samples } => {
            let max = degree.unwrap_or(ctx.cap.min(5));
            let report = upsilon_checks(&ctx.spec, &ctx.expansion(None)?, max, *samples, ctx.seed)?;
            let mut text: Vec<String> = report
                .ranks
                .iter()
                .map(|r| {
                    format!(
                        "degree {}: rank {} of {} ({} products)",
                        r.degree, r.rank, r.dimension, r.products
                    )
                })
                .collect();
            text.push(format!(
                "{} filtration checks, {} failures",
                report.checks,
                report.failures.len()
            ));
            text.extend(report.failures.iter().cloned());
            ctx.out.emit(text.join("\n"), json!(report));
            if !report.passed() {
                return Err(CliError::Check("upsilon checks failed".into()));
            }
        }
    }
    Ok(())
}
