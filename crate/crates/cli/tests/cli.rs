use std::path::PathBuf;
use std::process::{Command, Output};

use nseries::eglie::{Derivation, DerivationRecord, EgLie};
use nseries::freelie::{LieElement, LieRecord};
use nseries::scalar::CoefficientRing;
use nseries::series::SeriesSpec;
use nseries::tensor::{magnus_expand, SeriesRecord, TruncatedSeries};
use nseries::words::{parse_word, Alphabet};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nseries"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn machine(args: &[&str]) -> Vec<Value> {
    let mut full = vec!["--machine"];
    full.extend_from_slice(args);
    stdout(&full)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn ab() -> Alphabet {
    Alphabet::uniform(&["a", "b"]).unwrap()
}

#[test]
fn tau_of_an_inner_automorphism() {
    let out = stdout(&[
        "johnson",
        "tau",
        "--map",
        &data("inner_a.map"),
        "--series",
        "lcs",
        "-N",
        "6",
    ]);
    assert_eq!(out.trim(), "d1: a ↦ 0, b ↦ [a,b]");
}

#[test]
fn degree_of_a_commutator() {
    assert_eq!(
        stdout(&["series", "degree", "--word", "[a,b]", "--series", "lcs"]).trim(),
        "2"
    );
    assert_eq!(
        stdout(&[
            "series",
            "degree",
            "--word",
            "a^2 [a,b]^2 a^-2",
            "--series",
            "zassenhaus:2"
        ])
        .trim(),
        "4"
    );
    assert_eq!(
        stdout(&["series", "degree", "--word", "[a,b] [a,b]^-1"]).trim(),
        "inf"
    );
}

#[test]
fn words_reduce_and_expand() {
    assert_eq!(
        stdout(&["word", "reduce", "--word", "a b b^-1 a (b a)^-1"]).trim(),
        "a b^-1"
    );
    let lines = stdout(&["word", "expand", "--word", "[a,b]", "-N", "2"]);
    assert_eq!(lines.trim(), "1\n1 * a b\n-1 * b a");
}

#[test]
fn johnson_subcommands() {
    assert_eq!(
        stdout(&["johnson", "degree", "--map", &data("deep.map")]).trim(),
        "2"
    );
    assert_eq!(
        stdout(&["johnson", "tau", "--map", &data("deep.map")]).trim(),
        "d1: a ↦ -[a,[a,b]], b ↦ [[a,b],b]"
    );
    assert_eq!(
        stdout(&["johnson", "tau0", "--map", &data("swap.map")]).trim(),
        "a ↦ b, b ↦ a"
    );
    let verify = stdout(&[
        "johnson",
        "verify",
        "--map",
        &data("inner_a.map"),
        "--map",
        &data("deep.map"),
        "--map",
        &data("swap.map"),
    ]);
    assert_eq!(verify.lines().count(), 6);
    assert!(verify.lines().all(|l| l.starts_with("ok ")), "{verify}");
}

#[test]
fn weighted_alphabet() {
    let (alphabet, map) = (data("weighted.alphabet"), data("weighted.map"));
    let head = [
        "--alphabet",
        alphabet.as_str(),
        "--series",
        "weight",
        "johnson",
    ];
    let deg = [&head[..], &["degree", "--map", &map]].concat();
    assert_eq!(stdout(&deg).trim(), "1");
    let tau = [&head[..], &["tau", "--map", &map]].concat();
    assert_eq!(stdout(&tau).trim(), "d1: a ↦ z, b ↦ 0; d2: z ↦ 0");
}

#[test]
fn formal_subcommands() {
    let rho = stdout(&["formal", "rho", "--map", &data("inner_a.map"), "-N", "4"]);
    assert_eq!(rho.trim(), "degree 1: d1: a ↦ 0, b ↦ [a,b]");
    let bch = stdout(&[
        "formal",
        "bch",
        "--map",
        &data("inner_a.map"),
        "--map",
        &data("inner_b.map"),
        "-N",
        "4",
    ]);
    assert!(
        bch.contains("degree 2: d1: a ↦ -1/2 * [a,[a,b]], b ↦ 1/2 * [[a,b],b]"),
        "{bch}"
    );
    assert!(bch.trim_end().ends_with("equals rho(fg): true"));
    let perturbed = stdout(&[
        "formal",
        "rho",
        "--map",
        &data("deep.map"),
        "--tail",
        &data("tail.der"),
        "-N",
        "5",
    ]);
    let standard = stdout(&["formal", "rho", "--map", &data("deep.map"), "-N", "5"]);
    let (p, s): (Vec<_>, Vec<_>) = (perturbed.lines().collect(), standard.lines().collect());
    // The degree-1 tail only shows up from degree 3 on.
    assert_eq!(p[0], "degree 2: d1: a ↦ -[a,[a,b]], b ↦ [[a,b],b]");
    assert_eq!(p[0], s[0]);
    assert_ne!(p[1], s[1]);
    assert_eq!(
        stdout(&["formal", "jdeg", "--word", "a b - a - b + 1"]).trim(),
        "2"
    );
    let ups = stdout(&["formal", "upsilon", "--degree", "3", "--samples", "10"]);
    assert!(ups.contains("degree 3: rank 8 of 8"), "{ups}");
}

#[test]
fn exit_codes_and_error_names() {
    let usage = run(&["johnson"]);
    assert_eq!(usage.status.code(), Some(2));
    let usage = run(&["series", "degree", "--word", "a", "-N", "0"]);
    assert_eq!(usage.status.code(), Some(2));
    let missing = run(&["johnson", "degree", "--map", "/nonexistent.map"]);
    assert_eq!(missing.status.code(), Some(2));

    let cases: [(&[&str], &str); 5] = [
        (&["series", "degree", "--word", "a +"], "SyntaxError"),
        (
            &["johnson", "degree", "--map", &data("bad_witness.map")],
            "NotAnAutomorphism",
        ),
        (
            &["johnson", "tau", "--map", &data("swap.map")],
            "InvalidInput",
        ),
        (
            &["formal", "rho", "--map", &data("swap.map")],
            "NotUnipotent",
        ),
        (
            &[
                "formal",
                "jdeg",
                "--word",
                "a - 1",
                "--series",
                "zassenhaus:2",
            ],
            "RingNotRational",
        ),
    ];
    for (args, name) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(&format!("error[{name}]")), "{args:?}: {err}");
    }
    let cap = run(&["johnson", "tau", "--map", &data("deep.map"), "-N", "2"]);
    assert_eq!(cap.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&cap.stderr).contains("error[CapTooSmall]"));
}

#[test]
fn machine_output_reparses() {
    let al = ab();
    let z = CoefficientRing::Integers;
    let class = &machine(&[
        "series",
        "class",
        "--word",
        "[[a,b],b]^2 [a,[a,b]]",
        "--degree",
        "3",
    ])[0];
    let records: Vec<LieRecord> = serde_json::from_value(class["terms"].clone()).unwrap();
    let w = parse_word("[[a,b],b]^2 [a,[a,b]]", &al).unwrap();
    assert_eq!(
        LieElement::from_records(&al, z, &records).unwrap(),
        SeriesSpec::lower_central(&al).gr_class(&w, 3).unwrap()
    );

    let expanded = &machine(&["word", "expand", "--word", "a^-2 b a", "-N", "4"])[0];
    let records: Vec<SeriesRecord> = serde_json::from_value(expanded["terms"].clone()).unwrap();
    let s = TruncatedSeries::from_records(z, &al, 4, &records).unwrap();
    assert_eq!(
        s,
        magnus_expand(&parse_word("a^-2 b a", &al).unwrap(), z, 4)
    );

    let tau = &machine(&["johnson", "tau", "--map", &data("deep.map")])[0];
    let rec: DerivationRecord = serde_json::from_value(tau.clone()).unwrap();
    let d = Derivation::from_record(&rec, &EgLie::free(&al, z)).unwrap();
    assert_eq!(d.render_inline(), "d1: a ↦ -[a,[a,b]], b ↦ [[a,b],b]");

    let rho = &machine(&["formal", "rho", "--map", &data("inner_b.map"), "-N", "4"])[0];
    let q = EgLie::free(&al, CoefficientRing::Rationals);
    let comps: Vec<DerivationRecord> = serde_json::from_value(rho["components"].clone()).unwrap();
    let first = Derivation::from_record(&comps[0], &q).unwrap();
    assert_eq!(first.render_inline(), "d1: a ↦ -[a,b], b ↦ 0");
}

#[test]
fn machine_output_is_deterministic() {
    for args in [
        &[
            "series",
            "axioms",
            "-N",
            "4",
            "--samples",
            "30",
            "--seed",
            "7",
        ][..],
        &[
            "formal",
            "upsilon",
            "--degree",
            "3",
            "--samples",
            "12",
            "--seed",
            "7",
        ][..],
    ] {
        let mut full = vec!["--machine"];
        full.extend_from_slice(args);
        let a = run(&full);
        let b = run(&full);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn selftest_subset() {
    let out = stdout(&["selftest", "--only", "1", "--only", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("[PASS]")), "{out}");
    assert_eq!(run(&["selftest", "--only", "99"]).status.code(), Some(2));
}

/// Splits a transcript command line, honouring double quotes.
fn split_args(line: &str) -> Vec<String> {
    let mut args = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ' ' if !quoted => {
                if !cur.is_empty() {
                    args.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        args.push(cur);
    }
    args
}

#[test]
fn guide_transcripts_match() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../book/src/cli.md");
    let guide = std::fs::read_to_string(path).unwrap();
    let blocks = guide
        .split("```console\n")
        .skip(1)
        .map(|b| b.split("```").next().unwrap());
    let mut checked = 0;
    for block in blocks {
        let mut lines = block.lines().peekable();
        while let Some(cmd) = lines.next() {
            let cmd = cmd.strip_prefix("$ nseries ").expect("transcript command");
            let args: Vec<String> = split_args(cmd)
                .into_iter()
                .map(|a| if a.ends_with(".map") { data(&a) } else { a })
                .collect();
            let mut expected = Vec::new();
            while let Some(l) = lines.next_if(|l| !l.starts_with("$ ")) {
                expected.push(l);
            }
            let argv: Vec<&str> = args.iter().map(String::as_str).collect();
            let got = stdout(&argv);
            let got: Vec<&str> = got.lines().collect();
            if cmd.starts_with("selftest") {
                // Timings vary; compare the verdict and the evidence.
                let strip = |l: &str| {
                    l.split_once(')')
                        .map(|(h, t)| (h.split('(').next().unwrap().to_string(), t.to_string()))
                        .unwrap()
                };
                assert_eq!(
                    got.iter().map(|l| strip(l)).collect::<Vec<_>>(),
                    expected.iter().map(|l| strip(l)).collect::<Vec<_>>()
                );
            } else {
                assert_eq!(got, expected, "{cmd}");
            }
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} transcript commands");
}
