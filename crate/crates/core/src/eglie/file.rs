//! Text, file and JSON forms of derivations.
//!
//! File format:
//!
//! ```text
//! degree: 1
//! d0:
//! t -> [a,b]
//! d1:
//! a -> 0
//! b -> [a,b]
//! ```
//!
//! Sections `d0` (`L_0` generators), `d1` (weight-1 generators) and `d2`
//! (weight-2 generators) hold `gen -> lie-expression` lines; omitted
//! generators map to 0 and `#` starts a comment line.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::eglie::{Derivation, EgLie};
use crate::error::{Error, Result};
use crate::freelie::{parse_lie, LieElement, LieRecord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorValue {
    pub generator: String,
    pub value: Vec<LieRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationRecord {
    pub degree: u32,
    pub d0: Vec<GeneratorValue>,
    pub d1: Vec<GeneratorValue>,
    pub d2: Vec<GeneratorValue>,
}

impl Derivation {
    /// `(section, generator name, value)` triples in display order.
    fn sections(&self) -> Vec<(&'static str, String, &LieElement)> {
        let mut out = Vec::new();
        if let Some(l0) = self.parent().l0_alphabet() {
            for (i, v) in self.d0().iter().enumerate() {
                out.push(("d0", l0.name(i).to_string(), v));
            }
        }
        let al = self.parent().alphabet();
        for (section, w) in [("d1", 1), ("d2", 2)] {
            for i in al.letters_of_weight(w) {
                out.push((section, al.name(i).to_string(), self.value(i)));
            }
        }
        out
    }

    /// One line, e.g. `d1: a ↦ 0, b ↦ [a,b]`.
    pub fn render_inline(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut current = "";
        for (section, name, v) in self.sections() {
            if section != current {
                parts.push(format!("{section}: {name} ↦ {v}"));
                current = section;
            } else {
                let last = parts.last_mut().unwrap();
                last.push_str(&format!(", {name} ↦ {v}"));
            }
        }
        parts.join("; ")
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("degree: {}\n", self.degree());
        let mut current = "";
        for (section, name, v) in self.sections() {
            if section != current {
                out.push_str(&format!("{section}:\n"));
                current = section;
            }
            out.push_str(&format!("{name} -> {v}\n"));
        }
        out
    }

    pub fn parse_file(text: &str, parent: &Arc<EgLie>) -> Result<Derivation> {
        let al = parent.alphabet();
        let mut degree = None;
        let mut section: Option<&str> = None;
        let mut d0 = vec![LieElement::zero(al, parent.ring()); parent.l0_rank()];
        let mut values = vec![LieElement::zero(al, parent.ring()); al.rank()];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::InvalidInput(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("degree:") {
                degree = Some(
                    rest.trim()
                        .parse::<u32>()
                        .map_err(|_| err("bad degree".into()))?,
                );
                continue;
            }
            if let Some(s) = ["d0:", "d1:", "d2:"].iter().find(|s| line == **s) {
                section = Some(&s[..2]);
                continue;
            }
            let (name, rhs) = line
                .split_once("->")
                .ok_or_else(|| err("expected `gen -> expression`".into()))?;
            let name = name.trim();
            let value = parse_lie(rhs, al, parent.ring()).map_err(|e| match e {
                Error::SyntaxError { pos, msg } => err(format!("column {pos}: {msg}")),
                other => other,
            })?;
            match section {
                Some("d0") => {
                    let l0 = parent
                        .l0_alphabet()
                        .ok_or_else(|| err("L_0 is trivial".into()))?;
                    let i = l0.index_of(name).ok_or_else(|| Error::UnknownGenerator {
                        name: name.into(),
                        pos: 0,
                    })?;
                    d0[i] = value;
                }
                Some(s) => {
                    let i = al.index_of(name).ok_or_else(|| Error::UnknownGenerator {
                        name: name.into(),
                        pos: 0,
                    })?;
                    let want = if s == "d1" { 1 } else { 2 };
                    if al.weight(i) != want {
                        return Err(err(format!(
                            "`{name}` has weight {}, not {want}",
                            al.weight(i)
                        )));
                    }
                    values[i] = value;
                }
                None => return Err(err("value outside a d0/d1/d2 section".into())),
            }
        }
        let degree = degree.ok_or_else(|| Error::InvalidInput("missing `degree:` line".into()))?;
        Derivation::new(parent, degree, d0, values)
    }

    pub fn to_record(&self) -> DerivationRecord {
        let mut rec = DerivationRecord {
            degree: self.degree(),
            d0: Vec::new(),
            d1: Vec::new(),
            d2: Vec::new(),
        };
        for (section, name, v) in self.sections() {
            let gv = GeneratorValue {
                generator: name,
                value: v.to_records(),
            };
            match section {
                "d0" => rec.d0.push(gv),
                "d1" => rec.d1.push(gv),
                _ => rec.d2.push(gv),
            }
        }
        rec
    }

    pub fn from_record(rec: &DerivationRecord, parent: &Arc<EgLie>) -> Result<Derivation> {
        let al = parent.alphabet();
        let ring = parent.ring();
        let mut d0 = vec![LieElement::zero(al, ring); parent.l0_rank()];
        let mut values = vec![LieElement::zero(al, ring); al.rank()];
        for gv in &rec.d0 {
            let l0 = parent
                .l0_alphabet()
                .ok_or_else(|| Error::StructureMismatch("L_0 is trivial".into()))?;
            let i = l0
                .index_of(&gv.generator)
                .ok_or_else(|| Error::UnknownGenerator {
                    name: gv.generator.clone(),
                    pos: 0,
                })?;
            d0[i] = LieElement::from_records(al, ring, &gv.value)?;
        }
        for gv in rec.d1.iter().chain(&rec.d2) {
            let i = al
                .index_of(&gv.generator)
                .ok_or_else(|| Error::UnknownGenerator {
                    name: gv.generator.clone(),
                    pos: 0,
                })?;
            values[i] = LieElement::from_records(al, ring, &gv.value)?;
        }
        Derivation::new(parent, rec.degree, d0, values)
    }
}
