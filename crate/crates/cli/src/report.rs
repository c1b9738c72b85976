use std::fmt;

use nseries::formal::DerivationTail;
use serde_json::{json, Value};

/// Text or JSON-lines output.
pub struct Out {
    pub machine: bool,
}

impl Out {
    pub fn emit(&self, text: impl fmt::Display, record: Value) {
        if self.machine {
            println!("{record}");
        } else {
            println!("{text}");
        }
    }
}

pub fn tail_json(t: &DerivationTail) -> Value {
    let components: Vec<_> = t.components().iter().map(|d| d.to_record()).collect();
    json!({ "cap": t.cap(), "leading_degree": t.leading_degree(), "components": components })
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(nseries::Error),
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(_) | CliError::Check(_) => 1,
        }
    }
}

impl From<nseries::Error> for CliError {
    fn from(e: nseries::Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Lib(e) => write!(f, "error[{}]: {e}", e.name()),
            CliError::Check(msg) => write!(f, "check failed: {msg}"),
        }
    }
}
