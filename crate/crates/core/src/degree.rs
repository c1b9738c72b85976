use std::fmt;

use serde::{Deserialize, Serialize};

/// A filtration degree computed by a truncated engine.
///
/// `AboveCap(n)` means every coefficient vanished up to the cap `n`, so the
/// true degree is at least `n + 1`. `Infinity` is reserved for the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degree {
    Finite(u32),
    AboveCap(u32),
    Infinity,
}

impl Degree {
    /// The best certified lower bound.
    pub fn lower_bound(&self) -> u64 {
        match self {
            Degree::Finite(d) => *d as u64,
            Degree::AboveCap(n) => *n as u64 + 1,
            Degree::Infinity => u64::MAX,
        }
    }

    /// True when the degree is certified to be at least `k`.
    pub fn is_at_least(&self, k: u32) -> bool {
        self.lower_bound() >= k as u64
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(*d),
            _ => None,
        }
    }

    /// Minimum of two degrees, keeping the weaker certificate.
    pub fn min(self, other: Degree) -> Degree {
        if self.lower_bound() <= other.lower_bound() {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::AboveCap(n) => write!(f, ">{n}"),
            Degree::Infinity => write!(f, "inf"),
        }
    }
}
