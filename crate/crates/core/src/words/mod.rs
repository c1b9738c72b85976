//! Free groups: weighted alphabets, freely reduced words, the word DSL and
//! endomorphisms given by generator images.
//!
//! Conventions are fixed throughout the crate:
//! `[g, h] = g h g⁻¹ h⁻¹` and the left conjugate `ᵍh = g h g⁻¹`.

mod alphabet;
mod map;
mod parse;
mod word;

pub use alphabet::Alphabet;
pub use map::GroupMap;
pub(crate) use parse::Cursor;
pub use parse::{parse_combination, parse_word, WordCombination};
pub use word::{word_op, ReducedWord, Syllable, WordOp};
