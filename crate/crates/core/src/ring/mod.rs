//! The reduced colored Magnus ring and words in the free colored Milnor group.

mod series;
mod word;

use num_bigint::BigInt;
use thiserror::Error;

pub use series::{monomial_bound, Color, MagnusSeries, Monomial, Variable};
pub use word::{parse_word, GroupWord, Letter, MAX_WORD_LEN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("series is not invertible: constant term {constant} is not 1")]
    NotInvertible { constant: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("word exceeds {limit} letters")]
    TooLong { limit: usize },
}

/// Magnus expansion of a word, truncated at `max_degree`.
pub fn expand(w: &GroupWord, max_degree: usize) -> MagnusSeries {
    w.expand(max_degree)
}
