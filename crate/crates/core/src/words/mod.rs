//! Free-group words: reduction, commutators, basic commutators and the
//! truncated Magnus expansion.

mod hall;
mod magnus;
mod parse;
mod word;

pub use hall::{hall_basis, BasicCommutator};
pub use magnus::{lcs_weight, magnus_evaluate, magnus_expand, LcsWeight, MagnusSeries};
pub use parse::{parse_word, parse_word_over, ParseError};
pub use word::{letter_name, Word};

/// Freely reduced form of `w`.
pub fn reduce(w: &Word) -> Word {
    w.reduce()
}
