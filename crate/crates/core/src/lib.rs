//! Exact constructions and finite-window diagnostics for Sturmian words,
//! Sturmian permutations and other infinite permutations.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactreal`]: numbers `(a + b*sqrt(d))/c` with exact order and floor.
//! * [`words`]: factors, complexity, special factors, conjugacy, periods.
//! * [`sturmian`]: rotation codings and the standard-word tower of a slope.
//! * [`permutations`]: patterns, permutation complexity, underlying words,
//!   monotone chains and extremal elements.
//! * [`constructions`]: representatives of named permutations.
//! * [`analysis`]: star discrepancy and verification reports.
//!
//! The guide in `book/` walks through the same material; its code blocks
//! are compiled and run as doctests of this crate.

pub mod analysis;
pub mod constructions;
pub mod exactreal;
pub mod permutations;
pub mod sturmian;
pub mod words;

pub use exactreal::{ExactError, ExactReal};
pub use permutations::{Pattern, Representative};
pub use sturmian::{Convention, SturmianSpec};
pub use words::{ComplexityProfile, Word};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-reals.md")]
    mod exact_reals {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/sturmian.md")]
    mod sturmian {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
}
