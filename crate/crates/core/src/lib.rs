//! Equational theory of the monoid variety generated by `A1 x B1`.
//!
//! The crate bundles finite monoid evaluation, the identity basis of the
//! variety, a canonical-form rewriter that emits checkable derivations, a
//! polynomial identity decider with an exhaustive oracle, and the subvariety
//! lattice with its Hasse diagram.

pub mod basis;
pub mod canon;
pub mod cli;
pub mod decider;
mod error;
pub mod lattice;
pub mod monoid;
pub mod word;

pub use error::{Error, ParseError, Result};
pub use word::{Identity, Letter, Word};
