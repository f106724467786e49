//! Induction and recursion over hereditarily finite sets: monotone operators and their least
//! fixedpoints, well-founded and rank recursion, recursive datatypes encoded as sets, and
//! propositional logic with a constructive completeness procedure.

pub mod cli;
pub mod datatypes;
pub mod error;
pub mod fixedpoint;
pub mod gen;
pub mod hf;
pub mod oracle;
pub mod ordinals;
pub mod proplogic;
pub mod recursion;
pub mod relations;
pub mod selftest;
pub mod sweep;

pub use error::{Error, Result};
pub use hf::{Config, Set, Universe};
