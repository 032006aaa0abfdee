//! Universal cycles and universal words for subsets of `A^n`.

pub mod bounds;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod par;
pub mod structure;
pub mod universal;
pub mod words;

pub use error::{Error, Result};
