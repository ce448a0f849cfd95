//! Exact character theory for small nilpotent groups.

pub mod error;
pub mod chartable;
pub mod cli;
pub mod charops;
pub mod constructions;
pub mod cyclotomic;
pub mod group;
pub mod harness;
pub mod modp;
pub mod numtheory;
pub mod perm;

pub use error::{Error, Result};
