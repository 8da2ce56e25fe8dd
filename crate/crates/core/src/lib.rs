//! Exact engine for symmetric-function combinatorics.
//!
//! The crate provides sparse Laurent-polynomial arithmetic over exact
//! rationals, partitions and r-cores, truncated symmetric functions with
//! plethystic Exp/Log and substitution operators, Macdonald polynomials,
//! the Ext-character vertex operator, character-series assembly with
//! gluing, and the q-series identity suites built on top. Everything is
//! exact; there is no floating-point mode.

pub mod error;
pub mod macdonald;
pub mod vertexop;
pub mod partitions;
pub mod ring;
pub mod symfunc;

pub use error::{EngineError, Result};
pub use ring::{EqMode, MPoly, Rat, RatFunc, VarSet};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
