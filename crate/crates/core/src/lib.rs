//! Pseudopolynomial 0/1 knapsack solvers on top of a bounded monotone
//! tropical convolution engine, with balancing, hardness gadgets and a
//! verification harness.

pub mod convolution;
pub mod balancing;
pub mod knapsack_base;
pub mod knapsack_main;
pub mod error;
pub mod hardness;
pub mod harness;
pub mod types;

pub use error::{Error, Result};
pub use types::*;
