//! Two-dimensional geometric knapsack toolkit.
//!
//! Items are open axis-parallel rectangles with integer sides and profits,
//! packed into an `N x N` square. The crate provides the building blocks of
//! the L-packing and container based approximation algorithms together with
//! exact oracles used to check them.

pub mod containers;
pub mod core;
pub mod error;
pub mod gap;
pub mod generate;
pub mod longring;
pub mod lpack;
pub mod ratios;
pub mod shelf;
pub mod solvers;
pub mod steinberg;

pub use error::{Error, Result};

/// Exact rational used for epsilon-type parameters.
pub type Rat = num::rational::Ratio<i64>;

/// Convenience constructor for [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}
