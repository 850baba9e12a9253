//! Exact engine for the Borel–Weil–Bott index of the cubic Dirac operator.
//!
//! Weights are kept in Dynkin labels with rational entries. Everything here is
//! `no_std` with `alloc`; file formats, the command line and the dense matrix
//! model live in companion crates.

#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod charring;
pub mod dsl;
pub mod error;
pub mod index;
pub mod limits;
pub mod mckean;
pub mod rootsys;
pub mod spinor;
pub mod weight;
pub mod weyl;

pub use charring::FormalCharacter;
pub use error::{Error, Result};
pub use index::{bwb_index, oracle_index, IndexResult};
pub use limits::Limits;
pub use rootsys::{CartanType, Family, RootSystem};
pub use spinor::{GradedCharacter, Subsystem};
pub use weight::{Rational, Weight};
pub use weyl::WeylElement;
