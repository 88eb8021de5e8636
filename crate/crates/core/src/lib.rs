//! Affine OneMax (AOM) test functions for black-box optimization.
//!
//! An AOM function is `f(x) = onemax(Mx + b)` with `M` invertible over GF(2).
//! The crate generates general and transvection-sequence instances, learns
//! and maximizes them (sparse Fourier learning and exact deterministic
//! solvers), and benchmarks classical search heuristics on them.

pub mod aom;
pub mod bench;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod heuristics;
pub mod km;
pub mod rng;
pub mod solvers;
pub mod spectrum;
pub mod transvection;

pub use aom::{AomFunction, CountingOracle, Oracle};
pub use error::{Error, Result};
pub use gf2::{BitMat, BitVec};
pub use rng::Rng;
pub use transvection::{ClassTag, Transvection, TransvectionSequence};
