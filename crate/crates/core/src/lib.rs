//! Reversible circuit synthesis over NOT/Feynman/Toffoli gate libraries.
//!
//! Reversible circuits on `n` wires are permutations of `2^n` points. This
//! crate provides the permutation arithmetic, the gate model, Schreier–Sims
//! stabilizer chains for membership and factorization, exact length- and
//! cost-optimal synthesis by search over the Cayley graph of a library, and
//! the census over all 4095 sub-libraries of the 3-wire NFT library.

pub mod error;
pub mod experiments;
pub mod gate;
pub mod perm;
pub mod schreier_sims;
pub mod synth;

pub use error::{Error, Result};
pub use gate::{Circuit, CostModel, Gate, GateLibrary};
pub use perm::{Permutation, Specification};
pub use schreier_sims::{SiftResult, StabilizerChain};
