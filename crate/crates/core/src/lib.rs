//! Correlation measures for two-qubit states: mutual information, classical
//! correlation, quantum discord and the weak-measurement super discord.
//!
//! Two-qubit operators use `A` as the left tensor factor, with basis order
//! `|00>, |01>, |10>, |11>`. All entropies are in bits.

pub mod cli;
pub mod correlations;
pub mod error;
pub mod format;
pub mod linalg;
pub mod quantum;
pub mod rra;
pub mod verify;

pub use error::{Error, Result};
