//! Two-qubit dense-coding alphabets, Pauli channels and Holevo capacities.
//!
//! The crate builds the four-letter signal alphabets a sender generates by
//! acting with local unitaries on one half of a shared (partially)
//! entangled pair, pushes the letters through ideal and Pauli noise
//! channels, and evaluates the Holevo quantity of the resulting ensembles.
//! Everything is dense, small (2x2 and 4x4) and dependency-light.

// Indexed loops over fixed 2x2/4x4 matrices read better than iterator
// chains here.
#![allow(clippy::needless_range_loop)]

pub mod alphabets;
pub mod capacity;
pub mod channels;
pub mod error;
pub mod linalg;
pub mod states;

pub use error::{Error, Result};
