//! Shear-coordinate description of Teichmüller spaces of bordered surfaces:
//! geodesic functions as traces of 2×2 matrix words, the Poisson and
//! quantum algebras they generate, flips, braid actions, doubling and the
//! tropical limit.

pub mod algebras;
pub mod cli;
pub mod error;
pub mod fatgraph;
pub mod foliation;
pub mod geodesic;
pub mod moves;
pub mod poisson;
pub mod ring;

pub use error::{Error, Result};

#[cfg(test)]
mod proptests;
