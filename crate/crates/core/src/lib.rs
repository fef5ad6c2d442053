//! Exact arithmetic for skew-symmetric matrices of linear forms of constant rank.
//!
//! The crate certifies that a matrix of linear forms has the same rank at
//! every point of projective space, skew-symmetrizes matrices presented up
//! to a left factor, computes Kronecker minimal indices on lines, and
//! tabulates the Chern-class numerology of rank-2 bundles on `P^3`.

pub mod certify;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod lines;
pub mod numerology;
pub mod pfaffian;
pub mod poly;
pub mod polymat;
pub mod scalars;
pub mod skewsym;

pub use error::{Error, Result};
