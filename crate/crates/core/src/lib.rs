//! Exact computations for the rank-one free boson, its Z2 orbifold, the
//! orbifold's irreducible modules and their fusion rules.

pub mod characters;
pub mod error;
pub mod exact;
pub mod fock;
pub mod fusion;
pub mod labels;
pub mod verify;
pub mod vertexops;
pub mod virasoro;
pub mod zhu;

pub use error::{Error, Result};
