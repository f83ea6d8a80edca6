//! Component groups, reduction types and local Galois cohomology of algebraic tori, computed
//! from finite group actions on integer lattices.

pub mod cli;
pub mod error;
pub mod gcoh;
pub mod gmod;
pub mod intlat;
pub mod json;
pub mod localfield;
pub mod reductive;
pub mod torus;

pub use error::{Error, Result};
pub use intlat::{FgAbGroup, IntMatrix};
