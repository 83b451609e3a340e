//! Exact structure theory of real spherical homogeneous spaces: adapted
//! parabolics, spherical roots, compression cones, degenerations, the
//! wavefront property, Levi induction and the tempered-exponent layer.

pub mod cones;
pub mod error;
pub mod liealg;
pub mod linalg;
pub mod rootsys;

pub use error::{Error, Result};
pub mod catalog;
pub mod spherical;
pub mod wavefront;
pub mod induction;
pub mod exponents;
pub mod cli;
