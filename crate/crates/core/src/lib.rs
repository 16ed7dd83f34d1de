//! Bergman fans of matroids: fan structures, Chow-ring degrees, characteristic
//! polynomials, CSM weights and lattice maps between fans.

pub mod bitset;
pub mod chow;
pub mod csm;
pub mod error;
pub mod fan;
pub mod invariants;
pub mod linalg;
pub mod maps;
pub mod matroid;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use invariants::IntPolynomial;
pub use matroid::{FlatsLattice, GroundSet, GroupTable, Matroid};
