//! Exact computations for Lie algebras twisted by invertible derivations.
//!
//! The crate covers validation of Inv-derivations and the twisted bracket,
//! representations and semidirect products, the degree 1 and 2 cochain
//! complex with its cohomology, truncated formal deformations, and central
//! extensions with their classification. All arithmetic is over exact
//! rationals.

pub mod cli;
pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod io;
pub mod lie;
pub mod qlinalg;
pub mod report;
pub mod representation;

pub use error::{Error, Result};
pub use lie::{InvDerStructure, LieAlgebra, StructureConstants};
pub use qlinalg::{Matrix, Rational, Vector};
pub use report::{Identity, Report, Residual, Violation};
