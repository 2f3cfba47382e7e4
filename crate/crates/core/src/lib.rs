//! Exact small quantum cohomology of projectivised Fano bundles over projective space.
//!
//! The pipeline: a [`ring::BundleSpec`] gives the classical ring; [`seeds`]
//! supplies two-point invariants for low-degree columns; [`reconstruct`] fills
//! the quantum multiplication matrices `M_p`, `M_xi`; [`qde`] solves the
//! quantum differential system for the J-function; [`lefschetz`] turns its
//! identity component into the period sequence of a complete intersection and
//! checks Picard–Fuchs operators against it.

pub mod error;
pub mod expr;
pub mod fixtures;
pub mod lefschetz;
pub mod linalg;
pub mod novikov;
pub mod qde;
pub mod rational;
pub mod reconstruct;
pub mod ring;
pub mod schubert;
pub mod seeds;

pub use error::{Error, Result};
