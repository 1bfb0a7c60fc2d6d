//! latspec: a finite-lattice workbench.
//!
//! Builds small lattices from cover graphs, analyzes their congruences, closes
//! generator triples inside direct products with a frontier algorithm, parses
//! run files of assignment and constraint lines, and enumerates atom/coatom
//! spectra over all constraint-valid subsets of the assignments.

pub mod catalog;
pub mod congruence;
pub mod enumerate;
pub mod lattice;
pub mod product;
pub mod runfile;
pub mod spectra;

pub use lattice::{CoverGraph, Elem, FiniteLattice, LatticeError};
