//! Fox colorings, dihedral quandle cocycle invariants and minimal color
//! numbers of knot and link diagrams.
//!
//! All arithmetic is exact. Diagrams come in as PD codes ([`pdcode`]), arc
//! colorings are the kernel of the coloring matrix mod p ([`linalg`],
//! [`coloring`]), and the state sum of the Mochizuki 3-cocycle over shadow
//! colorings gives the multiset invariant ([`cocycle`]). [`mincolor`] and
//! [`families`] build palette bounds and searches on top of that.

pub mod cli;
pub mod cocycle;
pub mod coloring;
pub mod error;
pub mod families;
pub mod linalg;
pub mod mincolor;
pub mod pdcode;

pub use error::{Error, Result};
