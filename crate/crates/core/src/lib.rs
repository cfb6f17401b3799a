//! Construction and verification of Hamilton cycles with guaranteed
//! orientation discrepancy in dense oriented graphs.
//!
//! Given an oriented graph whose underlying minimum degree δ is at least
//! half the vertex count, [`solver::max_discrepancy_hamilton`] builds a
//! Hamilton cycle on which at least δ edges point the same way around, and
//! [`certify::verify_hamilton_cycle`] re-checks every claim from scratch.
//! The [`instruments`] module supplies a brute-force oracle, instance
//! generators and exhaustive sweeps that validate the construction at desk
//! scale.

pub mod absorb;
pub mod certify;
pub mod format;
pub mod graph;
pub mod hamilton;
pub mod instruments;
pub mod solver;

mod view;

pub use certify::{verify_hamilton_cycle, verify_path, CycleCert, PathCert, SigmaStats, Verdict};
pub use graph::{OrientedGraph, VertexId};
