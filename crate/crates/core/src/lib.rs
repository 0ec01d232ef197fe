//! Heteroclinic connections for the p-Laplacian system with planar
//! potentials `|f|^q`: level-set tracing, reparametrization, direct action
//! minimization and family-level analysis.

pub mod action;
pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod geodesic;
pub mod io;
pub mod potential;
pub mod quadrature;
pub mod rk;

pub use catalog::Family;
pub use error::{Error, Result};
pub use geodesic::{CurveSample, GeodesicCurve, TraceOptions, TraceOutcome};
pub use potential::{BranchTag, Potential, PotentialSpec};
