//! Simplicial sets over exact rationals, points of their geometric
//! realization, Skorokhod neighbourhoods of step-function paths, and the
//! metrics on the realization.

pub mod delta;
pub mod error;
pub mod filters;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod rational;
pub mod realization;
pub mod sset;

pub use delta::MonotoneMap;
pub use error::{Error, Result};
pub use rational::Q;
pub use realization::{PLHomeo, PathSimplex, RealizationPoint, StepFunction};
pub use sset::{std_simplex, FinSSet, SimplexInstance};
