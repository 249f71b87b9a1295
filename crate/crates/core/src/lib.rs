//! Multi-directional unitary operators and their states on symmetric
//! arrangements of sites: geometries, dense state tooling, explicit
//! constructions and exact classical solutions.

pub mod classical;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod state;

pub use error::{Error, Result};
pub use geometry::{Geometry, GeometryKind, SitePermutation};
pub use linalg::CMatrix;
pub use num_complex::Complex64;
pub use state::{
    DensityMatrix, MultidirectionalReport, OperatorMatrix, PureState, DEFAULT_TOL, ENTROPY_TOL,
};
