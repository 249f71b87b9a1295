//! Explicit families of multi-directional unitary operators and their states.

pub mod diagonal;
pub mod graph;
pub mod hadamard;
pub mod qubit;

pub use diagonal::{diagonal_gate, hexagonal_qubit_diagonal, PhaseTable};
pub use graph::{
    determinant_for, graph_state, integer_determinant, reduced_incidence_determinant,
    reduced_incidence_matrix, symmetric_incidence, DeterminantVerdict, IncidenceGraph,
};
pub use hadamard::{
    fourier_hadamard, hadamard_cube, hadamard_square, is_complex_hadamard, HadamardMatrix,
};
pub use qubit::{cartan_dual_unitary, kicked_ising_gate, self_dual_family};

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::state::{state_from_operator, OperatorMatrix, PureState};

/// The product of Bell pairs along the diagonals, `ψ(a; a) = N^{-K/4}`.
pub fn identity_state(geometry: &Geometry, n: usize) -> Result<PureState> {
    if !geometry.has_diagonals() {
        return Err(Error::NoDiagonals(geometry.kind()));
    }
    state_from_operator(&OperatorMatrix::identity(n, geometry.half()), geometry)
}
