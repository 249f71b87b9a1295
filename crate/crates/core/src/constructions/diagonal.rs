//! Diagonal unitaries `D^a_a = e^{iφ_a}` dressing the identity with phases.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::{self, CMatrix};
use crate::state::{Convention, OperatorMatrix};

/// Real phases `φ` indexed by tuples in `{0..N}^arity` (mixed radix, first
/// entry most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable {
    n: usize,
    arity: usize,
    phases: Vec<f64>,
}

impl PhaseTable {
    pub fn new(n: usize, arity: usize, phases: Vec<f64>) -> Result<Self> {
        let len = n.pow(arity as u32);
        if phases.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: phases.len(),
            });
        }
        Ok(Self { n, arity, phases })
    }

    pub fn zeros(n: usize, arity: usize) -> Self {
        Self {
            n,
            arity,
            phases: vec![0.0; n.pow(arity as u32)],
        }
    }

    pub fn from_fn<F: FnMut(&[usize]) -> f64>(n: usize, arity: usize, mut f: F) -> Self {
        let len = n.pow(arity as u32);
        let phases = (0..len).map(|i| f(&linalg::digits(i, n, arity))).collect();
        Self { n, arity, phases }
    }

    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn get(&self, tuple: &[usize]) -> f64 {
        self.phases[linalg::index_of(tuple, self.n)]
    }

    pub fn set(&mut self, tuple: &[usize], phase: f64) {
        let i = linalg::index_of(tuple, self.n);
        self.phases[i] = phase;
    }

    /// Invariance under the permutations of the diagonals induced by the
    /// geometry's generators. This is exactly the condition for the diagonal
    /// gate's state to be spatially symmetric.
    pub fn is_symmetric_for(&self, geometry: &Geometry, tol: f64) -> bool {
        if geometry.half() != self.arity || !geometry.has_diagonals() {
            return false;
        }
        let h = self.arity;
        geometry.generators().iter().all(|g| {
            let sigma: Vec<usize> = (0..h).map(|j| g.apply(j) % h).collect();
            (0..self.phases.len()).all(|i| {
                let a = linalg::digits(i, self.n, h);
                let mut moved = vec![0; h];
                for j in 0..h {
                    moved[sigma[j]] = a[j];
                }
                (self.phases[i] - self.get(&moved)).abs() <= tol
            })
        })
    }
}

/// `D = diag(e^{iφ_a})` in the diagonal convention.
pub fn diagonal_gate(geometry: &Geometry, phases: &PhaseTable) -> Result<OperatorMatrix> {
    if !geometry.has_diagonals() {
        return Err(Error::NoDiagonals(geometry.kind()));
    }
    if phases.arity != geometry.half() {
        return Err(Error::ArityMismatch {
            expected: geometry.half(),
            found: phases.arity,
        });
    }
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        phases.phases.len(),
        phases.phases.iter().map(|&p| Complex64::from_polar(1.0, p)),
    ));
    OperatorMatrix::new(phases.n, phases.arity, d, Convention::Diagonal)
}

/// `exp[i(γ(Z₁Z₂ + Z₂Z₃ + Z₁Z₃) + δ Z₁Z₂Z₃)]` on three qubits, with `Z = +1`
/// on value 0.
pub fn hexagonal_qubit_diagonal(gamma: f64, delta: f64) -> OperatorMatrix {
    let table = PhaseTable::from_fn(2, 3, |t| {
        let z: Vec<f64> = t.iter().map(|&v| if v == 0 { 1.0 } else { -1.0 }).collect();
        gamma * (z[0] * z[1] + z[1] * z[2] + z[0] * z[2]) + delta * z[0] * z[1] * z[2]
    });
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        8,
        table.phases.iter().map(|&p| Complex64::from_polar(1.0, p)),
    ));
    OperatorMatrix::new(2, 3, d, Convention::Diagonal).expect("8 × 8 diagonal")
}
