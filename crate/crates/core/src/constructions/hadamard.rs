//! Complex Hadamard matrices and the gates built from them on the square and
//! the cube.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::{Convention, OperatorMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct HadamardMatrix {
    entries: CMatrix,
}

impl HadamardMatrix {
    /// Validates unimodular entries and unitarity of `H/√N` within `1e-9`.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !is_complex_hadamard(&entries, 1e-9) {
            return Err(Error::NotHadamard);
        }
        Ok(Self { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        linalg::max_distance(&self.entries, &self.entries.transpose()) <= tol
    }

    /// `[[1, i], [i, 1]]`.
    pub fn qubit_symmetric() -> Self {
        let (one, i) = (linalg::ONE, linalg::I);
        Self {
            entries: linalg::from_rows(&[&[one, i], &[i, one]]),
        }
    }

    /// Checks a given equivalence witness `other = P₂ D₂ self D₁ P₁`.
    pub fn is_equivalent_via(
        &self,
        other: &HadamardMatrix,
        d1: &CMatrix,
        d2: &CMatrix,
        p1: &CMatrix,
        p2: &CMatrix,
        tol: f64,
    ) -> bool {
        let n = self.size();
        let is_diag_unitary = |d: &CMatrix| {
            d.shape() == (n, n)
                && (0..n).all(|i| (0..n).all(|j| i == j || d[(i, j)].norm() == 0.0))
                && linalg::is_unitary(d, tol)
        };
        let is_perm = |p: &CMatrix| {
            p.shape() == (n, n)
                && p.iter()
                    .all(|z| z.im == 0.0 && (z.re == 0.0 || z.re == 1.0))
                && linalg::is_unitary(p, 0.0)
        };
        if !(is_diag_unitary(d1) && is_diag_unitary(d2) && is_perm(p1) && is_perm(p2)) {
            return false;
        }
        linalg::max_distance(&(p2 * d2 * &self.entries * d1 * p1), &other.entries) <= tol
    }
}

/// `F_{jk} = e^{2πi jk/N}` with 0-based `j, k`.
pub fn fourier_hadamard(n: usize) -> HadamardMatrix {
    let entries = CMatrix::from_fn(n, n, |j, k| {
        let e = (j * k) % n;
        if e == 0 {
            linalg::ONE
        } else {
            Complex64::from_polar(1.0, TAU * e as f64 / n as f64)
        }
    });
    HadamardMatrix { entries }
}

/// Unimodular entries and `H H† = N·1`, both within `tol`.
pub fn is_complex_hadamard(m: &CMatrix, tol: f64) -> bool {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return false;
    }
    if m.iter().any(|z| (z.norm() - 1.0).abs() > tol) {
        return false;
    }
    let scaled = m.map(|z| z / (n as f64).sqrt());
    linalg::is_unitary(&scaled, tol)
}

/// `Ǔ_{ab}^{cd} = A_a^b B_b^d C_d^c E_c^a / N`: one Hadamard factor per edge
/// of the square, multiplied entrywise.
pub fn hadamard_square(
    a: &HadamardMatrix,
    b: &HadamardMatrix,
    c: &HadamardMatrix,
    e: &HadamardMatrix,
) -> Result<OperatorMatrix> {
    let n = a.size();
    for m in [b, c, e] {
        if m.size() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.size(),
            });
        }
    }
    let mut u = CMatrix::zeros(n * n, n * n);
    for i1 in 0..n {
        for i2 in 0..n {
            for o1 in 0..n {
                for o2 in 0..n {
                    let h = a.get(i1, i2) * b.get(i2, o2) * c.get(o2, o1) * e.get(o1, i1);
                    u[(o1 * n + o2, i1 * n + i2)] = h / n as f64;
                }
            }
        }
    }
    OperatorMatrix::new(n, 2, u, Convention::Edge)
}

/// Diagonal two-site factor `(D^A_{jk})^{a}_{a} = A[a_j][a_k]` on four sites.
fn edge_phase(a: &HadamardMatrix, j: usize, k: usize) -> Vec<Complex64> {
    let n = a.size();
    (0..n.pow(4))
        .map(|idx| {
            let d = linalg::digits(idx, n, 4);
            a.get(d[j], d[k])
        })
        .collect()
}

/// `Ǔ = N⁻² D (A⊗A⊗A⊗A) D` with `D = D^A_{14} D^A_{34} D^A_{23} D^A_{12}`: the
/// twelve edges of the cube each carry one copy of a symmetric Hadamard `A`.
pub fn hadamard_cube(a: &HadamardMatrix) -> Result<OperatorMatrix> {
    if !a.is_symmetric(1e-12) {
        return Err(Error::AsymmetricHadamard);
    }
    let n = a.size();
    let dim = n.pow(4);
    let mut ring = vec![linalg::ONE; dim];
    for (j, k) in [(0, 3), (2, 3), (1, 2), (0, 1)] {
        for (r, p) in ring.iter_mut().zip(edge_phase(a, j, k)) {
            *r *= p;
        }
    }
    let kicks = linalg::kron_all(&vec![a.matrix().clone(); 4]);
    let norm = (n * n) as f64;
    let u = CMatrix::from_fn(dim, dim, |r, c| ring[r] * kicks[(r, c)] * ring[c] / norm);
    OperatorMatrix::new(n, 4, u, Convention::Edge)
}
