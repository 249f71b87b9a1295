//! Two-qubit dual unitary gates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, I};
use crate::state::{Convention, OperatorMatrix};

fn check_su2(s: &CMatrix, index: usize) -> Result<()> {
    let ok = s.nrows() == 2
        && s.ncols() == 2
        && linalg::is_unitary(s, 1e-9)
        && (s.determinant() - 1.0).norm() <= 1e-9;
    if ok {
        Ok(())
    } else {
        Err(Error::NotSpecialUnitary(index))
    }
}

/// `diag(e^{iα}, e^{-iα}, e^{-iα}, e^{iα}) = e^{iα Z₁Z₂}`.
fn zz_phase(alpha: f64) -> CMatrix {
    let p = Complex64::from_polar(1.0, alpha);
    let m = p.conj();
    CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![p, m, m, p]))
}

/// `U = e^{iφ} (S₁⊗S₂) e^{iα Z₁Z₂} (S₃⊗S₄)` in the diagonal convention.
pub fn cartan_dual_unitary(phi: f64, alpha: f64, s: [&CMatrix; 4]) -> Result<OperatorMatrix> {
    for (j, m) in s.iter().enumerate() {
        check_su2(m, j + 1)?;
    }
    let u = linalg::kron(s[0], s[1]) * zz_phase(alpha) * linalg::kron(s[2], s[3]);
    let phase = Complex64::from_polar(1.0, phi);
    OperatorMatrix::new(2, 2, u.map(|z| z * phase), Convention::Diagonal)
}

/// `e^{iφ} (Vᵗ⊗Vᵗ) e^{iα Z₁Z₂} (V⊗V)`, a self-dual gate for every `V ∈ SU(2)`.
pub fn self_dual_family(v: &CMatrix, alpha: f64, phi: f64) -> Result<OperatorMatrix> {
    check_su2(v, 1)?;
    let vt = v.transpose();
    cartan_dual_unitary(phi, alpha, [&vt, &vt, v, v])
}

/// The self-dual kicked Ising gate `Ǔ`, exactly
/// `(i/2)[[1,-1,-1,-1],[-1,-1,1,-1],[-1,1,-1,-1],[-1,-1,-1,1]]`.
pub fn kicked_ising_gate() -> OperatorMatrix {
    const SIGNS: [[f64; 4]; 4] = [
        [1.0, -1.0, -1.0, -1.0],
        [-1.0, -1.0, 1.0, -1.0],
        [-1.0, 1.0, -1.0, -1.0],
        [-1.0, -1.0, -1.0, 1.0],
    ];
    let m = CMatrix::from_fn(4, 4, |r, c| I * 0.5 * SIGNS[r][c]);
    OperatorMatrix::new(2, 2, m, Convention::Edge).expect("4 × 4")
}
