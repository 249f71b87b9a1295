//! Dense complex matrix helpers on top of `nalgebra`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// `m · m†`, computed with real matrix products.
///
/// The real route goes through the blocked `f64` kernels, which is several
/// times faster than the generic complex product for the 625 × 625 blocks
/// that show up in cubic geometries.
pub fn gram(m: &CMatrix) -> CMatrix {
    if m.nrows() * m.ncols() < 4096 {
        return m * m.adjoint();
    }
    let re = m.map(|z| z.re);
    let im = m.map(|z| z.im);
    let re_t = re.transpose();
    let im_t = im.transpose();
    let real = &re * &re_t + &im * &im_t;
    let imag = &im * &re_t - &re * &im_t;
    CMatrix::from_fn(m.nrows(), m.nrows(), |i, j| {
        Complex64::new(real[(i, j)], imag[(i, j)])
    })
}

/// Max-norm distance `max |m_ij - s δ_ij|`.
pub fn distance_from_scaled_identity(m: &CMatrix, scale: f64) -> f64 {
    let mut worst = 0.0_f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let target = if i == j { scale } else { 0.0 };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

/// Max-norm distance of `u u†` and `u† u` from the identity.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let left = distance_from_scaled_identity(&gram(u), 1.0);
    let right = distance_from_scaled_identity(&gram(&u.adjoint()), 1.0);
    left.max(right)
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    unitarity_deviation(u) <= tol
}

/// Max-norm distance between two matrices of equal shape.
pub fn max_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    // symmetrize away roundoff before the solver sees it
    let h = (m + m.adjoint()).map(|z| z * 0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_all(factors: &[CMatrix]) -> CMatrix {
    let mut out = CMatrix::from_element(1, 1, ONE);
    for f in factors {
        out = kron(&out, f);
    }
    out
}

pub fn from_rows(rows: &[&[Complex64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn pauli_x() -> CMatrix {
    from_rows(&[&[ZERO, ONE], &[ONE, ZERO]])
}

pub fn pauli_z() -> CMatrix {
    from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]])
}

/// Mixed-radix digits of `index`, most significant first.
pub fn digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    d
}

pub fn index_of(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_matches_direct_product() {
        let m = CMatrix::from_fn(70, 65, |i, j| {
            Complex64::new((i as f64 * 0.37).sin(), (j as f64 * 0.11 + i as f64).cos())
        });
        let fast = gram(&m);
        let slow = &m * m.adjoint();
        assert!(max_distance(&fast, &slow) < 1e-10);
    }

    #[test]
    fn digit_round_trip() {
        for i in 0..81 {
            assert_eq!(index_of(&digits(i, 3, 4), 3), i);
        }
        assert_eq!(digits(5, 2, 4), vec![0, 1, 0, 1]);
    }

    #[test]
    fn eigenvalues_of_projector() {
        let v = [ONE, I];
        let p = CMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj() * 0.5);
        let ev = hermitian_eigenvalues(&p);
        assert!(ev[0].abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }
}
