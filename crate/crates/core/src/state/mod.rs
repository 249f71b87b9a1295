//! Dense pure states, reduced density matrices and entanglement checks.
//!
//! A [`PureState`] over `K` sites of local dimension `N` stores all `N^K`
//! amplitudes. The basis index is the big-endian mixed-radix number formed by
//! the site values, site 1 being the most significant digit. Site values are
//! `0..N` internally and `1..=N` whenever they are shown to a user.

pub mod operator;
pub mod symmetry;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::{self, CMatrix, ZERO};

pub use operator::{
    bipartition_for_transpose, operator_from_state, partial_transpose, reshuffle,
    state_from_operator, Convention, OperatorMatrix,
};
pub use symmetry::{
    apply_local_unitaries, apply_site_permutation, is_spatially_symmetric, weak_invariance_under,
    weak_spatial_invariance, LocalMonomial, SearchSpace, WeakInvariance, WeakWitness,
};

/// Absolute max-norm tolerance for unitarity and symmetry checks.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance used when comparing entropies.
pub const ENTROPY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    k: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(n: usize, k: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = checked_dim(n, k)?;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        Ok(Self { n, k, amplitudes })
    }

    pub fn zeros(n: usize, k: usize) -> Result<Self> {
        let len = checked_dim(n, k)?;
        Ok(Self {
            n,
            k,
            amplitudes: vec![ZERO; len],
        })
    }

    /// Builds a state from `(configuration, amplitude)` pairs with 0-based
    /// site values. Repeated configurations accumulate.
    pub fn from_terms<I>(n: usize, k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Complex64)>,
    {
        let mut s = Self::zeros(n, k)?;
        for (config, amp) in terms {
            let idx = s.index_of(&config)?;
            s.amplitudes[idx] += amp;
        }
        Ok(s)
    }

    /// The product basis state with the given 0-based site values.
    pub fn basis(n: usize, config: &[usize]) -> Result<Self> {
        Self::from_terms(n, config.len(), [(config.to_vec(), linalg::ONE)])
    }

    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.k
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn index_of(&self, config: &[usize]) -> Result<usize> {
        if config.len() != self.k || config.iter().any(|&v| v >= self.n) {
            return Err(Error::InvalidConfiguration(format!(
                "{config:?} for N={}, K={}",
                self.n, self.k
            )));
        }
        Ok(linalg::index_of(config, self.n))
    }

    pub fn config_of(&self, index: usize) -> Vec<usize> {
        linalg::digits(index, self.n, self.k)
    }

    pub fn amplitude(&self, config: &[usize]) -> Result<Complex64> {
        Ok(self.amplitudes[self.index_of(config)?])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn scaled(&self, factor: Complex64) -> PureState {
        PureState {
            n: self.n,
            k: self.k,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Max-norm distance between amplitude vectors (infinite on shape mismatch).
    pub fn max_distance(&self, other: &PureState) -> f64 {
        if self.n != other.n || self.k != other.k {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Configurations whose amplitude modulus exceeds `cutoff`, in basis order.
    pub fn support(&self, cutoff: f64) -> Vec<(Vec<usize>, Complex64)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > cutoff)
            .map(|(i, a)| (self.config_of(i), *a))
            .collect()
    }

    pub(crate) fn check_sites(&self, geometry: &Geometry) -> Result<()> {
        if self.k != geometry.sites() {
            return Err(Error::DimensionMismatch {
                expected: geometry.sites(),
                found: self.k,
            });
        }
        Ok(())
    }
}

fn checked_dim(n: usize, k: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    n.checked_pow(k as u32)
        .filter(|&d| d <= 1 << 26)
        .ok_or_else(|| Error::Unsupported(format!("dense state with N={n}, K={k} is too large")))
}

fn normalized_subset(subset: &[usize], k: usize) -> Result<Vec<usize>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != subset.len() || s.iter().any(|&x| x >= k) {
        return Err(Error::InvalidSubset {
            subset: subset.to_vec(),
            sites: k,
        });
    }
    Ok(s)
}

/// Reshapes the amplitudes into a matrix with rows indexed by the values on
/// `rows` (ascending site order) and columns by the remaining sites.
pub(crate) fn split_matrix(state: &PureState, rows: &[usize]) -> CMatrix {
    let (n, k) = (state.n, state.k);
    let in_rows: Vec<bool> = (0..k).map(|s| rows.contains(&s)).collect();
    let r = rows.len();
    let dim_r = n.pow(r as u32);
    let dim_c = n.pow((k - r) as u32);
    let mut m = CMatrix::zeros(dim_r, dim_c);
    for (idx, amp) in state.amplitudes.iter().enumerate() {
        if *amp == ZERO {
            continue;
        }
        let mut rest = idx;
        let (mut ri, mut ci) = (0, 0);
        let (mut rw, mut cw) = (1, 1);
        for site in (0..k).rev() {
            let d = rest % n;
            rest /= n;
            if in_rows[site] {
                ri += d * rw;
                rw *= n;
            } else {
                ci += d * cw;
                cw *= n;
            }
        }
        m[(ri, ci)] = *amp;
    }
    m
}

#[derive(Debug, Clone)]
pub struct DensityMatrix {
    subset: Vec<usize>,
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        linalg::max_distance(&self.entries, &self.entries.adjoint())
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.entries)
    }

    /// Max-norm distance from the maximally mixed state `1/d`.
    pub fn distance_from_maximally_mixed(&self) -> f64 {
        let d = self.entries.nrows() as f64;
        linalg::distance_from_scaled_identity(&self.entries, 1.0 / d)
    }

    /// Checks hermiticity, unit trace and positivity within `tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
            && (self.trace() - 1.0).norm() <= tol
            && self.eigenvalues().first().is_none_or(|&l| l >= -tol)
    }
}

/// Partial trace over the complement of `subset`.
pub fn reduced_density_matrix(state: &PureState, subset: &[usize]) -> Result<DensityMatrix> {
    let s = normalized_subset(subset, state.k)?;
    if s.is_empty() || s.len() == state.k {
        return Err(Error::InvalidSubset {
            subset: subset.to_vec(),
            sites: state.k,
        });
    }
    let m = split_matrix(state, &s);
    Ok(DensityMatrix {
        subset: s,
        entries: linalg::gram(&m),
    })
}

/// Max-norm distance of `ρ_A` from `1/N^|A|`.
pub fn maximal_entanglement_deviation(state: &PureState, subset: &[usize]) -> Result<f64> {
    Ok(reduced_density_matrix(state, subset)?.distance_from_maximally_mixed())
}

pub fn is_maximally_entangled(state: &PureState, subset: &[usize], tol: f64) -> bool {
    maximal_entanglement_deviation(state, subset).is_ok_and(|d| d <= tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BipartitionVerdict {
    pub subset: Vec<usize>,
    pub deviation: f64,
    pub maximal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultidirectionalReport {
    pub verdicts: Vec<BipartitionVerdict>,
    pub overall: bool,
}

/// Checks maximal entanglement on every allowed bipartition of `geometry`.
pub fn is_multidirectional_unitary(
    state: &PureState,
    geometry: &Geometry,
    tol: f64,
) -> Result<MultidirectionalReport> {
    state.check_sites(geometry)?;
    let verdicts = geometry
        .bipartitions()
        .par_iter()
        .map(|b| {
            let deviation = maximal_entanglement_deviation(state, b)?;
            Ok(BipartitionVerdict {
                subset: b.clone(),
                deviation,
                maximal: deviation <= tol,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let overall = verdicts.iter().all(|v| v.maximal);
    Ok(MultidirectionalReport { verdicts, overall })
}

/// Maximal entanglement for every subset with at most `K/2` sites.
pub fn is_absolutely_maximally_entangled(state: &PureState, tol: f64) -> bool {
    let k = state.k;
    (1u32..(1 << k))
        .filter(|mask| mask.count_ones() as usize <= k / 2)
        .all(|mask| {
            let subset: Vec<usize> = (0..k).filter(|s| mask & (1 << s) != 0).collect();
            is_maximally_entangled(state, &subset, tol)
        })
}

/// `-Σ λ ln λ` with eigenvalues in `[-1e-12, 0)` clamped to zero.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .map(|&l| if (-1e-12..0.0).contains(&l) { 0.0 } else { l })
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum::<f64>()
        + 0.0 // a pure reduction sums to -0.0
}

/// Von Neumann entropy of the reduction to `subset`, in nats.
pub fn von_neumann_entropy(state: &PureState, subset: &[usize]) -> Result<f64> {
    let rho = reduced_density_matrix(state, subset)?;
    Ok(entropy_of_spectrum(&rho.eigenvalues()))
}

/// Largest entropy of a single diagonal, viewing each antipodal pair as one
/// site of dimension `N²`. Zero exactly when the diagonals are in a product
/// state.
pub fn diagonal_entanglement(state: &PureState, geometry: &Geometry) -> Result<f64> {
    if !geometry.has_diagonals() {
        return Err(Error::NoDiagonals(geometry.kind()));
    }
    state.check_sites(geometry)?;
    let mut worst = 0.0_f64;
    for &(a, b) in geometry.diagonals() {
        worst = worst.max(von_neumann_entropy(state, &[a, b])?);
    }
    Ok(worst)
}
