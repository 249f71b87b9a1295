//! Qudit graph states and the determinant criterion for their entanglement.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg;
use crate::state::symmetry::is_prime;
use crate::state::PureState;

/// Edge labels of a graph on `K` sites: a symmetric integer matrix with zero
/// diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceGraph {
    #[serde(rename = "K")]
    k: usize,
    labels: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn new(labels: Vec<Vec<usize>>) -> Result<Self> {
        let k = labels.len();
        for (j, row) in labels.iter().enumerate() {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: row.len(),
                });
            }
            if row[j] != 0 {
                return Err(Error::InvalidConfiguration(format!(
                    "self-loop on site {}",
                    j + 1
                )));
            }
            if let Some(i) = (0..k).find(|&i| labels[i][j] != row[i]) {
                return Err(Error::InvalidConfiguration(format!(
                    "labels of {{{},{}}} are not symmetric",
                    j + 1,
                    i + 1
                )));
            }
        }
        Ok(Self { k, labels })
    }

    pub fn sites(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn label(&self, a: usize, b: usize) -> usize {
        self.labels[a][b]
    }

    /// Re-validates after deserialization.
    pub fn validated(self) -> Result<Self> {
        if self.labels.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: self.labels.len(),
            });
        }
        Self::new(self.labels)
    }
}

/// `∏ CZ_{jk}^{I_jk} |e⟩^{⊗K}`: amplitudes `ω^{Σ_{j<k} I_jk a_j a_k} / N^{K/2}`
/// with 0-based site values and `ω = e^{2πi/N}`.
pub fn graph_state(graph: &IncidenceGraph, n: usize) -> Result<PureState> {
    if !is_prime(n) {
        return Err(Error::CompositeDimension(n));
    }
    if let Some(bad) = graph.labels.iter().flatten().find(|&&l| l >= n) {
        return Err(Error::InvalidConfiguration(format!(
            "edge label {bad} is not below N={n}"
        )));
    }
    let k = graph.k;
    let roots: Vec<Complex64> = (0..n)
        .map(|e| Complex64::from_polar(1.0, TAU * e as f64 / n as f64))
        .collect();
    let scale = (n as f64).powf(-(k as f64) / 2.0);
    let mut zero = PureState::zeros(n, k)?;
    let dim = zero.amplitudes().len();
    let amps: Vec<Complex64> = (0..dim)
        .map(|idx| {
            let a = linalg::digits(idx, n, k);
            let mut e = 0;
            for j in 0..k {
                for l in j + 1..k {
                    e = (e + graph.labels[j][l] * a[j] * a[l]) % n;
                }
            }
            roots[e] * scale
        })
        .collect();
    zero = PureState::new(n, k, amps)?;
    Ok(zero)
}

/// Labels each pair of sites by its class under the geometry's symmetry:
/// square `(α edges, β diagonals)`, polygons by cyclic distance, cube
/// `(α edges, β face diagonals, γ body diagonals)`, octahedron `(α edges,
/// γ diagonals)`, tetrahedron `(α)`.
pub fn symmetric_incidence(geometry: &Geometry, params: &[usize]) -> Result<IncidenceGraph> {
    let expected = geometry.pair_class_count();
    if params.len() != expected {
        return Err(Error::WrongParameterCount {
            expected,
            found: params.len(),
        });
    }
    let k = geometry.sites();
    let labels = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    if a == b {
                        0
                    } else {
                        params[geometry.pair_class(a, b)]
                    }
                })
                .collect()
        })
        .collect();
    IncidenceGraph::new(labels)
}

/// The block `I^{AB}` with rows indexed by `subset` and columns by its
/// complement, both in ascending order. For `subset = {1..K/2}` entry
/// `(j, k)` is the label between sites `j` and `k + K/2`.
pub fn reduced_incidence_matrix(graph: &IncidenceGraph, subset: &[usize]) -> Vec<Vec<i64>> {
    let mut rows = subset.to_vec();
    rows.sort_unstable();
    let cols: Vec<usize> = (0..graph.k).filter(|s| !rows.contains(s)).collect();
    rows.iter()
        .map(|&r| cols.iter().map(|&c| graph.labels[r][c] as i64).collect())
        .collect()
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn integer_determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterminantVerdict {
    /// Integer determinant of `I^{AB}`.
    pub determinant: i128,
    /// The determinant reduced into `0..N`.
    pub residue: u64,
    /// Maximal entanglement across the bipartition, i.e. `residue ≠ 0`.
    pub maximal: bool,
}

/// Determinant of the reduced incidence matrix of the symmetric graph for
/// the bipartition `{1..K/2}`, reduced mod a prime `N`.
pub fn reduced_incidence_determinant(
    geometry: &Geometry,
    params: &[usize],
    n: usize,
) -> Result<DeterminantVerdict> {
    let graph = symmetric_incidence(geometry, params)?;
    let subset: Vec<usize> = (0..geometry.half()).collect();
    determinant_for(&graph, &subset, n)
}

/// As [`reduced_incidence_determinant`] for an arbitrary graph and bipartition.
pub fn determinant_for(
    graph: &IncidenceGraph,
    subset: &[usize],
    n: usize,
) -> Result<DeterminantVerdict> {
    if !is_prime(n) {
        return Err(Error::CompositeDimension(n));
    }
    if subset.len() * 2 != graph.k {
        return Err(Error::InvalidSubset {
            subset: subset.to_vec(),
            sites: graph.k,
        });
    }
    let determinant = integer_determinant(&reduced_incidence_matrix(graph, subset));
    let residue = determinant.rem_euclid(n as i128) as u64;
    Ok(DeterminantVerdict {
        determinant,
        residue,
        maximal: residue != 0,
    })
}
