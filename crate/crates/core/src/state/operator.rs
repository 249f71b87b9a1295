//! Operator-state correspondence and index rearrangements of operators.
//!
//! An [`OperatorMatrix`] on `h` tensor factors is stored as an `N^h × N^h`
//! matrix whose row is the output multi-index and whose column is the input
//! multi-index (factor 1 most significant).
//!
//! With the diagonal convention the state is `ψ(a; b) = N^{-K/4} U[b][a]`, where
//! the input digit `a_j` sits on site `j` and the output digit `b_j` on its
//! antipode `j + K/2`. The edge convention `Ǔ` differs by a reordering of the
//! output factors: reversal for polygons (a swap on the square) and
//! `(o3 o4 o1 o2)` on the cube.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Geometry, GeometryKind};
use crate::linalg::{self, CMatrix};
use crate::state::{split_matrix, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `U`: acts along the antipodal diagonals.
    Diagonal,
    /// `Ǔ`: acts along the edges.
    Edge,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::Diagonal => "diagonal",
            Convention::Edge => "edge",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diagonal" => Ok(Convention::Diagonal),
            "edge" => Ok(Convention::Edge),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "convention must be `diagonal` or `edge`".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    n: usize,
    half_k: usize,
    entries: CMatrix,
    convention: Convention,
}

impl OperatorMatrix {
    pub fn new(n: usize, half_k: usize, entries: CMatrix, convention: Convention) -> Result<Self> {
        let dim = n.pow(half_k as u32);
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: entries.nrows().max(entries.ncols()),
            });
        }
        Ok(Self {
            n,
            half_k,
            entries,
            convention,
        })
    }

    pub fn identity(n: usize, half_k: usize) -> Self {
        let dim = n.pow(half_k as u32);
        Self {
            n,
            half_k,
            entries: CMatrix::identity(dim, dim),
            convention: Convention::Diagonal,
        }
    }

    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn half_k(&self) -> usize {
        self.half_k
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Same entries with a different convention tag.
    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn unitarity_deviation(&self) -> f64 {
        linalg::unitarity_deviation(&self.entries)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Entry `[output][input]` addressed by 0-based digit tuples.
    pub fn element(&self, output: &[usize], input: &[usize]) -> Complex64 {
        self.entries[(
            linalg::index_of(output, self.n),
            linalg::index_of(input, self.n),
        )]
    }

    /// Converts to the requested convention for `geometry`.
    pub fn to_convention(&self, geometry: &Geometry, target: Convention) -> Result<OperatorMatrix> {
        if self.convention == target {
            return Ok(self.clone());
        }
        let map = edge_output_map(geometry.kind(), self.half_k)?;
        let permuted = permute_output_factors(&self.entries, self.n, &map);
        Ok(OperatorMatrix {
            entries: permuted,
            convention: target,
            ..*self
        })
    }
}

/// For each diagonal-convention output factor, the edge-convention factor
/// that carries the same site. The map is an involution in every geometry.
fn edge_output_map(kind: GeometryKind, half: usize) -> Result<Vec<usize>> {
    match kind {
        GeometryKind::Square | GeometryKind::Hexagon | GeometryKind::Polygon(_) => {
            Ok((0..half).rev().collect())
        }
        GeometryKind::Cube => Ok(vec![2, 3, 0, 1]),
        GeometryKind::Octahedron | GeometryKind::Tetrahedron => Err(Error::Unsupported(format!(
            "no edge convention is defined for the {kind}"
        ))),
    }
}

/// `out[σ(o)][a] = m[o][a]` where digit `i` of `σ(o)` is digit `map[i]` of `o`.
fn permute_output_factors(m: &CMatrix, n: usize, map: &[usize]) -> CMatrix {
    let h = map.len();
    let dim = m.nrows();
    let target: Vec<usize> = (0..dim)
        .map(|o| {
            let d = linalg::digits(o, n, h);
            let p: Vec<usize> = map.iter().map(|&i| d[i]).collect();
            linalg::index_of(&p, n)
        })
        .collect();
    let mut out = CMatrix::zeros(dim, dim);
    for o in 0..dim {
        for a in 0..dim {
            out[(target[o], a)] = m[(o, a)];
        }
    }
    out
}

fn geometry_scale(n: usize, k: usize) -> f64 {
    (n as f64).powf(k as f64 / 4.0)
}

/// Maps an operator to its state: `ψ(a; b) = N^{-K/4} U[b][a]`.
///
/// The amplitudes are not renormalized. A non-unitary input therefore shows
/// up as a norm different from one, which callers can inspect.
pub fn state_from_operator(op: &OperatorMatrix, geometry: &Geometry) -> Result<PureState> {
    if op.half_k != geometry.half() {
        return Err(Error::DimensionMismatch {
            expected: geometry.half(),
            found: op.half_k,
        });
    }
    let u = op.to_convention(geometry, Convention::Diagonal)?;
    let dim = u.dim();
    let scale = 1.0 / geometry_scale(op.n, geometry.sites());
    let mut amps = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            amps.push(u.entries[(b, a)] * scale);
        }
    }
    PureState::new(op.n, geometry.sites(), amps)
}

/// Reads a state as an operator from `subset` to its complement:
/// `M[b][a] = N^{K/4} ψ(a on subset, b on complement)`, each side ordered by
/// ascending site label.
///
/// The edge convention is only defined for the standard bipartition
/// `{1, …, K/2}`.
pub fn operator_from_state(
    state: &PureState,
    geometry: &Geometry,
    subset: &[usize],
    convention: Convention,
) -> Result<OperatorMatrix> {
    state.check_sites(geometry)?;
    if !geometry.is_allowed_bipartition(subset) {
        return Err(Error::DisallowedBipartition(subset.to_vec()));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let scale = geometry_scale(state.n, state.k);
    let m = split_matrix(state, &sorted).transpose().map(|z| z * scale);
    let op = OperatorMatrix::new(state.n, geometry.half(), m, Convention::Diagonal)?;
    match convention {
        Convention::Diagonal => Ok(op),
        Convention::Edge => {
            let standard: Vec<usize> = (0..geometry.half()).collect();
            if sorted != standard {
                return Err(Error::Unsupported(
                    "edge convention is only defined for the bipartition {1..K/2}".into(),
                ));
            }
            op.to_convention(geometry, Convention::Edge)
        }
    }
}

/// Two-site reshuffle `(Ǔ^R)_{ca}^{db} = Ǔ_{ab}^{cd}`.
pub fn reshuffle(op: &OperatorMatrix) -> Result<OperatorMatrix> {
    if op.half_k != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: op.half_k,
        });
    }
    let n = op.n;
    let mut out = CMatrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    out[(d * n + b, c * n + a)] = op.entries[(c * n + d, a * n + b)];
                }
            }
        }
    }
    Ok(OperatorMatrix {
        entries: out,
        ..*op
    })
}

/// Transposes the tensor factors at the given 0-based positions, swapping
/// their input and output indices. No complex conjugation is involved.
pub fn partial_transpose(op: &OperatorMatrix, positions: &[usize]) -> Result<OperatorMatrix> {
    if positions.iter().any(|&p| p >= op.half_k) {
        return Err(Error::InvalidSubset {
            subset: positions.to_vec(),
            sites: op.half_k,
        });
    }
    let (n, h) = (op.n, op.half_k);
    let dim = op.dim();
    let mut out = CMatrix::zeros(dim, dim);
    for o in 0..dim {
        let od = linalg::digits(o, n, h);
        for i in 0..dim {
            let mut new_o = od.clone();
            let mut new_i = linalg::digits(i, n, h);
            for &p in positions {
                std::mem::swap(&mut new_o[p], &mut new_i[p]);
            }
            out[(linalg::index_of(&new_o, n), linalg::index_of(&new_i, n))] = op.entries[(o, i)];
        }
    }
    Ok(OperatorMatrix {
        entries: out,
        ..*op
    })
}

/// The site subset whose maximal entanglement is equivalent to unitarity of
/// the partial transpose at `positions` (diagonal convention).
pub fn bipartition_for_transpose(geometry: &Geometry, positions: &[usize]) -> Vec<usize> {
    let h = geometry.half();
    let mut s: Vec<usize> = (0..h)
        .map(|j| if positions.contains(&j) { j + h } else { j })
        .collect();
    s.sort_unstable();
    s
}
