#![allow(dead_code)]

use multidir_core::classical::{enumerate_solutions, solution_to_state};
use multidir_core::constructions::{graph_state, IncidenceGraph};
use multidir_core::state::{apply_local_unitaries, state_from_operator, Convention};
use multidir_core::{CMatrix, Complex64, Geometry, GeometryKind, OperatorMatrix, PureState};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

pub fn geometry(kind: GeometryKind) -> Geometry {
    Geometry::new(kind).unwrap()
}

pub fn all_geometries() -> Vec<Geometry> {
    [
        GeometryKind::Square,
        GeometryKind::Hexagon,
        GeometryKind::Polygon(8),
        GeometryKind::Cube,
        GeometryKind::Octahedron,
        GeometryKind::Tetrahedron,
    ]
    .into_iter()
    .map(geometry)
    .collect()
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
pub fn haar_unitary<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&r.diagonal().map(|z| z / z.norm()));
    q * phases
}

pub fn random_phase<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// A mix of states that are and are not maximally entangled across the
/// various bipartitions: graph states, dressed permutations, locally rotated
/// classical solutions and Haar-random unitaries.
pub fn random_instance<R: Rng>(rng: &mut R, g: &Geometry, n: usize, variant: usize) -> PureState {
    let k = g.sites();
    let h = g.half();
    let dim = n.pow(h as u32);
    let sols = enumerate_solutions(g, n).unwrap();
    // the tetrahedron has no classical solutions; fall back to Haar unitaries
    let variant = if variant % 4 == 2 && sols.is_empty() {
        3
    } else {
        variant
    };
    match variant % 4 {
        0 => {
            let mut labels = vec![vec![0; k]; k];
            for (a, b) in (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))) {
                let l = rng.random_range(0..n);
                labels[a][b] = l;
                labels[b][a] = l;
            }
            graph_state(&IncidenceGraph::new(labels).unwrap(), n).unwrap()
        }
        1 => {
            let mut sigma: Vec<usize> = (0..dim).collect();
            sigma.shuffle(rng);
            let mut u = CMatrix::zeros(dim, dim);
            for (x, &y) in sigma.iter().enumerate() {
                u[(y, x)] = random_phase(rng);
            }
            let op = OperatorMatrix::new(n, h, u, Convention::Diagonal).unwrap();
            state_from_operator(&op, g).unwrap()
        }
        2 => {
            let s = solution_to_state(&sols[rng.random_range(0..sols.len())]).unwrap();
            let factors: Vec<CMatrix> = (0..k).map(|_| haar_unitary(rng, n)).collect();
            apply_local_unitaries(&s, &factors).unwrap()
        }
        _ => {
            let op =
                OperatorMatrix::new(n, h, haar_unitary(rng, dim), Convention::Diagonal).unwrap();
            state_from_operator(&op, g).unwrap()
        }
    }
}
