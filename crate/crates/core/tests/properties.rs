mod common;

use common::*;
use multidir_core::constructions::{diagonal_gate, PhaseTable};
use multidir_core::state::*;
use multidir_core::{Geometry, GeometryKind, DEFAULT_TOL, ENTROPY_TOL};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn kinds() -> impl Strategy<Value = GeometryKind> {
    prop_oneof![
        Just(GeometryKind::Square),
        Just(GeometryKind::Hexagon),
        Just(GeometryKind::Polygon(8)),
        Just(GeometryKind::Cube),
        Just(GeometryKind::Octahedron),
        Just(GeometryKind::Tetrahedron),
    ]
}

fn instance(kind: GeometryKind, seed: u64, variant: usize) -> (Geometry, multidir_core::PureState) {
    let g = geometry(kind);
    let mut rng = StdRng::seed_from_u64(seed);
    let st = random_instance(&mut rng, &g, 2, variant);
    (g, st)
}

fn sorted_nonzero(mut v: Vec<f64>) -> Vec<f64> {
    v.retain(|x| *x > 1e-10);
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transpose_unitarity_matches_entanglement(kind in kinds(), seed: u64, variant in 0usize..4, mask: u8) {
        let (g, st) = instance(kind, seed, variant);
        let h = g.half();
        let positions: Vec<usize> = (0..h).filter(|j| mask >> j & 1 == 1).collect();
        let standard: Vec<usize> = (0..h).collect();
        let op = operator_from_state(&st, &g, &standard, Convention::Diagonal).unwrap();
        let unitary = partial_transpose(&op, &positions).unwrap().is_unitary(DEFAULT_TOL);
        let subset = bipartition_for_transpose(&g, &positions);
        prop_assert_eq!(unitary, is_maximally_entangled(&st, &subset, DEFAULT_TOL));
    }

    #[test]
    fn entropy_is_bounded(kind in kinds(), seed: u64, variant in 0usize..4) {
        let (g, st) = instance(kind, seed, variant);
        for b in g.bipartitions() {
            let s = von_neumann_entropy(&st, b).unwrap();
            let max = b.len().min(g.sites() - b.len()) as f64 * 2f64.ln();
            prop_assert!(s >= -ENTROPY_TOL && s <= max + ENTROPY_TOL);
            let rho = reduced_density_matrix(&st, b).unwrap();
            prop_assert!((rho.trace().re - 1.0).abs() < 1e-9);
            prop_assert!(rho.hermiticity_deviation() < 1e-12);
        }
    }

    #[test]
    fn schmidt_spectra_agree(kind in kinds(), seed: u64, variant in 0usize..4) {
        let (g, st) = instance(kind, seed, variant);
        for b in g.bipartitions() {
            let a = sorted_nonzero(reduced_density_matrix(&st, b).unwrap().eigenvalues());
            let c = sorted_nonzero(reduced_density_matrix(&st, &g.complement(b)).unwrap().eigenvalues());
            prop_assert_eq!(a.len(), c.len());
            for (x, y) in a.iter().zip(&c) {
                prop_assert!((x - y).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn entropy_follows_site_permutations(kind in kinds(), seed: u64, variant in 0usize..4, pick: usize) {
        let (g, st) = instance(kind, seed, variant);
        let group = g.symmetry_group();
        let p = &group[pick % group.len()];
        let moved = apply_site_permutation(&st, p).unwrap();
        for b in g.bipartitions() {
            let image: Vec<usize> = b.iter().map(|&s| p.apply(s)).collect();
            let before = von_neumann_entropy(&st, b).unwrap();
            let after = von_neumann_entropy(&moved, &image).unwrap();
            prop_assert!((before - after).abs() < ENTROPY_TOL);
        }
    }

    #[test]
    fn diagonal_gates_are_multidirectional(
        kind in kinds().prop_filter("needs diagonals", |k| *k != GeometryKind::Tetrahedron),
        phases in proptest::collection::vec(-10.0f64..10.0, 16),
    ) {
        let g = geometry(kind);
        let table = PhaseTable::new(2, g.half(), phases[..1 << g.half()].to_vec()).unwrap();
        let st = state_from_operator(&diagonal_gate(&g, &table).unwrap(), &g).unwrap();
        prop_assert!(is_multidirectional_unitary(&st, &g, DEFAULT_TOL).unwrap().overall);
        // a symmetric phase table keeps the gate spatially symmetric
        if table.is_symmetric_for(&g, 1e-12) {
            prop_assert!(is_spatially_symmetric(&st, &g, 1e-9));
        }
    }
}
