//! Exhaustive search for classical solutions as an exact cover of the input
//! tuples by non-overlapping orbits.

use rayon::prelude::*;

use super::{orbit_of, tuple_index, ClassicalSolution, Configuration, Orbit};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg;

/// Largest number of input tuples `N^{K/2}` the exhaustive search accepts.
pub const MAX_INPUT_TUPLES: usize = 4096;

/// Every orbit of `{0..N}^K` whose members have pairwise distinct inputs.
pub(crate) fn non_overlapping_orbits(geometry: &Geometry, n: usize) -> Result<Vec<Orbit>> {
    let k = geometry.sites();
    let total = n
        .checked_pow(k as u32)
        .ok_or_else(|| Error::Unsupported(format!("N^K overflows for N={n}, K={k}")))?;
    let order = geometry.symmetry_group().len();
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for idx in 0..total {
        if seen[idx] {
            continue;
        }
        let values: Vec<u8> = linalg::digits(idx, n, k)
            .into_iter()
            .map(|v| v as u8)
            .collect();
        let orbit = orbit_of(&Configuration(values), geometry)?;
        debug_assert_eq!(order % orbit.len(), 0);
        for m in orbit.members() {
            seen[tuple_index(m.values(), n)] = true;
        }
        if super::is_non_overlapping(&orbit) {
            out.push(orbit);
        }
    }
    Ok(out)
}

struct Cover {
    /// Input tuple indices covered by each orbit.
    rows: Vec<Vec<usize>>,
    /// Orbits covering each tuple.
    options: Vec<Vec<usize>>,
}

struct SearchState {
    used: Vec<bool>,
    chosen: Vec<usize>,
}

impl Cover {
    fn available(&self, row: usize, state: &SearchState) -> bool {
        self.rows[row].iter().all(|&t| !state.used[t])
    }

    /// The uncovered tuple with the fewest available rows, with those rows.
    /// `None` when everything is covered.
    fn most_constrained(&self, state: &SearchState) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for t in 0..state.used.len() {
            if state.used[t] {
                continue;
            }
            let opts: Vec<usize> = self.options[t]
                .iter()
                .copied()
                .filter(|&r| self.available(r, state))
                .collect();
            let better = best.as_ref().is_none_or(|(_, b)| opts.len() < b.len());
            if better {
                let dead = opts.is_empty();
                best = Some((t, opts));
                if dead {
                    break;
                }
            }
        }
        best
    }

    fn select(&self, row: usize, state: &mut SearchState) {
        for &t in &self.rows[row] {
            state.used[t] = true;
        }
        state.chosen.push(row);
    }

    fn deselect(&self, row: usize, state: &mut SearchState) {
        for &t in &self.rows[row] {
            state.used[t] = false;
        }
        state.chosen.pop();
    }

    fn search(&self, state: &mut SearchState, out: &mut Vec<Vec<usize>>) {
        let Some((_, opts)) = self.most_constrained(state) else {
            out.push(state.chosen.clone());
            return;
        };
        for r in opts {
            self.select(r, state);
            self.search(state, out);
            self.deselect(r, state);
        }
    }
}

/// All spatially symmetric classical solutions for `geometry` and `N`.
pub fn enumerate_solutions(geometry: &Geometry, n: usize) -> Result<Vec<ClassicalSolution>> {
    enumerate_solutions_with_jobs(geometry, n, None)
}

/// As [`enumerate_solutions`], on a dedicated pool of `jobs` threads when
/// given. The result does not depend on the number of threads.
pub fn enumerate_solutions_with_jobs(
    geometry: &Geometry,
    n: usize,
    jobs: Option<usize>,
) -> Result<Vec<ClassicalSolution>> {
    if n == 0 {
        return Err(Error::InvalidConfiguration("N must be at least 1".into()));
    }
    let h = geometry.half();
    let tuples = n
        .checked_pow(h as u32)
        .filter(|&t| t <= MAX_INPUT_TUPLES)
        .ok_or(Error::GuardExceeded {
            tuples: n.saturating_pow(h as u32),
            limit: MAX_INPUT_TUPLES,
        })?;
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(|| run(geometry, n, tuples)),
        None => run(geometry, n, tuples),
    }
}

fn run(geometry: &Geometry, n: usize, tuples: usize) -> Result<Vec<ClassicalSolution>> {
    let orbits = non_overlapping_orbits(geometry, n)?;
    let rows: Vec<Vec<usize>> = orbits
        .iter()
        .map(|o| o.input_tuples().map(|t| tuple_index(t, n)).collect())
        .collect();
    let mut options = vec![Vec::new(); tuples];
    for (r, row) in rows.iter().enumerate() {
        for &t in row {
            options[t].push(r);
        }
    }
    let cover = Cover { rows, options };
    let root = SearchState {
        used: vec![false; tuples],
        chosen: Vec::new(),
    };
    let covers: Vec<Vec<usize>> = match cover.most_constrained(&root) {
        None => vec![Vec::new()],
        Some((_, opts)) => opts
            .into_par_iter()
            .flat_map_iter(|r| {
                let mut state = SearchState {
                    used: vec![false; tuples],
                    chosen: Vec::new(),
                };
                cover.select(r, &mut state);
                let mut out = Vec::new();
                cover.search(&mut state, &mut out);
                out
            })
            .collect(),
    };
    let mut solutions = Vec::with_capacity(covers.len());
    for chosen in covers {
        let picked: Vec<Orbit> = chosen.iter().map(|&r| orbits[r].clone()).collect();
        match ClassicalSolution::new(geometry, n, picked) {
            Ok(s) => solutions.push(s),
            Err(Error::BijectionViolation(_)) => {}
            Err(e) => return Err(e),
        }
    }
    solutions.sort_by_cached_key(ClassicalSolution::canonical_key);
    Ok(solutions)
}
