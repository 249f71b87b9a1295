//! Site permutations, local unitaries and (weak) spatial invariance.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Geometry, SitePermutation};
use crate::linalg::{self, CMatrix, ONE, ZERO};
use crate::state::{PureState, DEFAULT_TOL};

/// `P_g`: the value on site `j` moves to site `g(j)`.
pub fn apply_site_permutation(state: &PureState, perm: &SitePermutation) -> Result<PureState> {
    if perm.len() != state.sites() {
        return Err(Error::InvalidPermutation(format!(
            "{perm} acts on {} sites, state has {}",
            perm.len(),
            state.sites()
        )));
    }
    let n = state.local_dim();
    let mut out = vec![ZERO; state.amplitudes().len()];
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        if *amp == ZERO {
            continue;
        }
        let moved = perm.permute_values(&state.config_of(idx));
        out[linalg::index_of(&moved, n)] = *amp;
    }
    PureState::new(n, state.sites(), out)
}

/// `(U⁽¹⁾ ⊗ … ⊗ U⁽ᴷ⁾) ψ`. Every factor must be unitary within `1e-9`.
pub fn apply_local_unitaries(state: &PureState, factors: &[CMatrix]) -> Result<PureState> {
    let (n, k) = (state.local_dim(), state.sites());
    if factors.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: factors.len(),
        });
    }
    for (site, u) in factors.iter().enumerate() {
        if u.nrows() != n || u.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.nrows().max(u.ncols()),
            });
        }
        let deviation = linalg::unitarity_deviation(u);
        if deviation > DEFAULT_TOL {
            return Err(Error::NotUnitary {
                what: format!("factor on site {}", site + 1),
                deviation,
            });
        }
    }
    let mut amps = state.amplitudes().to_vec();
    for (site, u) in factors.iter().enumerate() {
        if linalg::distance_from_scaled_identity(u, 1.0) == 0.0 {
            continue;
        }
        amps = apply_one_site(&amps, u, n, n.pow((k - 1 - site) as u32));
    }
    PureState::new(n, k, amps)
}

fn apply_one_site(amps: &[Complex64], u: &CMatrix, n: usize, stride: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; amps.len()];
    let block = stride * n;
    for base in (0..amps.len()).step_by(block) {
        for inner in 0..stride {
            for v in 0..n {
                let a = amps[base + v * stride + inner];
                if a == ZERO {
                    continue;
                }
                for w in 0..n {
                    out[base + w * stride + inner] += u[(w, v)] * a;
                }
            }
        }
    }
    out
}

/// True iff every generator of the geometry's group fixes the state within
/// `tol` (max-norm on amplitudes).
pub fn is_spatially_symmetric(state: &PureState, geometry: &Geometry, tol: f64) -> bool {
    if state.sites() != geometry.sites() {
        return false;
    }
    geometry.generators().iter().all(|g| {
        apply_site_permutation(state, g).is_ok_and(|moved| moved.max_distance(state) <= tol)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    /// `P_g ψ = c ψ` for a phase `c`.
    GlobalPhase,
    /// Products of one-site generalized permutation matrices whose nonzero
    /// entries are `N`-th roots of unity, times a global phase.
    Monomial,
}

/// One-site operator `|v⟩ ↦ ω^{phases[v]} |permutation[v]⟩` with `ω = e^{2πi/N}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMonomial {
    pub permutation: Vec<usize>,
    pub phases: Vec<usize>,
}

impl LocalMonomial {
    pub fn identity(n: usize) -> Self {
        Self {
            permutation: (0..n).collect(),
            phases: vec![0; n],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.phases.iter().all(|&p| p == 0)
            && self.permutation.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn matrix(&self) -> CMatrix {
        let n = self.permutation.len();
        let mut m = CMatrix::zeros(n, n);
        for v in 0..n {
            m[(self.permutation[v], v)] = root_of_unity(n, self.phases[v]);
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeakWitness {
    /// `P_g ψ = c ψ`.
    GlobalPhase(Complex64),
    /// `(⊗ factors) P_g ψ = phase · ψ`.
    Monomial {
        factors: Vec<LocalMonomial>,
        phase: Complex64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakInvariance {
    pub generator: SitePermutation,
    pub invariant: bool,
    pub witness: Option<WeakWitness>,
}

/// Weak invariance under each generator of the geometry's group.
pub fn weak_spatial_invariance(
    state: &PureState,
    geometry: &Geometry,
    search: SearchSpace,
    tol: f64,
) -> Result<Vec<WeakInvariance>> {
    state.check_sites(geometry)?;
    geometry
        .generators()
        .iter()
        .map(|g| weak_invariance_under(state, g, search, tol))
        .collect()
}

/// Looks for a local operator in `search` that maps `P_g ψ` back to `ψ` up to
/// a global phase.
///
/// The monomial search enumerates per-site value permutations depth first,
/// identity first, and then solves for the root-of-unity phases as a linear
/// system over `Z_N`. It therefore needs a prime `N`.
pub fn weak_invariance_under(
    state: &PureState,
    perm: &SitePermutation,
    search: SearchSpace,
    tol: f64,
) -> Result<WeakInvariance> {
    let moved = apply_site_permutation(state, perm)?;
    let witness = match search {
        SearchSpace::GlobalPhase => global_phase(state, &moved, tol).map(WeakWitness::GlobalPhase),
        SearchSpace::Monomial => {
            if !is_prime(state.local_dim()) {
                return Err(Error::CompositeDimension(state.local_dim()));
            }
            MonomialSearch::new(state, &moved, tol).run()
        }
    };
    Ok(WeakInvariance {
        generator: perm.clone(),
        invariant: witness.is_some(),
        witness,
    })
}

fn global_phase(target: &PureState, moved: &PureState, tol: f64) -> Option<Complex64> {
    let c = target.inner(moved);
    if (c.norm() - 1.0).abs() > tol.max(1e-9) * 10.0 {
        return None;
    }
    (moved.max_distance(&target.scaled(c)) <= tol).then_some(c)
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn root_of_unity(n: usize, k: usize) -> Complex64 {
    if k.is_multiple_of(n) {
        return ONE;
    }
    Complex64::from_polar(1.0, TAU * (k % n) as f64 / n as f64)
}

struct MonomialSearch<'a> {
    target: &'a PureState,
    moved: &'a PureState,
    tol: f64,
    n: usize,
    k: usize,
    target_support: Vec<Vec<usize>>,
    moved_support: Vec<Vec<usize>>,
    perms: Vec<Vec<usize>>,
}

impl<'a> MonomialSearch<'a> {
    fn new(target: &'a PureState, moved: &'a PureState, tol: f64) -> Self {
        let cutoff = tol.max(1e-12);
        let n = target.local_dim();
        Self {
            target,
            moved,
            tol,
            n,
            k: target.sites(),
            target_support: target.support(cutoff).into_iter().map(|(c, _)| c).collect(),
            moved_support: moved.support(cutoff).into_iter().map(|(c, _)| c).collect(),
            perms: permutations(n),
        }
    }

    fn run(&self) -> Option<WeakWitness> {
        if self.target_support.len() != self.moved_support.len() {
            return None;
        }
        let mut chosen = Vec::with_capacity(self.k);
        self.descend(&mut chosen)
    }

    /// Projection of the support onto the first `len` sites as a multiset.
    fn projection<F>(support: &[Vec<usize>], len: usize, f: F) -> BTreeMap<Vec<usize>, usize>
    where
        F: Fn(usize, usize) -> usize,
    {
        let mut counts = BTreeMap::new();
        for c in support {
            let key: Vec<usize> = (0..len).map(|s| f(s, c[s])).collect();
            *counts.entry(key).or_insert(0) += 1;
        }
        counts
    }

    fn descend(&self, chosen: &mut Vec<usize>) -> Option<WeakWitness> {
        let depth = chosen.len();
        if depth == self.k {
            return self.solve_phases(chosen);
        }
        for p in 0..self.perms.len() {
            chosen.push(p);
            let len = depth + 1;
            let lhs = Self::projection(&self.moved_support, len, |s, v| self.perms[chosen[s]][v]);
            let rhs = Self::projection(&self.target_support, len, |_, v| v);
            if lhs == rhs {
                if let Some(w) = self.descend(chosen) {
                    return Some(w);
                }
            }
            chosen.pop();
        }
        None
    }

    fn solve_phases(&self, chosen: &[usize]) -> Option<WeakWitness> {
        let (n, k) = (self.n, self.k);
        // χ(π x) = moved(x); the phases d_s(value) act after the permutation
        let perms: Vec<&Vec<usize>> = chosen.iter().map(|&p| &self.perms[p]).collect();
        let mut ratios = Vec::with_capacity(self.moved_support.len());
        for c in &self.moved_support {
            let image: Vec<usize> = (0..k).map(|s| perms[s][c[s]]).collect();
            let t = self.target.amplitude(&image).ok()?;
            let m = self.moved.amplitude(c).ok()?;
            if (t.norm() - m.norm()).abs() > self.tol {
                return None;
            }
            ratios.push((image, t / m));
        }
        let (x0, r0) = ratios.first().cloned()?;
        let mut rows = Vec::with_capacity(ratios.len());
        let mut rhs = Vec::with_capacity(ratios.len());
        for (x, r) in &ratios {
            let q = r / r0;
            let e = ((q.arg() / TAU * n as f64).round() as i64).rem_euclid(n as i64) as usize;
            if (q - root_of_unity(n, e)).norm() > 1e-6 {
                return None;
            }
            let mut row = vec![0; k * n];
            for s in 0..k {
                row[s * n + x[s]] = (row[s * n + x[s]] + 1) % n;
                row[s * n + x0[s]] = (row[s * n + x0[s]] + n - 1) % n;
            }
            rows.push(row);
            rhs.push(e);
        }
        let d = solve_mod_prime(rows, rhs, n)?;
        let factors: Vec<LocalMonomial> = (0..k)
            .map(|s| LocalMonomial {
                permutation: perms[s].clone(),
                phases: (0..n).map(|v| d[s * n + perms[s][v]]).collect(),
            })
            .collect();
        let shift: usize = (0..k).map(|s| d[s * n + x0[s]]).sum();
        // ψ = c⁻¹ ω^{Σd} χ, so L φ = c ψ with c = ω^{Σd(x0)} / r0
        let phase = root_of_unity(n, shift) / r0;
        let mats: Vec<CMatrix> = factors.iter().map(LocalMonomial::matrix).collect();
        let mapped = apply_local_unitaries(self.moved, &mats).ok()?;
        (mapped.max_distance(&self.target.scaled(phase)) <= self.tol)
            .then_some(WeakWitness::Monomial { factors, phase })
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Gaussian elimination over `Z_p`. Free variables are set to zero.
fn solve_mod_prime(mut rows: Vec<Vec<usize>>, mut rhs: Vec<usize>, p: usize) -> Option<Vec<usize>> {
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: usize| -> usize {
        // Fermat inverse
        let (mut base, mut exp, mut acc) = (a % p, p - 2, 1usize);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        rhs.swap(r, pr);
        let f = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * f % p;
        }
        rhs[r] = rhs[r] * f % p;
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let m = rows[i][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - m * y) % p;
                }
                rhs[i] = (rhs[i] + p * p - m * rhs[r]) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|&b| b != 0) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i];
    }
    Some(x)
}
