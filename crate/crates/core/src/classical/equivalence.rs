//! Strong (independent per-site value permutations) and weak (one shared
//! value permutation) equivalence of classical solutions.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{enumerate_solutions_with_jobs, orbit_of, ClassicalSolution, Configuration, Orbit};
use crate::error::{Error, Result};
use crate::geometry::{Geometry, GeometryKind};

/// Permutations of `0..n` in lexicographic order, identity first.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..p.len())
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn supports_comparable(a: &ClassicalSolution, b: &ClassicalSolution) -> bool {
    a.kind == b.kind && a.n == b.n
}

/// Number of distinct value pairs on every pair of sites. Per-site value
/// permutations leave it unchanged.
fn pair_profile(support: &[Configuration], n: usize) -> Vec<usize> {
    let k = support.first().map_or(0, Configuration::len);
    let mut out = Vec::with_capacity(k * k);
    let mut seen = vec![false; n * n];
    for s in 0..k {
        for t in s + 1..k {
            seen.iter_mut().for_each(|x| *x = false);
            for c in support {
                seen[c.0[s] as usize * n + c.0[t] as usize] = true;
            }
            out.push(seen.iter().filter(|&&x| x).count());
        }
    }
    out
}

struct StrongSearch<'a> {
    n: usize,
    order: Vec<usize>,
    from: &'a [Configuration],
    /// Sorted prefix keys of the target support after each depth.
    target: Vec<Vec<u64>>,
    perms: Vec<Vec<u8>>,
}

impl StrongSearch<'_> {
    fn descend(&self, depth: usize, keys: &[u64], chosen: &mut Vec<usize>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let site = self.order[depth];
        let mut next = vec![0u64; keys.len()];
        for (pi, p) in self.perms.iter().enumerate() {
            for (i, c) in self.from.iter().enumerate() {
                next[i] = keys[i] * self.n as u64 + p[c.0[site] as usize] as u64;
            }
            let mut sorted = next.clone();
            sorted.sort_unstable();
            if sorted != self.target[depth] {
                continue;
            }
            chosen.push(pi);
            if self.descend(depth + 1, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Per-site value permutations `π_j` with `(π_1 … π_K)(support a) = support b`,
/// found depth first over sites with identity permutations tried first.
/// `witness[j][v]` is the image of value `v` on site `j`.
pub fn strong_equivalence(a: &ClassicalSolution, b: &ClassicalSolution) -> Option<Vec<Vec<usize>>> {
    if !supports_comparable(a, b) {
        return None;
    }
    let (sa, sb) = (a.support(), b.support());
    if sa.len() != sb.len() || sa.is_empty() {
        return None;
    }
    strong_between(&sa, &sb, a.n)
}

fn strong_between(sa: &[Configuration], sb: &[Configuration], n: usize) -> Option<Vec<Vec<usize>>> {
    if pair_profile(sa, n) != pair_profile(sb, n) {
        return None;
    }
    let k = sa[0].len();
    let h = k / 2;
    // alternate the ends of each diagonal: those pairs are constrained early
    let order: Vec<usize> = (0..h).flat_map(|j| [j, j + h]).collect();
    let mut target = Vec::with_capacity(k);
    let mut keys = vec![0u64; sb.len()];
    for &site in &order {
        for (key, c) in keys.iter_mut().zip(sb) {
            *key = *key * n as u64 + c.0[site] as u64;
        }
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        target.push(sorted);
    }
    let search = StrongSearch {
        n,
        order: order.clone(),
        from: sa,
        target,
        perms: permutations(n),
    };
    let mut chosen = Vec::with_capacity(k);
    if !search.descend(0, &vec![0; sa.len()], &mut chosen) {
        return None;
    }
    let mut witness = vec![Vec::new(); k];
    for (depth, &site) in order.iter().enumerate() {
        witness[site] = search.perms[chosen[depth]]
            .iter()
            .map(|&v| v as usize)
            .collect();
    }
    Some(witness)
}

/// A single value permutation `V` applied on every site that maps support `a`
/// onto support `b`, searched over all `N!` candidates in lexicographic order.
pub fn weak_equivalence(a: &ClassicalSolution, b: &ClassicalSolution) -> Option<Vec<usize>> {
    if !supports_comparable(a, b) {
        return None;
    }
    let (sa, sb) = (a.support(), b.support());
    if sa.len() != sb.len() {
        return None;
    }
    permutations(a.n).into_iter().find_map(|p| {
        let mut image: Vec<Configuration> = sa
            .iter()
            .map(|c| Configuration(c.0.iter().map(|&v| p[v as usize]).collect()))
            .collect();
        image.sort();
        (image == sb).then(|| p.iter().map(|&v| v as usize).collect())
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Indices into [`Classification::solutions`], ascending.
    pub members: Vec<usize>,
    /// Member with the fewest non-diagonal orbits, ties broken by the
    /// lexicographic order of its orbit labels.
    pub representative: usize,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub kind: GeometryKind,
    pub n: usize,
    /// All solutions in canonical order.
    pub solutions: Vec<ClassicalSolution>,
    /// Strong equivalence classes ordered by their representatives.
    pub classes: Vec<EquivalenceClass>,
}

impl Classification {
    pub fn representative(&self, class: usize) -> &ClassicalSolution {
        &self.solutions[self.classes[class].representative]
    }

    /// Index of the class containing the solution with exactly this support.
    pub fn class_of_support(&self, support: &[Configuration]) -> Option<usize> {
        let idx = self.solutions.iter().position(|s| s.support() == support)?;
        self.classes.iter().position(|c| c.members.contains(&idx))
    }

    pub fn class_of_solution(&self, solution: &ClassicalSolution) -> Option<usize> {
        self.class_of_support(&solution.support())
    }
}

/// Partitions all solutions into strong equivalence classes.
pub fn classify(geometry: &Geometry, n: usize) -> Result<Classification> {
    classify_with_jobs(geometry, n, None)
}

pub fn classify_with_jobs(
    geometry: &Geometry,
    n: usize,
    jobs: Option<usize>,
) -> Result<Classification> {
    let solutions = enumerate_solutions_with_jobs(geometry, n, jobs)?;
    let work = || partition(&solutions, n);
    let classes = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    Ok(Classification {
        kind: geometry.kind(),
        n,
        solutions,
        classes,
    })
}

fn partition(solutions: &[ClassicalSolution], n: usize) -> Vec<EquivalenceClass> {
    let supports: Vec<Vec<Configuration>> =
        solutions.iter().map(ClassicalSolution::support).collect();
    let profiles: Vec<Vec<usize>> = supports.iter().map(|s| pair_profile(s, n)).collect();
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    for i in 0..solutions.len() {
        // solutions arrive in canonical order, so a class's first member is
        // its representative
        let hit = classes.par_iter().position_first(|c| {
            let r = c.representative;
            profiles[r] == profiles[i] && strong_between(&supports[r], &supports[i], n).is_some()
        });
        match hit {
            Some(c) => classes[c].members.push(i),
            None => classes.push(EquivalenceClass {
                members: vec![i],
                representative: i,
            }),
        }
    }
    classes
}

/// Regroups a support into orbits of another geometry on the same sites.
fn regroup(support: &[Configuration], geometry: &Geometry, n: usize) -> Result<ClassicalSolution> {
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut assigned: HashMap<&Configuration, ()> = HashMap::new();
    for c in support {
        if assigned.contains_key(c) {
            continue;
        }
        let o = orbit_of(c, geometry)?;
        for m in o.members() {
            if let Some(x) = support.iter().find(|s| *s == m) {
                assigned.insert(x, ());
            }
        }
        orbits.push(o);
    }
    ClassicalSolution::new(geometry, n, orbits)
}

/// For each octahedral class, the hexagonal class containing its solutions.
///
/// The octahedron's sites carry the hexagon's labels and the hexagon's group
/// is a subgroup of the octahedron's, so every octahedral solution is a
/// union of hexagonal orbits and a hexagonal solution.
pub fn octahedral_hexagonal_map(
    n: usize,
    jobs: Option<usize>,
) -> Result<(Classification, Classification, Vec<usize>)> {
    let oct_geom = Geometry::new(GeometryKind::Octahedron)?;
    let hex_geom = Geometry::new(GeometryKind::Hexagon)?;
    let oct = classify_with_jobs(&oct_geom, n, jobs)?;
    let hex = classify_with_jobs(&hex_geom, n, jobs)?;
    let mut map = Vec::with_capacity(oct.classes.len());
    for (ci, class) in oct.classes.iter().enumerate() {
        let mut target = None;
        for &m in &class.members {
            let support = oct.solutions[m].support();
            let as_hex = regroup(&support, &hex_geom, n)?;
            let hc = hex.class_of_solution(&as_hex).ok_or_else(|| {
                Error::Unsupported(format!(
                    "octahedral class {} has no hexagonal counterpart",
                    ci + 1
                ))
            })?;
            match target {
                None => target = Some(hc),
                Some(t) if t != hc => {
                    return Err(Error::Unsupported(format!(
                        "octahedral class {} spreads over hexagonal classes {} and {}",
                        ci + 1,
                        t + 1,
                        hc + 1
                    )))
                }
                Some(_) => {}
            }
        }
        map.push(target.expect("classes are nonempty"));
    }
    Ok((oct, hex, map))
}
