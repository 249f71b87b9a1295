//! Classical (permutation) solutions: states that are uniform sums over a set
//! of basis configurations forming a bijection between the input and output
//! halves of the sites.
//!
//! Everything here is exact. Site values are `u8` in `0..N`; they are shown
//! 1-based in the bracket notation, e.g. `[1424]` or `[122 322]`.

mod enumerate;
mod equivalence;

pub use enumerate::{enumerate_solutions, enumerate_solutions_with_jobs, MAX_INPUT_TUPLES};
pub use equivalence::{
    classify, classify_with_jobs, octahedral_hexagonal_map, strong_equivalence, weak_equivalence,
    Classification, EquivalenceClass,
};

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Geometry, GeometryKind};
use crate::state::PureState;

/// Site values of one basis configuration, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration(Vec<u8>);

impl Configuration {
    pub fn new(values: Vec<u8>, n: usize) -> Result<Self> {
        if values.iter().any(|&v| v as usize >= n) {
            return Err(Error::InvalidConfiguration(format!(
                "values {values:?} out of range for N={n}"
            )));
        }
        Ok(Self(values))
    }

    /// From 1-based values as written in the bracket notation.
    pub fn from_one_based(values: &[usize], n: usize) -> Result<Self> {
        if values.iter().any(|&v| v == 0 || v > n || v > 256) {
            return Err(Error::InvalidConfiguration(format!(
                "values {values:?} out of range for N={n}"
            )));
        }
        Ok(Self(values.iter().map(|&v| (v - 1) as u8).collect()))
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn to_usize(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn input(&self) -> &[u8] {
        &self.0[..self.0.len() / 2]
    }

    pub fn output(&self) -> &[u8] {
        &self.0[self.0.len() / 2..]
    }

    /// `b_j = a_j` on every diagonal.
    pub fn is_diagonally_identical(&self) -> bool {
        self.input() == self.output()
    }

    /// Bracket notation with 1-based values. Halves are separated by a space
    /// when `K/2 > 2`; values above 9 are comma separated.
    pub fn notation(&self, n: usize) -> String {
        let h = self.0.len() / 2;
        let render = |part: &[u8]| -> String {
            if n <= 9 {
                part.iter().map(|v| char::from(b'1' + v)).collect()
            } else {
                let vals: Vec<String> =
                    part.iter().map(|v| (*v as usize + 1).to_string()).collect();
                vals.join(",")
            }
        };
        let (a, b) = (render(&self.0[..h]), render(&self.0[h..]));
        if h > 2 {
            format!("[{a} {b}]")
        } else if n <= 9 {
            format!("[{a}{b}]")
        } else {
            format!("[{a},{b}]")
        }
    }
}

fn tuple_index(values: &[u8], n: usize) -> usize {
    values.iter().fold(0, |acc, &v| acc * n + v as usize)
}

/// All distinct images of a configuration under a geometry's symmetry group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbit {
    members: Vec<Configuration>,
}

impl Orbit {
    pub fn members(&self) -> &[Configuration] {
        &self.members
    }

    /// Lexicographically least member.
    pub fn label(&self) -> &Configuration {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: &Configuration) -> bool {
        self.members.binary_search(c).is_ok()
    }

    pub fn is_diagonally_identical(&self) -> bool {
        self.members[0].is_diagonally_identical()
    }

    pub fn input_tuples(&self) -> impl Iterator<Item = &[u8]> {
        self.members.iter().map(Configuration::input)
    }
}

pub fn orbit_of(config: &Configuration, geometry: &Geometry) -> Result<Orbit> {
    if config.len() != geometry.sites() {
        return Err(Error::InvalidConfiguration(format!(
            "{} values for {} sites",
            config.len(),
            geometry.sites()
        )));
    }
    let members: BTreeSet<Configuration> = geometry
        .symmetry_group()
        .iter()
        .map(|g| Configuration(g.permute_values(&config.0)))
        .collect();
    Ok(Orbit {
        members: members.into_iter().collect(),
    })
}

/// No two members share their input half.
pub fn is_non_overlapping(orbit: &Orbit) -> bool {
    let inputs: BTreeSet<&[u8]> = orbit.input_tuples().collect();
    inputs.len() == orbit.len()
}

/// No input tuple occurs in both orbits.
pub fn mutually_non_overlapping(a: &Orbit, b: &Orbit) -> bool {
    let inputs: BTreeSet<&[u8]> = a.input_tuples().collect();
    !b.input_tuples().any(|t| inputs.contains(t))
}

/// Every input tuple in `{0..N}^{K/2}` occurs in some member.
pub fn is_complete(orbits: &[Orbit], n: usize) -> bool {
    let Some(first) = orbits.first() else {
        return false;
    };
    let h = first.label().len() / 2;
    let covered: BTreeSet<&[u8]> = orbits.iter().flat_map(Orbit::input_tuples).collect();
    covered.len() == n.pow(h as u32)
}

fn check_overlaps(orbits: &[Orbit], n: usize) -> Result<()> {
    let mut owner: std::collections::HashMap<&[u8], usize> = Default::default();
    for (i, o) in orbits.iter().enumerate() {
        for t in o.input_tuples() {
            if let Some(prev) = owner.insert(t, i) {
                let culprit = if prev == i {
                    o.label().notation(n)
                } else {
                    format!(
                        "{} and {}",
                        orbits[prev].label().notation(n),
                        o.label().notation(n)
                    )
                };
                return Err(Error::Overlap(format!(
                    "{} in {culprit}",
                    Configuration(t.to_vec()).tuple_notation()
                )));
            }
        }
    }
    Ok(())
}

impl Configuration {
    fn tuple_notation(&self) -> String {
        let vals: Vec<String> = self
            .0
            .iter()
            .map(|v| (*v as usize + 1).to_string())
            .collect();
        format!("({})", vals.join(","))
    }
}

/// A spatially symmetric classical solution: a union of orbits whose members
/// give a bijection between input and output tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalSolution {
    kind: GeometryKind,
    n: usize,
    orbits: Vec<Orbit>,
}

impl ClassicalSolution {
    /// Validates both bijections. Orbits are stored sorted.
    pub fn new(geometry: &Geometry, n: usize, mut orbits: Vec<Orbit>) -> Result<Self> {
        orbits.sort();
        orbits.dedup();
        check_overlaps(&orbits, n)?;
        let h = geometry.half();
        let total = n.pow(h as u32);
        let mut inputs = vec![false; total];
        let mut outputs = vec![false; total];
        for c in orbits.iter().flat_map(Orbit::members) {
            if c.len() != geometry.sites() {
                return Err(Error::InvalidConfiguration(format!(
                    "{} has the wrong length",
                    c.notation(n)
                )));
            }
            inputs[tuple_index(c.input(), n)] = true;
            let o = tuple_index(c.output(), n);
            if outputs[o] {
                return Err(Error::BijectionViolation(format!(
                    "output tuple {} appears twice",
                    Configuration(c.output().to_vec()).tuple_notation()
                )));
            }
            outputs[o] = true;
        }
        if let Some(missing) = inputs.iter().position(|&x| !x) {
            let t = crate::linalg::digits(missing, n, h);
            return Err(Error::BijectionViolation(format!(
                "input tuple {} is not covered",
                Configuration(t.iter().map(|&v| v as u8).collect()).tuple_notation()
            )));
        }
        Ok(Self {
            kind: geometry.kind(),
            n,
            orbits,
        })
    }

    pub fn geometry_kind(&self) -> GeometryKind {
        self.kind
    }

    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Orbits whose configurations differ somewhere along a diagonal.
    pub fn non_diagonal_orbits(&self) -> Vec<&Orbit> {
        self.orbits
            .iter()
            .filter(|o| !o.is_diagonally_identical())
            .collect()
    }

    pub fn non_diagonal_count(&self) -> usize {
        self.orbits
            .iter()
            .filter(|o| !o.is_diagonally_identical())
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.non_diagonal_count() == 0
    }

    /// All configurations, sorted.
    pub fn support(&self) -> Vec<Configuration> {
        let mut s: Vec<Configuration> = self
            .orbits
            .iter()
            .flat_map(|o| o.members().iter().cloned())
            .collect();
        s.sort();
        s
    }

    /// Non-diagonal orbit labels in bracket notation, sorted; `Identity`
    /// when there are none.
    pub fn compact_notation(&self) -> String {
        let mut labels: Vec<&Configuration> = self
            .non_diagonal_orbits()
            .into_iter()
            .map(Orbit::label)
            .collect();
        if labels.is_empty() {
            return "Identity".to_string();
        }
        labels.sort();
        let rendered: Vec<String> = labels.iter().map(|c| c.notation(self.n)).collect();
        rendered.join(", ")
    }

    /// Sort key: fewer non-diagonal orbits first, then lexicographic labels.
    pub(crate) fn canonical_key(&self) -> (usize, Vec<Configuration>) {
        let mut labels: Vec<Configuration> = self
            .non_diagonal_orbits()
            .into_iter()
            .map(|o| o.label().clone())
            .collect();
        labels.sort();
        (labels.len(), labels)
    }
}

impl fmt::Display for ClassicalSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact_notation())
    }
}

/// Adds the diagonally identical orbit of every uncovered input tuple, in
/// lexicographic order of the tuples.
pub fn complete_with_diagonal_orbits(
    geometry: &Geometry,
    n: usize,
    orbits: Vec<Orbit>,
) -> Result<ClassicalSolution> {
    if let Some(o) = orbits.iter().find(|o| !is_non_overlapping(o)) {
        return Err(Error::Overlap(format!(
            "orbit {} overlaps itself",
            o.label().notation(n)
        )));
    }
    check_overlaps(&orbits, n)?;
    let h = geometry.half();
    let total = n.pow(h as u32);
    let mut covered = vec![false; total];
    for t in orbits.iter().flat_map(Orbit::input_tuples) {
        covered[tuple_index(t, n)] = true;
    }
    let mut all = orbits;
    for idx in 0..total {
        if covered[idx] {
            continue;
        }
        let t: Vec<u8> = crate::linalg::digits(idx, n, h)
            .into_iter()
            .map(|v| v as u8)
            .collect();
        let mut values = t.clone();
        values.extend_from_slice(&t);
        let orbit = orbit_of(&Configuration(values), geometry)?;
        for u in orbit.input_tuples() {
            covered[tuple_index(u, n)] = true;
        }
        all.push(orbit);
    }
    ClassicalSolution::new(geometry, n, all)
}

/// Parses bracket labels such as `"[1424],[3344]"` or `"[122 322], [133 233]"`.
///
/// Inside each bracket, spaces, commas and `~` are ignored and every digit is
/// one site value. For `N > 9` the values must be separated instead.
pub fn parse_compact_notation(
    text: &str,
    geometry: &Geometry,
    n: usize,
) -> Result<Vec<Configuration>> {
    let k = geometry.sites();
    let trimmed = text.trim();
    if trimmed.eq_ignore_ascii_case("identity") || trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let err = |reason: String| Error::Parse {
        input: text.to_string(),
        reason,
    };
    let mut out = Vec::new();
    let mut rest = trimmed;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == ';');
        if rest.is_empty() {
            break;
        }
        let Some(body) = rest.strip_prefix('[') else {
            return Err(err(format!("expected `[` at `{rest}`")));
        };
        let Some(end) = body.find(']') else {
            return Err(err("missing `]`".into()));
        };
        let inner = &body[..end];
        rest = &body[end + 1..];
        let tokens: Vec<&str> = inner
            .split(|c: char| c.is_whitespace() || c == ',' || c == '~')
            .filter(|t| !t.is_empty())
            .collect();
        let values: Vec<usize> = if n > 9 {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err(format!("bad value `{t}`")))
                })
                .collect::<Result<_>>()?
        } else {
            tokens
                .concat()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| err(format!("bad digit `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        if values.len() != k {
            return Err(err(format!(
                "label [{inner}] has {} values, expected {k}",
                values.len()
            )));
        }
        out.push(Configuration::from_one_based(&values, n).map_err(|e| err(e.to_string()))?);
    }
    Ok(out)
}

/// Expands bracket labels into the full solution: the orbit of every label,
/// completed with diagonally identical orbits.
pub fn expand_compact_notation(
    text: &str,
    geometry: &Geometry,
    n: usize,
) -> Result<ClassicalSolution> {
    let configs = parse_compact_notation(text, geometry, n)?;
    let mut orbits = Vec::with_capacity(configs.len());
    for c in &configs {
        let o = orbit_of(c, geometry)?;
        if orbits.contains(&o) {
            return Err(Error::Overlap(format!(
                "orbit {} is listed twice",
                c.notation(n)
            )));
        }
        orbits.push(o);
    }
    complete_with_diagonal_orbits(geometry, n, orbits)
}

/// Uniform superposition of the support with amplitude `N^{-K/4}`.
pub fn solution_to_state(solution: &ClassicalSolution) -> Result<PureState> {
    let n = solution.n;
    let support = solution.support();
    let k = support.first().map_or(0, Configuration::len);
    let amp = Complex64::new((n as f64).powf(-(k as f64) / 4.0), 0.0);
    PureState::from_terms(n, k, support.into_iter().map(|c| (c.to_usize(), amp)))
}
