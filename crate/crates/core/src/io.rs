//! File formats: states, operators, incidence graphs, phase tables and
//! solution lists.
//!
//! JSON keys are emitted in sorted order and floats in their shortest
//! round-trip form, so identical inputs give byte-identical files. Site
//! values in files are 1-based.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::{expand_compact_notation, ClassicalSolution};
use crate::constructions::{IncidenceGraph, PhaseTable};
use crate::error::{Error, Result};
use crate::geometry::{Geometry, GeometryKind};
use crate::linalg::{self, CMatrix};
use crate::state::{Convention, OperatorMatrix, PureState};

/// Amplitudes at or below this modulus are left out of files.
pub const ZERO_CUTOFF: f64 = 1e-15;

// Field order below is alphabetical (uppercase first) to keep keys sorted.

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AmplitudeEntry {
    config: Vec<usize>,
    im: f64,
    re: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StateFile {
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "N")]
    n: usize,
    amplitudes: Vec<AmplitudeEntry>,
    geometry: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct OperatorEntry {
    im: f64,
    input: Vec<usize>,
    output: Vec<usize>,
    re: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct OperatorFile {
    #[serde(rename = "N")]
    n: usize,
    convention: String,
    entries: Vec<OperatorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    geometry: Option<String>,
    #[serde(rename = "half_K")]
    half_k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PhaseFile {
    #[serde(rename = "N")]
    n: usize,
    arity: usize,
    phases: Vec<f64>,
}

fn format_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

fn one_based(values: &[usize]) -> Vec<usize> {
    values.iter().map(|v| v + 1).collect()
}

fn zero_based(values: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    values
        .iter()
        .map(|&v| {
            if (1..=n).contains(&v) {
                Ok(v - 1)
            } else {
                Err(Error::Format(format!("{what} value {v} outside 1..={n}")))
            }
        })
        .collect()
}

pub fn state_to_json(state: &PureState, geometry: &Geometry) -> Result<String> {
    if geometry.sites() != state.sites() {
        return Err(Error::DimensionMismatch {
            expected: geometry.sites(),
            found: state.sites(),
        });
    }
    let amplitudes = state
        .support(ZERO_CUTOFF)
        .into_iter()
        .map(|(config, a)| AmplitudeEntry {
            config: one_based(&config),
            im: a.im,
            re: a.re,
        })
        .collect();
    let file = StateFile {
        k: state.sites(),
        n: state.local_dim(),
        amplitudes,
        geometry: geometry.name(),
    };
    serde_json::to_string_pretty(&file).map_err(format_err)
}

/// Reads a state file. Repeated configurations are an error.
pub fn state_from_json(text: &str) -> Result<(Geometry, PureState)> {
    let file: StateFile = serde_json::from_str(text).map_err(format_err)?;
    let kind: GeometryKind = file.geometry.parse()?;
    let geometry = Geometry::new(kind)?;
    if geometry.sites() != file.k {
        return Err(Error::DimensionMismatch {
            expected: geometry.sites(),
            found: file.k,
        });
    }
    if file.n == 0 {
        return Err(Error::Format("N must be positive".into()));
    }
    let mut state = vec![Complex64::new(0.0, 0.0); file.n.pow(file.k as u32)];
    let mut seen = vec![false; state.len()];
    for entry in &file.amplitudes {
        if entry.config.len() != file.k {
            return Err(Error::Format(format!(
                "configuration {:?} does not have {} sites",
                entry.config, file.k
            )));
        }
        let idx = linalg::index_of(&zero_based(&entry.config, file.n, "site")?, file.n);
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::Format(format!(
                "configuration {:?} repeated",
                entry.config
            )));
        }
        state[idx] = Complex64::new(entry.re, entry.im);
    }
    Ok((geometry, PureState::new(file.n, file.k, state)?))
}

pub fn operator_to_json(op: &OperatorMatrix, geometry: Option<&Geometry>) -> Result<String> {
    let (n, h) = (op.local_dim(), op.half_k());
    let m = op.matrix();
    let mut entries = Vec::new();
    for row in 0..op.dim() {
        for col in 0..op.dim() {
            let z = m[(row, col)];
            if z.norm() > ZERO_CUTOFF {
                entries.push(OperatorEntry {
                    im: z.im,
                    input: one_based(&linalg::digits(col, n, h)),
                    output: one_based(&linalg::digits(row, n, h)),
                    re: z.re,
                });
            }
        }
    }
    let file = OperatorFile {
        n,
        convention: op.convention().as_str().to_string(),
        entries,
        geometry: geometry.map(Geometry::name),
        half_k: h,
    };
    serde_json::to_string_pretty(&file).map_err(format_err)
}

/// Reads an operator file together with its geometry, if it names one.
pub fn operator_from_json(text: &str) -> Result<(Option<Geometry>, OperatorMatrix)> {
    let file: OperatorFile = serde_json::from_str(text).map_err(format_err)?;
    let geometry = match &file.geometry {
        Some(name) => Some(Geometry::new(name.parse()?)?),
        None => None,
    };
    if file.n == 0 || file.half_k == 0 {
        return Err(Error::Format("N and half_K must be positive".into()));
    }
    let convention: Convention = file.convention.parse()?;
    let dim = file.n.pow(file.half_k as u32);
    let mut m = CMatrix::zeros(dim, dim);
    for e in &file.entries {
        if e.input.len() != file.half_k || e.output.len() != file.half_k {
            return Err(Error::Format(format!(
                "entry {:?} -> {:?} does not have {} sites per side",
                e.input, e.output, file.half_k
            )));
        }
        let col = linalg::index_of(&zero_based(&e.input, file.n, "input")?, file.n);
        let row = linalg::index_of(&zero_based(&e.output, file.n, "output")?, file.n);
        m[(row, col)] = Complex64::new(e.re, e.im);
    }
    let op = OperatorMatrix::new(file.n, file.half_k, m, convention)?;
    Ok((geometry, op))
}

pub fn incidence_to_json(graph: &IncidenceGraph) -> Result<String> {
    serde_json::to_string(graph).map_err(format_err)
}

pub fn incidence_from_json(text: &str) -> Result<IncidenceGraph> {
    let graph: IncidenceGraph = serde_json::from_str(text).map_err(format_err)?;
    graph.validated()
}

/// `{"N": n, "arity": m, "phases": [...]}` with phases listed in mixed-radix
/// order of their tuples.
pub fn phases_to_json(table: &PhaseTable) -> Result<String> {
    let file = PhaseFile {
        n: table.local_dim(),
        arity: table.arity(),
        phases: table.phases().to_vec(),
    };
    serde_json::to_string_pretty(&file).map_err(format_err)
}

pub fn phases_from_json(text: &str) -> Result<PhaseTable> {
    let file: PhaseFile = serde_json::from_str(text).map_err(format_err)?;
    PhaseTable::new(file.n, file.arity, file.phases)
}

/// One solution per line in compact notation.
pub fn solutions_to_text(solutions: &[ClassicalSolution]) -> String {
    let mut out = String::new();
    for s in solutions {
        out.push_str(&s.compact_notation());
        out.push('\n');
    }
    out
}

/// Parses a solution list; blank lines and lines starting with `#` are
/// skipped.
pub fn solutions_from_text(
    text: &str,
    geometry: &Geometry,
    n: usize,
) -> Result<Vec<ClassicalSolution>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| expand_compact_notation(l, geometry, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{identity_state, kicked_ising_gate, symmetric_incidence};

    #[test]
    fn state_round_trip() {
        let g = Geometry::new(GeometryKind::Hexagon).unwrap();
        let s = identity_state(&g, 3).unwrap();
        let text = state_to_json(&s, &g).unwrap();
        let (g2, s2) = state_from_json(&text).unwrap();
        assert_eq!(g2.kind(), GeometryKind::Hexagon);
        assert_eq!(s, s2);
        assert_eq!(text, state_to_json(&s2, &g2).unwrap());
        let keys: Vec<usize> = ["\"K\"", "\"N\"", "\"amplitudes\"", "\"geometry\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn state_file_errors() {
        assert!(matches!(state_from_json("{"), Err(Error::Format(_))));
        let bad = r#"{"K":4,"N":2,"geometry":"square","amplitudes":[{"config":[1,1,1,3],"re":1,"im":0}]}"#;
        assert!(matches!(state_from_json(bad), Err(Error::Format(_))));
        let short =
            r#"{"K":4,"N":2,"geometry":"square","amplitudes":[{"config":[1,1],"re":1,"im":0}]}"#;
        assert!(state_from_json(short).is_err());
        let mismatch = r#"{"K":6,"N":2,"geometry":"square","amplitudes":[]}"#;
        assert!(matches!(
            state_from_json(mismatch),
            Err(Error::DimensionMismatch { .. })
        ));
        let repeated = r#"{"K":4,"N":2,"geometry":"square","amplitudes":[
            {"config":[1,1,1,1],"re":1,"im":0},{"config":[1,1,1,1],"re":1,"im":0}]}"#;
        assert!(state_from_json(repeated).is_err());
    }

    #[test]
    fn operator_round_trip() {
        let op = kicked_ising_gate();
        let g = Geometry::new(GeometryKind::Square).unwrap();
        let text = operator_to_json(&op, Some(&g)).unwrap();
        assert!(text.contains("\"convention\": \"edge\""));
        let (g2, op2) = operator_from_json(&text).unwrap();
        assert_eq!(g2.unwrap().kind(), GeometryKind::Square);
        assert_eq!(op2.convention(), op.convention());
        assert_eq!(op2.matrix(), op.matrix());
        let bare = operator_to_json(&op, None).unwrap();
        assert!(!bare.contains("geometry"));
    }

    #[test]
    fn incidence_and_phases() {
        let g = Geometry::new(GeometryKind::Square).unwrap();
        let graph = symmetric_incidence(&g, &[1, 2]).unwrap();
        let text = incidence_to_json(&graph).unwrap();
        assert!(text.starts_with("{\"K\":4"));
        assert_eq!(incidence_from_json(&text).unwrap(), graph);
        let loops = r#"{"K":2,"labels":[[1,0],[0,0]]}"#;
        assert!(incidence_from_json(loops).is_err());

        let table = PhaseTable::from_fn(2, 2, |t| (t[0] + 2 * t[1]) as f64 * 0.1);
        let back = phases_from_json(&phases_to_json(&table).unwrap()).unwrap();
        assert_eq!(back, table);
        assert!(phases_from_json(r#"{"N":2,"arity":2,"phases":[0.0]}"#).is_err());
    }

    #[test]
    fn solution_text_round_trip() {
        let g = Geometry::new(GeometryKind::Square).unwrap();
        let sols = crate::classical::enumerate_solutions(&g, 3).unwrap();
        let text = solutions_to_text(&sols);
        assert_eq!(text.lines().count(), sols.len());
        assert_eq!(solutions_from_text(&text, &g, 3).unwrap(), sols);
    }
}
