use multidir_core::geometry::format_sites;
use multidir_core::state::{
    diagonal_entanglement, is_absolutely_maximally_entangled, is_multidirectional_unitary,
    is_spatially_symmetric, von_neumann_entropy,
};
use multidir_core::{Geometry, PureState, Result};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct BipartitionRow {
    pub deviation: f64,
    /// ln-based, or base N with `--log-base-n`.
    pub entropy: f64,
    pub maximal: bool,
    pub sites: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ame: Option<bool>,
    pub bipartitions: Vec<BipartitionRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal_entanglement: Option<f64>,
    pub entropy_unit: String,
    pub geometry: String,
    pub multidirectional: bool,
    pub norm: f64,
    pub pass: bool,
    pub symmetric: bool,
    pub tolerance: f64,
}

pub fn verify(
    state: &PureState,
    geometry: &Geometry,
    tol: f64,
    ame: bool,
    base_n: bool,
) -> Result<VerificationReport> {
    let n = state.local_dim();
    let scale = if base_n { 1.0 / (n as f64).ln() } else { 1.0 };
    let multi = is_multidirectional_unitary(state, geometry, tol)?;
    let bipartitions = multi
        .verdicts
        .iter()
        .map(|v| {
            Ok(BipartitionRow {
                deviation: v.deviation,
                entropy: von_neumann_entropy(state, &v.subset)? * scale,
                maximal: v.maximal,
                sites: v.subset.iter().map(|s| s + 1).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let symmetric = is_spatially_symmetric(state, geometry, tol);
    let diagonal = if geometry.has_diagonals() {
        Some(diagonal_entanglement(state, geometry)? * scale)
    } else {
        None
    };
    let ame = ame.then(|| is_absolutely_maximally_entangled(state, tol));
    let pass = multi.overall && symmetric && ame.unwrap_or(true);
    Ok(VerificationReport {
        ame,
        bipartitions,
        diagonal_entanglement: diagonal,
        entropy_unit: if base_n {
            format!("log{n}")
        } else {
            "nats".into()
        },
        geometry: geometry.name(),
        multidirectional: multi.overall,
        norm: state.norm(),
        pass,
        symmetric,
        tolerance: tol,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "geometry  {}\nnorm      {:.12}\n\n",
            self.geometry, self.norm
        );
        let labels: Vec<String> = self
            .bipartitions
            .iter()
            .map(|b| format_sites(&b.sites.iter().map(|s| s - 1).collect::<Vec<_>>()))
            .collect();
        let width = labels
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("bipartition".len());
        out.push_str(&format!(
            "{:<width$}  {:>9}  {:>12}  {:>16}\n",
            "bipartition",
            "maximal",
            "deviation",
            format!("entropy ({})", self.entropy_unit)
        ));
        for (label, b) in labels.iter().zip(&self.bipartitions) {
            out.push_str(&format!(
                "{label:<width$}  {:>9}  {:>12.3e}  {:>16.12}\n",
                yes(b.maximal),
                b.deviation,
                b.entropy
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "multi-directional unitary  {}\n",
            yes(self.multidirectional)
        ));
        out.push_str(&format!(
            "spatially symmetric        {}\n",
            yes(self.symmetric)
        ));
        if let Some(d) = self.diagonal_entanglement {
            out.push_str(&format!("diagonal entanglement      {d:.12}\n"));
        }
        if let Some(a) = self.ame {
            out.push_str(&format!("absolutely max. entangled  {}\n", yes(a)));
        }
        out.push_str(&format!(
            "result                     {}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}
