//! Batch scans comparing solver verdicts with the construction-side
//! classifications.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, RunConfig, SolverMode};
use crate::graphs::{
    build_algebra, classify_graph, connected_graphs, disjoint_unions, Graph, Prediction,
};
use crate::parabolic::{
    build_nilradical, certify_free_isomorphism, classify_nilradical, specs_for_type,
    verify_lcs_grading, NilradicalPrediction, ParabolicSpec,
};
use crate::roots::{CartanType, Family};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRow {
    pub graph: String,
    pub connected: bool,
    pub vertices: usize,
    pub edges: usize,
    pub predicted_admits: bool,
    pub verdict: String,
    pub certificate: Option<String>,
    pub solver_admits: Option<bool>,
    /// `dim = |V|+|E|`, `dim C^1 = |E|`, `dim z = |V_0|+|E|`, class <= 2.
    pub dims_ok: bool,
    pub agrees: bool,
    pub soundness_conflict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphScan {
    pub max_vertices: usize,
    pub union_max_vertices: usize,
    pub connected: usize,
    pub unions: usize,
    pub disagreements: usize,
    pub conflicts: usize,
    pub rows: Vec<GraphRow>,
}

impl GraphScan {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0 && self.conflicts == 0
    }
}

/// The scan corpus: connected graphs on `1..=max_vertices` vertices, then
/// unions of them with at least two components on at most
/// `union_max_vertices` vertices.
pub fn graph_corpus(max_vertices: usize, union_max_vertices: usize) -> (Vec<Graph>, Vec<Graph>) {
    let connected: Vec<Graph> = (1..=max_vertices).flat_map(connected_graphs).collect();
    let unions = disjoint_unions(&connected, union_max_vertices);
    (connected, unions)
}

pub fn graph_row(g: &Graph, config: &RunConfig) -> GraphRow {
    let ga = build_algebra(g);
    let cls = classify_graph(g);
    let predicted_admits = cls.prediction == Prediction::Admits;
    let n = &ga.algebra;
    let e = g.edge_count();
    let dims_ok = n.dim() == g.vertex_count() + e
        && n.commutator().dim() == e
        && n.center().dim() == g.isolated().len() + e
        && n.nilpotency_class().is_some_and(|k| k <= 2);
    let mut row = GraphRow {
        graph: g.descriptor(),
        connected: g.is_connected(),
        vertices: g.vertex_count(),
        edges: e,
        predicted_admits,
        verdict: String::new(),
        certificate: None,
        solver_admits: None,
        dims_ok,
        agrees: false,
        soundness_conflict: false,
        error: None,
    };
    match analyze(n, &[], config, SolverMode::Always) {
        Ok(a) => {
            row.solver_admits = a.solver.as_ref().map(|s| s.admits());
            let solver_side = row.solver_admits.unwrap_or(a.verdict.admits());
            row.agrees = !matches!(a.verdict, crate::analysis::Verdict::Undecided { .. })
                && a.verdict.admits() == predicted_admits
                && solver_side == predicted_admits;
            row.verdict = a.verdict.kind_name().to_string();
            row.certificate = a.obstruction.as_ref().map(|c| c.kind_name().to_string());
            row.soundness_conflict = a.soundness_conflict;
        }
        Err(err) => {
            row.verdict = "error".into();
            row.error = Some(err.to_string());
        }
    }
    row
}

pub fn scan_graphs(
    max_vertices: usize,
    union_max_vertices: usize,
    config: &RunConfig,
) -> GraphScan {
    let (connected, unions) = graph_corpus(max_vertices, union_max_vertices);
    let all: Vec<&Graph> = connected.iter().chain(unions.iter()).collect();
    let rows: Vec<GraphRow> = all.par_iter().map(|g| graph_row(g, config)).collect();
    GraphScan {
        max_vertices,
        union_max_vertices,
        connected: connected.len(),
        unions: unions.len(),
        disagreements: rows.iter().filter(|r| !r.agrees || !r.dims_ok).count(),
        conflicts: rows.iter().filter(|r| r.soundness_conflict).count(),
        rows,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicRow {
    pub spec: String,
    pub dim: usize,
    pub k: usize,
    pub layer_dims: Vec<usize>,
    pub center_dim: usize,
    pub prediction: NilradicalPrediction,
    pub verdict: String,
    pub certificate: Option<String>,
    pub solver: Option<String>,
    pub isomorphism: Option<String>,
    pub lcs_ok: bool,
    pub jacobi_ok: bool,
    pub agrees: bool,
    pub soundness_conflict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicScan {
    pub types: Vec<String>,
    pub single: usize,
    pub pairs: usize,
    pub disagreements: usize,
    pub conflicts: usize,
    pub rows: Vec<ParabolicRow>,
}

impl ParabolicScan {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0 && self.conflicts == 0
    }
}

/// A, B, C, D up to `max_rank` (within each family's valid ranks).
pub fn classical_types(max_rank: usize) -> Vec<CartanType> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for rank in 1..=max_rank {
            if let Ok(t) = CartanType::new(family, rank) {
                out.push(t);
            }
        }
    }
    out
}

pub fn parabolic_row(spec: &ParabolicSpec, config: &RunConfig) -> ParabolicRow {
    let pn = build_nilradical(spec);
    let prediction = classify_nilradical(spec);
    let lcs = verify_lcs_grading(&pn);
    let jacobi_ok = pn.algebra.validate().is_ok();
    let isomorphism = match prediction {
        NilradicalPrediction::N23 | NilradicalPrediction::N32 => {
            certify_free_isomorphism(&pn).map(|(name, _)| name)
        }
        _ => None,
    };
    let mut row = ParabolicRow {
        spec: spec.to_string(),
        dim: pn.dim(),
        k: pn.k,
        layer_dims: pn.layer_dims(),
        center_dim: pn.algebra.center().dim(),
        prediction: prediction.clone(),
        verdict: String::new(),
        certificate: None,
        solver: None,
        isomorphism,
        lcs_ok: lcs.all_hold(),
        jacobi_ok,
        agrees: false,
        soundness_conflict: false,
        error: None,
    };
    let registered = pn.registered_decompositions();
    match analyze(&pn.algebra, &registered, config, SolverMode::Always) {
        Ok(a) => {
            let iso_ok = match prediction {
                NilradicalPrediction::N23 | NilradicalPrediction::N32 => row.isomorphism.is_some(),
                _ => true,
            };
            let decided = a.verdict.admits() || a.verdict.refutes();
            row.agrees = decided && a.verdict.admits() == prediction.admits() && iso_ok;
            row.verdict = a.verdict.kind_name().to_string();
            row.certificate = a.obstruction.as_ref().map(|c| c.kind_name().to_string());
            row.solver = a.solver.as_ref().map(|s| {
                if s.admits() {
                    "admits".to_string()
                } else {
                    "refutes".to_string()
                }
            });
            row.soundness_conflict = a.soundness_conflict;
        }
        Err(err) => {
            row.verdict = "error".into();
            row.error = Some(err.to_string());
        }
    }
    row
}

pub fn scan_parabolics(
    types: &[CartanType],
    include_pairs: bool,
    config: &RunConfig,
) -> ParabolicScan {
    let specs: Vec<ParabolicSpec> = types
        .iter()
        .flat_map(|&t| specs_for_type(t, include_pairs))
        .collect();
    let rows: Vec<ParabolicRow> = specs.par_iter().map(|s| parabolic_row(s, config)).collect();
    ParabolicScan {
        types: types.iter().map(|t| t.to_string()).collect(),
        single: specs.iter().filter(|s| s.pi0.len() == 1).count(),
        pairs: specs.iter().filter(|s| s.pi0.len() == 2).count(),
        disagreements: rows
            .iter()
            .filter(|r| !r.agrees || !r.lcs_ok || !r.jacobi_ok)
            .count(),
        conflicts: rows.iter().filter(|r| r.soundness_conflict).count(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph_scan() {
        let scan = scan_graphs(3, 4, &RunConfig::default());
        assert_eq!(scan.connected, 4);
        assert!(scan.unions > 0);
        assert!(
            scan.all_agree(),
            "{:?}",
            scan.rows.iter().find(|r| !r.agrees)
        );
    }

    #[test]
    fn small_parabolic_scan() {
        let types = [
            CartanType::new(Family::A, 3).unwrap(),
            CartanType::new(Family::B, 3).unwrap(),
        ];
        let scan = scan_parabolics(&types, true, &RunConfig::default());
        assert_eq!((scan.single, scan.pairs), (6, 6));
        assert!(
            scan.all_agree(),
            "{:?}",
            scan.rows.iter().find(|r| !r.agrees)
        );
        let b33 = scan.rows.iter().find(|r| r.spec == "B3:g3").unwrap();
        assert_eq!(b33.isomorphism.as_deref(), Some("n_{3,2}"));
    }

    #[test]
    fn classical_type_list() {
        let names: Vec<String> = classical_types(4).iter().map(|t| t.to_string()).collect();
        assert_eq!(
            names,
            ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4"]
        );
    }
}
