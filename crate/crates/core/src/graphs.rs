//! Two-step nilpotent Lie algebras attached to simple graphs.
//!
//! The algebra of `G = (V, E)` has basis the vertices (in input order)
//! followed by one vector `v∧w` per edge (edges sorted by vertex index), with
//! `[v, w] = v∧w` for every edge and all other brackets zero.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{BracketEntry, LieAlgebra};
use crate::linalg::{int, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: loop at vertex {label}")]
    Loop { line: usize, label: String },
    #[error("line {line}: duplicate edge {a} {b}")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// Finite simple graph on labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    /// `edges` as index pairs; loops and repeated edges are rejected.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen_labels = BTreeSet::new();
        for l in &labels {
            if !seen_labels.insert(l.as_str()) {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let mut set = BTreeSet::new();
        for (line, &(a, b)) in edges.iter().enumerate() {
            let name = |i: usize| {
                labels
                    .get(i)
                    .cloned()
                    .ok_or(GraphError::UnknownVertex(i.to_string()))
            };
            if a == b {
                return Err(GraphError::Loop {
                    line: line + 1,
                    label: name(a)?,
                });
            }
            let (la, lb) = (name(a)?, name(b)?);
            if !set.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge {
                    line: line + 1,
                    a: la,
                    b: lb,
                });
            }
        }
        Ok(Self {
            labels,
            edges: set.into_iter().collect(),
        })
    }

    /// Vertices named `v1..vn`.
    pub fn unlabeled(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new((1..=n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn isolated(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == 0)
            .collect()
    }

    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) > 0)
            .collect()
    }

    pub fn in_triangle(&self, v: usize) -> bool {
        let n = self.neighbors(v);
        n.iter()
            .enumerate()
            .any(|(i, &a)| n[i + 1..].iter().any(|&b| self.has_edge(a, b)))
    }

    /// Connected components as sorted vertex lists, ordered by first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices of `self` then those of `other`, relabeled `v1..`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        Graph::unlabeled(shift + other.vertex_count(), &edges).expect("union of simple graphs")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphFile {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        })
        .expect("graph serializes")
    }

    /// `n=4 e=01,12,23` using vertex indices.
    pub fn descriptor(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!("n={} e={}", self.vertex_count(), edges.join(","))
    }
}

/// Reads an edge list (`a b` per line, `vertex a` for an isolated vertex,
/// `#` comments) or a JSON object `{"vertices": [...], "edges": [[a, b], ...]}`.
pub fn parse_graph(input: &str) -> Result<Graph, GraphError> {
    if input.trim_start().starts_with('{') {
        let file: GraphFile =
            serde_json::from_str(input).map_err(|e| GraphError::Json(e.to_string()))?;
        let index: HashMap<&str, usize> = file
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut edges = Vec::with_capacity(file.edges.len());
        for (a, b) in &file.edges {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            edges.push((ia, ib));
        }
        return Graph::new(file.vertices, &edges);
    }
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut intern = |l: &str, labels: &mut Vec<String>| -> usize {
        *index.entry(l.to_string()).or_insert_with(|| {
            labels.push(l.to_string());
            labels.len() - 1
        })
    };
    let mut edges = Vec::new();
    for (no, raw) in input.lines().enumerate() {
        let line = no + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", v] => {
                intern(v, &mut labels);
            }
            [a, b] => {
                if a == b {
                    return Err(GraphError::Loop {
                        line,
                        label: a.to_string(),
                    });
                }
                let ia = intern(a, &mut labels);
                let ib = intern(b, &mut labels);
                if seen.insert((ia.min(ib), ia.max(ib)), line).is_some() {
                    return Err(GraphError::DuplicateEdge {
                        line,
                        a: a.to_string(),
                        b: b.to_string(),
                    });
                }
                edges.push((ia, ib));
            }
            _ => {
                return Err(GraphError::Malformed {
                    line,
                    message: format!("expected `a b` or `vertex a`, found `{text}`"),
                })
            }
        }
    }
    Graph::new(labels, &edges)
}

/// `n_G` together with the basis bookkeeping.
#[derive(Clone, Debug)]
pub struct GraphAlgebra {
    pub graph: Graph,
    pub algebra: LieAlgebra,
}

impl GraphAlgebra {
    pub fn vertex_index(&self, v: usize) -> usize {
        v
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.graph
            .edges
            .binary_search(&(a.min(b), a.max(b)))
            .ok()
            .map(|e| self.graph.vertex_count() + e)
    }

    /// Span of the edge vectors.
    pub fn edge_space(&self) -> Subspace {
        let nv = self.graph.vertex_count();
        Subspace::coordinate(self.algebra.dim(), nv..nv + self.graph.edge_count())
    }
}

pub fn build_algebra(g: &Graph) -> GraphAlgebra {
    let nv = g.vertex_count();
    let entries = g
        .edges
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| BracketEntry::new(a, b, vec![(nv + e, int(1))]));
    let mut labels = g.labels.clone();
    labels.extend(
        g.edges
            .iter()
            .map(|&(a, b)| format!("[{},{}]", g.labels[a], g.labels[b])),
    );
    let algebra = LieAlgebra::new(labels, entries).expect("graph brackets satisfy Jacobi");
    GraphAlgebra {
        graph: g.clone(),
        algebra,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerReport {
    pub vertex: usize,
    /// `z(v) = z ⊕ span(V \ N(v))`
    pub centralizer_identity: bool,
    pub in_triangle: bool,
    /// Checked only for vertices in no triangle.
    pub vertex_covering: Option<bool>,
    /// `[z(v), n_G] = C^1(n_G)`, checked only for vertices in no triangle.
    pub bracket_identity: Option<bool>,
}

impl CentralizerReport {
    pub fn all_hold(&self) -> bool {
        self.centralizer_identity
            && self.vertex_covering.unwrap_or(true)
            && self.bracket_identity.unwrap_or(true)
    }
}

pub fn centralizer_lemma_check(ga: &GraphAlgebra, v: usize) -> CentralizerReport {
    let g = &ga.algebra;
    let n = g.dim();
    let graph = &ga.graph;
    let nbrs: BTreeSet<usize> = graph.neighbors(v).into_iter().collect();
    let far: Vec<usize> = (0..graph.vertex_count())
        .filter(|w| !nbrs.contains(w))
        .collect();
    let zv = g
        .centralizer(&Subspace::coordinate(n, [ga.vertex_index(v)]))
        .expect("coordinate subspace");
    let expected = g
        .center()
        .sum(&Subspace::coordinate(n, far.iter().copied()))
        .expect("same ambient");
    let in_triangle = graph.in_triangle(v);
    let (vertex_covering, bracket_identity) = if in_triangle {
        (None, None)
    } else {
        let far_set: BTreeSet<usize> = far.iter().copied().collect();
        let covering = graph
            .edges
            .iter()
            .all(|(a, b)| far_set.contains(a) || far_set.contains(b));
        let image = g.bracket_with_algebra(&zv).expect("subspace of algebra");
        (Some(covering), Some(image == g.commutator()))
    };
    CentralizerReport {
        vertex: v,
        centralizer_identity: zv == expected,
        in_triangle,
        vertex_covering,
        bracket_identity,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Admits,
    Refutes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphReason {
    /// Every component is a triangle or an isolated vertex.
    TrianglesAndPoints {
        triangles: usize,
        isolated: usize,
    },
    /// `|E| != |V_1|`.
    EdgeCount {
        edges: usize,
        non_isolated: usize,
    },
    VertexNotInTriangle {
        vertex: String,
    },
    /// A component that is neither a triangle nor a point.
    ComponentShape {
        vertices: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClassification {
    pub prediction: Prediction,
    pub reason: GraphReason,
}

/// Predicted existence of an ad-invariant metric on `n_G` from the shape of
/// the components of `G`.
pub fn classify_graph(g: &Graph) -> GraphClassification {
    let comps = g.components();
    let is_triangle =
        |c: &Vec<usize>| c.len() == 3 && g.edges.iter().filter(|(a, _)| c.contains(a)).count() == 3;
    if comps.iter().all(|c| c.len() == 1 || is_triangle(c)) {
        return GraphClassification {
            prediction: Prediction::Admits,
            reason: GraphReason::TrianglesAndPoints {
                triangles: comps.iter().filter(|c| c.len() == 3).count(),
                isolated: comps.iter().filter(|c| c.len() == 1).count(),
            },
        };
    }
    let refute = |reason| GraphClassification {
        prediction: Prediction::Refutes,
        reason,
    };
    let v1 = g.non_isolated();
    if g.edge_count() != v1.len() {
        return refute(GraphReason::EdgeCount {
            edges: g.edge_count(),
            non_isolated: v1.len(),
        });
    }
    if let Some(&v) = v1.iter().find(|&&v| !g.in_triangle(v)) {
        return refute(GraphReason::VertexNotInTriangle {
            vertex: g.labels[v].clone(),
        });
    }
    let bad = comps
        .into_iter()
        .find(|c| c.len() > 1 && !is_triangle(c))
        .expect("some component is not a triangle");
    refute(GraphReason::ComponentShape {
        vertices: bad.iter().map(|&v| g.labels[v].clone()).collect(),
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

fn pair_bits(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

/// Connected simple graphs on `n` vertices, one per isomorphism class.
/// Each is the edge set of smallest bitmask in its class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "enumeration is exhaustive over edge subsets");
    let pairs = pair_bits(n);
    let pos: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let perms = permutations(n);
    // bit images of every edge under every permutation
    let images: Vec<Vec<u32>> = perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p[a], p[b]);
                    1u32 << pos[&(x.min(y), x.max(y))]
                })
                .collect()
        })
        .collect();
    let connected = |mask: u32| -> bool {
        if n == 0 {
            return false;
        }
        let mut seen = 1u32;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        seen.count_ones() as usize == n
    };
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        if (mask.count_ones() as usize) < n.saturating_sub(1) || !connected(mask) {
            continue;
        }
        let canonical = images.iter().all(|img| {
            let m = img
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0u32, |acc, (_, b)| acc | b);
            m >= mask
        });
        if canonical {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            out.push(Graph::unlabeled(n, &edges).expect("simple"));
        }
    }
    out
}

/// Disjoint unions of at least two connected graphs from `pieces` (indexed
/// as a multiset, nondecreasing index) with at most `max_vertices` vertices.
pub fn disjoint_unions(pieces: &[Graph], max_vertices: usize) -> Vec<Graph> {
    fn rec(
        pieces: &[Graph],
        start: usize,
        current: &Graph,
        parts: usize,
        max_vertices: usize,
        out: &mut Vec<Graph>,
    ) {
        for i in start..pieces.len() {
            let next = current.disjoint_union(&pieces[i]);
            if next.vertex_count() > max_vertices {
                continue;
            }
            if parts + 1 >= 2 {
                out.push(next.clone());
            }
            rec(pieces, i, &next, parts + 1, max_vertices, out);
        }
    }
    let mut out = Vec::new();
    rec(
        pieces,
        0,
        &Graph::unlabeled(0, &[]).expect("empty"),
        0,
        max_vertices,
        &mut out,
    );
    out
}
