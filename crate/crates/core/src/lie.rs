//! Lie algebras given by structure constants, with absolute and relative
//! central series, centralizers and direct sums.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    format_rational, is_zero_vector, parse_rational, zero_vector, LinalgError, MatrixQ,
    ParseRationalError, Rational, SparseSystem, Subspace,
};

/// One nonzero Jacobiator `J(e_i, e_j, e_k)`, indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub jacobiator: Vec<(usize, Rational)>,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        let terms: Vec<String> = self
            .jacobiator
            .iter()
            .map(|(idx, c)| format!("{}*e{}", format_rational(c), idx + 1))
            .collect();
        write!(
            f,
            "Jacobi identity fails on (e{}, e{}, e{}): {}",
            i + 1,
            j + 1,
            k + 1,
            terms.join(" + ")
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket of e{0} with itself must vanish")]
    SelfBracket(usize),
    #[error("bracket [e{0}, e{1}] given twice")]
    DuplicatePair(usize, usize),
    #[error("{0} labels given for dimension {1}")]
    LabelCount(usize, usize),
    #[error("{0}")]
    Jacobi(JacobiViolation),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("malformed structure constants: {0}")]
    Format(String),
}

/// Finite-dimensional Lie algebra over Q.
///
/// The table holds `[e_i, e_j]` for every ordered pair; only pairs `i < j` are
/// supplied by callers, the rest follows from antisymmetry.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<Vec<(usize, Rational)>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}) {{", self.dim)?;
        for (i, j, terms) in self.structure_constants() {
            let t: Vec<String> = terms
                .iter()
                .map(|(k, c)| format!("{}*{}", format_rational(c), self.labels[*k]))
                .collect();
            write!(
                f,
                " [{},{}]={}",
                self.labels[i],
                self.labels[j],
                t.join("+")
            )?;
        }
        write!(f, " }}")
    }
}

/// Bracket `[e_i, e_j] = Σ c e_k`, indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Rational)>,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, terms: Vec<(usize, Rational)>) -> Self {
        Self { i, j, terms }
    }
}

fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    /// Builds and validates (including Jacobi) an algebra.
    pub fn new(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = BracketEntry>,
    ) -> Result<Self, LieError> {
        let g = Self::new_unchecked(labels, brackets)?;
        g.validate().map_err(LieError::Jacobi)?;
        Ok(g)
    }

    /// Same as [`LieAlgebra::new`] with default labels `e1..en`.
    pub fn from_brackets(
        dim: usize,
        brackets: impl IntoIterator<Item = BracketEntry>,
    ) -> Result<Self, LieError> {
        Self::new(default_labels(dim), brackets)
    }

    /// Checks indices and antisymmetry bookkeeping but not the Jacobi identity.
    pub fn new_unchecked(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = BracketEntry>,
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        let mut table = vec![Vec::new(); dim * dim];
        let mut seen = vec![false; dim * dim];
        for BracketEntry { i, j, terms } in brackets {
            for idx in [i, j].into_iter().chain(terms.iter().map(|(k, _)| *k)) {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            let mut merged: Vec<(usize, Rational)> = Vec::new();
            let mut sorted = terms;
            sorted.sort_by_key(|(k, _)| *k);
            for (k, c) in sorted {
                match merged.last_mut() {
                    Some((lk, lc)) if *lk == k => *lc += c,
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            if i == j {
                if merged.is_empty() {
                    continue;
                }
                return Err(LieError::SelfBracket(i + 1));
            }
            let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            if seen[a * dim + b] {
                return Err(LieError::DuplicatePair(a + 1, b + 1));
            }
            seen[a * dim + b] = true;
            let pos: Vec<(usize, Rational)> = if sign == 1 {
                merged
            } else {
                merged.into_iter().map(|(k, c)| (k, -c)).collect()
            };
            let neg = pos.iter().map(|(k, c)| (*k, -c.clone())).collect();
            table[a * dim + b] = pos;
            table[b * dim + a] = neg;
        }
        Ok(Self { dim, labels, table })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            labels: default_labels(dim),
            table: vec![Vec::new(); dim * dim],
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LieError> {
        if labels.len() != self.dim {
            return Err(LieError::LabelCount(labels.len(), self.dim));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[e_i, e_j]` as sparse coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    /// Nonzero structure constants with `i < j`.
    pub fn structure_constants(
        &self,
    ) -> impl Iterator<Item = (usize, usize, &[(usize, Rational)])> + '_ {
        (0..self.dim).flat_map(move |i| {
            (i + 1..self.dim).filter_map(move |j| {
                let t = self.bracket_basis(i, j);
                (!t.is_empty()).then_some((i, j, t))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            }
            .into());
        }
        Ok(())
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let terms = self.bracket_basis(i, j);
                if terms.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in terms {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    /// `[x, e_j]`
    fn bracket_with_basis(&self, x: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, s) in self.bracket_basis(i, j) {
                out[*k] += xi * s;
            }
        }
        out
    }

    /// Matrix of `ad_x`, column `c` holding `[x, e_c]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<MatrixQ, LieError> {
        self.check_len(x)?;
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|c| self.bracket_with_basis(x, c))
            .collect();
        Ok(MatrixQ::from_fn(self.dim, self.dim, |r, c| {
            cols[c][r].clone()
        }))
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let mut out = zero_vector(self.dim);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            // [e_a, [e_b, e_c]]
            for (m, s) in self.bracket_basis(b, c) {
                for (n, t) in self.bracket_basis(a, *m) {
                    out[*n] += s * t;
                }
            }
        }
        out
    }

    /// Checks the Jacobi identity on every basis triple `i < j < k`;
    /// other triples follow from antisymmetry.
    pub fn validate(&self) -> Result<(), JacobiViolation> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let jac = self.jacobiator(i, j, k);
                    if !is_zero_vector(&jac) {
                        return Err(JacobiViolation {
                            triple: (i, j, k),
                            jacobiator: jac
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .collect(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_subspace(&self, v: &Subspace) -> Result<(), LieError> {
        if v.ambient_dim() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: v.ambient_dim(),
            }
            .into());
        }
        Ok(())
    }

    /// `[A, B]` as a subspace.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut vectors = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                let z = self.bracket_unchecked(x, y);
                if !is_zero_vector(&z) {
                    vectors.push(z);
                }
            }
        }
        Ok(Subspace::span(self.dim, vectors)?)
    }

    /// `[g, V]`
    pub fn bracket_with_algebra(&self, v: &Subspace) -> Result<Subspace, LieError> {
        self.check_subspace(v)?;
        let mut vectors = Vec::new();
        for x in v.basis_vectors() {
            for j in 0..self.dim {
                let z = self.bracket_with_basis(x, j);
                if !is_zero_vector(&z) {
                    vectors.push(z);
                }
            }
        }
        Ok(Subspace::span(self.dim, vectors)?)
    }

    /// `z(V) = {X : [X, V] = 0}`
    pub fn centralizer(&self, v: &Subspace) -> Result<Subspace, LieError> {
        self.check_subspace(v)?;
        let mut sys = SparseSystem::new(self.dim);
        for b in v.basis_vectors() {
            // row k of the map X -> [X, b]: Σ_c X_c [e_c, b]_k
            let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.dim];
            for c in 0..self.dim {
                let mut image = zero_vector(self.dim);
                for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    axpy_terms(&mut image, bj, self.bracket_basis(c, j));
                }
                for (k, val) in image.into_iter().enumerate() {
                    if !val.is_zero() {
                        rows[k].push((c, val));
                    }
                }
            }
            for row in rows.into_iter().filter(|r| !r.is_empty()) {
                sys.push(row);
            }
        }
        Ok(sys.solution_space())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim))
            .expect("full space has ambient dimension")
    }

    pub fn commutator(&self) -> Subspace {
        self.bracket_with_algebra(&Subspace::full(self.dim))
            .expect("full space has ambient dimension")
    }

    /// `{X : [X, g] ⊆ W}`
    pub fn preimage_into(&self, w: &Subspace) -> Result<Subspace, LieError> {
        self.check_subspace(w)?;
        let ann = w.annihilator();
        let mut sys = SparseSystem::new(self.dim);
        for y in ann.basis_vectors() {
            for i in 0..self.dim {
                let row: Vec<(usize, Rational)> = (0..self.dim)
                    .filter_map(|c| {
                        let mut s = Rational::zero();
                        for (k, v) in self.bracket_basis(c, i) {
                            if !y[*k].is_zero() {
                                s += &y[*k] * v;
                            }
                        }
                        (!s.is_zero()).then_some((c, s))
                    })
                    .collect();
                if !row.is_empty() {
                    sys.push(row);
                }
            }
        }
        Ok(sys.solution_space())
    }

    pub fn is_ideal(&self, v: &Subspace) -> Result<bool, LieError> {
        Ok(v.contains(&self.bracket_with_algebra(v)?)?)
    }

    pub fn is_subalgebra(&self, v: &Subspace) -> Result<bool, LieError> {
        Ok(v.contains(&self.bracket_spaces(v, v)?)?)
    }

    /// Relative series `C^j(V)` and `C_j(V)`, both computed until they repeat.
    pub fn relative_series(&self, v: &Subspace) -> Result<SeriesReport, LieError> {
        self.check_subspace(v)?;
        let cap = 4 * self.dim + 8;
        let descending =
            iterate_until_repeat(v.clone(), cap, |prev| self.bracket_with_algebra(prev))?;
        let first = self.centralizer(v)?;
        let mut ascending = vec![Subspace::zero(self.dim)];
        ascending.extend(iterate_until_repeat(first, cap, |prev| {
            self.preimage_into(prev)
        })?);
        dedup_tail(&mut ascending);
        Ok(SeriesReport {
            descending,
            ascending,
        })
    }

    pub fn central_series(&self) -> SeriesReport {
        self.relative_series(&Subspace::full(self.dim))
            .expect("full space has ambient dimension")
    }

    /// Nilpotency class `k` with `C^k(g) = 0 ≠ C^{k-1}(g)`; `Some(0)` for the
    /// zero algebra, `None` when not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let lower = self.central_series().descending;
        let last = lower.last().expect("series is nonempty");
        if !last.is_zero() {
            return None;
        }
        Some(lower.len() - 1)
    }
}

fn axpy_terms(out: &mut [Rational], c: &Rational, terms: &[(usize, Rational)]) {
    for (k, s) in terms {
        out[*k] += c * s;
    }
}

fn iterate_until_repeat(
    start: Subspace,
    cap: usize,
    mut step: impl FnMut(&Subspace) -> Result<Subspace, LieError>,
) -> Result<Vec<Subspace>, LieError> {
    let mut terms = vec![start];
    while terms.len() < cap {
        let next = step(terms.last().expect("nonempty"))?;
        if terms.contains(&next) {
            break;
        }
        terms.push(next);
    }
    Ok(terms)
}

fn dedup_tail(terms: &mut Vec<Subspace>) {
    while terms.len() >= 2 && terms[terms.len() - 1] == terms[terms.len() - 2] {
        terms.pop();
    }
}

/// Relative descending and ascending series of a subspace.
///
/// Both lists stop before the first term that repeats an earlier one, so the
/// last entry is the stable value when the series is monotone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub descending: Vec<Subspace>,
    pub ascending: Vec<Subspace>,
}

impl SeriesReport {
    pub fn descending_dims(&self) -> Vec<usize> {
        self.descending.iter().map(Subspace::dim).collect()
    }

    pub fn ascending_dims(&self) -> Vec<usize> {
        self.ascending.iter().map(Subspace::dim).collect()
    }

    /// `C^j(V)`, extended by the last computed term.
    pub fn lower(&self, j: usize) -> &Subspace {
        &self.descending[j.min(self.descending.len() - 1)]
    }

    /// `C_j(V)`, extended by the last computed term.
    pub fn upper(&self, j: usize) -> &Subspace {
        &self.ascending[j.min(self.ascending.len() - 1)]
    }

    /// Number of indices after which both series are constant.
    pub fn span_len(&self) -> usize {
        self.descending.len().max(self.ascending.len())
    }
}

/// Block-diagonal direct sum.
pub fn direct_sum(algebras: &[LieAlgebra]) -> LieAlgebra {
    let dim = algebras.iter().map(LieAlgebra::dim).sum();
    let mut labels = Vec::with_capacity(dim);
    let mut entries = Vec::new();
    let mut offset = 0;
    let multi = algebras.len() > 1;
    for (n, g) in algebras.iter().enumerate() {
        for l in g.labels() {
            labels.push(if multi {
                format!("{l}.{}", n + 1)
            } else {
                l.clone()
            });
        }
        for (i, j, terms) in g.structure_constants() {
            entries.push(BracketEntry::new(
                i + offset,
                j + offset,
                terms.iter().map(|(k, c)| (k + offset, c.clone())).collect(),
            ));
        }
        offset += g.dim();
    }
    LieAlgebra::new_unchecked(labels, entries).expect("blocks are valid algebras")
}

/// Structure-constant file format, 1-based indices, rationals as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantsFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<BracketRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub k: usize,
    pub c: String,
}

impl StructureConstantsFile {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        Self {
            dim: g.dim(),
            labels: Some(g.labels().to_vec()),
            brackets: g
                .structure_constants()
                .map(|(i, j, terms)| BracketRecord {
                    i: i + 1,
                    j: j + 1,
                    terms: terms
                        .iter()
                        .map(|(k, c)| TermRecord {
                            k: k + 1,
                            c: format_rational(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, LieError> {
        let labels = match &self.labels {
            Some(l) if l.len() != self.dim => return Err(LieError::LabelCount(l.len(), self.dim)),
            Some(l) => l.clone(),
            None => default_labels(self.dim),
        };
        let one_based = |idx: usize| {
            if idx == 0 || idx > self.dim {
                Err(LieError::IndexOutOfRange {
                    index: idx,
                    dim: self.dim,
                })
            } else {
                Ok(idx - 1)
            }
        };
        let mut entries = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let mut terms = Vec::with_capacity(b.terms.len());
            for t in &b.terms {
                terms.push((one_based(t.k)?, parse_rational(&t.c)?));
            }
            entries.push(BracketEntry::new(one_based(b.i)?, one_based(b.j)?, terms));
        }
        LieAlgebra::new(labels, entries)
    }
}

impl LieAlgebra {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(StructureConstantsFile::from_algebra(self))
            .expect("structure constants serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self, LieError> {
        let file: StructureConstantsFile =
            serde_json::from_str(s).map_err(|e| LieError::Format(e.to_string()))?;
        file.to_algebra()
    }
}
