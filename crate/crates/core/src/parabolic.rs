//! Nilradicals of parabolic subalgebras of split simple Lie algebras.
//!
//! For `Π₀ ⊆ Π` the nilradical is spanned by the root vectors `X_γ` with
//! `o(γ) = Σ_{α∈Π₀} coord_α(γ) > 0`, graded by `o`. Basis vectors follow the
//! root enumeration order of [`RootSystem`].

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hall::free_nilpotent;
use crate::iso::{find_generator_isomorphism, Isomorphism};
use crate::lie::LieAlgebra;
use crate::linalg::{Rational, Subspace};
use crate::obstructions::Decomposition;
use crate::roots::{CartanType, Family, RootError, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("malformed parabolic spec `{0}`, expected e.g. `B3:g3` or `A3:g1,g3`")]
    BadSpec(String),
    #[error("empty set of simple roots")]
    EmptyPi0,
    #[error("simple root g{index} out of range for {ty}")]
    BadIndex { index: usize, ty: CartanType },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no decomposition found for root {gamma:?} and g{alpha}")]
    SearchFailed { gamma: Vec<i64>, alpha: usize },
}

/// Cartan type and a nonempty set of simple roots (0-based, sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSpec {
    pub cartan_type: CartanType,
    pub pi0: Vec<usize>,
}

impl ParabolicSpec {
    pub fn new(
        cartan_type: CartanType,
        pi0: impl IntoIterator<Item = usize>,
    ) -> Result<Self, ParabolicError> {
        let mut pi0: Vec<usize> = pi0.into_iter().collect();
        pi0.sort_unstable();
        pi0.dedup();
        if pi0.is_empty() {
            return Err(ParabolicError::EmptyPi0);
        }
        if let Some(&bad) = pi0.iter().find(|&&i| i >= cartan_type.rank) {
            return Err(ParabolicError::BadIndex {
                index: bad + 1,
                ty: cartan_type,
            });
        }
        Ok(Self { cartan_type, pi0 })
    }
}

impl fmt::Display for ParabolicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots: Vec<String> = self.pi0.iter().map(|i| format!("g{}", i + 1)).collect();
        write!(f, "{}:{}", self.cartan_type, roots.join(","))
    }
}

impl FromStr for ParabolicSpec {
    type Err = ParabolicError;

    /// `TYPE:g<i>,g<j>,...` with 1-based simple root indices; the `g` (or
    /// `γ`) prefix is optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParabolicError::BadSpec(s.to_string());
        let (ty, roots) = s.split_once(':').ok_or_else(bad)?;
        let cartan_type: CartanType = ty.parse()?;
        let mut pi0 = Vec::new();
        for tok in roots.split(',') {
            let tok = tok.trim();
            let digits = tok
                .strip_prefix('g')
                .or_else(|| tok.strip_prefix('γ'))
                .unwrap_or(tok);
            let i: usize = digits.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            pi0.push(i - 1);
        }
        Self::new(cartan_type, pi0)
    }
}

impl Serialize for ParabolicSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParabolicSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `n` for a parabolic spec, with its grading.
#[derive(Clone, Debug)]
pub struct ParabolicNilradical {
    pub spec: ParabolicSpec,
    pub rs: RootSystem,
    /// Indices into `rs.positive_roots()` of the basis roots, in basis order.
    pub roots: Vec<usize>,
    /// `o(γ)` of each basis root.
    pub degrees: Vec<usize>,
    pub algebra: LieAlgebra,
    /// Nilpotency class `k = o(γ_max)`.
    pub k: usize,
}

pub fn order(pi0: &[usize], coords: &[i64]) -> usize {
    pi0.iter().map(|&a| coords[a] as usize).sum()
}

pub fn build_nilradical(spec: &ParabolicSpec) -> ParabolicNilradical {
    build_nilradical_in(RootSystem::build(spec.cartan_type), spec)
}

/// As [`build_nilradical`], reusing an already built root system.
pub fn build_nilradical_in(rs: RootSystem, spec: &ParabolicSpec) -> ParabolicNilradical {
    let roots: Vec<usize> = (0..rs.positive_roots().len())
        .filter(|&r| order(&spec.pi0, rs.root(r)) > 0)
        .collect();
    let degrees = roots
        .iter()
        .map(|&r| order(&spec.pi0, rs.root(r)))
        .collect();
    let algebra = rs.root_algebra(&roots);
    let k = order(&spec.pi0, rs.gamma_max());
    ParabolicNilradical {
        spec: spec.clone(),
        rs,
        roots,
        degrees,
        algebra,
        k,
    }
}

impl ParabolicNilradical {
    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    pub fn root_coords(&self, basis: usize) -> &[i64] {
        self.rs.root(self.roots[basis])
    }

    pub fn basis_index(&self, coords: &[i64]) -> Option<usize> {
        let r = self.rs.index_of(coords)?;
        self.roots.iter().position(|&x| x == r)
    }

    /// `g_(i)` for `i = 1..=k`, as coordinate subspaces.
    pub fn layer(&self, i: usize) -> Subspace {
        Subspace::coordinate(
            self.dim(),
            (0..self.dim()).filter(|&b| self.degrees[b] == i),
        )
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        (1..=self.k).map(|i| self.layer(i).dim()).collect()
    }

    /// `⊕_{i > j} g_(i)`.
    pub fn tail(&self, j: usize) -> Subspace {
        Subspace::coordinate(self.dim(), (0..self.dim()).filter(|&b| self.degrees[b] > j))
    }

    pub fn is_in_delta_n(&self, coords: &[i64]) -> bool {
        self.rs.is_positive_root(coords) && order(&self.spec.pi0, coords) > 0
    }

    /// The split `g_(1) = ⊕ V_i`, `V_i` spanned by degree-one roots with
    /// `coord_{α_i} = 1`, one part per `α_i ∈ Π₀`.
    pub fn simple_root_split(&self) -> Decomposition {
        let parts = self
            .spec
            .pi0
            .iter()
            .map(|&a| {
                Subspace::coordinate(
                    self.dim(),
                    (0..self.dim())
                        .filter(|&b| self.degrees[b] == 1 && self.root_coords(b)[a] == 1),
                )
            })
            .collect();
        Decomposition::new(&self.algebra, parts).expect("degree-one layer complements C^1")
    }

    /// For a single `α = γ_l` in types B, C, D: `V_1 = ⟨X_{ε_i-ε_j}⟩`,
    /// `V_2 = ⟨X_{ε_i+ε_j}⟩` (`i <= l < j`), and for type B also
    /// `V_3 = ⟨X_{ε_i}⟩` (`i <= l`).
    pub fn epsilon_split(&self) -> Option<Decomposition> {
        let fam = self.spec.cartan_type.family;
        if !matches!(fam, Family::B | Family::C | Family::D)
            || self.spec.pi0.len() != 1
            || self.k < 2
        {
            return None;
        }
        let mut parts: [Vec<usize>; 3] = Default::default();
        for b in (0..self.dim()).filter(|&b| self.degrees[b] == 1) {
            let eps = self.rs.epsilon_coords(self.root_coords(b))?;
            let plus = eps
                .iter()
                .filter(|e| **e == Rational::from_integer(1.into()))
                .count();
            let minus = eps
                .iter()
                .filter(|e| **e == Rational::from_integer((-1).into()))
                .count();
            let slot = match (plus, minus) {
                (1, 1) => 0,
                (2, 0) => 1,
                (1, 0) => 2,
                _ => return None,
            };
            parts[slot].push(b);
        }
        let parts: Vec<Subspace> = parts
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| Subspace::coordinate(self.dim(), p.iter().copied()))
            .collect();
        Decomposition::new(&self.algebra, parts).ok()
    }

    /// Structured decompositions handed to the Θ search.
    pub fn registered_decompositions(&self) -> Vec<Decomposition> {
        let mut out = Vec::new();
        if self.k >= 2 {
            if let Some(d) = self.epsilon_split() {
                out.push(d);
            }
            out.push(self.simple_root_split());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcsReport {
    pub series_dims: Vec<usize>,
    pub layer_dims: Vec<usize>,
    /// `C^j(n) = ⊕_{i>j} g_(i)` for all `j`.
    pub tails_match: bool,
    /// `C^{k-1}(n) = g_(k)` is the center.
    pub center_is_top: bool,
    /// `[g_(1), g_(i-1)] = g_(i)` for `i >= 2`.
    pub generation: bool,
    /// `[g_(i), g_(j)] ⊆ g_(i+j)`.
    pub multiplicative: bool,
}

impl LcsReport {
    pub fn all_hold(&self) -> bool {
        self.tails_match && self.center_is_top && self.generation && self.multiplicative
    }
}

pub fn verify_lcs_grading(pn: &ParabolicNilradical) -> LcsReport {
    let g = &pn.algebra;
    let series = g.central_series();
    let tails_match = (0..=pn.k).all(|j| series.lower(j) == &pn.tail(j))
        && series.descending.last().is_some_and(Subspace::is_zero);
    let center_is_top = g.center() == pn.layer(pn.k);
    let generation = (2..=pn.k).all(|i| {
        g.bracket_spaces(&pn.layer(1), &pn.layer(i - 1))
            .expect("same algebra")
            == pn.layer(i)
    });
    let multiplicative = (0..pn.dim()).all(|a| {
        (0..pn.dim()).all(|b| {
            g.bracket_basis(a, b)
                .iter()
                .all(|(c, _)| pn.degrees[*c] == pn.degrees[a] + pn.degrees[b])
        })
    });
    LcsReport {
        series_dims: series.descending_dims(),
        layer_dims: pn.layer_dims(),
        tails_match,
        center_is_top,
        generation,
        multiplicative,
    }
}

/// `γ = δ + β_t + ... + β_1` with `coord_α(δ) = 0`, every `coord_α(β_j) != 0`
/// and every partial sum `δ + β_t + ... + β_{t-s}` in `Δ_n⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompCertificate {
    pub gamma: Vec<i64>,
    /// 0-based simple root index.
    pub alpha: usize,
    pub delta: Vec<i64>,
    /// `β_t, ..., β_1`.
    pub betas: Vec<Vec<i64>>,
    pub t: usize,
}

/// Breadth-first search over subtractions of roots `β ∈ Δ_n⁺` with
/// `coord_α(β) != 0`, stopping at the first `δ` with `coord_α(δ) = 0`.
pub fn decompose_root(
    pn: &ParabolicNilradical,
    gamma: &[i64],
    alpha: usize,
) -> Result<DecompCertificate, ParabolicError> {
    if pn.spec.pi0.len() < 2 {
        return Err(ParabolicError::Precondition(
            "needs at least two roots in Π₀".into(),
        ));
    }
    if !pn.spec.pi0.contains(&alpha) {
        return Err(ParabolicError::Precondition(format!(
            "g{} is not in Π₀",
            alpha + 1
        )));
    }
    if !pn.is_in_delta_n(gamma) || order(&pn.spec.pi0, gamma) != pn.k {
        return Err(ParabolicError::Precondition(format!(
            "{gamma:?} is not a root of the top layer"
        )));
    }
    let betas: Vec<&[i64]> = (0..pn.dim())
        .map(|b| pn.root_coords(b))
        .filter(|r| r[alpha] != 0)
        .collect();
    let mut parent: HashMap<Vec<i64>, (Vec<i64>, Vec<i64>)> = HashMap::new();
    let mut queue = VecDeque::from([gamma.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for beta in &betas {
            let next: Vec<i64> = cur.iter().zip(beta.iter()).map(|(x, y)| x - y).collect();
            if !pn.is_in_delta_n(&next) || parent.contains_key(&next) || next == gamma {
                continue;
            }
            parent.insert(next.clone(), (cur.clone(), beta.to_vec()));
            if next[alpha] == 0 {
                // walk back to γ; betas come out as β_t, ..., β_1
                let mut chain = Vec::new();
                let mut node = next.clone();
                while let Some((prev, b)) = parent.get(&node) {
                    chain.push(b.clone());
                    node = prev.clone();
                }
                let t = chain.len();
                return Ok(DecompCertificate {
                    gamma: gamma.to_vec(),
                    alpha,
                    delta: next,
                    betas: chain,
                    t,
                });
            }
            queue.push_back(next);
        }
    }
    Err(ParabolicError::SearchFailed {
        gamma: gamma.to_vec(),
        alpha,
    })
}

/// Independent re-check of a [`DecompCertificate`] by root membership.
pub fn verify_decomposition(
    rs: &RootSystem,
    pi0: &[usize],
    cert: &DecompCertificate,
) -> Result<(), String> {
    let in_n = |r: &[i64]| rs.is_positive_root(r) && order(pi0, r) > 0;
    let a = cert.alpha;
    if !pi0.contains(&a) {
        return Err("alpha not in Π₀".into());
    }
    if cert.t == 0 || cert.t != cert.betas.len() {
        return Err("t does not match the number of betas".into());
    }
    if !in_n(&cert.delta) || cert.delta[a] != 0 {
        return Err("delta must be in Δ_n⁺ with coord_α = 0".into());
    }
    let mut partial = cert.delta.clone();
    for b in &cert.betas {
        if !in_n(b) || b[a] == 0 {
            return Err(format!("beta {b:?} must be in Δ_n⁺ with coord_α != 0"));
        }
        partial = partial.iter().zip(b).map(|(x, y)| x + y).collect();
        if !in_n(&partial) {
            return Err(format!("partial sum {partial:?} is not in Δ_n⁺"));
        }
    }
    if partial != cert.gamma {
        return Err("sum differs from gamma".into());
    }
    if cert.t as i64 > cert.gamma[a] {
        return Err("t exceeds coord_α(γ)".into());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefuteReason {
    /// `|Π₀| >= 2`.
    SeveralSimpleRoots,
    /// Type B, `α = γ_n`, `n != 3`: the free 2-step algebra on `n` generators.
    FreeTwoStep { generators: usize },
    /// Type B, `α = γ_l`, `2 <= l <= n-1`: nonzero Θ for the ε split.
    ThetaSplit,
    /// Types C and D: two abelian parts with `[V_1, V_2] = C^1(n)`.
    HeisenbergReiter,
    /// G_2 with `α = γ_2`: one-dimensional center.
    DimSeries,
    /// Types E and F: `dim C^{k-1}(n) + dim C^1(n) > dim n`.
    DimCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NilradicalPrediction {
    Abelian,
    N23,
    N32,
    Refutes { reason: RefuteReason },
}

impl NilradicalPrediction {
    pub fn admits(&self) -> bool {
        matches!(self, Self::Abelian | Self::N23 | Self::N32)
    }
}

/// Predicted outcome from `(type, Π₀)` alone.
pub fn classify_nilradical(spec: &ParabolicSpec) -> NilradicalPrediction {
    use NilradicalPrediction::*;
    if spec.pi0.len() >= 2 {
        return Refutes {
            reason: RefuteReason::SeveralSimpleRoots,
        };
    }
    let t = spec.cartan_type;
    let n = t.rank;
    let l = spec.pi0[0] + 1;
    let rs = RootSystem::build(t);
    if rs.gamma_max()[l - 1] == 1 {
        return Abelian;
    }
    let reason = match t.family {
        Family::A => unreachable!("every coordinate of the highest root of A_n is 1"),
        Family::B if l == n => {
            if n == 3 {
                return N32;
            }
            RefuteReason::FreeTwoStep { generators: n }
        }
        Family::B => RefuteReason::ThetaSplit,
        Family::C | Family::D => RefuteReason::HeisenbergReiter,
        Family::G => {
            if l == 1 {
                return N23;
            }
            RefuteReason::DimSeries
        }
        Family::E | Family::F => RefuteReason::DimCount,
    };
    Refutes { reason }
}

/// Explicit isomorphism with `n_{3,2}` or `n_{2,3}` when predicted.
pub fn certify_free_isomorphism(pn: &ParabolicNilradical) -> Option<(String, Isomorphism)> {
    let (name, target) = match classify_nilradical(&pn.spec) {
        NilradicalPrediction::N32 => ("n_{3,2}", free_nilpotent(3, 2)),
        NilradicalPrediction::N23 => ("n_{2,3}", free_nilpotent(2, 3)),
        _ => return None,
    };
    let iso = find_generator_isomorphism(&pn.algebra, &target, 100_000)?;
    Some((name.to_string(), iso))
}

/// All single-root specs of a type, then the two-root specs.
pub fn specs_for_type(t: CartanType, include_pairs: bool) -> Vec<ParabolicSpec> {
    let n = t.rank;
    let mut out: Vec<ParabolicSpec> = (0..n)
        .map(|a| ParabolicSpec::new(t, [a]).expect("valid index"))
        .collect();
    if include_pairs {
        for a in 0..n {
            for b in a + 1..n {
                out.push(ParabolicSpec::new(t, [a, b]).expect("valid indices"));
            }
        }
    }
    out
}
