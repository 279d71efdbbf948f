//! Structural conditions that every Lie algebra with an ad-invariant metric
//! satisfies, turned into refutation certificates that can be re-checked
//! from their payload alone.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{int, is_zero_vector, unit_vector, LinalgError, MatrixQ, Rational, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("the commutator is the whole algebra, no complement to split")]
    PerfectAlgebra,
    #[error("algebra is not 2-step nilpotent (class {0:?})")]
    NotTwoStep(Option<usize>),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `g = V_1 + ... + V_s + C^1(g)` as a direct sum with every `V_i != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    parts: Vec<Subspace>,
    commutator: Subspace,
}

impl Decomposition {
    pub fn new(g: &LieAlgebra, parts: Vec<Subspace>) -> Result<Self, ObstructionError> {
        let commutator = g.commutator();
        check_decomposition(g.dim(), &parts, &commutator)?;
        Ok(Self { parts, commutator })
    }

    /// Parts spanned by basis vectors, one block of indices per part.
    pub fn coordinate(g: &LieAlgebra, blocks: &[Vec<usize>]) -> Result<Self, ObstructionError> {
        let n = g.dim();
        if let Some(&bad) = blocks.iter().flatten().find(|&&i| i >= n) {
            return Err(ObstructionError::InvalidDecomposition(format!(
                "basis index {bad} out of range for dimension {n}"
            )));
        }
        let parts = blocks
            .iter()
            .map(|b| Subspace::coordinate(n, b.iter().copied()))
            .collect();
        Self::new(g, parts)
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn commutator(&self) -> &Subspace {
        &self.commutator
    }
}

fn check_decomposition(
    n: usize,
    parts: &[Subspace],
    commutator: &Subspace,
) -> Result<(), ObstructionError> {
    let invalid = |m: String| Err(ObstructionError::InvalidDecomposition(m));
    if parts.is_empty() {
        return invalid("no parts".into());
    }
    let mut total = commutator.clone();
    let mut dims = commutator.dim();
    for (i, p) in parts.iter().enumerate() {
        if p.ambient_dim() != n {
            return invalid(format!(
                "part {} lives in dimension {}",
                i + 1,
                p.ambient_dim()
            ));
        }
        if p.is_zero() {
            return invalid(format!("part {} is zero", i + 1));
        }
        total = total.sum(p)?;
        dims += p.dim();
    }
    if dims != n || !total.is_full() {
        return invalid(format!(
            "parts and commutator have dimensions summing to {dims} and span {} of {n}",
            total.dim()
        ));
    }
    Ok(())
}

/// Refutation of an ad-invariant metric. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObstructionCertificate {
    /// `dim C_j(g) + dim C^j(g) != dim g`.
    DimSeries {
        j: usize,
        dim_lower: usize,
        dim_upper: usize,
        dim: usize,
    },
    /// A nonzero vector of `z ∩ ⋂ [z(V_i), g]`.
    ThetaNonzero {
        parts: Vec<Subspace>,
        theta: Subspace,
        #[serde(with = "crate::linalg::serde_rational::vec")]
        vector: Vec<Rational>,
    },
    /// 2-step, `g = V_1 + V_2 + C^1(g)`, `[V_i, V_i] = 0`, `[V_1, V_2] = C^1(g)`.
    HeisenbergReiter { v1: Subspace, v2: Subspace },
    /// 2-step with one-dimensional center: `ad_X` maps onto `z` for every
    /// `X` outside `z`, so `z` lies in every `[z(X), g]`.
    CapViolatedNonsingular {
        #[serde(with = "crate::linalg::serde_rational::vec")]
        center: Vec<Rational>,
    },
}

impl ObstructionCertificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::DimSeries { .. } => "dim_series",
            Self::ThetaNonzero { .. } => "theta_nonzero",
            Self::HeisenbergReiter { .. } => "heisenberg_reiter",
            Self::CapViolatedNonsingular { .. } => "cap_violated_nonsingular",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::DimSeries {
                j,
                dim_lower,
                dim_upper,
                dim,
            } => format!("dim C^{j}(g) + dim C_{j}(g) = {dim_lower} + {dim_upper} != {dim}"),
            Self::ThetaNonzero { parts, theta, .. } => format!(
                "Theta ideal of a {}-part decomposition has dimension {}",
                parts.len(),
                theta.dim()
            ),
            Self::HeisenbergReiter { v1, v2 } => format!(
                "abelian V1 (dim {}) and V2 (dim {}) with [V1,V2] = C^1(g)",
                v1.dim(),
                v2.dim()
            ),
            Self::CapViolatedNonsingular { .. } => {
                "nonsingular 2-step algebra with one-dimensional center".into()
            }
        }
    }
}

/// First `j >= 1` where `dim C^j(g) + dim C_j(g) != dim g`.
pub fn dim_series_obstruction(g: &LieAlgebra) -> Option<ObstructionCertificate> {
    let series = g.central_series();
    let n = g.dim();
    (1..=series.span_len()).find_map(|j| {
        let (lo, up) = (series.lower(j).dim(), series.upper(j).dim());
        (lo + up != n).then_some(ObstructionCertificate::DimSeries {
            j,
            dim_lower: lo,
            dim_upper: up,
            dim: n,
        })
    })
}

/// `Θ = z ∩ ⋂ [z(V_i), g]`.
pub fn theta_ideal(g: &LieAlgebra, d: &Decomposition) -> Result<Subspace, ObstructionError> {
    check_decomposition(g.dim(), d.parts(), &g.commutator())?;
    let mut theta = g.center();
    for part in d.parts() {
        if theta.is_zero() {
            break;
        }
        let image = g.bracket_with_algebra(&g.centralizer(part)?)?;
        theta = theta.intersect(&image)?;
    }
    Ok(theta)
}

fn theta_certificate(g: &LieAlgebra, d: &Decomposition) -> Option<ObstructionCertificate> {
    let theta = theta_ideal(g, d).ok()?;
    let vector = theta.any_nonzero()?;
    Some(ObstructionCertificate::ThetaNonzero {
        parts: d.parts().to_vec(),
        theta,
        vector,
    })
}

pub const DEFAULT_THETA_BUDGET: usize = 512;

/// Candidate decompositions in search order: the registered ones, then
/// coordinate splits of the generator basis vectors (one per vector, every
/// bipartition by mask, a single block), truncated to `budget`.
pub fn theta_candidates(
    g: &LieAlgebra,
    registered: &[Decomposition],
    budget: usize,
) -> Result<Vec<Decomposition>, ObstructionError> {
    let commutator = g.commutator();
    if commutator.is_full() {
        return Err(ObstructionError::PerfectAlgebra);
    }
    let mut out: Vec<Decomposition> = registered.iter().take(budget).cloned().collect();
    let gens = commutator.coordinate_complement();
    let m = gens.len();
    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new();
    if m > 1 {
        blocks.push(gens.iter().map(|&i| vec![i]).collect());
    }
    // bipartitions with the first generator always in the first block
    let masks = if m >= 2 {
        (1u64 << (m - 1).min(62)) - 1
    } else {
        0
    };
    for mask in 1..=masks {
        if out.len() + blocks.len() >= budget {
            break;
        }
        let (mut a, mut b) = (vec![gens[0]], Vec::new());
        for (bit, &i) in gens[1..].iter().enumerate() {
            if mask >> bit & 1 == 1 {
                b.push(i);
            } else {
                a.push(i);
            }
        }
        if m == 2 && !blocks.is_empty() {
            // the only bipartition equals the finest partition
            break;
        }
        blocks.push(vec![a, b]);
    }
    blocks.push(vec![gens.clone()]);
    for b in blocks {
        if out.len() >= budget {
            break;
        }
        out.push(Decomposition::coordinate(g, &b)?);
    }
    Ok(out)
}

/// First candidate decomposition with a nonzero Θ ideal.
pub fn theta_search(
    g: &LieAlgebra,
    registered: &[Decomposition],
    budget: usize,
) -> Result<Option<ObstructionCertificate>, ObstructionError> {
    let candidates = theta_candidates(g, registered, budget)?;
    Ok(candidates
        .par_iter()
        .find_map_first(|d| theta_certificate(g, d)))
}

/// Certificate when the hypotheses of the Heisenberg–Reiter criterion hold,
/// `None` otherwise.
pub fn heisenberg_reiter_obstruction(
    g: &LieAlgebra,
    v1: &Subspace,
    v2: &Subspace,
) -> Result<Option<ObstructionCertificate>, ObstructionError> {
    g.check_subspace(v1)?;
    g.check_subspace(v2)?;
    let c1 = g.commutator();
    if c1.is_zero() || !g.bracket_with_algebra(&c1)?.is_zero() {
        return Ok(None);
    }
    if v1.is_zero() || v2.is_zero() || v1.dim() + v2.dim() + c1.dim() != g.dim() {
        return Ok(None);
    }
    if !v1.sum(v2)?.sum(&c1)?.is_full() {
        return Ok(None);
    }
    if !g.bracket_spaces(v1, v1)?.is_zero() || !g.bracket_spaces(v2, v2)?.is_zero() {
        return Ok(None);
    }
    if g.bracket_spaces(v1, v2)? != c1 {
        return Ok(None);
    }
    Ok(Some(ObstructionCertificate::HeisenbergReiter {
        v1: v1.clone(),
        v2: v2.clone(),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonsingularProbe {
    /// `X` outside `z` with `rank ad_X < dim z`.
    Singular {
        #[serde(with = "crate::linalg::serde_rational::vec")]
        witness: Vec<Rational>,
        rank: usize,
        center_dim: usize,
    },
    ProbablyNonsingular {
        tested: usize,
    },
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| int(rng.gen_range(-5..=5))).collect()
}

/// Looks for a non-central `X` whose `ad_X` misses part of the center:
/// basis vectors, pairwise sums, then `trials` seeded random vectors.
pub fn nonsingular_probe(
    g: &LieAlgebra,
    trials: usize,
    seed: u64,
) -> Result<NonsingularProbe, ObstructionError> {
    let class = g.nilpotency_class();
    if class != Some(2) {
        return Err(ObstructionError::NotTwoStep(class));
    }
    let n = g.dim();
    let z = g.center();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = (0..n).map(|i| unit_vector(n, i));
    let pairs = (0..n).flat_map(|i| {
        (i + 1..n).map(move |j| {
            let mut v = unit_vector(n, i);
            v[j] = int(1);
            v
        })
    });
    let random: Vec<Vec<Rational>> = (0..trials).map(|_| random_vector(&mut rng, n)).collect();
    let mut tested = 0;
    for x in basis.chain(pairs).chain(random) {
        if z.contains_vector(&x)? {
            continue;
        }
        tested += 1;
        let rank = g.ad_matrix(&x)?.rank();
        if rank < z.dim() {
            return Ok(NonsingularProbe::Singular {
                witness: x,
                rank,
                center_dim: z.dim(),
            });
        }
    }
    Ok(NonsingularProbe::ProbablyNonsingular { tested })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CapSample {
    /// The sampled intersection of `[z(X), g]` is already zero.
    Holds { samples: usize },
    /// Sampled intersection is nonzero; the true one may still vanish.
    Inconclusive {
        samples: usize,
        intersection: Subspace,
    },
}

/// Intersects `[z(X), g]` over the basis vectors and `extra` random `X`.
pub fn cap_condition_sample(
    g: &LieAlgebra,
    extra: usize,
    seed: u64,
) -> Result<CapSample, ObstructionError> {
    let n = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Subspace::full(n);
    let mut samples = 0;
    let xs = (0..n)
        .map(|i| unit_vector(n, i))
        .chain((0..extra).map(|_| random_vector(&mut rng, n)))
        .collect::<Vec<_>>();
    for x in xs {
        if is_zero_vector(&x) {
            continue;
        }
        samples += 1;
        let zx = g.centralizer(&Subspace::span(n, [x])?)?;
        acc = acc.intersect(&g.bracket_with_algebra(&zx)?)?;
        if acc.is_zero() {
            return Ok(CapSample::Holds { samples });
        }
    }
    if acc.is_zero() {
        Ok(CapSample::Holds { samples })
    } else {
        Ok(CapSample::Inconclusive {
            samples,
            intersection: acc,
        })
    }
}

fn nonsingular_certificate(g: &LieAlgebra) -> Option<ObstructionCertificate> {
    if g.nilpotency_class() != Some(2) {
        return None;
    }
    let z = g.center();
    (z.dim() == 1).then(|| ObstructionCertificate::CapViolatedNonsingular {
        center: z.any_nonzero().expect("center is one-dimensional"),
    })
}

/// Runs the certified obstructions in a fixed order and returns the first
/// refutation: the dimension count, the Heisenberg–Reiter criterion on
/// registered two-part splits, the Θ search, then the one-dimensional
/// center case of nonsingularity.
pub fn obstruction_battery(
    g: &LieAlgebra,
    registered: &[Decomposition],
    theta_budget: usize,
) -> Result<Option<ObstructionCertificate>, ObstructionError> {
    if let Some(c) = dim_series_obstruction(g) {
        return Ok(Some(c));
    }
    for d in registered {
        if let [v1, v2] = d.parts() {
            if let Some(c) = heisenberg_reiter_obstruction(g, v1, v2)? {
                return Ok(Some(c));
            }
        }
    }
    if g.dim() > 0 && !g.commutator().is_full() {
        if let Some(c) = theta_search(g, registered, theta_budget)? {
            return Ok(Some(c));
        }
    }
    Ok(nonsingular_certificate(g))
}

/// Re-checks a certificate from its payload. Uses plain matrix kernels and
/// spans rather than the series and centralizer routines of the algebra.
pub fn verify_certificate(g: &LieAlgebra, cert: &ObstructionCertificate) -> Result<(), String> {
    let n = g.dim();
    let ads: Vec<MatrixQ> = (0..n)
        .map(|i| g.ad_matrix(&unit_vector(n, i)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let col_span = |vectors: &[Vec<Rational>]| -> Subspace {
        // span of [x, e_k] over x in vectors and all k
        let mut cols = Vec::new();
        for x in vectors {
            let adx = g.ad_matrix(x).expect("vector of algebra dimension");
            let t = adx.transpose();
            cols.extend(t.to_rows());
        }
        Subspace::span(n, cols).expect("columns have algebra dimension")
    };
    // {X : [X, v] = 0 for v in vectors}; [X, v] = -ad_v X
    let centralizer_of = |vectors: &[Vec<Rational>]| -> Subspace {
        let mut rows = Vec::new();
        for v in vectors {
            rows.extend(
                g.ad_matrix(v)
                    .expect("vector of algebra dimension")
                    .to_rows(),
            );
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        MatrixQ::from_rows(n, rows).expect("rows").nullspace()
    };
    let basis_of = |s: &Subspace| -> Vec<Vec<Rational>> { s.basis().to_rows() };
    let all: Vec<Vec<Rational>> = (0..n).map(|i| unit_vector(n, i)).collect();
    let center = centralizer_of(&all);
    let commutator = col_span(&all);
    let check_ambient = |s: &Subspace| {
        if s.ambient_dim() == n {
            Ok(())
        } else {
            Err(format!(
                "subspace in dimension {} for algebra of dimension {n}",
                s.ambient_dim()
            ))
        }
    };
    match cert {
        ObstructionCertificate::DimSeries {
            j,
            dim_lower,
            dim_upper,
            dim,
        } => {
            if *dim != n || *j == 0 {
                return Err("certificate does not match the algebra".into());
            }
            let mut lower = Subspace::full(n);
            let mut upper = Subspace::zero(n);
            for _ in 0..*j {
                lower = col_span(&basis_of(&lower));
                // X with ad_{e_i} X in upper for all i
                let ann = upper.annihilator();
                let mut rows = Vec::new();
                for ad in &ads {
                    for l in ann.basis_vectors() {
                        let row: Vec<Rational> = (0..n)
                            .map(|c| {
                                (0..n).fold(Rational::zero(), |acc, r| acc + &l[r] * &ad[(r, c)])
                            })
                            .collect();
                        rows.push(row);
                    }
                }
                upper = if rows.is_empty() {
                    Subspace::full(n)
                } else {
                    MatrixQ::from_rows(n, rows).expect("rows").nullspace()
                };
            }
            if lower.dim() != *dim_lower || upper.dim() != *dim_upper {
                return Err(format!(
                    "recomputed dims {} and {} differ from recorded {dim_lower} and {dim_upper}",
                    lower.dim(),
                    upper.dim()
                ));
            }
            if dim_lower + dim_upper == n {
                return Err("dimension identity holds".into());
            }
            Ok(())
        }
        ObstructionCertificate::ThetaNonzero {
            parts,
            theta,
            vector,
        } => {
            for p in parts {
                check_ambient(p)?;
            }
            check_ambient(theta)?;
            check_decomposition(n, parts, &commutator).map_err(|e| e.to_string())?;
            let mut recomputed = center.clone();
            for p in parts {
                let zp = centralizer_of(&basis_of(p));
                let image = col_span(&basis_of(&zp));
                recomputed = recomputed.intersect(&image).map_err(|e| e.to_string())?;
            }
            if &recomputed != theta {
                return Err("recorded Theta differs from the recomputed ideal".into());
            }
            if is_zero_vector(vector)
                || !theta.contains_vector(vector).map_err(|e| e.to_string())?
            {
                return Err("vector is zero or outside Theta".into());
            }
            Ok(())
        }
        ObstructionCertificate::HeisenbergReiter { v1, v2 } => {
            check_ambient(v1)?;
            check_ambient(v2)?;
            if commutator.is_zero() {
                return Err("algebra is abelian".into());
            }
            if !col_span(&basis_of(&commutator)).is_zero() {
                return Err("algebra is not 2-step".into());
            }
            check_decomposition(n, &[v1.clone(), v2.clone()], &commutator)
                .map_err(|e| e.to_string())?;
            let brackets = |a: &Subspace, b: &Subspace| -> Subspace {
                let mut out = Vec::new();
                for x in a.basis_vectors() {
                    for y in b.basis_vectors() {
                        out.push(g.bracket(x, y).expect("vectors of algebra dimension"));
                    }
                }
                Subspace::span(n, out).expect("brackets have algebra dimension")
            };
            if !brackets(v1, v1).is_zero() || !brackets(v2, v2).is_zero() {
                return Err("a part is not abelian".into());
            }
            if brackets(v1, v2) != commutator {
                return Err("[V1, V2] is not the commutator".into());
            }
            Ok(())
        }
        ObstructionCertificate::CapViolatedNonsingular { center: zvec } => {
            if commutator.is_zero() || !col_span(&basis_of(&commutator)).is_zero() {
                return Err("algebra is not 2-step".into());
            }
            if center.dim() != 1 {
                return Err(format!("center has dimension {}", center.dim()));
            }
            if zvec.len() != n
                || is_zero_vector(zvec)
                || !center.contains_vector(zvec).map_err(|e| e.to_string())?
            {
                return Err("recorded vector does not span the center".into());
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall::free_nilpotent;
    use crate::lie::BracketEntry;

    fn h3() -> LieAlgebra {
        LieAlgebra::from_brackets(3, [BracketEntry::new(0, 1, vec![(2, int(1))])]).unwrap()
    }

    /// 4-cycle a-b-c-d-a: vertices 0..4, edges ab, ad, bc, cd as 4..8.
    fn c4() -> LieAlgebra {
        LieAlgebra::from_brackets(
            8,
            [
                BracketEntry::new(0, 1, vec![(4, int(1))]),
                BracketEntry::new(0, 3, vec![(5, int(1))]),
                BracketEntry::new(1, 2, vec![(6, int(1))]),
                BracketEntry::new(2, 3, vec![(7, int(1))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn dim_series_examples() {
        let c = dim_series_obstruction(&h3()).unwrap();
        assert_eq!(
            c,
            ObstructionCertificate::DimSeries {
                j: 1,
                dim_lower: 1,
                dim_upper: 1,
                dim: 3
            }
        );
        assert_eq!(verify_certificate(&h3(), &c), Ok(()));
        assert!(dim_series_obstruction(&free_nilpotent(3, 2)).is_none());
        assert!(dim_series_obstruction(&LieAlgebra::abelian(4)).is_none());
    }

    #[test]
    fn decomposition_validation() {
        let g = h3();
        assert!(Decomposition::coordinate(&g, &[vec![0], vec![1]]).is_ok());
        assert!(Decomposition::coordinate(&g, &[vec![0]]).is_err());
        assert!(Decomposition::coordinate(&g, &[vec![0, 1], vec![]]).is_err());
        assert!(Decomposition::coordinate(&g, &[vec![0, 2], vec![1]]).is_err());
        assert!(Decomposition::coordinate(&g, &[vec![7]]).is_err());
    }

    #[test]
    fn theta_examples() {
        let ab = LieAlgebra::abelian(3);
        let d = Decomposition::coordinate(&ab, &[vec![0, 1, 2]]).unwrap();
        assert!(theta_ideal(&ab, &d).unwrap().is_zero());

        // one block: z(V) = z, so Theta vanishes; the coordinate split finds z
        let g = h3();
        let single = Decomposition::coordinate(&g, &[vec![0, 1]]).unwrap();
        assert!(theta_ideal(&g, &single).unwrap().is_zero());
        let split = Decomposition::coordinate(&g, &[vec![0], vec![1]]).unwrap();
        assert_eq!(theta_ideal(&g, &split).unwrap(), g.center());
        let cert = theta_search(&g, &[], DEFAULT_THETA_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(verify_certificate(&g, &cert), Ok(()));

        let c = c4();
        let bip = Decomposition::coordinate(&c, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(!theta_ideal(&c, &bip).unwrap().is_zero());

        let n32 = free_nilpotent(3, 2);
        assert_eq!(theta_search(&n32, &[], DEFAULT_THETA_BUDGET).unwrap(), None);
    }

    #[test]
    fn theta_search_needs_a_complement() {
        assert_eq!(
            theta_search(&LieAlgebra::abelian(0), &[], 10),
            Err(ObstructionError::PerfectAlgebra)
        );
    }

    #[test]
    fn candidate_order_and_budget() {
        let g = free_nilpotent(4, 2);
        let all = theta_candidates(&g, &[], 1000).unwrap();
        // finest, 7 bipartitions, single block
        assert_eq!(all.len(), 1 + 7 + 1);
        assert_eq!(all[0].parts().len(), 4);
        assert_eq!(all.last().unwrap().parts().len(), 1);
        assert_eq!(theta_candidates(&g, &[], 3).unwrap().len(), 3);
        let h = theta_candidates(&h3(), &[], 100).unwrap();
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn heisenberg_reiter_examples() {
        let c = c4();
        let v1 = Subspace::coordinate(8, [0, 2]);
        let v2 = Subspace::coordinate(8, [1, 3]);
        let cert = heisenberg_reiter_obstruction(&c, &v1, &v2)
            .unwrap()
            .unwrap();
        assert_eq!(verify_certificate(&c, &cert), Ok(()));

        let g = free_nilpotent(3, 2);
        let a = Subspace::coordinate(6, [0]);
        let b = Subspace::coordinate(6, [1, 2]);
        assert_eq!(heisenberg_reiter_obstruction(&g, &a, &b).unwrap(), None);
        // [V1, V2] misses part of the commutator
        let a = Subspace::coordinate(8, [0]);
        let b = Subspace::coordinate(8, [1, 2, 3]);
        assert_eq!(heisenberg_reiter_obstruction(&c, &a, &b).unwrap(), None);
    }

    #[test]
    fn nonsingular_probe_examples() {
        assert!(matches!(
            nonsingular_probe(&h3(), 10, 1).unwrap(),
            NonsingularProbe::ProbablyNonsingular { .. }
        ));
        // path a-b-c: the end vertex a is hit first
        let p3 = LieAlgebra::from_brackets(
            5,
            [
                BracketEntry::new(0, 1, vec![(3, int(1))]),
                BracketEntry::new(1, 2, vec![(4, int(1))]),
            ],
        )
        .unwrap();
        match nonsingular_probe(&p3, 10, 1).unwrap() {
            NonsingularProbe::Singular {
                witness,
                rank,
                center_dim,
            } => {
                assert_eq!(witness, unit_vector(5, 0));
                assert_eq!((rank, center_dim), (1, 2));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            nonsingular_probe(&free_nilpotent(3, 2), 0, 1).unwrap(),
            NonsingularProbe::Singular {
                rank: 2,
                center_dim: 3,
                ..
            }
        ));
        assert!(nonsingular_probe(&free_nilpotent(2, 3), 0, 1).is_err());
        assert!(nonsingular_probe(&LieAlgebra::abelian(2), 0, 1).is_err());
    }

    #[test]
    fn cap_condition_examples() {
        assert!(matches!(
            cap_condition_sample(&LieAlgebra::abelian(3), 0, 1).unwrap(),
            CapSample::Holds { .. }
        ));
        assert!(matches!(
            cap_condition_sample(&free_nilpotent(3, 2), 0, 1).unwrap(),
            CapSample::Holds { .. }
        ));
        match cap_condition_sample(&h3(), 5, 1).unwrap() {
            CapSample::Inconclusive { intersection, .. } => assert_eq!(intersection, h3().center()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn battery_and_tampered_certificates() {
        let c = c4();
        let cert = obstruction_battery(&c, &[], DEFAULT_THETA_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(verify_certificate(&c, &cert), Ok(()));
        assert!(
            obstruction_battery(&free_nilpotent(3, 2), &[], DEFAULT_THETA_BUDGET)
                .unwrap()
                .is_none()
        );

        let fake = ObstructionCertificate::DimSeries {
            j: 1,
            dim_lower: 3,
            dim_upper: 3,
            dim: 6,
        };
        assert!(verify_certificate(&free_nilpotent(3, 2), &fake).is_err());
        let wrong_theta = ObstructionCertificate::ThetaNonzero {
            parts: vec![Subspace::coordinate(3, [0, 1])],
            theta: h3().center(),
            vector: unit_vector(3, 2),
        };
        assert!(verify_certificate(&h3(), &wrong_theta).is_err());
        let wrong_hr = ObstructionCertificate::HeisenbergReiter {
            v1: Subspace::coordinate(8, [0, 1]),
            v2: Subspace::coordinate(8, [2, 3]),
        };
        assert!(verify_certificate(&c, &wrong_hr).is_err());
        let cap = ObstructionCertificate::CapViolatedNonsingular {
            center: unit_vector(3, 2),
        };
        assert_eq!(verify_certificate(&h3(), &cap), Ok(()));
        assert!(verify_certificate(
            &c,
            &ObstructionCertificate::CapViolatedNonsingular {
                center: unit_vector(8, 7)
            }
        )
        .is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = c4();
        let cert = theta_search(&c, &[], DEFAULT_THETA_BUDGET)
            .unwrap()
            .unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: ObstructionCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(verify_certificate(&c, &back), Ok(()));
    }
}
