//! Invariant symmetric bilinear forms: the solution space of
//! `<[X,Y],Z> + <Y,[X,Z]> = 0`, the search for a nondegenerate member, and the
//! exact checks of a candidate metric.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{
    format_rational, parse_rational, unit_vector, LinalgError, MatrixQ, Rational, SparseSystem,
    Subspace,
};
use crate::modular::{is_singular, IntegerPencil};
use crate::poly::linear_pencil_determinant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("form matrix is not square and symmetric")]
    NotSymmetric,
    #[error("form of size {form} for an algebra of dimension {algebra}")]
    SizeMismatch { form: usize, algebra: usize },
    #[error("form is not an ad-invariant metric: {0}")]
    NotAMetric(VerifyFailure),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed form: {0}")]
    Format(String),
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymForm {
    matrix: MatrixQ,
}

impl SymForm {
    pub fn new(matrix: MatrixQ) -> Result<Self, FormError> {
        if !matrix.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: MatrixQ::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            matrix: MatrixQ::zeros(n, n),
        }
    }

    pub fn matrix(&self) -> &MatrixQ {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.matrix.bilinear(x, y)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            matrix: self.matrix.scale(q),
        }
    }

    /// Scales so the first nonzero entry in row-major order is 1.
    pub fn normalized(&self) -> Self {
        let n = self.size();
        let first = (0..n * n)
            .map(|i| &self.matrix[(i / n, i % n)])
            .find(|x| !x.is_zero())
            .cloned();
        match first {
            Some(x) => self.scale(&x.recip()),
            None => self.clone(),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        !is_singular(&self.matrix)
    }

    /// `(positive, negative, zero)` inertia by symmetric Gaussian elimination.
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.size();
        let mut a = self.matrix.clone();
        let mut diag = Vec::with_capacity(n);
        let swap = |a: &mut MatrixQ, p: usize, q: usize| {
            if p == q {
                return;
            }
            for c in 0..n {
                let t = a[(p, c)].clone();
                a[(p, c)] = a[(q, c)].clone();
                a[(q, c)] = t;
            }
            for r in 0..n {
                let t = a[(r, p)].clone();
                a[(r, p)] = a[(r, q)].clone();
                a[(r, q)] = t;
            }
        };
        for k in 0..n {
            if let Some(p) = (k..n).find(|&p| !a[(p, p)].is_zero()) {
                swap(&mut a, k, p);
            } else {
                let Some((p, q)) = (k..n)
                    .flat_map(|p| (k..n).map(move |q| (p, q)))
                    .find(|&(p, q)| !a[(p, q)].is_zero())
                else {
                    break;
                };
                // row/col p += row/col q makes the diagonal 2 a_pq
                for c in 0..n {
                    let v = a[(q, c)].clone();
                    a[(p, c)] += v;
                }
                for r in 0..n {
                    let v = a[(r, q)].clone();
                    a[(r, p)] += v;
                }
                swap(&mut a, k, p);
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] / &pivot;
                for c in k..n {
                    let v = &f * &a[(k, c)];
                    a[(i, c)] -= v;
                }
                for r in k..n {
                    let v = &f * &a[(r, k)];
                    a[(r, i)] -= v;
                }
            }
            diag.push(pivot);
        }
        let pos = diag.iter().filter(|d| d.is_positive()).count();
        let neg = diag.iter().filter(|d| d.is_negative()).count();
        (pos, neg, n - pos - neg)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .matrix
            .row_vectors()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        serde_json::json!(rows)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, FormError> {
        let rows: Vec<Vec<String>> =
            serde_json::from_value(v.clone()).map_err(|e| FormError::Format(e.to_string()))?;
        let n = rows.len();
        let mut parsed = Vec::with_capacity(n);
        for r in rows {
            let row: Result<Vec<Rational>, _> = r.iter().map(|s| parse_rational(s)).collect();
            parsed.push(row.map_err(|e| FormError::Format(e.to_string()))?);
        }
        Self::new(MatrixQ::from_rows(n, parsed)?)
    }
}

impl Serialize for SymForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Basis of the invariant symmetric forms on an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    pub algebra_dim: usize,
    pub basis: Vec<SymForm>,
}

impl FormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ t_i B_i`
    pub fn combination(&self, coeffs: &[Rational]) -> SymForm {
        let n = self.algebra_dim;
        let mut m = MatrixQ::zeros(n, n);
        for (b, t) in self.basis.iter().zip(coeffs) {
            m.add_scaled(t, b.matrix())
                .expect("basis forms share a size");
        }
        SymForm { matrix: m }
    }
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    a * n - a * (a + 1) / 2 + b
}

/// Equations of invariance in the unknowns `s_ab = <e_a, e_b>`, `a <= b`.
///
/// The equation for `(x, y, z)` is symmetric in `y, z`, so only `y <= z` is
/// assembled.
pub fn invariance_system(g: &LieAlgebra) -> SparseSystem {
    let n = g.dim();
    let unknowns = n * (n + 1) / 2;
    let mut sys = SparseSystem::new(unknowns);
    for x in 0..n {
        for y in 0..n {
            let bxy = g.bracket_basis(x, y);
            for z in y..n {
                let bxz = g.bracket_basis(x, z);
                if bxy.is_empty() && bxz.is_empty() {
                    continue;
                }
                let mut eq = Vec::with_capacity(bxy.len() + bxz.len());
                for (k, c) in bxy {
                    eq.push((pair_index(n, *k, z), c.clone()));
                }
                for (k, c) in bxz {
                    eq.push((pair_index(n, y, *k), c.clone()));
                }
                sys.push(eq);
            }
        }
    }
    sys
}

/// Basis of all invariant symmetric bilinear forms on `g`.
pub fn invariant_form_space(g: &LieAlgebra) -> FormSpace {
    let n = g.dim();
    let solutions = invariance_system(g).solution_space();
    let basis = solutions
        .basis_vectors()
        .map(|v| {
            let m = MatrixQ::from_fn(n, n, |a, b| v[pair_index(n, a, b)].clone());
            SymForm { matrix: m }
        })
        .collect();
    FormSpace {
        algebra_dim: n,
        basis,
    }
}

/// Why a candidate form is not an ad-invariant metric. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyFailure {
    SizeMismatch {
        form: usize,
        algebra: usize,
    },
    NotInvariant {
        triple: (usize, usize, usize),
        #[serde(with = "crate::linalg::serde_rational")]
        value: Rational,
    },
    Degenerate {
        #[serde(with = "crate::linalg::serde_rational::vec")]
        radical_vector: Vec<Rational>,
    },
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::SizeMismatch { form, algebra } => {
                write!(
                    f,
                    "form of size {form} for an algebra of dimension {algebra}"
                )
            }
            Self::NotInvariant {
                triple: (x, y, z),
                value,
            } => write!(
                f,
                "<[e{0},e{1}],e{2}> + <e{1},[e{0},e{2}]> = {3} on triple ({0},{1},{2})",
                x + 1,
                y + 1,
                z + 1,
                format_rational(value)
            ),
            Self::Degenerate { .. } => write!(f, "form has a nonzero radical"),
        }
    }
}

/// First triple `(x, y, z)` in lexicographic order violating invariance.
pub fn first_invariance_violation(
    g: &LieAlgebra,
    f: &SymForm,
) -> Option<((usize, usize, usize), Rational)> {
    let n = g.dim();
    let m = f.matrix();
    let pair = |terms: &[(usize, Rational)], other: usize| -> Rational {
        terms
            .iter()
            .fold(Rational::zero(), |acc, (k, c)| acc + c * &m[(*k, other)])
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = pair(g.bracket_basis(x, y), z) + pair(g.bracket_basis(x, z), y);
                if !v.is_zero() {
                    return Some(((x, y, z), v));
                }
            }
        }
    }
    None
}

pub fn is_invariant(g: &LieAlgebra, f: &SymForm) -> bool {
    f.size() == g.dim() && first_invariance_violation(g, f).is_none()
}

/// Exact check that `f` is an ad-invariant metric on `g`.
pub fn verify_form(g: &LieAlgebra, f: &SymForm) -> Result<(), VerifyFailure> {
    if f.size() != g.dim() {
        return Err(VerifyFailure::SizeMismatch {
            form: f.size(),
            algebra: g.dim(),
        });
    }
    if let Some((triple, value)) = first_invariance_violation(g, f) {
        return Err(VerifyFailure::NotInvariant { triple, value });
    }
    let rad = f.matrix().nullspace();
    if let Some(v) = rad.any_nonzero() {
        return Err(VerifyFailure::Degenerate { radical_vector: v });
    }
    Ok(())
}

/// `rad = {Y : <X, Y> = 0 for all X}`. For an invariant form the result is
/// an ideal; that is checked and a violation reported as an error.
pub fn radical(g: &LieAlgebra, f: &SymForm) -> Result<Subspace, FormError> {
    if f.size() != g.dim() {
        return Err(FormError::SizeMismatch {
            form: f.size(),
            algebra: g.dim(),
        });
    }
    let rad = f.matrix().nullspace();
    if is_invariant(g, f) && !g.is_ideal(&rad)? {
        return Err(FormError::NotAMetric(VerifyFailure::Degenerate {
            radical_vector: rad.any_nonzero().unwrap_or_default(),
        }));
    }
    Ok(rad)
}

/// `W^⊥ = {Y : <w, Y> = 0 for all w in W}`.
pub fn orthogonal_complement(f: &SymForm, w: &Subspace) -> Result<Subspace, FormError> {
    if w.ambient_dim() != f.size() {
        return Err(FormError::SizeMismatch {
            form: f.size(),
            algebra: w.ambient_dim(),
        });
    }
    let rows = w.basis().mul(f.matrix())?;
    Ok(rows.nullspace())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityRow {
    pub j: usize,
    pub dim_lower: usize,
    pub dim_upper: usize,
    /// `C^j(V)^⊥ = C_j(V)`
    pub complement_matches: bool,
    /// `dim C_j(V) + dim C^j(V) = dim g`
    pub dimension_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub rows: Vec<OrthogonalityRow>,
}

impl OrthogonalityReport {
    pub fn all_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.complement_matches && r.dimension_identity)
    }
}

/// Checks `C^j(V)^⊥ = C_j(V)` and the matching dimension count for every
/// `j >= 1` until both series are constant. Requires a verified metric.
pub fn check_orthogonality_relations(
    g: &LieAlgebra,
    f: &SymForm,
    v: &Subspace,
) -> Result<OrthogonalityReport, FormError> {
    verify_form(g, f).map_err(FormError::NotAMetric)?;
    let series = g.relative_series(v)?;
    let mut rows = Vec::new();
    for j in 1..=series.span_len() {
        let lower = series.lower(j);
        let upper = series.upper(j);
        let perp = orthogonal_complement(f, lower)?;
        rows.push(OrthogonalityRow {
            j,
            dim_lower: lower.dim(),
            dim_upper: upper.dim(),
            complement_matches: &perp == upper,
            dimension_identity: lower.dim() + upper.dim() == g.dim(),
        });
    }
    Ok(OrthogonalityReport { rows })
}

/// Bounds and seed for the nondegeneracy decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionPolicy {
    pub seed: u64,
    pub mc_trials: usize,
    pub mc_range: u64,
    pub symbolic_max_dim: usize,
    pub symbolic_max_forms: usize,
}

impl Default for DecisionPolicy {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            mc_trials: 40,
            mc_range: 1 << 16,
            symbolic_max_dim: 12,
            symbolic_max_forms: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NondegeneracyKind {
    Admits {
        witness: SymForm,
    },
    RefutedSymbolic,
    RefutedMonteCarlo {
        trials: usize,
        range: u64,
        /// Schwartz–Zippel failure bound `(n / range)^trials`.
        #[serde(with = "crate::linalg::serde_rational")]
        bound: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegeneracyVerdict {
    pub kind: NondegeneracyKind,
    pub seed: u64,
    pub notes: Vec<String>,
}

impl NondegeneracyVerdict {
    pub fn admits(&self) -> bool {
        matches!(self.kind, NondegeneracyKind::Admits { .. })
    }

    pub fn witness(&self) -> Option<&SymForm> {
        match &self.kind {
            NondegeneracyKind::Admits { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Integer evaluation point for trial `trial`, entries uniform in `1..=range`.
/// Each trial owns a ChaCha stream so trials are independent of scheduling.
pub fn trial_point(seed: u64, trial: u64, vars: usize, range: u64) -> Vec<Rational> {
    trial_coeffs(seed, trial, vars, range)
        .into_iter()
        .map(|x| Rational::from_integer(x.into()))
        .collect()
}

fn trial_coeffs(seed: u64, trial: u64, vars: usize, range: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..vars).map(|_| rng.gen_range(1..=range)).collect()
}

fn schwartz_zippel_bound(n: usize, range: u64, trials: usize) -> Rational {
    let base = Rational::new((n as i64).into(), (range as i64).into());
    let base = if base > Rational::one() {
        Rational::one()
    } else {
        base
    };
    (0..trials).fold(Rational::one(), |acc, _| acc * &base)
}

/// Decides whether the span of `space` contains a nondegenerate form.
///
/// Random integer combinations are tried first; any full-rank hit is an
/// exact witness. Otherwise the determinant of the generic combination is
/// expanded symbolically when the sizes allow it, and failing that the
/// random trials are reported as a Monte Carlo refutation.
pub fn decide_nondegenerate(space: &FormSpace, policy: &DecisionPolicy) -> NondegeneracyVerdict {
    let n = space.algebra_dim;
    let d = space.dim();
    let seed = policy.seed;
    if n == 0 {
        return NondegeneracyVerdict {
            kind: NondegeneracyKind::Admits {
                witness: SymForm::zero(0),
            },
            seed,
            notes: vec!["zero-dimensional algebra".into()],
        };
    }
    if d == 0 {
        return NondegeneracyVerdict {
            kind: NondegeneracyKind::RefutedSymbolic,
            seed,
            notes: vec!["no nonzero invariant symmetric form".into()],
        };
    }
    let matrices: Vec<MatrixQ> = space.basis.iter().map(|b| b.matrix().clone()).collect();
    let pencil = IntegerPencil::new(&matrices, policy.mc_range);
    let hit = (0..policy.mc_trials as u64)
        .into_par_iter()
        .find_map_first(|t| {
            let coeffs = trial_coeffs(seed, t, d, policy.mc_range);
            let scaled: Vec<Rational> = coeffs
                .iter()
                .zip(&pencil.scales)
                .map(|(&x, s)| s * Rational::from_integer(x.into()))
                .collect();
            let singular = match pencil.is_singular_at(&coeffs) {
                Some(v) => v,
                None => !space.combination(&scaled).is_nondegenerate(),
            };
            (!singular).then(|| (t, space.combination(&scaled)))
        });
    if let Some((t, form)) = hit {
        return NondegeneracyVerdict {
            kind: NondegeneracyKind::Admits {
                witness: form.normalized(),
            },
            seed,
            notes: vec![format!("nondegenerate combination found at trial {t}")],
        };
    }
    if n <= policy.symbolic_max_dim && d <= policy.symbolic_max_forms {
        let det = linear_pencil_determinant(&matrices);
        if det.is_zero() {
            return NondegeneracyVerdict {
                kind: NondegeneracyKind::RefutedSymbolic,
                seed,
                notes: vec![format!(
                    "determinant of the generic {n}x{n} combination of {d} forms is identically zero"
                )],
            };
        }
        // nonzero polynomial: keep sampling beyond the Monte Carlo budget
        for t in policy.mc_trials as u64.. {
            let point = trial_point(seed, t, d, policy.mc_range);
            if !det.evaluate(&point).is_zero() {
                return NondegeneracyVerdict {
                    kind: NondegeneracyKind::Admits {
                        witness: space.combination(&point).normalized(),
                    },
                    seed,
                    notes: vec![format!(
                        "determinant polynomial has {} terms; nonzero at trial {t}",
                        det.term_count()
                    )],
                };
            }
        }
    }
    NondegeneracyVerdict {
        kind: NondegeneracyKind::RefutedMonteCarlo {
            trials: policy.mc_trials,
            range: policy.mc_range,
            bound: schwartz_zippel_bound(n, policy.mc_range, policy.mc_trials),
        },
        seed,
        notes: vec![format!(
            "{} random combinations of {d} forms were all singular",
            policy.mc_trials
        )],
    }
}

/// Coordinates of `e_i` in the form space's ambient, for tests and reports.
pub fn basis_vector(n: usize, i: usize) -> Vec<Rational> {
    unit_vector(n, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall::free_nilpotent;
    use crate::lie::BracketEntry;
    use crate::linalg::{frac, int};

    /// `[e1, e2] = e3`
    fn h3() -> LieAlgebra {
        LieAlgebra::from_brackets(3, [BracketEntry::new(0, 1, vec![(2, int(1))])]).unwrap()
    }

    #[test]
    fn heisenberg_invariance_system_rank() {
        // hand elimination: the only constraints are s13 = s23 = s33 = 0
        let sys = invariance_system(&h3());
        assert_eq!(sys.rank(), 3);
        let space = invariant_form_space(&h3());
        assert_eq!(space.dim(), 3);
        let z = h3().center();
        for b in &space.basis {
            let rad = radical(&h3(), b).unwrap();
            assert!(rad.contains(&z).unwrap());
        }
    }

    #[test]
    fn abelian_forms_are_all_symmetric_matrices() {
        for n in 0..5 {
            let space = invariant_form_space(&LieAlgebra::abelian(n));
            assert_eq!(space.dim(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn every_basis_form_is_invariant() {
        for g in [
            free_nilpotent(3, 2),
            free_nilpotent(2, 3),
            free_nilpotent(2, 4),
        ] {
            for b in &invariant_form_space(&g).basis {
                assert!(first_invariance_violation(&g, b).is_none());
            }
        }
    }

    #[test]
    fn radical_edge_cases() {
        let g = LieAlgebra::abelian(3);
        assert!(radical(&g, &SymForm::identity(3)).unwrap().is_zero());
        assert!(radical(&g, &SymForm::zero(3)).unwrap().is_full());
        assert!(radical(&g, &SymForm::identity(2)).is_err());
    }

    #[test]
    fn verify_form_examples() {
        assert_eq!(
            verify_form(&LieAlgebra::abelian(3), &SymForm::identity(3)),
            Ok(())
        );
        let err = verify_form(&h3(), &SymForm::identity(3)).unwrap_err();
        assert_eq!(
            err,
            VerifyFailure::NotInvariant {
                triple: (0, 1, 2),
                value: int(1)
            }
        );
        assert!(matches!(
            verify_form(&h3(), &SymForm::identity(4)),
            Err(VerifyFailure::SizeMismatch { .. })
        ));
        let degenerate = SymForm::zero(2);
        assert!(matches!(
            verify_form(&LieAlgebra::abelian(2), &degenerate),
            Err(VerifyFailure::Degenerate { .. })
        ));
    }

    #[test]
    fn decisions_on_small_algebras() {
        let policy = DecisionPolicy::default();
        let ab = decide_nondegenerate(&invariant_form_space(&LieAlgebra::abelian(3)), &policy);
        assert!(ab.admits());

        let h = decide_nondegenerate(&invariant_form_space(&h3()), &policy);
        assert_eq!(h.kind, NondegeneracyKind::RefutedSymbolic);

        let n32 = free_nilpotent(3, 2);
        let v = decide_nondegenerate(&invariant_form_space(&n32), &policy);
        let w = v.witness().expect("n_{3,2} carries a metric");
        assert_eq!(verify_form(&n32, w), Ok(()));
        // the commutator layer is central, so it is isotropic
        for a in 3..6 {
            for b in 3..6 {
                assert!(w.matrix()[(a, b)].is_zero());
            }
        }
    }

    #[test]
    fn empty_form_space_is_refuted() {
        let space = FormSpace {
            algebra_dim: 2,
            basis: vec![],
        };
        let v = decide_nondegenerate(&space, &DecisionPolicy::default());
        assert_eq!(v.kind, NondegeneracyKind::RefutedSymbolic);
    }

    #[test]
    fn monte_carlo_path_reports_bound() {
        let policy = DecisionPolicy {
            symbolic_max_dim: 0,
            mc_trials: 5,
            ..DecisionPolicy::default()
        };
        let v = decide_nondegenerate(&invariant_form_space(&h3()), &policy);
        match v.kind {
            NondegeneracyKind::RefutedMonteCarlo {
                trials,
                range,
                bound,
            } => {
                assert_eq!(trials, 5);
                assert_eq!(range, 1 << 16);
                let one_trial = frac(3, 1 << 16);
                assert_eq!(bound, (0..5).fold(int(1), |acc, _| acc * &one_trial));
            }
            other => panic!("expected Monte Carlo refutation, got {other:?}"),
        }
    }

    #[test]
    fn orthogonality_relations_for_n32() {
        let g = free_nilpotent(3, 2);
        let w = decide_nondegenerate(&invariant_form_space(&g), &DecisionPolicy::default())
            .witness()
            .cloned()
            .unwrap();
        let report = check_orthogonality_relations(&g, &w, &Subspace::full(6)).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.rows[0].dim_lower, 3);
        assert_eq!(report.rows[0].dim_upper, 3);
        assert!(
            check_orthogonality_relations(&g, &SymForm::identity(6), &Subspace::full(6)).is_err()
        );
    }

    #[test]
    fn orthogonality_for_abelian_identity() {
        let g = LieAlgebra::abelian(3);
        let report =
            check_orthogonality_relations(&g, &SymForm::identity(3), &Subspace::coordinate(3, [1]))
                .unwrap();
        assert!(report.all_pass());
        assert_eq!(report.rows[0].dim_lower, 0);
        assert_eq!(report.rows[0].dim_upper, 3);
    }

    #[test]
    fn scaling_a_witness_keeps_it_a_witness() {
        let g = free_nilpotent(2, 3);
        let w = decide_nondegenerate(&invariant_form_space(&g), &DecisionPolicy::default())
            .witness()
            .cloned()
            .unwrap();
        for q in [frac(-3, 7), int(5), frac(1, 2)] {
            assert_eq!(verify_form(&g, &w.scale(&q)), Ok(()));
        }
    }

    #[test]
    fn signature_of_simple_forms() {
        assert_eq!(SymForm::identity(3).signature(), (3, 0, 0));
        let hyperbolic = SymForm::new(MatrixQ::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(hyperbolic.signature(), (1, 1, 0));
        let g = LieAlgebra::from_brackets(2, Vec::<BracketEntry>::new()).unwrap();
        assert_eq!(SymForm::zero(g.dim()).signature(), (0, 0, 2));
    }

    #[test]
    fn normalization_sets_first_entry_to_one() {
        let f = SymForm::new(MatrixQ::from_i64(&[&[0, 4], &[4, 6]])).unwrap();
        let n = f.normalized();
        assert_eq!(n.matrix()[(0, 1)], int(1));
        assert_eq!(n.matrix()[(1, 1)], frac(3, 2));
    }

    #[test]
    fn form_json_round_trip() {
        let f = SymForm::new(MatrixQ::from_i64(&[&[0, 4], &[4, 6]]))
            .unwrap()
            .normalized();
        let back = SymForm::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let asym = serde_json::json!([["1", "2"], ["3", "1"]]);
        assert!(SymForm::from_json(&asym).is_err());
    }
}
