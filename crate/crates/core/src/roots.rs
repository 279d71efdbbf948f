//! Reduced root systems of every Cartan type, their positive roots, and
//! Chevalley structure constants on the positive part.
//!
//! Simple roots are numbered as in Humphreys' tables (B_n with `γ_n` short,
//! C_n with `γ_n` long, E_n with `γ_2` attached to `γ_4`, F_4 with `γ_1, γ_2`
//! long, G_2 with `γ_1` short). The pairing is normalized so long roots have
//! squared length 2.
//!
//! Positive roots are listed by height, and within a height in decreasing
//! lexicographic order of their simple coordinates. Signs of the structure
//! constants follow the extraspecial pair rule over that order:
//! `N_{α,β} = p + 1 > 0` for the extraspecial pair of each root, everything
//! else forced by `N_{-a,-b} = -N_{a,b}` and the four-root identity.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{BracketEntry, LieAlgebra};
use crate::linalg::{frac, int, MatrixQ, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error("rank {rank} is not allowed for type {family}")]
    BadRank { family: Family, rank: usize },
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("roots are proportional")]
    Proportional,
    #[error("simple root index {0} out of range")]
    BadSimpleIndex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootError::BadRank { family, rank })
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.family, Family::A | Family::B | Family::C | Family::D)
    }

    /// Closed-form number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(RootError::UnknownType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootError::UnknownType(s.to_string()))?;
        Self::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Gram matrix `(γ_i, γ_j)` of the simple roots.
fn simple_gram(t: CartanType) -> Vec<Vec<Rational>> {
    let n = t.rank;
    let mut g = vec![vec![Rational::zero(); n]; n];
    let link = |g: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
        g[i - 1][j - 1] = v.clone();
        g[j - 1][i - 1] = v;
    };
    match t.family {
        Family::A | Family::D | Family::E => {
            (0..n).for_each(|i| g[i][i] = int(2));
            match t.family {
                Family::A => (1..n).for_each(|i| link(&mut g, i, i + 1, int(-1))),
                Family::D => {
                    (1..n - 1).for_each(|i| link(&mut g, i, i + 1, int(-1)));
                    link(&mut g, n - 2, n, int(-1));
                }
                _ => {
                    link(&mut g, 1, 3, int(-1));
                    link(&mut g, 2, 4, int(-1));
                    (3..n).for_each(|i| link(&mut g, i, i + 1, int(-1)));
                }
            }
        }
        Family::B => {
            (0..n - 1).for_each(|i| g[i][i] = int(2));
            g[n - 1][n - 1] = int(1);
            (1..n).for_each(|i| link(&mut g, i, i + 1, int(-1)));
        }
        Family::C => {
            (0..n - 1).for_each(|i| g[i][i] = int(1));
            g[n - 1][n - 1] = int(2);
            (1..n - 1).for_each(|i| link(&mut g, i, i + 1, frac(-1, 2)));
            link(&mut g, n - 1, n, int(-1));
        }
        Family::F => {
            g[0][0] = int(2);
            g[1][1] = int(2);
            g[2][2] = int(1);
            g[3][3] = int(1);
            link(&mut g, 1, 2, int(-1));
            link(&mut g, 2, 3, int(-1));
            link(&mut g, 3, 4, frac(-1, 2));
        }
        Family::G => {
            g[0][0] = frac(2, 3);
            g[1][1] = int(2);
            link(&mut g, 1, 2, int(-1));
        }
    }
    g
}

/// `ε`-images of the simple roots for classical types.
fn simple_epsilon(t: CartanType) -> Option<Vec<Vec<Rational>>> {
    let n = t.rank;
    let width = if t.family == Family::A { n + 1 } else { n };
    let diff = |i: usize| {
        let mut v = vec![Rational::zero(); width];
        v[i] = int(1);
        v[i + 1] = int(-1);
        v
    };
    let mut out: Vec<Vec<Rational>> = match t.family {
        Family::A => (0..n).map(diff).collect(),
        Family::B | Family::C | Family::D => (0..n - 1).map(diff).collect(),
        _ => return None,
    };
    let mut last = vec![Rational::zero(); width];
    match t.family {
        Family::B => last[n - 1] = int(1),
        Family::C => last[n - 1] = int(2),
        Family::D => {
            last[n - 2] = int(1);
            last[n - 1] = int(1);
        }
        _ => return Some(out),
    }
    out.push(last);
    Some(out)
}

/// Root system with positive roots, pairing and Chevalley constants.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    gram: Vec<Vec<Rational>>,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    chevalley: HashMap<(usize, usize), i64>,
    epsilon: Option<Vec<Vec<Rational>>>,
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl RootSystem {
    pub fn build(t: CartanType) -> Self {
        let n = t.rank;
        let gram = simple_gram(t);
        // Humphreys: a_ij = 2 (γ_i, γ_j) / (γ_j, γ_j)
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = int(2) * &gram[i][j] / &gram[j][j];
                        v.to_integer().to_i64().expect("Cartan integers are small")
                    })
                    .collect()
            })
            .collect();
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut all: Vec<Vec<i64>> = (0..n).map(unit).collect();
        let mut known: std::collections::HashSet<Vec<i64>> = all.iter().cloned().collect();
        let mut layer = all.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    if *beta == unit(i) {
                        continue;
                    }
                    let mut p = 0;
                    let mut down = sub(beta, &unit(i));
                    while known.contains(&down) {
                        p += 1;
                        down = sub(&down, &unit(i));
                    }
                    let pairing: i64 = beta.iter().zip(&cartan).map(|(b, row)| b * row[i]).sum();
                    let q = p - pairing;
                    if q > 0 {
                        let up = add(beta, &unit(i));
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let index = all
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let mut rs = Self {
            cartan_type: t,
            gram,
            cartan,
            positive: all,
            index,
            chevalley: HashMap::new(),
            epsilon: simple_epsilon(t),
        };
        rs.chevalley = rs.compute_chevalley();
        rs
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// Cartan integers `a_ij = <<γ_i, γ_j>>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.positive[i]
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive_root(&self, coords: &[i64]) -> bool {
        self.index.contains_key(coords)
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        if self.is_positive_root(coords) {
            return true;
        }
        let neg: Vec<i64> = coords.iter().map(|x| -x).collect();
        self.is_positive_root(&neg)
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn height(coords: &[i64]) -> i64 {
        coords.iter().sum()
    }

    /// `(γ, δ)` in simple coordinates.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (row, &ai) in self.gram.iter().zip(a).filter(|(_, &ai)| ai != 0) {
            for (gij, &bj) in row.iter().zip(b).filter(|(_, &bj)| bj != 0) {
                acc += gij * int(ai * bj);
            }
        }
        acc
    }

    /// `<<γ, α>> = 2 (γ, α) / (α, α)`.
    pub fn cartan_pairing(&self, gamma: &[i64], alpha: &[i64]) -> Rational {
        int(2) * self.pairing(gamma, alpha) / self.pairing(alpha, alpha)
    }

    pub fn gamma_max(&self) -> &[i64] {
        self.positive.last().expect("nonempty root system")
    }

    /// Roots `ρ` with `ρ + γ_i` not a root for every simple `γ_i`.
    pub fn maximal_roots(&self) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&r| {
                (0..self.rank())
                    .all(|i| !self.is_root(&add(&self.positive[r], &self.simple_root(i))))
            })
            .collect()
    }

    /// `(p, q)` with `γ + nα` a root exactly for `p <= n <= q`.
    pub fn root_string(&self, gamma: &[i64], alpha: &[i64]) -> Result<(i64, i64), RootError> {
        for r in [gamma, alpha] {
            if !self.is_root(r) {
                return Err(RootError::NotARoot(r.to_vec()));
            }
        }
        let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
        if gamma == alpha || gamma == neg.as_slice() {
            return Err(RootError::Proportional);
        }
        let mut q = 0;
        let mut cur = add(gamma, alpha);
        while self.is_root(&cur) {
            q += 1;
            cur = add(&cur, alpha);
        }
        let mut p = 0;
        let mut cur = sub(gamma, alpha);
        while self.is_root(&cur) {
            p -= 1;
            cur = sub(&cur, alpha);
        }
        Ok((p, q))
    }

    /// `ε`-coordinates (classical types only).
    pub fn epsilon_coords(&self, coords: &[i64]) -> Option<Vec<Rational>> {
        let eps = self.epsilon.as_ref()?;
        let width = eps[0].len();
        let mut out = vec![Rational::zero(); width];
        for (c, e) in coords.iter().zip(eps) {
            for k in 0..width {
                out[k] += int(*c) * &e[k];
            }
        }
        Some(out)
    }

    /// Inverse of [`Self::epsilon_coords`] on the span of the roots.
    pub fn simple_coords_from_epsilon(&self, eps: &[Rational]) -> Option<Vec<i64>> {
        let simple = self.epsilon.as_ref()?;
        let n = self.rank();
        let width = simple[0].len();
        // least squares free: solve S^T c = eps on the pivot rows
        let m = MatrixQ::from_fn(width, n + 1, |r, c| {
            if c < n {
                simple[c][r].clone()
            } else {
                eps[r].clone()
            }
        });
        let rref = m.rref();
        if rref.pivots.contains(&n) {
            return None;
        }
        let mut out = vec![0i64; n];
        for (row, &p) in rref.pivots.iter().enumerate() {
            let v = &rref.matrix[(row, n)];
            if !v.is_integer() {
                return None;
            }
            out[p] = v.to_integer().to_i64()?;
        }
        Some(out)
    }

    /// Extraspecial pair `(α, β)` of a non-simple positive root: the
    /// decomposition `ξ = α + β` with `α` earliest in the root order.
    pub fn extraspecial_pair(&self, xi: usize) -> Option<(usize, usize)> {
        let x = &self.positive[xi];
        (0..xi).find_map(|a| {
            let b = self.index_of(&sub(x, &self.positive[a]))?;
            Some((a, b))
        })
    }

    fn compute_chevalley(&self) -> HashMap<(usize, usize), i64> {
        let mut n: HashMap<(usize, usize), Rational> = HashMap::new();
        let len = |r: usize| self.pairing(&self.positive[r], &self.positive[r]);
        let get = |n: &HashMap<(usize, usize), Rational>, a: usize, b: usize| -> Rational {
            n.get(&(a, b))
                .cloned()
                .expect("lower-height constant is known")
        };
        for xi in 0..self.positive.len() {
            let Some((alpha, beta)) = self.extraspecial_pair(xi) else {
                continue;
            };
            let x = &self.positive[xi];
            let (p, _) = self
                .root_string(&self.positive[beta], &self.positive[alpha])
                .expect("roots");
            let n_ab = int(1 - p);
            n.insert((alpha, beta), n_ab.clone());
            n.insert((beta, alpha), -n_ab.clone());
            for r in alpha + 1..xi {
                let Some(s) = self.index_of(&sub(x, &self.positive[r])) else {
                    continue;
                };
                if s <= r || (r, s) == (alpha, beta) {
                    continue;
                }
                let mut acc = Rational::zero();
                // x = s - α = β - r
                if let Some(y) = self.index_of(&sub(&self.positive[s], &self.positive[alpha])) {
                    acc -= len(y) / (len(s) * len(beta)) * get(&n, alpha, y) * get(&n, y, r);
                }
                // x' = r - α = β - s
                if let Some(y) = self.index_of(&sub(&self.positive[r], &self.positive[alpha])) {
                    acc += len(y) / (len(r) * len(beta)) * get(&n, alpha, y) * get(&n, y, s);
                }
                let value = len(xi) * acc / &n_ab;
                n.insert((s, r), -value.clone());
                n.insert((r, s), value);
            }
        }
        n.into_iter()
            .map(|(k, v)| {
                assert!(v.is_integer(), "structure constant {v} is not an integer");
                (k, v.to_integer().to_i64().expect("small"))
            })
            .collect()
    }

    /// `N_{a,b}` for positive roots with `a + b` a root.
    pub fn chevalley(&self, a: usize, b: usize) -> Option<i64> {
        self.chevalley.get(&(a, b)).copied()
    }

    pub fn root_label(coords: &[i64]) -> String {
        let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
        format!("X({})", parts.join(","))
    }

    /// Subalgebra of the positive root vectors indexed by `roots` (which must
    /// be closed under sums that are roots), with basis in the given order.
    pub fn root_algebra(&self, roots: &[usize]) -> LieAlgebra {
        let pos: HashMap<usize, usize> = roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut entries = Vec::new();
        for (i, &a) in roots.iter().enumerate() {
            for (j, &b) in roots.iter().enumerate().skip(i + 1) {
                let Some(sum) = self.index_of(&add(&self.positive[a], &self.positive[b])) else {
                    continue;
                };
                let k = *pos.get(&sum).expect("root set closed under sums");
                let c = self.chevalley(a, b).expect("constant for a root sum");
                entries.push(BracketEntry::new(i, j, vec![(k, int(c))]));
            }
        }
        let labels = roots
            .iter()
            .map(|&r| Self::root_label(&self.positive[r]))
            .collect();
        LieAlgebra::new(labels, entries).expect("Chevalley constants satisfy Jacobi")
    }

    /// Nilpotent algebra spanned by all positive root vectors.
    pub fn positive_part(&self) -> LieAlgebra {
        let all: Vec<usize> = (0..self.positive.len()).collect();
        self.root_algebra(&all)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsrootReport {
    pub sum_is_root: bool,
    pub difference_is_positive_root: bool,
    pub pairing_sign: i8,
    /// If `γ + α` is not a root: `γ - α ∈ Δ⁺ ⟺ (γ, α) > 0`.
    pub first_clause: Option<bool>,
    /// If `γ - α` is not a positive root: `γ + α ∈ Δ⁺ ⟺ (γ, α) < 0`.
    pub second_clause: Option<bool>,
}

impl SubsrootReport {
    pub fn consistent(&self) -> bool {
        self.first_clause.unwrap_or(true) && self.second_clause.unwrap_or(true)
    }
}

/// Evaluates both clauses of the add/subtract-a-simple-root criterion for a
/// positive root `γ != α` against direct membership tests.
pub fn lemma_subsroot(
    rs: &RootSystem,
    gamma: &[i64],
    alpha_index: usize,
) -> Result<SubsrootReport, RootError> {
    if alpha_index >= rs.rank() {
        return Err(RootError::BadSimpleIndex(alpha_index));
    }
    if !rs.is_positive_root(gamma) {
        return Err(RootError::NotARoot(gamma.to_vec()));
    }
    let alpha = rs.simple_root(alpha_index);
    if gamma == alpha.as_slice() {
        return Err(RootError::Proportional);
    }
    let plus = rs.is_positive_root(&add(gamma, &alpha));
    let minus = rs.is_positive_root(&sub(gamma, &alpha));
    let pairing = rs.pairing(gamma, &alpha);
    let sign = if pairing.is_zero() {
        0
    } else if pairing > Rational::zero() {
        1
    } else {
        -1
    };
    Ok(SubsrootReport {
        sum_is_root: plus,
        difference_is_positive_root: minus,
        pairing_sign: sign,
        first_clause: (!plus).then_some(minus == (sign > 0)),
        second_clause: (!minus).then_some(plus == (sign < 0)),
    })
}

/// Classical matrix realization: `E_γ` for each positive root as an
/// explicit matrix in sl, so or sp.
fn classical_root_matrices(rs: &RootSystem) -> Option<Vec<MatrixQ>> {
    let t = rs.cartan_type();
    let n = t.rank;
    let size = match t.family {
        Family::A => n + 1,
        Family::B => 2 * n + 1,
        Family::C | Family::D => 2 * n,
        _ => return None,
    };
    let sigma = |i: usize| size - 1 - i;
    // weight of standard basis vector k as a signed ε index
    let weight = |k: usize| -> Vec<Rational> {
        let width = if t.family == Family::A { n + 1 } else { n };
        let mut w = vec![Rational::zero(); width];
        if t.family == Family::A || k < n {
            w[k] = int(1);
        } else if size - 1 - k < n {
            w[size - 1 - k] = int(-1);
        }
        w
    };
    let unit =
        |a: usize, b: usize| MatrixQ::from_fn(size, size, |r, c| int((r == a && c == b) as i64));
    let bform = MatrixQ::from_fn(size, size, |r, c| {
        if c != sigma(r) {
            int(0)
        } else if t.family == Family::C {
            int(if r < n { 1 } else { -1 })
        } else {
            int(1)
        }
    });
    let project = |y: MatrixQ| -> MatrixQ {
        let t_part = bform.mul(&y.transpose()).unwrap().mul(&bform).unwrap();
        match t.family {
            Family::A => y,
            Family::C => y.add(&t_part).unwrap(),
            _ => y.add(&t_part.scale(&int(-1))).unwrap(),
        }
    };
    let mut out = Vec::new();
    for root in rs.positive_roots() {
        let eps = rs.epsilon_coords(root)?;
        let (a, b) = (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .find(|&(a, b)| {
                a != b && {
                    let (wa, wb) = (weight(a), weight(b));
                    wa.iter()
                        .zip(&wb)
                        .zip(&eps)
                        .all(|((x, y), e)| &(x - y) == e)
                }
            })?;
        let m = project(unit(a, b));
        if m.is_zero() {
            return None;
        }
        out.push(m);
    }
    Some(out)
}

fn commutator(a: &MatrixQ, b: &MatrixQ) -> MatrixQ {
    a.mul(b)
        .unwrap()
        .add(&b.mul(a).unwrap().scale(&int(-1)))
        .unwrap()
}

/// Scalar `c` with `m = c · e`, if any.
fn proportionality(m: &MatrixQ, e: &MatrixQ) -> Option<Rational> {
    let (r, c) = (0..e.rows())
        .flat_map(|r| (0..e.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !e[(r, c)].is_zero())?;
    let k = &m[(r, c)] / &e[(r, c)];
    (e.scale(&k) == *m).then_some(k)
}

/// Classical types: matrix root vectors have brackets `c_{a,b} E_{a+b}`;
/// checks that after rescaling `E_γ -> λ_γ E_γ` (fixed on the extraspecial
/// pairs) every `c` equals the Chevalley constant, and that the rescaled
/// matrix algebra has exactly the structure constants of `positive_part`.
pub fn matrix_realization_check(rs: &RootSystem) -> Result<(), String> {
    let mats = classical_root_matrices(rs).ok_or("no matrix realization for this type")?;
    let m = mats.len();
    let mut c: HashMap<(usize, usize), Rational> = HashMap::new();
    for a in 0..m {
        for b in 0..m {
            let br = commutator(&mats[a], &mats[b]);
            let sum = add(rs.root(a), rs.root(b));
            match rs.index_of(&sum) {
                Some(s) => {
                    let k = proportionality(&br, &mats[s])
                        .ok_or_else(|| format!("[E{a},E{b}] is not a multiple of E{s}"))?;
                    if k.is_zero() {
                        return Err(format!("[E{a},E{b}] vanishes though the sum is a root"));
                    }
                    c.insert((a, b), k);
                }
                None => {
                    if !br.is_zero() {
                        return Err(format!("[E{a},E{b}] nonzero though the sum is not a root"));
                    }
                }
            }
        }
    }
    let mut lambda: Vec<Rational> = vec![int(1); m];
    for xi in 0..m {
        if let Some((a, b)) = rs.extraspecial_pair(xi) {
            let n = int(rs.chevalley(a, b).expect("extraspecial constant"));
            lambda[xi] = &c[&(a, b)] * &lambda[a] * &lambda[b] / n;
        }
    }
    for (&(a, b), k) in &c {
        let s = rs.index_of(&add(rs.root(a), rs.root(b))).expect("root sum");
        let n = int(rs.chevalley(a, b).ok_or("missing Chevalley constant")?);
        if k * &lambda[a] * &lambda[b] != n * &lambda[s] {
            return Err(format!(
                "constant for roots {:?} + {:?} disagrees after rescaling",
                rs.root(a),
                rs.root(b)
            ));
        }
    }
    // rescaled matrix algebra against the positive part
    let scaled: Vec<MatrixQ> = mats.iter().zip(&lambda).map(|(e, l)| e.scale(l)).collect();
    let g = rs.positive_part();
    for a in 0..m {
        for b in a + 1..m {
            let br = commutator(&scaled[a], &scaled[b]);
            let mut expect = MatrixQ::zeros(br.rows(), br.cols());
            for (k, coef) in g.bracket_basis(a, b) {
                expect.add_scaled(coef, &scaled[*k]).unwrap();
            }
            if br != expect {
                return Err(format!("rescaled bracket of basis {a}, {b} differs"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    #[test]
    fn type_parsing() {
        assert_eq!(
            "E6".parse::<CartanType>().unwrap(),
            CartanType::new(Family::E, 6).unwrap()
        );
        assert!("E9".parse::<CartanType>().is_err());
        assert!("C2".parse::<CartanType>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
        assert!("X4".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
        assert_eq!("b3".parse::<CartanType>().unwrap().to_string(), "B3");
    }

    #[test]
    fn a2_roots() {
        let r = rs("A2");
        assert_eq!(r.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(r.gamma_max(), &[1, 1]);
        assert_eq!(r.chevalley(0, 1).map(i64::abs), Some(1));
        assert_eq!(r.root_string(&[1, 0], &[0, 1]).unwrap(), (0, 1));
    }

    #[test]
    fn cartan_matrices_follow_humphreys() {
        assert_eq!(rs("G2").cartan_matrix(), &[vec![2, -1], vec![-3, 2]]);
        assert_eq!(rs("B3").cartan_matrix()[1][2], -2);
        assert_eq!(rs("B3").cartan_matrix()[2][1], -1);
        assert_eq!(rs("C3").cartan_matrix()[1][2], -1);
        assert_eq!(rs("C3").cartan_matrix()[2][1], -2);
        assert_eq!(rs("F4").cartan_matrix()[1][2], -2);
    }

    #[test]
    fn counts_and_highest_roots() {
        let table: &[(&str, &[i64])] = &[
            ("B4", &[1, 2, 2, 2]),
            ("C4", &[2, 2, 2, 1]),
            ("D5", &[1, 2, 2, 1, 1]),
            ("E6", &[1, 2, 2, 3, 2, 1]),
            ("E7", &[2, 2, 3, 4, 3, 2, 1]),
            ("E8", &[2, 3, 4, 6, 5, 4, 3, 2]),
            ("F4", &[2, 3, 4, 2]),
            ("G2", &[3, 2]),
        ];
        for (name, top) in table {
            let r = rs(name);
            assert_eq!(
                r.positive_roots().len(),
                r.cartan_type().positive_root_count(),
                "{name}"
            );
            assert_eq!(r.gamma_max(), *top, "{name}");
            assert_eq!(r.maximal_roots(), vec![r.positive_roots().len() - 1]);
        }
    }

    #[test]
    fn strings() {
        let e6 = rs("E6");
        let top = e6.gamma_max().to_vec();
        assert_eq!(e6.root_string(&top, &e6.simple_root(1)).unwrap(), (-1, 0));
        let g2 = rs("G2");
        assert_eq!(g2.root_string(&[0, 1], &[1, 0]).unwrap(), (0, 3));
        assert!(g2.root_string(&[0, 1], &[0, 1]).is_err());
        assert!(g2.root_string(&[2, 2], &[1, 0]).is_err());
        // p + q = -<<γ, α>>
        for name in ["B3", "C3", "F4", "G2", "E6"] {
            let r = rs(name);
            for g in r.positive_roots() {
                for i in 0..r.rank() {
                    let a = r.simple_root(i);
                    if let Ok((p, q)) = r.root_string(g, &a) {
                        assert_eq!(int(p + q), -r.cartan_pairing(g, &a));
                    }
                }
            }
        }
    }

    #[test]
    fn subsroot_examples() {
        let e6 = rs("E6");
        let top = e6.gamma_max().to_vec();
        let rep = lemma_subsroot(&e6, &top, 1).unwrap();
        assert!(!rep.sum_is_root && rep.difference_is_positive_root && rep.pairing_sign > 0);
        assert!(rep.consistent());
        for i in 0..6 {
            let expected = if i == 1 { int(1) } else { int(0) };
            assert_eq!(e6.cartan_pairing(&top, &e6.simple_root(i)), expected);
        }
        let a2 = rs("A2");
        let rep = lemma_subsroot(&a2, &[1, 0], 1).unwrap();
        assert_eq!(rep.pairing_sign, -1);
        assert_eq!(rep.second_clause, Some(true));
        // orthogonal with neither neighbour a root
        let a3 = rs("A3");
        let rep = lemma_subsroot(&a3, &[1, 0, 0], 2).unwrap();
        assert_eq!(rep.pairing_sign, 0);
        assert!(rep.consistent());
        assert!(lemma_subsroot(&a2, &[1, 0], 0).is_err());
    }

    #[test]
    fn chevalley_magnitudes_are_string_lengths() {
        for name in ["A4", "B4", "C4", "D5", "G2", "F4", "E6"] {
            let r = rs(name);
            for a in 0..r.positive_roots().len() {
                for b in 0..r.positive_roots().len() {
                    let sum = add(r.root(a), r.root(b));
                    if r.is_positive_root(&sum) {
                        let (p, _) = r.root_string(r.root(b), r.root(a)).unwrap();
                        assert_eq!(r.chevalley(a, b).unwrap().abs(), 1 - p, "{name}");
                    } else {
                        assert_eq!(r.chevalley(a, b), None);
                    }
                }
            }
        }
        let g2 = rs("G2");
        let a = g2.index_of(&[1, 0]).unwrap();
        let b = g2.index_of(&[1, 1]).unwrap();
        assert_eq!(g2.chevalley(a, b).unwrap().abs(), 2);
    }

    #[test]
    fn positive_parts_pass_jacobi() {
        // construction validates
        for name in ["B3", "C3", "D4", "G2", "F4", "E6", "E7"] {
            let r = rs(name);
            assert_eq!(r.positive_part().dim(), r.positive_roots().len());
        }
    }

    #[test]
    fn epsilon_round_trip() {
        for name in ["A3", "B3", "C4", "D4"] {
            let r = rs(name);
            for root in r.positive_roots() {
                let e = r.epsilon_coords(root).unwrap();
                assert_eq!(r.simple_coords_from_epsilon(&e).unwrap(), *root, "{name}");
            }
        }
        let c3 = rs("C3");
        let top = c3.epsilon_coords(c3.gamma_max()).unwrap();
        assert_eq!(top, vec![int(2), int(0), int(0)]);
        assert!(rs("G2").epsilon_coords(&[1, 0]).is_none());
    }

    #[test]
    fn matrix_realizations_agree() {
        for name in ["A1", "A3", "B2", "B3", "C3", "C4", "D4", "D5"] {
            assert_eq!(matrix_realization_check(&rs(name)), Ok(()), "{name}");
        }
        assert!(matrix_realization_check(&rs("G2")).is_err());
    }
}
