//! Exact rational linear algebra.
//!
//! Every subspace is stored by the reduced row echelon form of a basis, so two
//! subspaces are equal exactly when their stored matrices are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have unequal lengths")]
    Ragged,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational {input:?}: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"` with `q != 0`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| err("numerator is not an integer"))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| err("denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapters writing rationals as strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let strings: Vec<String> = v.iter().map(format_rational).collect();
            strings.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let strings = Vec::<String>::deserialize(d)?;
            strings
                .iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

pub fn zero_vector(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `a += c * b`
pub fn axpy(a: &mut [Rational], c: &Rational, b: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Dense matrix of rationals in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for MatrixQ {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for MatrixQ {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of a row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixQ,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe matrices with no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::Ragged);
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.row_vectors().map(<[Rational]>::to_vec).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * q).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Self) -> Result<(), LinalgError> {
        self.check_same_shape(other)?;
        axpy(&mut self.data, c, &other.data);
        Ok(())
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.row_vectors().map(|row| dot(row, v)).collect())
    }

    /// `v^T M w` for square matrices.
    pub fn bilinear(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            acc += vi * dot(self.row(i), w);
        }
        acc
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            let pivot_row: Vec<Rational> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = -m[(i, c)].clone();
                let start = i * m.cols + c;
                axpy(&mut m.data[start..start + pivot_row.len()], &f, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut builder = SpanBuilder::new(self.cols);
        for row in self.row_vectors() {
            builder.insert(row.to_vec());
        }
        builder.rank()
    }

    /// Right kernel `{x : M x = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let Rref {
            matrix,
            rank,
            pivots,
        } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = unit_vector(n, free);
            for (r, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = -matrix[(r, free)].clone();
            }
            vectors.push(v);
        }
        Subspace::span(n, vectors).expect("kernel vectors have ambient length")
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let Rref {
            matrix,
            rank,
            pivots,
        } = aug.rref();
        if rank < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| matrix[(r, c + n)].clone()))
    }

    /// Determinant by fraction-tracking Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            let pivot_row: Vec<Rational> = m.row(c)[c..].to_vec();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = -(&m[(i, c)] / &pivot);
                let start = i * n + c;
                axpy(&mut m.data[start..start + n - c], &f, &pivot_row);
            }
        }
        Ok(det)
    }
}

/// Incremental dense row echelon form, used to span many vectors without
/// materialising a tall matrix.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    ambient_dim: usize,
    // pivot column -> row normalised to 1 at the pivot, zero before it
    rows: BTreeMap<usize, Vec<Rational>>,
}

impl SpanBuilder {
    pub fn new(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows, returning the residual.
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (&p, row) in &self.rows {
            if !v[p].is_zero() {
                let f = -v[p].clone();
                axpy(&mut v[p..], &f, &row[p..]);
            }
        }
        v
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        debug_assert_eq!(v.len(), self.ambient_dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v[p..].iter_mut() {
            *x *= &inv;
        }
        self.rows.insert(p, v);
        true
    }

    pub fn finish(self) -> Subspace {
        Subspace::from_echelon(self.ambient_dim, self.rows)
    }
}

/// A subspace of `Q^n`, stored by the RREF of a basis (no zero rows).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: MatrixQ,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRecord {
    ambient_dim: usize,
    basis: Vec<Vec<String>>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceRecord {
            ambient_dim: self.ambient_dim,
            basis: self
                .basis_vectors()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        }
        .serialize(s)
    }
}

/// Loading re-spans the stored rows, so hand-written files need not be in RREF.
impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = SubspaceRecord::deserialize(d)?;
        let mut rows = Vec::with_capacity(rec.basis.len());
        for r in &rec.basis {
            let row: Result<Vec<Rational>, _> = r.iter().map(|x| parse_rational(x)).collect();
            rows.push(row.map_err(D::Error::custom)?);
        }
        Subspace::span(rec.ambient_dim, rows).map_err(D::Error::custom)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in Q^{}) {:?}",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: MatrixQ::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: MatrixQ::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of standard basis vectors `e_i`, `i` in `indices`.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            ambient_dim,
            indices.into_iter().map(|i| unit_vector(ambient_dim, i)),
        )
        .expect("coordinate vectors have ambient length")
    }

    pub fn span(
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = Vec<Rational>>,
    ) -> Result<Self, LinalgError> {
        let mut builder = SpanBuilder::new(ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            builder.insert(v);
        }
        Ok(builder.finish())
    }

    /// Row space of `m`.
    pub fn row_space(m: &MatrixQ) -> Self {
        Self::span(m.cols(), m.to_rows()).expect("rows have matrix width")
    }

    fn from_echelon(ambient_dim: usize, mut rows: BTreeMap<usize, Vec<Rational>>) -> Self {
        // back substitution to reach the reduced form
        let pivots: Vec<usize> = rows.keys().copied().collect();
        for (idx, &p) in pivots.iter().enumerate().rev() {
            let pivot_row = rows[&p].clone();
            for &q in &pivots[..idx] {
                let row = rows.get_mut(&q).expect("pivot present");
                if !row[p].is_zero() {
                    let f = -row[p].clone();
                    axpy(&mut row[p..], &f, &pivot_row[p..]);
                }
            }
        }
        let basis = MatrixQ::from_rows(ambient_dim, rows.into_values().collect())
            .expect("echelon rows have ambient length");
        Self {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// RREF basis matrix.
    pub fn basis(&self) -> &MatrixQ {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, n: usize) -> Result<(), LinalgError> {
        if self.ambient_dim != n {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: n,
            });
        }
        Ok(())
    }

    /// Residual of `v` after reduction by the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        self.check_ambient(v.len())?;
        let mut v = v.to_vec();
        for (row, &p) in self.basis.row_vectors().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = -v[p].clone();
                axpy(&mut v, &f, row);
            }
        }
        Ok(v)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        Ok(is_zero_vector(&self.reduce(v)?))
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other.ambient_dim)?;
        for v in other.basis_vectors() {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other.ambient_dim)?;
        Subspace::span(
            self.ambient_dim,
            self.basis_vectors()
                .chain(other.basis_vectors())
                .map(<[Rational]>::to_vec),
        )
    }

    /// Intersection by the Zassenhaus construction: reduce `[[a, a], [b, 0]]`,
    /// the right halves of rows whose left half vanishes span `a ∩ b`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other.ambient_dim)?;
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(n));
        }
        let mut builder = SpanBuilder::new(2 * n);
        for v in self.basis_vectors() {
            let mut row = v.to_vec();
            row.extend_from_slice(v);
            builder.insert(row);
        }
        for v in other.basis_vectors() {
            let mut row = v.to_vec();
            row.extend(zero_vector(n));
            builder.insert(row);
        }
        let stacked = builder.finish();
        let vectors = stacked
            .basis_vectors()
            .filter(|row| is_zero_vector(&row[..n]))
            .map(|row| row[n..].to_vec());
        Subspace::span(n, vectors)
    }

    /// Standard basis indices complementing the subspace: the non-pivot columns.
    pub fn coordinate_complement(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// Linear functionals vanishing on the subspace, `{y : y·v = 0}`.
    pub fn annihilator(&self) -> Subspace {
        self.basis.nullspace()
    }

    /// First basis vector as an example of a nonzero member.
    pub fn any_nonzero(&self) -> Option<Vec<Rational>> {
        self.basis_vectors().next().map(<[Rational]>::to_vec)
    }
}

/// Incremental sparse echelon form for tall, sparse linear systems.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    cols: usize,
    rows: BTreeMap<usize, Vec<(usize, Rational)>>,
}

fn sparse_axpy(
    a: &[(usize, Rational)],
    c: &Rational,
    b: &[(usize, Rational)],
) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseSystem {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds the equation `Σ c_k x_k = 0`; duplicate column entries are summed.
    pub fn push(&mut self, mut eq: Vec<(usize, Rational)>) {
        eq.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(eq.len());
        for (c, v) in eq {
            debug_assert!(c < self.cols);
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        let mut row = merged;
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return;
            };
            match self.rows.get(&lead) {
                Some(pivot_row) => {
                    row = sparse_axpy(&row, &-lead_val, pivot_row);
                }
                None => {
                    let inv = lead_val.recip();
                    for (_, v) in row.iter_mut() {
                        *v *= &inv;
                    }
                    self.rows.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Solution space of all pushed equations.
    pub fn solution_space(&self) -> Subspace {
        let n = self.cols;
        // back substitute, highest pivot first, to reach RREF
        let mut reduced: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            loop {
                let hit = r
                    .iter()
                    .skip(1)
                    .find(|(c, _)| reduced.contains_key(c))
                    .cloned();
                match hit {
                    Some((c, v)) => r = sparse_axpy(&r, &-v, &reduced[&c]),
                    None => break,
                }
            }
            reduced.insert(p, r);
        }
        let vectors = (0..n)
            .filter(|c| !reduced.contains_key(c))
            .map(|free| {
                let mut v = unit_vector(n, free);
                for (&p, row) in &reduced {
                    if let Some((_, val)) = row.iter().find(|(c, _)| *c == free) {
                        v[p] = -val.clone();
                    }
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(n, vectors).expect("solution vectors have column length")
    }
}

/// Reduces a vector of rationals to a primitive integer vector with positive
/// leading entry; the zero vector is returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| {
            if x.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        });
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_identity_and_dependent_rows() {
        let id = MatrixQ::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let m = MatrixQ::from_i64(&[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.matrix, MatrixQ::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = MatrixQ::from_i64(&[&[0, 3, 6, 1], &[2, 1, 0, 5], &[4, 5, 6, 11]]);
        let once = m.rref();
        let twice = once.matrix.rref();
        assert_eq!(once.matrix, twice.matrix);
        assert_eq!(once.rank, twice.rank);
        assert_eq!(once.rank, m.rank());
    }

    #[test]
    fn nullspace_edge_cases() {
        let z = MatrixQ::zeros(2, 3);
        assert!(z.nullspace().is_full());
        for n in 1..5 {
            assert!(MatrixQ::identity(n).nullspace().is_zero());
        }
        let m = MatrixQ::from_i64(&[&[1, 1, 0]]);
        let ker = m.nullspace();
        assert_eq!(ker.dim(), 2);
        for b in ker.basis_vectors() {
            assert!(is_zero_vector(&m.mul_vec(b).unwrap()));
        }
    }

    #[test]
    fn lattice_basics() {
        let a = Subspace::coordinate(2, [0]);
        let b = Subspace::coordinate(2, [1]);
        assert!(a.sum(&b).unwrap().is_full());
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.sum(&Subspace::zero(3)).is_err());
        assert!(a.intersect(&Subspace::zero(3)).is_err());
        assert!(a.contains(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn intersection_of_skew_planes() {
        // x + y = 0 meets z = 0 in the line (1, -1, 0)
        let a = Subspace::span(3, [v(&[1, -1, 0]), v(&[0, 0, 1])]).unwrap();
        let b = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Subspace::span(3, [v(&[1, -1, 0])]).unwrap());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("2/-4").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn determinant_matches_hand_values() {
        let m = MatrixQ::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant().unwrap(), int(18));
        let s = MatrixQ::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(s.determinant().unwrap().is_zero());
    }

    #[test]
    fn sparse_system_agrees_with_dense_kernel() {
        let m = MatrixQ::from_i64(&[&[1, 2, 0, -1], &[0, 0, 3, 3], &[2, 4, 3, 1]]);
        let mut sys = SparseSystem::new(4);
        for row in m.row_vectors() {
            sys.push(
                row.iter()
                    .enumerate()
                    .map(|(c, x)| (c, x.clone()))
                    .collect(),
            );
        }
        assert_eq!(sys.solution_space(), m.nullspace());
    }

    #[test]
    fn primitive_integer_vector() {
        let p = primitive_integer(&[frac(-1, 2), frac(1, 3), int(0)]);
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }
}
