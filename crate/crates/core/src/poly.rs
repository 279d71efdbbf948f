//! Sparse multivariate polynomials over Q, just enough to expand the
//! determinant of a matrix of linear forms.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg::{MatrixQ, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: HashMap<Vec<u16>, Rational>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: HashMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        let mut p = Self::zero(vars);
        p.terms.insert(vec![0; vars], Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// `self += scale * linear * other`, `linear[i]` the coefficient of `t_i`.
    pub fn add_linear_times(&mut self, scale: &Rational, linear: &[Rational], other: &Poly) {
        for (v, a) in linear.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let f = scale * a;
            for (exps, c) in &other.terms {
                let mut e = exps.clone();
                e[v] += 1;
                let entry = self.terms.entry(e).or_insert_with(Rational::zero);
                *entry += &f * c;
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }
}

/// Expands `det(Σ t_i B_i)` by Laplace expansion over column subsets.
pub fn linear_pencil_determinant(basis: &[MatrixQ]) -> Poly {
    let vars = basis.len();
    let n = basis.first().map_or(0, MatrixQ::rows);
    // entry(r, c) as a linear form in t
    let entry =
        |r: usize, c: usize| -> Vec<Rational> { basis.iter().map(|b| b[(r, c)].clone()).collect() };
    let mut layer: HashMap<u32, Poly> = HashMap::new();
    layer.insert(0, Poly::one(vars));
    for r in 0..n {
        let mut next: HashMap<u32, Poly> = HashMap::new();
        for (&mask, minor) in &layer {
            for c in (0..n).filter(|c| mask >> c & 1 == 0) {
                let lin = entry(r, c);
                if lin.iter().all(Zero::is_zero) {
                    continue;
                }
                let new_mask = mask | 1 << c;
                // position of c among the columns of new_mask
                let pos = (new_mask & ((1 << c) - 1)).count_ones() as usize;
                let sign = if (r + pos).is_multiple_of(2) {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                next.entry(new_mask)
                    .or_insert_with(|| Poly::zero(vars))
                    .add_linear_times(&sign, &lin, minor);
            }
        }
        next.retain(|_, p| !p.is_zero());
        if next.is_empty() {
            return Poly::zero(vars);
        }
        layer = next;
    }
    layer.remove(&((1u32 << n) - 1)).unwrap_or_else(|| {
        if n == 0 {
            Poly::one(vars)
        } else {
            Poly::zero(vars)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn pencil_determinant_matches_pointwise_determinant() {
        let b1 = MatrixQ::from_i64(&[&[1, 2, 0], &[2, 0, 1], &[0, 1, 3]]);
        let b2 = MatrixQ::from_i64(&[&[0, 1, 1], &[1, 1, 0], &[1, 0, -2]]);
        let p = linear_pencil_determinant(&[b1.clone(), b2.clone()]);
        for (s, t) in [(1, 0), (0, 1), (2, 3), (-1, 5), (7, -4)] {
            let mut m = b1.scale(&int(s));
            m.add_scaled(&int(t), &b2).unwrap();
            assert_eq!(p.evaluate(&[int(s), int(t)]), m.determinant().unwrap());
        }
    }

    #[test]
    fn singular_pencil_expands_to_zero() {
        // every member kills e3
        let b1 = MatrixQ::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let b2 = MatrixQ::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let b3 = MatrixQ::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert!(linear_pencil_determinant(&[b1, b2, b3]).is_zero());
    }
}
