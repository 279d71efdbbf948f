//! Explicit isomorphisms between algebras generated by a complement of their
//! commutator, found by trying signed permutations of coordinate generators.

use num_traits::{One, Zero};

use crate::lie::LieAlgebra;
use crate::linalg::{is_zero_vector, unit_vector, MatrixQ, Rational, SpanBuilder};

/// Linear bijection `phi` (column `c` is `phi(e_c)`) preserving brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub matrix: MatrixQ,
}

impl Isomorphism {
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x).expect("vector has source dimension")
    }

    /// Checks bijectivity and `phi([e_i, e_j]) = [phi(e_i), phi(e_j)]`.
    pub fn verify(&self, from: &LieAlgebra, to: &LieAlgebra) -> bool {
        let n = from.dim();
        if to.dim() != n || self.matrix.rows() != n || self.matrix.cols() != n {
            return false;
        }
        if self.matrix.rank() != n {
            return false;
        }
        let images: Vec<Vec<Rational>> = (0..n).map(|c| self.apply(&unit_vector(n, c))).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(
                    &from
                        .bracket(&unit_vector(n, i), &unit_vector(n, j))
                        .expect("basis vectors"),
                );
                let rhs = to.bracket(&images[i], &images[j]).expect("images");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
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
    out.sort();
    out
}

/// Left-normed products of generators spanning the algebra, paired with
/// the images computed in the target.
fn extend(
    from: &LieAlgebra,
    to: &LieAlgebra,
    gens: &[usize],
    images: &[Vec<Rational>],
) -> Option<MatrixQ> {
    let n = from.dim();
    let mut pairs: Vec<(Vec<Rational>, Vec<Rational>)> = gens
        .iter()
        .zip(images)
        .map(|(&g, img)| (unit_vector(n, g), img.clone()))
        .collect();
    let mut frontier = pairs.clone();
    let mut span = SpanBuilder::new(n);
    let mut chosen: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
    for (u, v) in &pairs {
        if span.insert(u.clone()) {
            chosen.push((u.clone(), v.clone()));
        }
    }
    while !frontier.is_empty() && span.rank() < n {
        let mut next = Vec::new();
        for (g, gi) in gens.iter().zip(images) {
            for (u, v) in &frontier {
                let bu = from.bracket(&unit_vector(n, *g), u).ok()?;
                if is_zero_vector(&bu) {
                    continue;
                }
                let bv = to.bracket(gi, v).ok()?;
                if span.insert(bu.clone()) {
                    chosen.push((bu.clone(), bv.clone()));
                }
                next.push((bu, bv));
            }
        }
        pairs.extend(next.iter().cloned());
        frontier = next;
    }
    if span.rank() < n {
        return None;
    }
    // phi^T = U^{-1} V with U, V holding chosen pairs as rows
    let u = MatrixQ::from_rows(n, chosen.iter().map(|(a, _)| a.clone()).collect()).ok()?;
    let v = MatrixQ::from_rows(n, chosen.iter().map(|(_, b)| b.clone()).collect()).ok()?;
    let phi_t = u.inverse()?.mul(&v).ok()?;
    let phi = phi_t.transpose();
    for (a, b) in &pairs {
        if &phi.mul_vec(a).ok()? != b {
            return None;
        }
    }
    Some(phi)
}

/// Searches for an isomorphism sending the coordinate generators of `from`
/// (basis vectors outside the commutator's pivot columns) to signed
/// generators of `to`. `max_attempts` caps the number of candidate maps.
pub fn find_generator_isomorphism(
    from: &LieAlgebra,
    to: &LieAlgebra,
    max_attempts: usize,
) -> Option<Isomorphism> {
    if from.dim() != to.dim() {
        return None;
    }
    let gens_from = from.commutator().coordinate_complement();
    let gens_to = to.commutator().coordinate_complement();
    if gens_from.len() != gens_to.len() {
        return None;
    }
    let m = gens_from.len();
    let n = to.dim();
    let mut attempts = 0;
    for perm in permutations(m) {
        for signs in 0u64..(1 << m.min(20)) {
            attempts += 1;
            if attempts > max_attempts {
                return None;
            }
            let images: Vec<Vec<Rational>> = perm
                .iter()
                .enumerate()
                .map(|(slot, &target)| {
                    let mut v = unit_vector(n, gens_to[target]);
                    if signs >> slot & 1 == 1 {
                        v[gens_to[target]] = -Rational::one();
                    }
                    v
                })
                .collect();
            if let Some(matrix) = extend(from, to, &gens_from, &images) {
                let iso = Isomorphism { matrix };
                if iso.verify(from, to) {
                    return Some(iso);
                }
            }
        }
    }
    None
}

/// Same bracket table up to relabeling: true when some candidate map exists.
pub fn isomorphic_by_generators(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    find_generator_isomorphism(a, b, 10_000).is_some()
}

#[allow(dead_code)]
fn is_identity(m: &MatrixQ) -> bool {
    (0..m.rows()).all(|r| {
        (0..m.cols()).all(|c| {
            let x = &m[(r, c)];
            if r == c {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall::free_nilpotent;
    use crate::lie::BracketEntry;
    use crate::linalg::int;

    #[test]
    fn algebra_is_isomorphic_to_itself() {
        let g = free_nilpotent(2, 3);
        let iso = find_generator_isomorphism(&g, &g, 100).unwrap();
        assert!(iso.verify(&g, &g));
        assert!(is_identity(&iso.matrix));
    }

    #[test]
    fn relabelled_heisenberg() {
        // [e2,e3] = -e1 is h3 with the center first
        let g =
            LieAlgebra::from_brackets(3, [BracketEntry::new(1, 2, vec![(0, int(-1))])]).unwrap();
        let h = free_nilpotent(2, 2);
        let iso = find_generator_isomorphism(&g, &h, 100).unwrap();
        assert!(iso.verify(&g, &h));
    }

    #[test]
    fn non_isomorphic_pairs_are_rejected() {
        assert!(!isomorphic_by_generators(
            &free_nilpotent(2, 3),
            &free_nilpotent(3, 2)
        ));
        let h_plus_r2 = crate::lie::direct_sum(&[free_nilpotent(2, 2), LieAlgebra::abelian(2)]);
        let n32 = free_nilpotent(3, 2);
        assert!(!isomorphic_by_generators(&h_plus_r2, &free_nilpotent(2, 2)));
        assert!(!isomorphic_by_generators(
            &n32,
            &crate::lie::direct_sum(&[free_nilpotent(2, 2), free_nilpotent(2, 2)])
        ));
    }
}
