//! Free nilpotent Lie algebras `n_{p,k}` presented on a Hall basis.
//!
//! Basic commutators are generated degree by degree; within a degree they are
//! listed in creation order, which is lexicographic in the indices of their
//! two factors. `[a, b]` is basic when `a > b` and, if `a = [a1, a2]`, also
//! `a2 <= b`. Products are reduced to basic commutators by the collection
//! rule `[[a1, a2], b] = [[a1, b], a2] + [a1, [a2, b]]`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::lie::{BracketEntry, LieAlgebra};
use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Word {
    Generator(usize),
    Bracket(usize, usize),
}

/// Hall basis of the free Lie algebra truncated above degree `k`.
#[derive(Clone, Debug)]
pub struct HallBasis {
    generators: usize,
    max_degree: usize,
    words: Vec<Word>,
    degrees: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
}

type Combination = Vec<(usize, Rational)>;

fn add_into(acc: &mut HashMap<usize, Rational>, terms: &[(usize, Rational)], scale: &Rational) {
    for (k, c) in terms {
        let v = acc.entry(*k).or_insert_with(Rational::zero);
        *v += scale * c;
    }
}

fn collect(acc: HashMap<usize, Rational>) -> Combination {
    let mut out: Combination = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

impl HallBasis {
    pub fn new(generators: usize, max_degree: usize) -> Self {
        let mut words: Vec<Word> = (0..generators).map(Word::Generator).collect();
        let mut degrees = vec![1; generators];
        let mut index = HashMap::new();
        for d in 2..=max_degree {
            let existing = words.len();
            for a in 0..existing {
                for b in 0..a {
                    if degrees[a] + degrees[b] != d {
                        continue;
                    }
                    if let Word::Bracket(_, a2) = words[a] {
                        if a2 > b {
                            continue;
                        }
                    }
                    index.insert((a, b), words.len());
                    words.push(Word::Bracket(a, b));
                    degrees.push(d);
                }
            }
        }
        Self {
            generators,
            max_degree,
            words,
            degrees,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn degree(&self, w: usize) -> usize {
        self.degrees[w]
    }

    /// Number of basic commutators of each degree `1..=k`.
    pub fn graded_dims(&self) -> Vec<usize> {
        (1..=self.max_degree)
            .map(|d| self.degrees.iter().filter(|&&x| x == d).count())
            .collect()
    }

    pub fn label(&self, w: usize) -> String {
        match self.words[w] {
            Word::Generator(g) => format!("x{}", g + 1),
            Word::Bracket(a, b) => format!("[{},{}]", self.label(a), self.label(b)),
        }
    }

    /// `[w_a, w_b]` in the Hall basis, dropping terms above the top degree.
    fn product(
        &self,
        a: usize,
        b: usize,
        memo: &mut HashMap<(usize, usize), Combination>,
    ) -> Combination {
        if a == b || self.degrees[a] + self.degrees[b] > self.max_degree {
            return Vec::new();
        }
        if let Some(hit) = memo.get(&(a, b)) {
            return hit.clone();
        }
        let result = if a < b {
            self.product(b, a, memo)
                .into_iter()
                .map(|(k, c)| (k, -c))
                .collect()
        } else {
            match self.words[a] {
                Word::Bracket(a1, a2) if a2 > b => {
                    let mut acc = HashMap::new();
                    for (c, coef) in self.product(a1, b, memo) {
                        let t = self.product(c, a2, memo);
                        add_into(&mut acc, &t, &coef);
                    }
                    for (c, coef) in self.product(a2, b, memo) {
                        let t = self.product(a1, c, memo);
                        add_into(&mut acc, &t, &coef);
                    }
                    collect(acc)
                }
                _ => vec![(self.index[&(a, b)], Rational::from_integer(1.into()))],
            }
        };
        memo.insert((a, b), result.clone());
        result
    }

    pub fn algebra(&self) -> LieAlgebra {
        let mut memo = HashMap::new();
        let mut entries = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let terms = self.product(i, j, &mut memo);
                if !terms.is_empty() {
                    entries.push(BracketEntry::new(i, j, terms));
                }
            }
        }
        let labels = (0..self.len()).map(|w| self.label(w)).collect();
        LieAlgebra::new(labels, entries).expect("Hall basis products satisfy Jacobi")
    }
}

/// Free `k`-step nilpotent Lie algebra on `p` generators.
pub fn free_nilpotent(p: usize, k: usize) -> LieAlgebra {
    HallBasis::new(p, k).algebra()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(n: usize) -> i64 {
        let mut n = n;
        let mut result = 1;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                n /= d;
                if n.is_multiple_of(d) {
                    return 0;
                }
                result = -result;
            }
            d += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }

    /// Witt's necklace formula for the degree-`n` part of the free Lie algebra.
    fn witt(p: usize, n: usize) -> usize {
        let sum: i64 = (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .map(|d| mobius(d) * (p as i64).pow((n / d) as u32))
            .sum();
        (sum / n as i64) as usize
    }

    #[test]
    fn graded_dims_match_witt() {
        for p in 1..=4 {
            for k in 1..=4 {
                let h = HallBasis::new(p, k);
                let expected: Vec<usize> = (1..=k).map(|n| witt(p, n)).collect();
                assert_eq!(h.graded_dims(), expected, "p={p} k={k}");
            }
        }
        assert_eq!(HallBasis::new(2, 5).graded_dims(), vec![2, 1, 2, 3, 6]);
    }

    #[test]
    fn small_free_algebras() {
        assert_eq!(free_nilpotent(3, 2).dim(), 6);
        assert_eq!(HallBasis::new(3, 2).graded_dims(), vec![3, 3]);
        let h3 = free_nilpotent(2, 2);
        assert_eq!(h3.dim(), 3);
        assert_eq!(h3.center().dim(), 1);
        let n23 = free_nilpotent(2, 3);
        assert_eq!(n23.dim(), 5);
        assert_eq!(n23.central_series().descending_dims(), vec![5, 3, 2, 0]);
    }

    #[test]
    fn nilpotency_class_is_exact() {
        for p in 2..=3 {
            for k in 1..=4 {
                assert_eq!(
                    free_nilpotent(p, k).nilpotency_class(),
                    Some(k),
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn larger_cases_pass_jacobi() {
        // construction validates; 2 generators at depth 6 exercises deep collection
        assert_eq!(free_nilpotent(2, 6).dim(), 2 + 1 + 2 + 3 + 6 + 9);
        assert_eq!(free_nilpotent(3, 4).dim(), 3 + 3 + 8 + 18);
    }

    #[test]
    fn truncation_is_consistent() {
        for (p, k) in [(2, 3), (3, 3), (2, 5), (4, 2)] {
            let top = free_nilpotent(p, k);
            let lower = free_nilpotent(p, k - 1);
            let keep = lower.dim();
            for i in 0..keep {
                for j in 0..keep {
                    let t: Vec<_> = top
                        .bracket_basis(i, j)
                        .iter()
                        .filter(|(m, _)| *m < keep)
                        .cloned()
                        .collect();
                    assert_eq!(t.as_slice(), lower.bracket_basis(i, j));
                }
            }
            assert_eq!(&top.labels()[..keep], lower.labels());
        }
    }
}
