//! Exact zero tests for determinants of integer matrices by reduction modulo
//! several primes, stopping once their product exceeds the Hadamard bound.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::{MatrixQ, Rational};

const PRIME_BITS: u64 = 60;
const PRIME_COUNT: usize = 128;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^61`, each above `2^PRIME_BITS`.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 61) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below p")
}

/// Determinant of a square matrix over `Z/p`, destroying the input.
fn det_mod(a: &mut [u64], n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if r != c {
            for k in 0..n {
                a.swap(r * n + k, c * n + k);
            }
            det = p - det;
        }
        let piv = a[c * n + c];
        det = mul_mod(det, piv, p);
        let inv = pow_mod(piv, p - 2, p);
        for r in c + 1..n {
            let f = mul_mod(a[r * n + c], inv, p);
            if f == 0 {
                continue;
            }
            for k in c..n {
                let t = mul_mod(f, a[c * n + k], p);
                a[r * n + k] = (a[r * n + k] + p - t) % p;
            }
        }
    }
    det
}

/// Bits needed so that the prime product exceeds `2 * hadamard`, given a
/// bound of `entry_bits` bits on every entry.
fn primes_needed(n: usize, entry_bits: u64) -> usize {
    let log_n = 64 - (n as u64).leading_zeros() as u64;
    let row_bits = entry_bits + log_n.div_ceil(2) + 1;
    let total = n as u64 * row_bits + 2;
    total.div_ceil(PRIME_BITS) as usize
}

fn integer_rows(m: &MatrixQ) -> Vec<Vec<BigInt>> {
    m.row_vectors()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

/// `det m == 0`, exactly. Falls back to rational rank when the entries are
/// too large for the prime table.
pub fn is_singular(m: &MatrixQ) -> bool {
    let n = m.rows();
    if n == 0 {
        return false;
    }
    let rows = integer_rows(m);
    let entry_bits = rows.iter().flatten().map(|x| x.bits()).max().unwrap_or(0);
    let need = primes_needed(n, entry_bits);
    if need > PRIME_COUNT {
        return m.rank() < n;
    }
    for &p in &primes()[..need] {
        let mut a: Vec<u64> = rows.iter().flatten().map(|x| reduce(x, p)).collect();
        if det_mod(&mut a, n, p) != 0 {
            return false;
        }
    }
    true
}

/// Integer basis of a pencil of square matrices, for repeated zero tests of
/// `det(Σ x_i M_i)` at integer points `0 <= x_i <= max_coeff`.
pub struct IntegerPencil {
    n: usize,
    /// Factor applied to each input matrix to make it integral.
    pub scales: Vec<Rational>,
    max_coeff: u64,
    /// Per prime, the residues of every scaled matrix; `None` if too many
    /// primes would be needed.
    residues: Option<Vec<(u64, Vec<Vec<u64>>)>>,
}

impl IntegerPencil {
    pub fn new(matrices: &[MatrixQ], max_coeff: u64) -> Self {
        let n = matrices.first().map_or(0, MatrixQ::rows);
        let mut mats = Vec::with_capacity(matrices.len());
        let mut scales = Vec::with_capacity(matrices.len());
        let mut sum = BigInt::zero();
        for m in matrices {
            let l = m
                .row_vectors()
                .flatten()
                .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
            let ints: Vec<BigInt> = m
                .row_vectors()
                .flatten()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect();
            sum += ints.iter().map(|x| x.abs()).max().unwrap_or_default();
            mats.push(ints);
            scales.push(Rational::from_integer(l));
        }
        let x_bits = 64 - max_coeff.leading_zeros() as u64;
        let need = primes_needed(n, sum.bits() + x_bits);
        let residues = (need <= PRIME_COUNT).then(|| {
            primes()[..need]
                .iter()
                .map(|&p| {
                    let r = mats
                        .iter()
                        .map(|m| m.iter().map(|x| reduce(x, p)).collect())
                        .collect();
                    (p, r)
                })
                .collect()
        });
        Self {
            n,
            scales,
            max_coeff,
            residues,
        }
    }

    /// Whether `det(Σ x_i M_i) == 0` for the scaled integer matrices `M_i`;
    /// `None` when the point is out of range or the entries are too large.
    pub fn is_singular_at(&self, point: &[u64]) -> Option<bool> {
        let n = self.n;
        if n == 0 {
            return Some(false);
        }
        if point.iter().any(|&x| x > self.max_coeff) {
            return None;
        }
        for (p, res) in self.residues.as_ref()? {
            let p = *p;
            let mut a = vec![0u64; n * n];
            for (m, &x) in res.iter().zip(point) {
                let x = x % p;
                if x == 0 {
                    continue;
                }
                for (slot, &v) in a.iter_mut().zip(m) {
                    *slot = (*slot + mul_mod(x, v, p)) % p;
                }
            }
            if det_mod(&mut a, n, p) != 0 {
                return Some(false);
            }
        }
        Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn primality() {
        assert!(is_prime((1u64 << 61) - 1));
        assert!(is_prime(97) && !is_prime(91));
        assert!(primes().iter().all(|&p| p > 1u64 << PRIME_BITS));
    }

    #[test]
    fn singular_matches_rank() {
        let a = MatrixQ::from_i64(&[&[1, 2], &[2, 4]]);
        let b = MatrixQ::from_i64(&[&[1, 2], &[3, 4]]);
        assert!(is_singular(&a));
        assert!(!is_singular(&b));
        // det = 2^200 - 2^200 = 0 with entries far beyond one prime
        let big = Rational::from_integer(BigInt::from(1) << 100);
        let c = MatrixQ::from_fn(2, 2, |_, _| big.clone());
        assert!(is_singular(&c));
        let d = MatrixQ::from_fn(2, 2, |i, j| if i == j { big.clone() } else { int(1) });
        assert!(!is_singular(&d));
    }

    #[test]
    fn pencil_points() {
        // x*[[1,0],[0,0]] + y*[[0,0],[0,1]] is singular iff x*y = 0
        let m1 = MatrixQ::from_i64(&[&[1, 0], &[0, 0]]);
        let m2 = MatrixQ::from_i64(&[&[0, 0], &[0, 1]]);
        let p = IntegerPencil::new(&[m1, m2], 10);
        assert_eq!(p.is_singular_at(&[3, 0]), Some(true));
        assert_eq!(p.is_singular_at(&[3, 5]), Some(false));
        assert_eq!(p.is_singular_at(&[11, 5]), None);
    }
}
