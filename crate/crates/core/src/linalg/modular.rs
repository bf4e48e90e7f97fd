//! Gaussian elimination over `Z/p` for word-sized primes `p < 2^31`.
//!
//! The rank of the reduction of an integer matrix mod `p` never exceeds its
//! rank over `Q`; equality fails only when `p` divides every maximal nonzero
//! minor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::DenseMatrix;
use crate::error::{Error, Result};

/// Rows are updated in parallel once a matrix has at least this many entries.
const PARALLEL_ENTRIES: usize = 1 << 16;

const EXHAUSTION_DRAWS: usize = 1 << 17;

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The field `Z/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_BITS: u32 = 31;

    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || p >= 1 << Self::MAX_BITS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric residue in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// A reproducible stream of distinct random primes of a fixed bit length.
#[derive(Debug, Clone)]
pub struct PrimeSequence {
    rng: ChaCha8Rng,
    bits: u32,
    seen: Vec<u64>,
}

impl PrimeSequence {
    pub fn new(seed: u64, bits: u32) -> Result<Self> {
        if !(8..=PrimeField::MAX_BITS).contains(&bits) {
            return Err(Error::Precondition(format!(
                "prime bit size must be in 8..={}, got {bits}",
                PrimeField::MAX_BITS
            )));
        }
        Ok(Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bits,
            seen: Vec::new(),
        })
    }
}

impl Iterator for PrimeSequence {
    type Item = PrimeField;

    fn next(&mut self) -> Option<PrimeField> {
        let lo = 1u64 << (self.bits - 1);
        let hi = 1u64 << self.bits;
        // small bit sizes hold few primes; give up once draws stop finding new ones
        for _ in 0..EXHAUSTION_DRAWS {
            let candidate = self.rng.gen_range(lo..hi) | 1;
            if is_prime(candidate) && !self.seen.contains(&candidate) {
                self.seen.push(candidate);
                return Some(PrimeField { p: candidate });
            }
        }
        None
    }
}

/// Row echelon data of a matrix over `Z/p`.
#[derive(Debug, Clone)]
pub struct ModEchelon {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// Rows `0..rank` are the echelon rows with unit pivots.
    pub matrix: DenseMatrix<u64>,
}

/// Forward elimination in place; pivot rows are scaled to a leading 1.
/// Entries need not be reduced.
///
/// Row updates skip the reduction mod `p`: an entry absorbs up to
/// `(u64::MAX - p) / (p - 1)²` updates before the rows below the pivot are
/// reduced again.
pub fn echelon_mod(mut a: DenseMatrix<u64>, field: PrimeField) -> ModEchelon {
    let (rows, cols) = (a.rows(), a.cols());
    let p = field.modulus();
    let parallel = rows * cols >= PARALLEL_ENTRIES;
    let lazy = ((u64::MAX - p) / ((p - 1) * (p - 1))).max(1);
    for v in a.data_mut() {
        *v %= p;
    }
    let mut pending = 0;
    let mut r = 0;
    let mut pivot_cols = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[(i, c)].is_multiple_of(p)) else {
            continue;
        };
        a.swap_rows(r, piv);
        for v in &mut a.row_mut(r)[c..] {
            *v %= p;
        }
        let inv = field.inv(a[(r, c)]);
        for v in &mut a.row_mut(r)[c..] {
            *v = field.mul(*v, inv);
        }
        let pivot_row: Vec<u64> = a.row(r)[c..].to_vec();
        let reduce = pending + 1 == lazy;
        let update = |row: &mut [u64]| {
            let f = row[c] % p;
            row[c] = 0;
            if f != 0 {
                let nf = p - f;
                for (x, &y) in row[c + 1..].iter_mut().zip(&pivot_row[1..]) {
                    *x += nf * y;
                }
            }
            if reduce {
                for x in &mut row[c + 1..] {
                    *x %= p;
                }
            }
        };
        let below = &mut a.data_mut()[(r + 1) * cols..];
        if parallel {
            below.par_chunks_mut(cols).for_each(update);
        } else {
            below.chunks_mut(cols).for_each(update);
        }
        pending = if reduce { 0 } else { pending + 1 };
        pivot_cols.push(c);
        r += 1;
    }
    for v in a.data_mut() {
        *v %= p;
    }
    ModEchelon {
        rank: r,
        pivot_cols,
        matrix: a,
    }
}

pub fn rank_mod(a: &DenseMatrix<u64>, field: PrimeField) -> usize {
    echelon_mod(a.clone(), field).rank
}

impl ModEchelon {
    /// Kernel basis mod p: one vector per free column, carrying 1 there and 0
    /// on the other free columns.
    pub fn kernel(&self, field: PrimeField) -> Vec<Vec<u64>> {
        let cols = self.matrix.cols();
        let mut is_pivot = vec![false; cols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        let p = field.modulus();
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u64; cols];
                v[free] = 1;
                for k in (0..self.rank).rev() {
                    let pc = self.pivot_cols[k];
                    let row = self.matrix.row(k);
                    let mut acc = 0u64;
                    for j in pc + 1..cols {
                        if v[j] != 0 && row[j] != 0 {
                            acc = (acc + row[j] * v[j]) % p;
                        }
                    }
                    v[pc] = field.neg(acc);
                }
                v
            })
            .collect()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols()];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.matrix.cols()).filter(|&c| !is_pivot[c]).collect()
    }
}

impl<T> DenseMatrix<T> {
    pub(crate) fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }
}
