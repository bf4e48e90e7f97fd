//! Fraction-free (Bareiss) elimination over an integral domain.
//!
//! Every intermediate entry after step `k` is a `(k+1)`-minor of the input, so
//! the division by the previous pivot is exact and entries never leave the ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::DenseMatrix;

/// Result of a fraction-free forward elimination.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// The eliminated matrix; rows `0..rank` form an echelon basis of the row space.
    pub matrix: DenseMatrix<T>,
}

/// Exact rank over the fraction field of `T`.
pub fn rank_fraction_free<T>(matrix: &DenseMatrix<T>) -> usize
where
    T: Integer + Signed + Clone,
{
    echelon_fraction_free(matrix.clone()).rank
}

/// Forward elimination with partial pivoting on magnitude: the pivot in each
/// column is the entry of least nonzero absolute value.
pub fn echelon_fraction_free<T>(mut a: DenseMatrix<T>) -> Echelon<T>
where
    T: Integer + Signed + Clone,
{
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = T::one();
    let mut r = 0;
    let mut pivot_cols = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows)
            .filter(|&i| !a[(i, c)].is_zero())
            .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()));
        let Some(p) = pivot else { continue };
        a.swap_rows(r, p);
        let pivot_row: Vec<T> = a.row(r).to_vec();
        let pv = pivot_row[c].clone();
        for i in r + 1..rows {
            let factor = a[(i, c)].clone();
            let row = a.row_mut(i);
            for j in c + 1..cols {
                let v = row[j].clone() * pv.clone() - factor.clone() * pivot_row[j].clone();
                row[j] = v.div_floor(&prev);
            }
            row[c] = T::zero();
        }
        prev = pv;
        pivot_cols.push(c);
        r += 1;
    }
    Echelon {
        rank: r,
        pivot_cols,
        matrix: a,
    }
}

/// Rational kernel basis of an integer matrix, one vector per free column,
/// normalized so the free column carries 1 and other free columns carry 0.
pub fn kernel_rational(matrix: &DenseMatrix<BigInt>) -> Vec<Vec<BigRational>> {
    let cols = matrix.cols();
    let ech = echelon_fraction_free(matrix.clone());
    let rank = ech.rank;
    let pivots = &ech.pivot_cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::from_integer(1.into());
        for k in (0..rank).rev() {
            let pc = pivots[k];
            let row = ech.matrix.row(k);
            let mut acc = BigRational::zero();
            for j in pc + 1..cols {
                if !row[j].is_zero() && !v[j].is_zero() {
                    acc += BigRational::from_integer(row[j].clone()) * &v[j];
                }
            }
            v[pc] = -acc / BigRational::from_integer(row[pc].clone());
        }
        basis.push(v);
    }
    basis
}
