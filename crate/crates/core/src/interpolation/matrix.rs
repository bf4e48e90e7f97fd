use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::monomial::{monomial_count, monomials, multi_indices};
use crate::error::{Error, Result};
use crate::geometry::PointConfiguration;
use crate::linalg::{DenseMatrix, PrimeField};
use crate::scalar::Scalar;

/// The scheme `mZ`: every point of `Z` with the same multiplicity `m ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatPointScheme<T> {
    config: PointConfiguration<T>,
    multiplicity: usize,
}

impl<T: Scalar> FatPointScheme<T> {
    pub fn new(config: PointConfiguration<T>, multiplicity: usize) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::Precondition("multiplicity must be at least 1".into()));
        }
        Ok(Self { config, multiplicity })
    }

    pub fn config(&self) -> &PointConfiguration<T> {
        &self.config
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Derivative order used for the conditions in degree `d`.
    pub(crate) fn condition_order(&self, d: usize) -> usize {
        (self.multiplicity - 1).min(d)
    }

    fn integer_points(&self) -> Vec<[BigInt; 3]> {
        self.config.points().iter().map(|p| p.integer_coords()).collect()
    }
}

/// Linear conditions on the coefficients of a degree-`d` form for vanishing to
/// order `m` at each point: one row per point and per derivative
/// `∂^{m-1}/∂x^a∂y^b∂z^c`, one column per monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionMatrix {
    degree: usize,
    multiplicity: usize,
    points: usize,
    matrix: DenseMatrix<BigInt>,
}

impl ConditionMatrix {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn matrix(&self) -> &DenseMatrix<BigInt> {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn reduce_mod(&self, field: PrimeField) -> DenseMatrix<u64> {
        let p = BigInt::from(field.modulus());
        self.matrix.map(|v| v.mod_floor(&p).to_u64().expect("residue fits"))
    }

    /// Row-major integer dump preceded by a `d,m,s` header.
    pub fn to_csv(&self) -> String {
        let mut out = format!("d,m,s\n{},{},{}\n", self.degree, self.multiplicity, self.points);
        for row in self.matrix.row_iter() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(",")).expect("writing to a String");
        }
        out
    }
}

fn falling(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, t| acc * (n - t) as u128)
}

/// Builds the condition matrix of `scheme` in degree `d`.
///
/// Points enter through their primitive integer representatives (the row-wise
/// least-common-denominator scaling of their canonical coordinates), so every
/// entry is an integer. When `d < m - 1` the derivatives of order `m - 1`
/// vanish identically; the order-`d` derivatives are used instead, which
/// still force the form to be zero.
pub fn build_condition_matrix<T: Scalar>(scheme: &FatPointScheme<T>, d: usize) -> ConditionMatrix {
    let order = scheme.condition_order(d);
    let derivs = multi_indices(order);
    let monos = monomials(d);
    let cols = monos.len();
    let pts = scheme.integer_points();
    let mut data = Vec::with_capacity(pts.len() * derivs.len() * cols);
    for p in &pts {
        let powers: Vec<Vec<BigInt>> = p
            .iter()
            .map(|c| {
                let mut v = vec![BigInt::one()];
                for i in 0..d {
                    let next = &v[i] * c;
                    v.push(next);
                }
                v
            })
            .collect();
        for a in &derivs {
            for e in &monos {
                if e[0] < a[0] || e[1] < a[1] || e[2] < a[2] {
                    data.push(BigInt::default());
                    continue;
                }
                let coeff = falling(e[0], a[0]) * falling(e[1], a[1]) * falling(e[2], a[2]);
                let value = &powers[0][e[0] - a[0]] * &powers[1][e[1] - a[1]] * &powers[2][e[2] - a[2]];
                data.push(value * BigInt::from(coeff));
            }
        }
    }
    let rows = pts.len() * derivs.len();
    ConditionMatrix {
        degree: d,
        multiplicity: scheme.multiplicity(),
        points: pts.len(),
        matrix: DenseMatrix::from_vec(rows, cols, data).expect("sized above"),
    }
}

/// The reduction of [`build_condition_matrix`] mod `p`, computed without
/// forming the integer entries.
pub fn condition_matrix_mod<T: Scalar>(scheme: &FatPointScheme<T>, d: usize, field: PrimeField) -> DenseMatrix<u64> {
    let p = BigInt::from(field.modulus());
    let order = scheme.condition_order(d);
    let derivs = multi_indices(order);
    let monos = monomials(d);
    let cols = monos.len();
    let pts = scheme.integer_points();
    // falling factorials n(n-1)...(n-k+1) mod p for n, k <= d
    let mut fall = vec![vec![0u64; d + 1]; d + 1];
    for (n, row) in fall.iter_mut().enumerate() {
        row[0] = 1;
        for k in 1..=n {
            row[k] = field.mul(row[k - 1], (n + 1 - k) as u64);
        }
    }
    let mut data = Vec::with_capacity(pts.len() * derivs.len() * cols);
    for pt in &pts {
        let powers: Vec<Vec<u64>> = pt
            .iter()
            .map(|c| {
                let c = c.mod_floor(&p).to_u64().expect("residue fits");
                let mut v = vec![1u64; d + 1];
                for i in 1..=d {
                    v[i] = field.mul(v[i - 1], c);
                }
                v
            })
            .collect();
        for a in &derivs {
            for e in &monos {
                if e[0] < a[0] || e[1] < a[1] || e[2] < a[2] {
                    data.push(0);
                    continue;
                }
                let coeff = field.mul(field.mul(fall[e[0]][a[0]], fall[e[1]][a[1]]), fall[e[2]][a[2]]);
                let value = field.mul(
                    field.mul(powers[0][e[0] - a[0]], powers[1][e[1] - a[1]]),
                    powers[2][e[2] - a[2]],
                );
                data.push(field.mul(coeff, value));
            }
        }
    }
    let rows = pts.len() * derivs.len();
    DenseMatrix::from_vec(rows, cols, data).expect("sized above")
}

/// Row count of the condition matrix in degree `d`.
pub fn condition_rows<T: Scalar>(scheme: &FatPointScheme<T>, d: usize) -> usize {
    scheme.config().len() * monomial_count(scheme.condition_order(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ProjectivePoint;
    use crate::linalg::{rank_fraction_free, PrimeSequence};
    use num_rational::BigRational;

    fn scheme(points: &[(i64, i64, i64)], m: usize) -> FatPointScheme<BigRational> {
        let pts = points
            .iter()
            .map(|&(x, y, z)| ProjectivePoint::from_ints(x, y, z).unwrap())
            .collect();
        FatPointScheme::new(PointConfiguration::new(pts).unwrap(), m).unwrap()
    }

    fn kernel_dim(s: &FatPointScheme<BigRational>, d: usize) -> usize {
        let m = build_condition_matrix(s, d);
        m.cols() - rank_fraction_free(m.matrix())
    }

    #[test]
    fn shapes() {
        let s = scheme(&[(0, 0, 1), (1, 0, 1), (2, 5, 1)], 3);
        let m = build_condition_matrix(&s, 4);
        assert_eq!(m.rows(), 3 * 6);
        assert_eq!(m.cols(), 15);
        assert_eq!(condition_rows(&s, 4), 18);
    }

    #[test]
    fn single_point_examples() {
        let one = scheme(&[(3, -1, 2)], 1);
        let m = build_condition_matrix(&one, 1);
        assert_eq!((m.rows(), m.cols()), (1, 3));
        assert_eq!(kernel_dim(&one, 1), 2);
        let double = scheme(&[(3, -1, 2)], 2);
        assert_eq!(build_condition_matrix(&double, 1).rows(), 3);
        assert_eq!(kernel_dim(&double, 1), 0);
        // conics singular at [0:0:1]: spanned by x^2, xy, y^2
        assert_eq!(kernel_dim(&scheme(&[(0, 0, 1)], 2), 2), 3);
    }

    #[test]
    fn low_degree_forces_zero() {
        let s = scheme(&[(1, 2, 3)], 5);
        for d in 0..5 {
            assert_eq!(kernel_dim(&s, d), 0, "d = {d}");
        }
        assert_eq!(kernel_dim(&s, 5), 21 - 15);
    }

    #[test]
    fn direct_modular_build_matches_reduction() {
        let s = scheme(&[(7, -3, 2), (0, 1, 0), (11, 13, -17)], 3);
        for field in PrimeSequence::new(1, 31).unwrap().take(3) {
            for d in [1, 3, 6] {
                assert_eq!(
                    condition_matrix_mod(&s, d, field),
                    build_condition_matrix(&s, d).reduce_mod(field)
                );
            }
        }
    }

    #[test]
    fn csv_dump_has_header() {
        let csv = build_condition_matrix(&scheme(&[(0, 0, 1)], 1), 1).to_csv();
        assert_eq!(csv, "d,m,s\n1,1,1\n0,0,1\n");
    }
}
