use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{rank_fraction_free, DenseMatrix};
use crate::scalar::{primitive_integer_vector, Scalar};

/// Scales a nonzero triple so its first nonzero entry is 1.
fn normalize<T: Scalar>(mut c: [T; 3]) -> Result<[T; 3]> {
    let lead = c.iter().find(|v| !v.is_zero()).cloned().ok_or(Error::ZeroVector)?;
    if !lead.is_one() {
        for v in &mut c {
            *v = v.clone() / lead.clone();
        }
    }
    Ok(c)
}

fn cross<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn dot<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn integer_triple<T: Scalar>(c: &[T; 3]) -> [BigInt; 3] {
    let q: Vec<_> = c.iter().map(Scalar::to_rational).collect();
    let v = primitive_integer_vector(&q);
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

/// A point `[x : y : z]` of the projective plane, stored with its first
/// nonzero coordinate equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint<T> {
    coords: [T; 3],
}

/// A line `a x + b y + c z = 0`, normalized like points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveLine<T> {
    coeffs: [T; 3],
}

impl<T: Scalar> ProjectivePoint<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        Ok(Self {
            coords: normalize([x, y, z])?,
        })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(T::from_ratio(x, 1), T::from_ratio(y, 1), T::from_ratio(z, 1))
    }

    pub fn coords(&self) -> &[T; 3] {
        &self.coords
    }

    /// The primitive integer triple representing this point.
    pub fn integer_coords(&self) -> [BigInt; 3] {
        integer_triple(&self.coords)
    }

    pub fn lies_on(&self, line: &ProjectiveLine<T>) -> bool {
        dot(&self.coords, &line.coeffs).is_zero()
    }
}

impl<T: Scalar> ProjectiveLine<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        Ok(Self {
            coeffs: normalize([a, b, c])?,
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(T::from_ratio(a, 1), T::from_ratio(b, 1), T::from_ratio(c, 1))
    }

    pub fn coeffs(&self) -> &[T; 3] {
        &self.coeffs
    }

    pub fn integer_coeffs(&self) -> [BigInt; 3] {
        integer_triple(&self.coeffs)
    }

    pub fn contains(&self, p: &ProjectivePoint<T>) -> bool {
        p.lies_on(self)
    }
}

impl<T: Scalar> fmt::Display for ProjectivePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "[{x}:{y}:{z}]")
    }
}

impl<T: Scalar> fmt::Display for ProjectiveLine<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coeffs;
        write!(f, "({a})x + ({b})y + ({c})z = 0")
    }
}

/// The line through two distinct points.
pub fn line_through<T: Scalar>(p: &ProjectivePoint<T>, q: &ProjectivePoint<T>) -> Result<ProjectiveLine<T>> {
    let c = cross(&p.coords, &q.coords);
    ProjectiveLine::new(c[0].clone(), c[1].clone(), c[2].clone()).map_err(|_| Error::IdenticalPoints)
}

/// The intersection point of two distinct lines.
pub fn meet<T: Scalar>(l1: &ProjectiveLine<T>, l2: &ProjectiveLine<T>) -> Result<ProjectivePoint<T>> {
    let c = cross(&l1.coeffs, &l2.coeffs);
    ProjectivePoint::new(c[0].clone(), c[1].clone(), c[2].clone()).map_err(|_| Error::IdenticalLines)
}

/// Whether all points lie on one line. Repeated points are allowed.
pub fn collinear<T: Scalar>(points: &[ProjectivePoint<T>]) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    let Some(second) = points.iter().find(|p| *p != first) else {
        return true;
    };
    let line = line_through(first, second).expect("distinct points");
    points.iter().all(|p| p.lies_on(&line))
}

/// Evaluations of the six quadratic monomials `x², xy, xz, y², yz, z²`.
pub fn veronese_row<T: Scalar>(p: &ProjectivePoint<T>) -> [BigInt; 6] {
    let [x, y, z] = p.integer_coords();
    [&x * &x, &x * &y, &x * &z, &y * &y, &y * &z, &z * &z]
}

/// Whether some nonzero quadratic form vanishes at every point.
pub fn on_common_conic<T: Scalar>(points: &[ProjectivePoint<T>]) -> bool {
    if points.len() < 6 {
        return true;
    }
    let data: Vec<BigInt> = points.iter().flat_map(veronese_row).collect();
    let m = DenseMatrix::from_vec(points.len(), 6, data).expect("6 columns per point");
    rank_fraction_free(&m) < 6
}
