use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::FatPointScheme;
use super::monomial::{monomial_count, monomial_index, monomials, multi_indices};
use crate::error::{Error, Result};
use crate::geometry::ProjectiveLine;
use crate::scalar::Scalar;

/// A homogeneous ternary form with integer coefficients, indexed by the
/// degree-`d` monomials in the order of [`monomials`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Form {
    degree: usize,
    #[serde(with = "crate::scalar::integer_strings")]
    coeffs: Vec<BigInt>,
}

impl Form {
    pub fn new(degree: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        let expected = monomial_count(degree);
        if coeffs.len() != expected {
            return Err(Error::DegreeMismatch {
                degree,
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self { degree, coeffs })
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self {
            degree: 0,
            coeffs: vec![c.into()],
        }
    }

    pub fn from_line<T: Scalar>(line: &ProjectiveLine<T>) -> Self {
        // monomial order for degree 1 is x, y, z
        Self {
            degree: 1,
            coeffs: line.integer_coeffs().to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Divides out the gcd of the coefficients and makes the leading nonzero one positive.
    pub fn primitive(mut self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return self;
        }
        let negate = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(Signed::is_negative);
        let g = if negate { -g } else { g };
        for c in &mut self.coeffs {
            *c = &*c / &g;
        }
        self
    }

    pub fn mul(&self, other: &Form) -> Form {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![BigInt::zero(); monomial_count(degree)];
        let left = monomials(self.degree);
        let right = monomials(other.degree);
        for (a, ca) in left.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in right.iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                coeffs[monomial_index(degree, e)] += ca * cb;
            }
        }
        Form { degree, coeffs }
    }

    pub fn pow(&self, n: usize) -> Form {
        (0..n).fold(Form::constant(1), |acc, _| acc.mul(self))
    }

    /// The partial derivative `∂^{a+b+c} / ∂x^a ∂y^b ∂z^c`.
    pub fn derivative(&self, order: [usize; 3]) -> Form {
        let k: usize = order.iter().sum();
        if k > self.degree {
            return Form::constant(0);
        }
        let degree = self.degree - k;
        let mut coeffs = vec![BigInt::zero(); monomial_count(degree)];
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() || e[0] < order[0] || e[1] < order[1] || e[2] < order[2] {
                continue;
            }
            let mut factor = BigInt::one();
            for v in 0..3 {
                for t in 0..order[v] {
                    factor *= e[v] - t;
                }
            }
            let target = [e[0] - order[0], e[1] - order[1], e[2] - order[2]];
            coeffs[monomial_index(degree, target)] += c * factor;
        }
        Form { degree, coeffs }
    }

    pub fn eval(&self, point: &[BigInt; 3]) -> BigInt {
        let pow = |base: &BigInt| {
            let mut v = Vec::with_capacity(self.degree + 1);
            v.push(BigInt::one());
            for i in 0..self.degree {
                let next = &v[i] * base;
                v.push(next);
            }
            v
        };
        let (px, py, pz) = (pow(&point[0]), pow(&point[1]), pow(&point[2]));
        monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| c * &px[e[0]] * &py[e[1]] * &pz[e[2]])
            .sum()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, exp) in ["x", "y", "z"].iter().zip(e) {
                match exp {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{exp}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Whether the nonzero `form` vanishes to order at least `m` at every point of
/// the scheme: all partial derivatives of order `m - 1` (of order `deg` when
/// `deg < m - 1`) vanish there. Evaluated exactly.
pub fn verify_multiplicity<T: Scalar>(form: &Form, scheme: &FatPointScheme<T>) -> Result<bool> {
    let expected = monomial_count(form.degree);
    if form.coeffs.len() != expected {
        return Err(Error::DegreeMismatch {
            degree: form.degree,
            expected,
            found: form.coeffs.len(),
        });
    }
    if form.is_zero() {
        return Err(Error::Precondition("the zero form has no multiplicity".into()));
    }
    let order = (scheme.multiplicity() - 1).min(form.degree);
    let points: Vec<[BigInt; 3]> = scheme.config().points().iter().map(|p| p.integer_coords()).collect();
    for idx in multi_indices(order) {
        let partial = form.derivative(idx);
        if partial.is_zero() {
            continue;
        }
        if points.iter().any(|p| !partial.eval(p).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}
