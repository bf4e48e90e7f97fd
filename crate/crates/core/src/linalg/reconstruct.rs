//! Chinese remaindering of modular vectors and rational reconstruction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::PrimeField;

/// A vector of residues modulo a growing product of primes.
#[derive(Debug, Clone)]
pub struct CrtVector {
    modulus: BigInt,
    residues: Vec<BigInt>,
}

impl CrtVector {
    pub fn new(len: usize) -> Self {
        Self {
            modulus: BigInt::one(),
            residues: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Incorporates `values` known modulo `field`'s prime, which must be
    /// coprime to the current modulus.
    pub fn absorb(&mut self, values: &[u64], field: PrimeField) {
        assert_eq!(values.len(), self.residues.len());
        let p = field.modulus();
        let pb = BigInt::from(p);
        let m_mod_p = (&self.modulus % &pb).to_u64().unwrap();
        let inv = field.inv(m_mod_p);
        for (r, &v) in self.residues.iter_mut().zip(values) {
            let r_mod_p = r.mod_floor(&pb).to_u64().unwrap();
            let t = field.mul(field.add(v, field.neg(r_mod_p)), inv);
            if t != 0 {
                *r += &self.modulus * t;
            }
        }
        self.modulus *= p;
    }

    /// Rational reconstruction of every entry, sharing a running common
    /// denominator so later entries only need to recover the remaining factor.
    pub fn reconstruct(&self) -> Option<Vec<BigRational>> {
        let bound = (&self.modulus / 2u32).sqrt();
        let mut common = BigInt::one();
        let mut out = Vec::with_capacity(self.residues.len());
        for r in &self.residues {
            let scaled = (r * &common).mod_floor(&self.modulus);
            let q = rational_reconstruction(&scaled, &self.modulus, &bound)?;
            let den = q.denom().clone();
            out.push(BigRational::new(q.numer().clone(), &den * &common));
            if !den.is_one() {
                common *= den;
                if common > bound {
                    return None;
                }
            }
        }
        Some(out)
    }
}

/// Finds `n/d ≡ a (mod m)` with `|n| ≤ bound` and `0 < d ≤ bound`, if one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    if &a <= bound {
        return Some(BigRational::from_integer(a));
    }
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeSequence;

    #[test]
    fn recovers_small_fractions() {
        let m = BigInt::from(1_000_003i64);
        let bound = (&m / 2u32).sqrt();
        // -3/7 mod m
        let inv7 = PrimeField::new(1_000_003).unwrap().inv(7);
        let a = BigInt::from((1_000_003 - 3) as u64 * inv7 % 1_000_003);
        let q = rational_reconstruction(&a, &m, &bound).unwrap();
        assert_eq!(q, BigRational::new((-3).into(), 7.into()));
    }

    #[test]
    fn crt_lifts_a_vector_with_large_entries() {
        let target: Vec<BigRational> = vec![
            BigRational::new(BigInt::from(3).pow(60), BigInt::from(7).pow(11)),
            BigRational::new(BigInt::from(-5), BigInt::from(7).pow(11) * 2),
            BigRational::zero(),
            BigRational::one(),
        ];
        let mut crt = CrtVector::new(target.len());
        let mut lifted = None;
        for field in PrimeSequence::new(3, 31).unwrap().take(20) {
            let p = BigInt::from(field.modulus());
            let residues: Vec<u64> = target
                .iter()
                .map(|q| {
                    let num = q.numer().mod_floor(&p).to_u64().unwrap();
                    let den = q.denom().mod_floor(&p).to_u64().unwrap();
                    field.mul(num, field.inv(den))
                })
                .collect();
            crt.absorb(&residues, field);
            if let Some(v) = crt.reconstruct() {
                if v == target {
                    lifted = Some(v);
                    break;
                }
            }
        }
        assert_eq!(lifted, Some(target));
    }
}
