use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::form::{verify_multiplicity, Form};
use super::matrix::{build_condition_matrix, condition_matrix_mod, ConditionMatrix, FatPointScheme};
use crate::error::{Error, Result};
use crate::linalg::modular::echelon_mod;
use crate::linalg::reconstruct::CrtVector;
use crate::linalg::{is_prime, kernel_rational, rank_fraction_free, rank_mod, PrimeField, PrimeSequence};
use crate::scalar::{primitive_integer_vector, Scalar};

/// How much a dimension claim must be backed by exact arithmetic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertaintyPolicy {
    /// Modular ranks only; positive dimensions are reported uncertified.
    Fast,
    /// Positive dimensions are confirmed by exact rational kernel vectors.
    #[default]
    Certified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineOptions {
    pub policy: CertaintyPolicy,
    /// Below 32 bits; at 28 bits an entry absorbs about 256 unreduced row
    /// updates, at 31 bits only 3.
    pub prime_bits: u32,
    pub seed: u64,
    /// Primes tried while lifting a kernel before falling back to
    /// fraction-free elimination.
    pub max_lift_primes: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            policy: CertaintyPolicy::Certified,
            prime_bits: 28,
            seed: 0,
            max_lift_primes: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystemResult {
    pub degree: usize,
    pub multiplicity: usize,
    pub dimension: usize,
    pub witness: Option<Form>,
    pub certified: bool,
}

/// Outcome of lifting a modular kernel to the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lift {
    /// The system has only the zero solution.
    Empty,
    /// Verified integer forms; for a full lift they span the solution space.
    Forms(Vec<Form>),
}

/// Rank and kernel computations for condition matrices, drawing primes from
/// a seeded stream so that every result is reproducible.
#[derive(Debug)]
pub struct Engine {
    options: EngineOptions,
    primes: Mutex<(PrimeSequence, Vec<PrimeField>)>,
}

impl Engine {
    pub fn new(options: EngineOptions) -> Result<Self> {
        let source = PrimeSequence::new(options.seed, options.prime_bits)?;
        Ok(Self {
            options,
            primes: Mutex::new((source, Vec::new())),
        })
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    pub fn policy(&self) -> CertaintyPolicy {
        self.options.policy
    }

    /// The `i`-th prime of the engine's stream, if the bit size holds that many.
    pub fn prime(&self, i: usize) -> Option<PrimeField> {
        let mut guard = self.primes.lock().expect("prime cache poisoned");
        let (source, cache) = &mut *guard;
        while cache.len() <= i {
            cache.push(source.next()?);
        }
        Some(cache[i])
    }

    fn first_prime<T: Scalar>(&self, scheme: &FatPointScheme<T>, d: usize) -> Result<PrimeField> {
        let field = self
            .prime(0)
            .ok_or_else(|| Error::Internal("empty prime stream".into()))?;
        check_threshold(field.modulus(), d, scheme.multiplicity())?;
        Ok(field)
    }

    /// Whether the degree-`d` part is nonzero modulo the first prime. A `false`
    /// answer is exact; `true` may be an artefact of an unlucky prime.
    pub fn modular_positive<T: Scalar>(&self, scheme: &FatPointScheme<T>, d: usize) -> Result<bool> {
        let field = self.first_prime(scheme, d)?;
        let m = condition_matrix_mod(scheme, d, field);
        Ok(rank_mod(&m, field) < m.cols())
    }

    pub fn system_dimension<T: Scalar>(&self, scheme: &FatPointScheme<T>, d: usize) -> Result<LinearSystemResult> {
        let p1 = self.first_prime(scheme, d)?;
        let m1 = condition_matrix_mod(scheme, d, p1);
        let cols = m1.cols();
        let r1 = rank_mod(&m1, p1);
        let result = |dimension, witness, certified| LinearSystemResult {
            degree: d,
            multiplicity: scheme.multiplicity(),
            dimension,
            witness,
            certified,
        };
        if r1 == cols {
            return Ok(result(0, None, true));
        }
        match self.options.policy {
            CertaintyPolicy::Fast => {
                let p2 = self
                    .prime(1)
                    .ok_or_else(|| Error::Internal("prime stream exhausted".into()))?;
                let r2 = rank_mod(&condition_matrix_mod(scheme, d, p2), p2);
                if r1 == r2 {
                    Ok(result(cols - r1, None, false))
                } else {
                    let rank = rank_fraction_free(build_condition_matrix(scheme, d).matrix());
                    Ok(result(cols - rank, None, true))
                }
            }
            CertaintyPolicy::Certified => match self.lift(scheme, d, usize::MAX)? {
                Lift::Empty => Ok(result(0, None, true)),
                Lift::Forms(forms) => {
                    let witness = forms.first().cloned();
                    Ok(result(forms.len(), witness, true))
                }
            },
        }
    }

    /// Lifts (at most `limit` vectors of) the kernel basis by Chinese
    /// remaindering and rational reconstruction. Every returned form has
    /// passed [`verify_multiplicity`]; with `limit = usize::MAX` the forms are
    /// a basis of the degree-`d` part.
    ///
    /// Primes whose rank falls below the best seen, or whose pivot columns are
    /// lexicographically later at equal rank, are discarded as unlucky.
    pub fn lift<T: Scalar>(&self, scheme: &FatPointScheme<T>, d: usize, limit: usize) -> Result<Lift> {
        struct State {
            rank: usize,
            pivots: Vec<usize>,
            crt: Vec<CrtVector>,
            previous: Option<Vec<Vec<BigRational>>>,
        }
        let cols = super::monomial::monomial_count(d);
        let mut state: Option<State> = None;
        for i in 0..self.options.max_lift_primes {
            let Some(field) = self.prime(i) else { break };
            check_threshold(field.modulus(), d, scheme.multiplicity())?;
            let ech = echelon_mod(condition_matrix_mod(scheme, d, field), field);
            if ech.rank == cols {
                return Ok(Lift::Empty);
            }
            let restart = match &state {
                None => true,
                Some(s) => ech.rank > s.rank || (ech.rank == s.rank && ech.pivot_cols < s.pivots),
            };
            if !restart {
                let s = state.as_ref().expect("state exists");
                if ech.rank < s.rank || ech.pivot_cols != s.pivots {
                    continue;
                }
            }
            let kernel: Vec<Vec<u64>> = ech.kernel(field).into_iter().take(limit).collect();
            if restart {
                state = Some(State {
                    rank: ech.rank,
                    pivots: ech.pivot_cols.clone(),
                    crt: vec![CrtVector::new(cols); kernel.len()],
                    previous: None,
                });
            }
            let s = state.as_mut().expect("state exists");
            for (crt, v) in s.crt.iter_mut().zip(&kernel) {
                crt.absorb(v, field);
            }
            let current: Option<Vec<Vec<BigRational>>> = s.crt.iter().map(CrtVector::reconstruct).collect();
            let Some(current) = current else {
                s.previous = None;
                continue;
            };
            if s.previous.as_ref() == Some(&current) {
                if let Some(forms) = verified_forms(&current, scheme, d)? {
                    return Ok(Lift::Forms(forms));
                }
            }
            s.previous = Some(current);
        }
        // exact fallback
        let basis: Vec<Vec<BigRational>> = kernel_rational(build_condition_matrix(scheme, d).matrix())
            .into_iter()
            .take(limit)
            .collect();
        if basis.is_empty() {
            return Ok(Lift::Empty);
        }
        verified_forms(&basis, scheme, d)?.map(Lift::Forms).ok_or_else(|| {
            Error::Internal(format!(
                "exact kernel vector fails the multiplicity check in degree {d}"
            ))
        })
    }

    /// One verified nonzero form of degree `d`, or `None` when the system is
    /// provably empty.
    pub fn witness<T: Scalar>(&self, scheme: &FatPointScheme<T>, d: usize) -> Result<Option<Form>> {
        Ok(match self.lift(scheme, d, 1)? {
            Lift::Empty => None,
            Lift::Forms(mut forms) => Some(forms.swap_remove(0)),
        })
    }
}

fn verified_forms<T: Scalar>(
    vectors: &[Vec<BigRational>],
    scheme: &FatPointScheme<T>,
    d: usize,
) -> Result<Option<Vec<Form>>> {
    let mut forms = Vec::with_capacity(vectors.len());
    for v in vectors {
        let form = Form::new(d, primitive_integer_vector(v))?.primitive();
        if !verify_multiplicity(&form, scheme)? {
            return Ok(None);
        }
        forms.push(form);
    }
    Ok(Some(forms))
}

fn check_threshold(prime: u64, d: usize, m: usize) -> Result<()> {
    let threshold = d.max(m) as u64;
    if prime <= threshold {
        return Err(Error::PrimeTooSmall { prime, threshold });
    }
    Ok(())
}

/// Rank of the condition matrix modulo `prime`, which must be an odd prime
/// below `2^31` exceeding both the degree and the multiplicity.
pub fn rank_modular(mat: &ConditionMatrix, prime: u64) -> Result<usize> {
    if prime == 2 || !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    check_threshold(prime, mat.degree(), mat.multiplicity())?;
    let field = PrimeField::new(prime)?;
    Ok(rank_mod(&mat.reduce_mod(field), field))
}

pub fn rank_rational(mat: &ConditionMatrix) -> usize {
    rank_fraction_free::<BigInt>(mat.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{PointConfiguration, ProjectivePoint};

    fn scheme(points: &[(i64, i64, i64)], m: usize) -> FatPointScheme<BigRational> {
        let pts = points
            .iter()
            .map(|&(x, y, z)| ProjectivePoint::from_ints(x, y, z).unwrap())
            .collect();
        FatPointScheme::new(PointConfiguration::new(pts).unwrap(), m).unwrap()
    }

    fn engine(policy: CertaintyPolicy) -> Engine {
        Engine::new(EngineOptions {
            policy,
            seed: 11,
            ..EngineOptions::default()
        })
        .unwrap()
    }

    #[test]
    fn single_point_high_multiplicity_is_empty() {
        let s = scheme(&[(2, 3, 5)], 5);
        for policy in [CertaintyPolicy::Fast, CertaintyPolicy::Certified] {
            let r = engine(policy).system_dimension(&s, 4).unwrap();
            assert_eq!(r.dimension, 0);
            assert!(r.certified);
        }
    }

    #[test]
    fn certified_dimension_comes_with_a_basis() {
        let s = scheme(&[(0, 0, 1)], 2);
        let e = engine(CertaintyPolicy::Certified);
        let r = e.system_dimension(&s, 2).unwrap();
        assert_eq!((r.dimension, r.certified), (3, true));
        assert!(verify_multiplicity(r.witness.as_ref().unwrap(), &s).unwrap());
        let fast = engine(CertaintyPolicy::Fast).system_dimension(&s, 2).unwrap();
        assert_eq!((fast.dimension, fast.certified), (3, false));
    }

    #[test]
    fn lifts_witness_with_large_coefficients() {
        // a conic through five points with sizeable coordinates
        let s = scheme(
            &[
                (913, -77, 5),
                (-401, 652, 9),
                (3, 887, -14),
                (500, 501, 7),
                (-999, -12, 31),
            ],
            1,
        );
        let w = engine(CertaintyPolicy::Certified).witness(&s, 2).unwrap().unwrap();
        assert!(verify_multiplicity(&w, &s).unwrap());
    }

    #[test]
    fn tiny_prime_stream_falls_back_to_exact_kernel() {
        let e = Engine::new(EngineOptions {
            prime_bits: 8,
            max_lift_primes: 2,
            ..EngineOptions::default()
        })
        .unwrap();
        let s = scheme(&[(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], 1);
        let r = e.system_dimension(&s, 2).unwrap();
        assert_eq!((r.dimension, r.certified), (2, true));
    }

    #[test]
    fn rank_modular_checks_its_prime() {
        let s = scheme(&[(1, 2, 3)], 3);
        let m = build_condition_matrix(&s, 4);
        assert_eq!(rank_modular(&m, 15), Err(Error::NotPrime(15)));
        assert_eq!(rank_modular(&m, 2), Err(Error::NotPrime(2)));
        assert_eq!(
            rank_modular(&m, 3),
            Err(Error::PrimeTooSmall { prime: 3, threshold: 4 })
        );
        assert_eq!(rank_modular(&m, 1_000_003).unwrap(), rank_rational(&m));
    }
}
