//! Exact coordinate fields.
//!
//! Geometry is generic over [`Scalar`], a characteristic-zero field with exact
//! equality. Everything downstream of geometry (condition matrices, ranks,
//! certificates) works on the denominator-cleared integer representatives, so
//! the only thing a scalar has to provide beyond field arithmetic is a lossless
//! view as a [`BigRational`].

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, Zero};

/// An exact field of characteristic zero.
pub trait Scalar: Num + Signed + Clone + Eq + Hash + Debug + Display + Send + Sync {
    /// The quotient `num / den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_rational(&self) -> BigRational;

    /// Fails if the value is not representable (e.g. overflows a machine-word ratio).
    fn try_from_rational(value: &BigRational) -> Option<Self>;
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn try_from_rational(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }
}

macro_rules! impl_machine_ratio {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int> {
            fn from_ratio(num: i64, den: i64) -> Self {
                Ratio::new(<$int>::from(num), <$int>::from(den))
            }

            fn to_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn try_from_rational(value: &BigRational) -> Option<Self> {
                let n: $int = value.numer().try_into().ok()?;
                let d: $int = value.denom().try_into().ok()?;
                Some(Ratio::new(n, d))
            }
        }
    )*};
}

impl_machine_ratio!(i64, i128);

/// Formats a rational as `num/den` (always with the slash, so the string
/// round-trips through [`parse_rational`] unambiguously).
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `num/den` or a bare integer. Decimal points are rejected.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to the zero vector.
pub fn primitive_integer_vector(values: &[BigRational]) -> Vec<BigInt> {
    let lcm = denominator_lcm(values);
    let ints: Vec<BigInt> = values.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if content.is_zero() || content.is_one() {
        return ints;
    }
    ints.into_iter().map(|v| v / &content).collect()
}

/// Serde adapter writing a [`BigRational`] as a `"num/den"` string.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).ok_or_else(|| D::Error::custom(format!("not a rational: {text:?}")))
    }
}

/// As [`rational_string`], for optional values (`null` when absent).
pub mod option_rational_string {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&super::format_rational(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|text| {
                super::parse_rational(&text).ok_or_else(|| D::Error::custom(format!("not a rational: {text:?}")))
            })
            .transpose()
    }
}

/// Serde adapter writing integer vectors as decimal strings, which JSON
/// readers cannot truncate.
pub mod integer_strings {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let text: Vec<String> = values.iter().map(ToString::to_string).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| D::Error::custom(format!("not an integer: {t:?}")))
            })
            .collect()
    }
}
