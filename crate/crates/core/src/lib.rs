//! Initial degrees of symbolic powers of planar point configurations,
//! Waldschmidt intervals and Bezout decompositions, in exact arithmetic.
//!
//! Geometry is generic over an exact [`Scalar`]; the aliases at the crate
//! root fix it to arbitrary-precision rationals.
//!
//! ```
//! use fatpoint::{alpha_sequence, gen_star, Engine, EngineOptions, GeneratorOptions, Rational};
//!
//! let star = gen_star::<Rational>(4, 7, &GeneratorOptions::default()).unwrap();
//! let engine = Engine::new(EngineOptions::default()).unwrap();
//! let seq = alpha_sequence(&engine, &star, 4).unwrap();
//! assert_eq!(seq.values(), &[3, 4, 7, 8]);
//! ```

pub mod analyzer;
pub mod bezout;
pub mod error;
pub mod geometry;
pub mod interpolation;
pub mod linalg;
pub mod scalar;

pub use analyzer::{
    alpha, alpha_sequence, beta_sequence, chudnovsky_bound, classify, ev_check, ev_gap_bound, waldschmidt_interval,
    AlphaSequence, AlphaValue, Analysis, BetaSequence, ClassTag, Classification, WaldschmidtInterval,
};
pub use bezout::{
    bezout_decompose, bezout_step_scores, check_residual_inequality, confluence_test, BezoutDecomposition, BezoutInput,
    ConfluenceReport, CurveClass, DivisorClass, ReductionOrder,
};
pub use error::{Error, Result};
pub use geometry::{
    gen_collinear_plus_point, gen_conic_example, gen_general_points, gen_prop42, gen_quasi_star, gen_star,
    GeneratorOptions,
};
pub use interpolation::{
    build_condition_matrix, rank_modular, rank_rational, verify_multiplicity, CertaintyPolicy, ConditionMatrix, Engine,
    EngineOptions, Form, LinearSystemResult,
};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type Point = geometry::ProjectivePoint<Rational>;
pub type Line = geometry::ProjectiveLine<Rational>;
pub type Configuration = geometry::PointConfiguration<Rational>;
pub type Scheme = interpolation::FatPointScheme<Rational>;

/// Machine-word rationals; arithmetic overflow panics.
pub type SmallRational = num_rational::Ratio<i128>;
pub type SmallPoint = geometry::ProjectivePoint<SmallRational>;
pub type SmallConfiguration = geometry::PointConfiguration<SmallRational>;
