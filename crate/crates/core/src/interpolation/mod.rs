//! Linear conditions for fat points and the engine that solves them.

mod form;
mod matrix;
mod monomial;
mod system;

pub use form::{verify_multiplicity, Form};
pub use matrix::{build_condition_matrix, condition_matrix_mod, condition_rows, ConditionMatrix, FatPointScheme};
pub use monomial::{binomial, monomial_count, monomial_index, monomials};
pub use system::{rank_modular, rank_rational, CertaintyPolicy, Engine, EngineOptions, Lift, LinearSystemResult};
