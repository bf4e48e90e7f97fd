//! Command-line front end for `fatpoint`: configuration generation, α- and
//! β-sequences, Waldschmidt intervals, classification, Bezout decompositions
//! and reproduction recipes, all emitted as JSON.

pub mod args;
mod commands;
pub mod output;
pub mod reproduce;

pub use commands::{run, THREADS_VAR};
