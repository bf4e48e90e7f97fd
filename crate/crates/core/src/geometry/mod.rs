//! Exact projective-plane primitives, configurations and their generators.

mod config;
mod generators;
mod point;
mod recognize;

pub use config::{ConfigurationFile, PointConfiguration};
pub use generators::{
    gen_collinear_plus_point, gen_conic_example, gen_general_points, gen_prop42, gen_quasi_star, gen_star,
    GeneratorOptions,
};
pub use point::{collinear, line_through, meet, on_common_conic, veronese_row, ProjectiveLine, ProjectivePoint};
pub use recognize::{collinear_plus_one, collinear_subsets, is_quasi_star, is_star, CollinearSubset};
