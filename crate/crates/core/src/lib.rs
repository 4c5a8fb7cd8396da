//! Certified lower and upper bounds on the covering radius of spherical
//! designs, as a function of dimension, strength, and cardinality.
//!
//! The crate is generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); the aliases below fix `f64`, which is what the CLI and
//! the reference tables use.

pub mod adjacent;
pub mod config;
pub mod lowerbound;
pub mod optimize;
pub mod oracle;
pub mod orthopoly;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod tables;
pub mod upperbound;

pub use config::Config;
pub use lowerbound::{combined_lower_bound, dgs_bound, fl_bound, DesignSpec};
pub use upperbound::{antipodal_3_upper, antipodal_5_upper, optimal_upper_4design};

/// Default-precision polynomial.
pub type Poly = poly::Polynomial<f64>;
/// Default-precision Gegenbauer system.
pub type Basis = orthopoly::GegenbauerBasis<f64>;
/// Default-precision adjacent system.
pub type Adjacent = adjacent::AdjacentSystem<f64>;
/// Default-precision quadrature rule.
pub type Quadrature = adjacent::QuadratureRule<f64>;
/// Default-precision point set.
pub type Points = oracle::PointSet<f64>;
