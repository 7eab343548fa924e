//! Eigenvalue statistics of Hermitian K x K-block Gaussian random matrices
//! with variance profiles.
//!
//! The crate cross-validates three routes to the same spectral quantities:
//!
//! * Monte Carlo sampling of the matrix ensemble ([`sampler`]),
//! * a deterministic quadrature of the exact finite-N integral representation
//!   of the expected resolvent trace ([`susy`]),
//! * closed-form macroscopic and microscopic scaling limits built from the
//!   vector Dyson equation ([`dyson`]) and special functions ([`specfun`],
//!   [`limits`]).
//!
//! The [`saddle`] module implements the multidimensional saddle-point
//! expansion used to validate integrals of the same shape.

pub mod dyson;
pub mod eigen;
pub mod io;
pub mod limits;
pub mod model;
pub mod quad;
pub mod rng;
pub mod saddle;
pub mod sampler;
pub mod specfun;
pub mod susy;

pub use dyson::DysonSolution;
pub use limits::LimitKind;
pub use model::{SingularityClass, VarianceProfile};
pub use sampler::{HermitianMatrix, Histogram, MCEstimate};
pub use susy::QuadratureSpec;

/// Complex double, the scalar type used throughout.
pub type C64 = num_complex::Complex64;
