//! Possible causal effects from observational Gaussian data.
//!
//! The PC algorithm estimates an equivalence class of DAGs as a CPDAG; the
//! intervention calculus then reports, for each covariate, the multiset of
//! total effects on a response over all members of the class (globally) or
//! over all locally valid parent sets (locally).
//!
//! Numeric code is generic over [`scalar::Scalar`] (`f32` or `f64`); the
//! aliases below fix the common choices.

pub mod error;
pub mod graph;
pub mod ida;
pub mod linalg;
pub mod pc;
pub mod scalar;
pub mod sim;
pub mod stats;

pub use error::{Error, ErrorKind, Result};

pub type Dataset64 = stats::Dataset<f64>;
pub type Dataset32 = stats::Dataset<f32>;
pub type CovMatrix64 = stats::CovMatrix<f64>;
pub type CovMatrix32 = stats::CovMatrix<f32>;
pub type EffectMultiset64 = ida::EffectMultiset<f64>;
pub type EffectMultiset32 = ida::EffectMultiset<f32>;
pub type ThetaMatrix64 = ida::ThetaMatrix<f64>;
pub type WeightedDag64 = sim::WeightedDag<f64>;
pub type Matrix64 = linalg::Matrix<f64>;
