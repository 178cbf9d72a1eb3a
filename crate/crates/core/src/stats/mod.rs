//! Gaussian numerics: covariance and partial correlation estimates, Fisher z
//! tests, adjustment regressions and Gaussian DAG likelihoods.

mod citest;
mod cov;
mod dataset;
mod mle;
mod regression;

pub use citest::{fisher_z_test, CiTest, CiTestConfig, FisherZ, PopulationOracle, Verdict};
pub use cov::CovMatrix;
pub use dataset::Dataset;
pub use mle::{bic_score, dag_mle, gaussian_log_likelihood, sem_covariance, structural_nonzeros, DagFit};
pub use regression::{beta_given_s, RegressionSource};
