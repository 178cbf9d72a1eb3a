use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::CovMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Significance level of the partial-correlation tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CiTestConfig {
    alpha: f64,
}

impl CiTestConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Precondition(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Dependent,
    Independent,
}

/// Fisher z test of `rho = 0` for a partial correlation over a conditioning
/// set of size `s`: dependent iff `|z| sqrt(n - s - 3) > Phi^{-1}(1 - alpha/2)`.
pub fn fisher_z_test<T: Scalar>(rho: T, n: usize, s: usize, cfg: CiTestConfig) -> Result<Verdict> {
    if n < s + 4 {
        return Err(Error::InsufficientSample { n, set_size: s });
    }
    let rho = rho.as_f64();
    if rho.abs() > 1.0 + 1e-12 || rho.is_nan() {
        return Err(Error::Precondition(format!("correlation {rho} outside [-1, 1]")));
    }
    if rho.abs() >= 1.0 {
        return Ok(Verdict::Dependent);
    }
    let z = 0.5 * ((1.0 + rho) / (1.0 - rho)).ln();
    let stat = z.abs() * ((n - s - 3) as f64).sqrt();
    Ok(if stat > normal_quantile(1.0 - cfg.alpha / 2.0) { Verdict::Dependent } else { Verdict::Independent })
}

fn normal_quantile(p: f64) -> f64 {
    Normal::standard().inverse_cdf(p)
}

/// Conditional independence decisions consumed by the skeleton search.
pub trait CiTest {
    /// Number of variables the test ranges over.
    fn vars(&self) -> usize;

    fn test(&self, i: usize, j: usize, s: &[usize]) -> Result<Verdict>;
}

/// Fisher z tests on a sample correlation matrix.
#[derive(Debug, Clone)]
pub struct FisherZ<T> {
    corr: CovMatrix<T>,
    n: usize,
    cfg: CiTestConfig,
}

impl<T: Scalar> FisherZ<T> {
    /// `cov` must carry its sample size.
    pub fn new(cov: &CovMatrix<T>, cfg: CiTestConfig) -> Result<Self> {
        let n =
            cov.sample_size().ok_or_else(|| Error::Precondition("Fisher z test needs a sample covariance".into()))?;
        Ok(Self { corr: cov.to_correlation()?, n, cfg })
    }
}

impl<T: Scalar> CiTest for FisherZ<T> {
    fn vars(&self) -> usize {
        self.corr.dim()
    }

    fn test(&self, i: usize, j: usize, s: &[usize]) -> Result<Verdict> {
        if self.n < s.len() + 4 {
            return Err(Error::InsufficientSample { n: self.n, set_size: s.len() });
        }
        let rho = self.corr.partial_correlation(i, j, s)?;
        fisher_z_test(rho, self.n, s.len(), self.cfg)
    }
}

/// Exact decisions from a population covariance: independent iff the partial
/// correlation vanishes (up to rounding, `|rho| <= tol`).
#[derive(Debug, Clone)]
pub struct PopulationOracle<T> {
    cov: CovMatrix<T>,
    tol: T,
}

impl<T: Scalar> PopulationOracle<T> {
    pub fn new(cov: CovMatrix<T>) -> Self {
        Self { cov, tol: T::of(1e-9) }
    }

    pub fn with_tolerance(cov: CovMatrix<T>, tol: T) -> Self {
        Self { cov, tol }
    }
}

impl<T: Scalar> CiTest for PopulationOracle<T> {
    fn vars(&self) -> usize {
        self.cov.dim()
    }

    fn test(&self, i: usize, j: usize, s: &[usize]) -> Result<Verdict> {
        let rho = self.cov.partial_correlation(i, j, s)?;
        Ok(if rho.abs() <= self.tol { Verdict::Independent } else { Verdict::Dependent })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(a: f64) -> CiTestConfig {
        CiTestConfig::new(a).unwrap()
    }

    #[test]
    fn zero_correlation_is_independent() {
        for a in [0.001, 0.01, 0.5, 0.99] {
            assert_eq!(fisher_z_test(0.0, 50, 2, cfg(a)).unwrap(), Verdict::Independent);
        }
    }

    #[test]
    fn moderate_correlation_is_dependent() {
        // z = atanh(0.5) = 0.5493, statistic 0.5493 * sqrt(97) = 5.41 > 2.576
        assert_eq!(fisher_z_test(0.5, 100, 0, cfg(0.01)).unwrap(), Verdict::Dependent);
        assert!((normal_quantile(0.995) - 2.5758293035489).abs() < 1e-9);
    }

    #[test]
    fn perfect_correlation_is_dependent() {
        assert_eq!(fisher_z_test(1.0, 10, 0, cfg(0.01)).unwrap(), Verdict::Dependent);
        assert_eq!(fisher_z_test(-1.0, 10, 0, cfg(0.01)).unwrap(), Verdict::Dependent);
    }

    #[test]
    fn small_samples_are_rejected() {
        assert_eq!(fisher_z_test(0.3, 5, 2, cfg(0.01)), Err(Error::InsufficientSample { n: 5, set_size: 2 }));
        assert!(fisher_z_test(0.3, 6, 2, cfg(0.01)).is_ok());
    }

    #[test]
    fn alpha_bounds() {
        assert!(CiTestConfig::new(0.0).is_err());
        assert!(CiTestConfig::new(1.0).is_err());
        assert!(CiTestConfig::new(f64::NAN).is_err());
    }
}
