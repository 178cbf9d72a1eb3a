use super::{CovMatrix, Dataset};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Anything the coefficient `beta_{i|S}` can be computed from.
pub trait RegressionSource<T: Scalar> {
    fn vars(&self) -> usize;

    /// Least-squares coefficients of `y` on `regressors`, in order.
    fn coefficients(&self, y: usize, regressors: &[usize]) -> Result<Vec<T>>;
}

impl<T: Scalar> RegressionSource<T> for CovMatrix<T> {
    fn vars(&self) -> usize {
        self.dim()
    }

    fn coefficients(&self, y: usize, regressors: &[usize]) -> Result<Vec<T>> {
        self.regression_coefficients(y, regressors)
    }
}

impl<T: Scalar> RegressionSource<T> for Dataset<T> {
    fn vars(&self) -> usize {
        Dataset::vars(self)
    }

    /// Ordinary least squares with intercept, solved from the centred normal
    /// equations built row by row.
    fn coefficients(&self, y: usize, regressors: &[usize]) -> Result<Vec<T>> {
        if regressors.contains(&y) {
            return Err(Error::Precondition("response among regressors".into()));
        }
        let k = regressors.len();
        if k == 0 {
            return Ok(Vec::new());
        }
        if self.n() <= k + 1 {
            return Err(Error::NumericalRank(format!("{} rows for {k} regressors and an intercept", self.n())));
        }
        let mu = self.means();
        let mut xtx = Matrix::zeros(k, k);
        let mut xty = vec![T::zero(); k];
        for r in 0..self.n() {
            let row = self.row(r);
            let dy = row[y] - mu[y];
            for a in 0..k {
                let da = row[regressors[a]] - mu[regressors[a]];
                xty[a] = xty[a] + da * dy;
                for b in 0..k {
                    xtx[(a, b)] = xtx[(a, b)] + da * (row[regressors[b]] - mu[regressors[b]]);
                }
            }
        }
        xtx.solve(&xty)
    }
}

/// Total effect of `i` on `y` adjusting for `s`: zero when `y ∈ s`, else the
/// coefficient of `i` in the regression of `y` on `{i} ∪ s`.
pub fn beta_given_s<T: Scalar, R: RegressionSource<T> + ?Sized>(
    source: &R,
    i: usize,
    s: &[usize],
    y: usize,
) -> Result<T> {
    if i == y {
        return Err(Error::Precondition("covariate and response coincide".into()));
    }
    if s.contains(&i) {
        return Err(Error::Precondition(format!("adjustment set contains the covariate {i}")));
    }
    if s.contains(&y) {
        return Ok(T::zero());
    }
    let regs: Vec<usize> = std::iter::once(i).chain(s.iter().copied()).collect();
    Ok(source.coefficients(y, &regs)?[0])
}
