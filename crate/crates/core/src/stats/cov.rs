use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Symmetric covariance (or correlation) matrix with the sample size it was
/// estimated from; `None` marks an exact population matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix<T> {
    m: Matrix<T>,
    n: Option<usize>,
}

impl<T: Scalar> CovMatrix<T> {
    pub fn population(m: Matrix<T>) -> Result<Self> {
        Self::checked(m, None)
    }

    pub fn sample(m: Matrix<T>, n: usize) -> Self {
        Self { m, n: Some(n) }
    }

    fn checked(m: Matrix<T>, n: Option<usize>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Precondition("covariance matrix must be square".into()));
        }
        let scale = (0..m.rows()).fold(T::one(), |a, i| a.max(m[(i, i)].abs()));
        if !m.is_symmetric(scale * T::of(1e-9)) {
            return Err(Error::Precondition("covariance matrix must be symmetric".into()));
        }
        Ok(Self { m, n })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    /// `None` for population matrices.
    pub fn sample_size(&self) -> Option<usize> {
        self.n
    }

    /// Rescales to unit diagonal.
    pub fn to_correlation(&self) -> Result<Self> {
        let d: Vec<T> = (0..self.dim()).map(|i| self.m[(i, i)]).collect();
        if let Some(i) = d.iter().position(|v| !(*v > T::zero())) {
            return Err(Error::DegenerateData(format!("variable {i} has zero variance")));
        }
        let m = Matrix::from_fn(self.dim(), self.dim(), |r, c| {
            if r == c {
                T::one()
            } else {
                (self.m[(r, c)] / (d[r] * d[c]).sqrt()).max(-T::one()).min(T::one())
            }
        });
        Ok(Self { m, n: self.n })
    }

    /// `rho_{ij|S}` from the inverse of the submatrix on `{i, j} ∪ S`.
    pub fn partial_correlation(&self, i: usize, j: usize, s: &[usize]) -> Result<T> {
        if i == j || s.contains(&i) || s.contains(&j) {
            return Err(Error::Precondition(format!("partial correlation of {i}, {j} given {s:?}")));
        }
        if s.is_empty() {
            let r = self.m[(i, j)] / (self.m[(i, i)] * self.m[(j, j)]).sqrt();
            return Ok(r.max(-T::one()).min(T::one()));
        }
        let idx: Vec<usize> = [i, j].into_iter().chain(s.iter().copied()).collect();
        let prec = self.m.select(&idx).inverse()?;
        let r = -prec[(0, 1)] / (prec[(0, 0)] * prec[(1, 1)]).sqrt();
        if !r.is_finite() {
            return Err(Error::NumericalRank(format!("partial correlation of {i}, {j} given {s:?}")));
        }
        Ok(r.max(-T::one()).min(T::one()))
    }

    /// Least-squares coefficients of `y` on `regressors` (in that order).
    pub fn regression_coefficients(&self, y: usize, regressors: &[usize]) -> Result<Vec<T>> {
        if regressors.contains(&y) {
            return Err(Error::Precondition("response among regressors".into()));
        }
        if regressors.is_empty() {
            return Ok(Vec::new());
        }
        let a = self.m.select(regressors);
        let b: Vec<T> = regressors.iter().map(|&r| self.m[(r, y)]).collect();
        a.solve(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spd() -> CovMatrix<f64> {
        CovMatrix::population(Matrix::from_rows(&[
            vec![2.0, 0.6, 0.3, 0.1],
            vec![0.6, 1.5, 0.4, 0.2],
            vec![0.3, 0.4, 1.2, 0.5],
            vec![0.1, 0.2, 0.5, 1.0],
        ]))
        .unwrap()
    }

    // rho_{ij|S ∪ {k}} from order-|S| partial correlations.
    fn recursive(c: &CovMatrix<f64>, i: usize, j: usize, s: &[usize]) -> f64 {
        match s.split_last() {
            None => c.get(i, j) / (c.get(i, i) * c.get(j, j)).sqrt(),
            Some((&k, rest)) => {
                let rij = recursive(c, i, j, rest);
                let rik = recursive(c, i, k, rest);
                let rjk = recursive(c, j, k, rest);
                (rij - rik * rjk) / ((1.0 - rik * rik) * (1.0 - rjk * rjk)).sqrt()
            }
        }
    }

    #[test]
    fn matches_recursive_formula() {
        let c = spd();
        for s in [vec![], vec![2], vec![3], vec![2, 3]] {
            let a = c.partial_correlation(0, 1, &s).unwrap();
            assert!((a - recursive(&c, 0, 1, &s)).abs() < 1e-12, "{s:?}");
        }
    }

    #[test]
    fn empty_set_is_plain_correlation() {
        let c = spd();
        let r = c.to_correlation().unwrap();
        assert!((c.partial_correlation(0, 2, &[]).unwrap() - r.get(0, 2)).abs() < 1e-15);
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        assert!(spd().partial_correlation(0, 1, &[1]).is_err());
    }

    #[test]
    fn singular_submatrix_errors() {
        let c =
            CovMatrix::population(Matrix::from_rows(&[vec![1.0, 0.5, 1.0], vec![0.5, 1.0, 0.5], vec![1.0, 0.5, 1.0]]))
                .unwrap();
        assert!(matches!(c.partial_correlation(1, 2, &[0]), Err(Error::NumericalRank(_))));
    }
}
