use super::CovMatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `n` observations of `p + 1` jointly Gaussian variables, one of which is the
/// response.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    values: Matrix<T>,
    names: Vec<String>,
    response: usize,
    standardized: bool,
}

impl<T: Scalar> Dataset<T> {
    /// `rows[k]` is observation `k`.
    pub fn new(rows: Vec<Vec<T>>, names: Vec<String>, response: usize) -> Result<Self> {
        let cols = names.len();
        if rows.len() < 2 {
            return Err(Error::DegenerateData(format!("need at least 2 rows, got {}", rows.len())));
        }
        if response >= cols {
            return Err(Error::Precondition(format!("response index {response} out of range")));
        }
        for (k, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DegenerateData(format!("row {k} has {} values, expected {cols}", r.len())));
            }
            if let Some(c) = r.iter().position(|v| !v.is_finite()) {
                return Err(Error::DegenerateData(format!("non-finite value in row {k}, column `{}`", names[c])));
            }
        }
        for (a, name) in names.iter().enumerate() {
            if names[..a].contains(name) {
                return Err(Error::DegenerateData(format!("duplicate column name `{name}`")));
            }
        }
        Ok(Self { values: Matrix::from_rows(&rows), names, response, standardized: false })
    }

    /// Columns named `X1..Xp` followed by `Y`, the last column being the response.
    pub fn with_default_names(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut names: Vec<String> = (1..cols).map(|i| format!("X{i}")).collect();
        names.push("Y".into());
        Self::new(rows, names, cols.saturating_sub(1))
    }

    pub fn n(&self) -> usize {
        self.values.rows()
    }

    /// Number of variables including the response.
    pub fn vars(&self) -> usize {
        self.values.cols()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn response(&self) -> usize {
        self.response
    }

    /// Same data with column `response` as the response.
    pub fn with_response(mut self, response: usize) -> Result<Self> {
        if response >= self.vars() {
            return Err(Error::Precondition(format!("response index {response} out of range")));
        }
        self.response = response;
        Ok(self)
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    pub fn value(&self, row: usize, col: usize) -> T {
        self.values[(row, col)]
    }

    pub fn row(&self, r: usize) -> &[T] {
        self.values.row(r)
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.n()).map(|r| self.values[(r, c)]).collect()
    }

    pub fn means(&self) -> Vec<T> {
        let n = T::of(self.n() as f64);
        (0..self.vars()).map(|c| (0..self.n()).map(|r| self.values[(r, c)]).sum::<T>() / n).collect()
    }

    fn scatter(&self) -> Matrix<T> {
        let mu = self.means();
        let p = self.vars();
        let mut s = Matrix::zeros(p, p);
        for r in 0..self.n() {
            let row = self.values.row(r);
            for a in 0..p {
                let da = row[a] - mu[a];
                for b in a..p {
                    s[(a, b)] = s[(a, b)] + da * (row[b] - mu[b]);
                }
            }
        }
        for a in 0..p {
            for b in 0..a {
                s[(a, b)] = s[(b, a)];
            }
        }
        s
    }

    /// Unbiased sample covariance (denominator `n - 1`).
    pub fn covariance(&self) -> CovMatrix<T> {
        let d = T::of((self.n() - 1) as f64);
        let s = self.scatter();
        CovMatrix::sample(Matrix::from_fn(s.rows(), s.cols(), |r, c| s[(r, c)] / d), self.n())
    }

    /// Maximum likelihood covariance (denominator `n`).
    pub fn ml_covariance(&self) -> Matrix<T> {
        let d = T::of(self.n() as f64);
        let s = self.scatter();
        Matrix::from_fn(s.rows(), s.cols(), |r, c| s[(r, c)] / d)
    }

    /// Sample correlation matrix. Fails on a constant column.
    pub fn correlation_matrix(&self) -> Result<CovMatrix<T>> {
        if self.n() < 3 {
            return Err(Error::DegenerateData(format!("need at least 3 rows, got {}", self.n())));
        }
        self.covariance().to_correlation().map_err(|_| self.constant_column_error())
    }

    fn constant_column_error(&self) -> Error {
        let c = (0..self.vars())
            .find(|&c| {
                let x = self.values[(0, c)];
                (0..self.n()).all(|r| self.values[(r, c)] == x)
            })
            .unwrap_or(0);
        Error::DegenerateData(format!("column `{}` has zero variance", self.names[c]))
    }

    /// Centers every column and scales it to unit sample variance.
    pub fn standardize(&self) -> Result<Self> {
        let cov = self.covariance();
        let mu = self.means();
        let mut sd = Vec::with_capacity(self.vars());
        for c in 0..self.vars() {
            let v = cov.get(c, c);
            if !(v > T::zero()) {
                return Err(self.constant_column_error());
            }
            sd.push(v.sqrt());
        }
        let values = Matrix::from_fn(self.n(), self.vars(), |r, c| (self.values[(r, c)] - mu[c]) / sd[c]);
        Ok(Self { values, names: self.names.clone(), response: self.response, standardized: true })
    }

    /// New dataset built from the given row indices (repeats allowed).
    pub fn resample(&self, rows: &[usize]) -> Result<Self> {
        let data: Vec<Vec<T>> = rows.iter().map(|&r| self.values.row(r).to_vec()).collect();
        let mut d = Self::new(data, self.names.clone(), self.response)?;
        d.standardized = false;
        Ok(d)
    }

    /// Index of the column called `name`.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Indices of every column except the response, ascending.
    pub fn covariates(&self) -> Vec<usize> {
        (0..self.vars()).filter(|&c| c != self.response).collect()
    }
}
