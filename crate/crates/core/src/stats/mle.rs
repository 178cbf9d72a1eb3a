use super::Dataset;
use crate::error::{Error, Result};
use crate::graph::Dag;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Covariance of the linear SEM `X = B X + e`, `Cov(e) = diag(noise)`:
/// `(I - B)^{-1} diag(noise) (I - B)^{-T}`. `weights[(child, parent)]` holds
/// the edge weights.
pub fn sem_covariance<T: Scalar>(weights: &Matrix<T>, noise: &[T]) -> Result<Matrix<T>> {
    let k = weights.rows();
    let i_b = Matrix::from_fn(k, k, |r, c| if r == c { T::one() } else { T::zero() } - weights[(r, c)]);
    let inv = i_b.inverse()?;
    let scaled = Matrix::from_fn(k, k, |r, c| inv[(r, c)] * noise[c]);
    let mut s = scaled.matmul(&inv.transpose());
    for r in 0..k {
        for c in 0..r {
            let v = (s[(r, c)] + s[(c, r)]) / T::of(2.0);
            s[(r, c)] = v;
            s[(c, r)] = v;
        }
    }
    Ok(s)
}

/// Maximum likelihood fit of a Gaussian linear DAG model.
#[derive(Debug, Clone)]
pub struct DagFit<T> {
    pub covariance: Matrix<T>,
    pub mean: Vec<T>,
    pub log_likelihood: T,
    /// `weights[(child, parent)]`
    pub weights: Matrix<T>,
    pub residual_variances: Vec<T>,
}

/// Regresses every variable on its parents in `dag` and rebuilds the implied
/// covariance. Variable order is the column order of `d`.
pub fn dag_mle<T: Scalar>(d: &Dataset<T>, dag: &Dag) -> Result<DagFit<T>> {
    let k = d.vars();
    if dag.vertex_count() != k {
        return Err(Error::Precondition(format!("DAG has {} vertices, data {k} columns", dag.vertex_count())));
    }
    let s = d.ml_covariance();
    let mut weights = Matrix::zeros(k, k);
    let mut omega = Vec::with_capacity(k);
    for v in 0..k {
        let pa = dag.parents(v);
        if d.n() <= pa.len() + 1 {
            return Err(Error::NumericalRank(format!("{} rows for {} parents of vertex {v}", d.n(), pa.len())));
        }
        let b = if pa.is_empty() {
            Vec::new()
        } else {
            let rhs: Vec<T> = pa.iter().map(|&p| s[(p, v)]).collect();
            s.select(&pa).solve(&rhs)?
        };
        let mut w = s[(v, v)];
        for (&p, &bp) in pa.iter().zip(&b) {
            weights[(v, p)] = bp;
            w = w - bp * s[(p, v)];
        }
        if !(w > T::zero()) {
            return Err(Error::NumericalRank(format!("non-positive residual variance for vertex {v}")));
        }
        omega.push(w);
    }
    let covariance = sem_covariance(&weights, &omega)?;
    let log_likelihood = gaussian_log_likelihood(&covariance, &s, d.n())?;
    Ok(DagFit { covariance, mean: d.means(), log_likelihood, weights, residual_variances: omega })
}

/// Log-likelihood of `n` observations with ML covariance `sample` under
/// `N(mean_hat, sigma)`, the mean being the sample mean.
pub fn gaussian_log_likelihood<T: Scalar>(sigma: &Matrix<T>, sample: &Matrix<T>, n: usize) -> Result<T> {
    let k = sigma.rows();
    let lu = sigma.lu()?;
    let (logdet, sign) = lu.log_abs_det();
    if sign < T::zero() {
        return Err(Error::NumericalRank("covariance is not positive definite".into()));
    }
    let inv = sigma.inverse()?;
    let mut tr = T::zero();
    for r in 0..k {
        for c in 0..k {
            tr = tr + inv[(r, c)] * sample[(c, r)];
        }
    }
    let two_pi = T::of(2.0) * T::PI();
    Ok(-T::of(n as f64) / T::of(2.0) * (T::of(k as f64) * two_pi.ln() + logdet + tr))
}

/// Count of entries `(i, j)`, `i <= j`, of the implied covariance that are
/// nonzero for generic weights: pairs sharing a common ancestor (a vertex
/// counts as its own ancestor).
pub fn structural_nonzeros(dag: &Dag) -> usize {
    let k = dag.vertex_count();
    let anc: Vec<_> = (0..k).map(|v| dag.ancestors(v)).collect();
    (0..k).map(|i| (i..k).filter(|&j| !anc[i].is_disjoint(&anc[j])).count()).sum()
}

/// `-2 loglik + log(n) * (structural nonzeros + number of means)`.
pub fn bic_score<T: Scalar>(d: &Dataset<T>, dag: &Dag) -> Result<T> {
    let fit = dag_mle(d, dag)?;
    let params = structural_nonzeros(dag) + d.vars();
    Ok(-T::of(2.0) * fit.log_likelihood + T::of((d.n() as f64).ln()) * T::of(params as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Pdag;

    fn data() -> Dataset<f64> {
        // deterministic, non-degenerate 3-column sample
        let rows = (0..40)
            .map(|k| {
                let t = k as f64;
                let a = (t * 0.7).sin() + 0.1 * t.cos();
                let b = 0.8 * a + (t * 1.3).cos();
                let c = -0.5 * b + (t * 2.1).sin() * 0.7 + 0.3 * a;
                vec![a, b, c]
            })
            .collect();
        Dataset::with_default_names(rows).unwrap()
    }

    #[test]
    fn empty_dag_gives_diagonal_covariance() {
        let d = data();
        let fit = dag_mle(&d, &Dag::new(Pdag::new(3)).unwrap()).unwrap();
        let s = d.ml_covariance();
        for r in 0..3 {
            for c in 0..3 {
                let want = if r == c { s[(r, r)] } else { 0.0 };
                assert!((fit.covariance[(r, c)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn complete_dag_is_saturated() {
        let d = data();
        for arcs in [[(0, 1), (0, 2), (1, 2)], [(2, 1), (2, 0), (1, 0)]] {
            let fit = dag_mle(&d, &Dag::from_arcs(3, &arcs).unwrap()).unwrap();
            assert!(fit.covariance.max_abs_diff(&d.ml_covariance()) < 1e-10);
        }
    }

    #[test]
    fn parameter_counts() {
        let empty = Dag::new(Pdag::new(4)).unwrap();
        assert_eq!(structural_nonzeros(&empty), 4);
        let full = Dag::from_arcs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(structural_nonzeros(&full), 10);
        // 0 -> 2 <- 1: Cov(0, 1) is structurally zero
        let v = Dag::from_arcs(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(structural_nonzeros(&v), 5);
    }

    #[test]
    fn likelihood_grows_with_edges() {
        let d = data();
        let l0 = dag_mle(&d, &Dag::new(Pdag::new(3)).unwrap()).unwrap().log_likelihood;
        let l1 = dag_mle(&d, &Dag::from_arcs(3, &[(0, 1)]).unwrap()).unwrap().log_likelihood;
        let l2 = dag_mle(&d, &Dag::from_arcs(3, &[(0, 1), (1, 2)]).unwrap()).unwrap().log_likelihood;
        assert!(l0 <= l1 && l1 <= l2);
    }

    #[test]
    fn sem_covariance_of_chain() {
        let mut w = Matrix::zeros(2, 2);
        w[(1, 0)] = 1.0;
        let s = sem_covariance(&w, &[1.0, 1.0]).unwrap();
        assert_eq!((s[(0, 1)], s[(1, 1)]), (1.0, 2.0));
    }
}
