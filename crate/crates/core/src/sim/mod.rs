//! Simulation machinery: random weighted DAGs, Gaussian data from linear
//! structural equations, exact population quantities and error measures.

mod scenario;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use serde::{Deserialize, Serialize};

pub use scenario::{run_scenario, summarize_records, MethodSummary, SimRecord, Status};

use crate::error::{Error, Result};
use crate::graph::{cpdag_from_dag, Dag, Pdag, Vertex};
use crate::ida::{ida_global, ida_local, EffectMultiset, IdaConfig, Method, Summary};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::stats::{sem_covariance, CovMatrix, Dataset};

/// DAG with a nonzero weight on every arc.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDag<T> {
    dag: Dag,
    /// `weights[(child, parent)]`.
    weights: Matrix<T>,
    order: Vec<Vertex>,
}

impl<T: Scalar> WeightedDag<T> {
    pub fn new(dag: Dag, weights: Matrix<T>) -> Result<Self> {
        let n = dag.vertex_count();
        if weights.rows() != n || weights.cols() != n {
            return Err(Error::Precondition("weight matrix does not match the DAG".into()));
        }
        for child in 0..n {
            for parent in 0..n {
                let w = weights[(child, parent)];
                let arc = dag.has_directed(parent, child);
                if arc && (w == T::zero() || !w.is_finite()) {
                    return Err(Error::Precondition(format!("arc {parent} -> {child} needs a finite nonzero weight")));
                }
                if !arc && w != T::zero() {
                    return Err(Error::Precondition(format!("weight on missing arc {parent} -> {child}")));
                }
            }
        }
        let order = dag.topological_order();
        Ok(Self { dag, weights, order })
    }

    /// Builds from `(from, to, weight)` triples.
    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex, T)]) -> Result<Self> {
        let pairs: Vec<(Vertex, Vertex)> = arcs.iter().map(|&(u, v, _)| (u, v)).collect();
        let dag = Dag::from_arcs(n, &pairs)?;
        let mut w = Matrix::zeros(n, n);
        for &(u, v, b) in arcs {
            w[(v, u)] = b;
        }
        Self::new(dag, w)
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn weight(&self, from: Vertex, to: Vertex) -> T {
        self.weights[(to, from)]
    }

    pub fn weights(&self) -> &Matrix<T> {
        &self.weights
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.dag.vertex_count()
    }

    pub fn cpdag(&self) -> Pdag {
        cpdag_from_dag(&self.dag)
    }
}

/// Parameters of one simulation setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimScenario {
    pub p_plus_1: usize,
    /// Expected number of neighbours of a vertex.
    pub en: f64,
    pub n: usize,
    pub n_reps: usize,
    /// Number of equal disconnected groups, if any.
    pub blocks: Option<usize>,
    pub seed: u64,
    /// Draw weights from `[-2, -1] ∪ [1, 2]` instead of `[1, 2]`.
    pub signed_weights: bool,
}

impl SimScenario {
    pub fn new(p_plus_1: usize, en: f64, n: usize, n_reps: usize, seed: u64) -> Result<Self> {
        let s = Self { p_plus_1, en, n, n_reps, blocks: None, seed, signed_weights: false };
        s.validate()?;
        Ok(s)
    }

    pub fn with_blocks(mut self, blocks: usize) -> Result<Self> {
        self.blocks = Some(blocks);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_plus_1 == 0 {
            return Err(Error::Precondition("at least one vertex is required".into()));
        }
        if !(self.en >= 0.0 && self.en < self.p_plus_1 as f64) {
            return Err(Error::Precondition(format!(
                "expected neighbourhood size {} must lie in [0, {})",
                self.en, self.p_plus_1
            )));
        }
        if let Some(b) = self.blocks {
            if b == 0 || !self.p_plus_1.is_multiple_of(b) {
                return Err(Error::Precondition(format!("{b} blocks do not divide {} vertices", self.p_plus_1)));
            }
        }
        Ok(())
    }

    pub fn block_size(&self) -> usize {
        self.p_plus_1 / self.blocks.unwrap_or(1)
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        v / self.block_size()
    }

    /// Probability that a given arc `j -> i`, `j < i`, is present.
    pub fn edge_probability(&self) -> f64 {
        let others = self.block_size().saturating_sub(1);
        if others == 0 {
            0.0
        } else {
            (self.en / others as f64).min(1.0)
        }
    }
}

/// Random DAG in which each arc `j -> i`, `j < i` within a block, appears
/// independently; weights are uniform on `[1, 2]` (with a random sign when
/// requested).
pub fn random_weighted_dag<T: Scalar, R: Rng + ?Sized>(s: &SimScenario, rng: &mut R) -> WeightedDag<T> {
    let n = s.p_plus_1;
    let prob = s.edge_probability();
    let magnitude = Uniform::new_inclusive(1.0, 2.0).expect("valid range");
    let mut g = Pdag::new(n);
    let mut w = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..i {
            if s.block_of(i) != s.block_of(j) || !rng.random_bool(prob) {
                continue;
            }
            let mut b = magnitude.sample(rng);
            if s.signed_weights && rng.random_bool(0.5) {
                b = -b;
            }
            g.add_directed(j, i).expect("fresh pair");
            w[(i, j)] = T::of(b);
        }
    }
    WeightedDag::new(Dag::new(g).expect("arcs point forward"), w).expect("weights in [1, 2]")
}

/// [`random_weighted_dag`] seeded directly.
pub fn random_weighted_dag_seeded<T: Scalar>(s: &SimScenario, seed: u64) -> WeightedDag<T> {
    random_weighted_dag(s, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `n` draws from the linear model with standard normal noise, generated in
/// topological order. Columns are `V1..V(p+1)`; the last is the response.
pub fn gen_data<T: Scalar, R: Rng + ?Sized>(w: &WeightedDag<T>, n: usize, rng: &mut R) -> Result<Dataset<T>> {
    let p1 = w.vertex_count();
    let parents: Vec<Vec<Vertex>> = (0..p1).map(|v| w.dag.parents(v)).collect();
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let mut x = vec![T::zero(); p1];
        for &v in &w.order {
            let eps: f64 = StandardNormal.sample(rng);
            x[v] = parents[v].iter().map(|&u| w.weights[(v, u)] * x[u]).sum::<T>() + T::of(eps);
        }
        rows.push(x);
    }
    let names = (1..=p1).map(|k| format!("V{k}")).collect();
    Dataset::new(rows, names, p1.saturating_sub(1))
}

/// [`gen_data`] seeded directly.
pub fn gen_data_seeded<T: Scalar>(w: &WeightedDag<T>, n: usize, seed: u64) -> Result<Dataset<T>> {
    gen_data(w, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Exact covariance implied by the model with unit noise variances.
pub fn true_covariance<T: Scalar>(w: &WeightedDag<T>) -> CovMatrix<T> {
    let m = sem_covariance(&w.weights, &vec![T::one(); w.vertex_count()]).expect("acyclic model");
    CovMatrix::population(m).expect("symmetric by construction")
}

/// Multiset of possible effects of `i` on `y` computed from the true CPDAG
/// and the exact covariance.
pub fn true_theta<T: Scalar>(
    w: &WeightedDag<T>,
    i: Vertex,
    y: Vertex,
    method: Method,
    cfg: IdaConfig,
) -> Result<EffectMultiset<T>> {
    if i == y {
        return Err(Error::Precondition("covariate and response coincide".into()));
    }
    let cov = true_covariance(w);
    let g = w.cpdag();
    match method {
        Method::Local => ida_local(&cov, &g, i, y, cfg),
        Method::Global | Method::Oracle => Ok(ida_global(&cov, &g, y, cfg)?.row(i).expect("covariate row")),
    }
}

/// Squared errors of the mean and of the minimum absolute value.
pub fn error_measures<T: Scalar>(est: &EffectMultiset<T>, truth: &EffectMultiset<T>) -> Result<(T, T)> {
    let ave = est.summarize(Summary::MeanAbs)? - truth.summarize(Summary::MeanAbs)?;
    let min = est.summarize(Summary::MinAbs)? - truth.summarize(Summary::MinAbs)?;
    Ok((ave * ave, min * min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ida::{Effect, Modifications};

    fn ms(vals: &[f64]) -> EffectMultiset<f64> {
        EffectMultiset {
            covariate: 0,
            response: 1,
            method: Method::Global,
            mods: Modifications::default(),
            entries: vals
                .iter()
                .enumerate()
                .map(|(k, &value)| Effect { value, adjustment: Some(vec![k]), multiplicity: 1 })
                .collect(),
        }
    }

    #[test]
    fn zero_neighbourhood_gives_empty_dag() {
        let s = SimScenario::new(8, 0.0, 10, 1, 0).unwrap();
        assert_eq!(random_weighted_dag_seeded::<f64>(&s, 1).dag().edge_count(), 0);
    }

    #[test]
    fn mean_edge_count_matches_expectation() {
        let s = SimScenario::new(10, 4.0, 10, 1, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let draws = 10_000;
        let total: usize = (0..draws).map(|_| random_weighted_dag::<f64, _>(&s, &mut rng).dag().edge_count()).sum();
        let mean = total as f64 / draws as f64;
        // Binomial(45, 4/9) has mean 20
        assert!((mean - 45.0 * 4.0 / 9.0).abs() < 1.0, "mean {mean}");
    }

    #[test]
    fn blocks_are_disconnected() {
        let s = SimScenario::new(10, 3.0, 10, 1, 0).unwrap().with_blocks(2).unwrap();
        for seed in 0..50 {
            let w = random_weighted_dag_seeded::<f64>(&s, seed);
            assert!(w.dag().edges().iter().all(|e| (e.from < 5) == (e.to < 5)));
        }
        assert!(SimScenario::new(10, 3.0, 10, 1, 0).unwrap().with_blocks(3).is_err());
        assert!(SimScenario::new(10, 10.0, 10, 1, 0).is_err());
    }

    #[test]
    fn weights_lie_in_unit_interval_shift() {
        let s = SimScenario::new(10, 4.0, 10, 1, 0).unwrap();
        let w = random_weighted_dag_seeded::<f64>(&s, 3);
        for e in w.dag().edges() {
            let b = w.weight(e.from, e.to);
            assert!((1.0..=2.0).contains(&b));
        }
    }

    #[test]
    fn empty_dag_data_is_standard_normal() {
        let w = WeightedDag::<f64>::from_arcs(3, &[]).unwrap();
        let d = gen_data_seeded(&w, 100_000, 1).unwrap();
        let c = d.covariance();
        for v in 0..3 {
            assert!((c.get(v, v) - 1.0).abs() < 0.02);
        }
        assert_eq!(true_covariance(&w).matrix(), &Matrix::identity(3));
    }

    #[test]
    fn chain_moments() {
        let w = WeightedDag::from_arcs(2, &[(0, 1, 1.0f64)]).unwrap();
        let t = true_covariance(&w);
        assert_eq!(t.get(0, 1), 1.0);
        assert_eq!(t.get(1, 1), 2.0);
        let d = gen_data_seeded(&w, 100_000, 2).unwrap();
        assert!((d.covariance().get(1, 1) - 2.0).abs() < 0.03);
    }

    #[test]
    fn sample_covariance_converges() {
        let s = SimScenario::new(6, 2.0, 10, 1, 0).unwrap();
        let w = random_weighted_dag_seeded::<f64>(&s, 7);
        let d = gen_data_seeded(&w, 100_000, 8).unwrap();
        let t = true_covariance(&w);
        let c = d.covariance();
        // scale the tolerance with the variances involved
        for a in 0..6 {
            for b in 0..6 {
                let tol = 0.03 * (t.get(a, a) * t.get(b, b)).sqrt().max(1.0);
                assert!((c.get(a, b) - t.get(a, b)).abs() < tol, "({a},{b})");
            }
        }
    }

    #[test]
    fn data_is_seeded() {
        let s = SimScenario::new(5, 2.0, 10, 1, 0).unwrap();
        let w = random_weighted_dag_seeded::<f64>(&s, 4);
        assert_eq!(gen_data_seeded(&w, 50, 9).unwrap(), gen_data_seeded(&w, 50, 9).unwrap());
    }

    #[test]
    fn fork_truth_for_x2() {
        let w =
            WeightedDag::from_arcs(4, &[(1, 0, 0.8), (1, 2, 0.8), (0, 3, -1.0), (1, 3, 2.0), (2, 3, -1.0)]).unwrap();
        let g = true_theta(&w, 1, 3, Method::Global, IdaConfig::default()).unwrap();
        let l = true_theta(&w, 1, 3, Method::Local, IdaConfig::default()).unwrap();
        assert_eq!(g.total(), 3);
        assert_eq!(g.adjustments(), l.adjustments());
        let expect = [vec![], vec![0], vec![2]];
        assert_eq!(g.adjustments(), expect.iter().cloned().map(Some).collect::<Vec<_>>());
    }

    #[test]
    fn identified_effect_without_path_is_parent_regression() {
        // 0 -> 2 <- 1, covariate 2 has no path to 0
        let w = WeightedDag::from_arcs(3, &[(0, 2, 1.5), (1, 2, 1.0)]).unwrap();
        let t = true_theta(&w, 2, 0, Method::Global, IdaConfig::default()).unwrap();
        assert_eq!(t.adjustments(), vec![Some(vec![0, 1])]);
        assert_eq!(t.values(), vec![0.0]);
    }

    #[test]
    fn cross_block_truth_is_zero() {
        let s = SimScenario::new(10, 3.0, 10, 1, 0).unwrap().with_blocks(2).unwrap();
        let w = random_weighted_dag_seeded::<f64>(&s, 12);
        let on = IdaConfig { mods: Modifications { zero_path: true, prune_y: false }, ..Default::default() };
        let z = true_theta(&w, 1, 7, Method::Local, on).unwrap();
        assert_eq!(z.values(), vec![0.0]);
        let off = true_theta(&w, 1, 7, Method::Global, IdaConfig::default()).unwrap();
        assert!(off.values().iter().all(|v| v.abs() < 1e-10));
    }

    #[test]
    fn error_measure_examples() {
        assert_eq!(error_measures(&ms(&[1.0, -3.0]), &ms(&[1.0, -3.0])).unwrap(), (0.0, 0.0));
        assert_eq!(error_measures(&ms(&[2.0]), &ms(&[1.0])).unwrap(), (1.0, 1.0));
        assert_eq!(error_measures(&ms(&[0.0, 2.0]), &ms(&[1.0])).unwrap(), (0.0, 1.0));
        assert!(error_measures(&ms(&[]), &ms(&[1.0])).is_err());
    }
}
