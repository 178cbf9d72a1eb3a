use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ida_local_all, IdaConfig, Summary};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::pc::pc_cpdag;
use crate::scalar::Scalar;
use crate::stats::{CiTestConfig, Dataset};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    pub test: CiTestConfig,
    pub replicates: usize,
    pub seed: u64,
    pub ida: IdaConfig,
    pub max_level: Option<usize>,
}

/// Bootstrap summary for one covariate.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariateScore<T> {
    pub covariate: Vertex,
    /// Median of the per-replicate minimum absolute effects, `None` when
    /// every replicate failed.
    pub score: Option<T>,
    pub replicate_min_abs: Vec<Option<T>>,
    pub replicate_ambiguity: Vec<Option<usize>>,
    /// Ambiguity on the full data set.
    pub ambiguity: Option<usize>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapScores<T> {
    pub response: Vertex,
    /// One entry per covariate, ascending.
    pub scores: Vec<CovariateScore<T>>,
}

/// Median with the midpoint convention for even lengths.
pub fn median<T: Scalar>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let k = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[k] } else { (v[k - 1] + v[k]) / T::of(2.0) })
}

/// Row indices of replicate `b`, drawn with replacement from the stream
/// `b` of a generator seeded by `seed`.
pub fn resample_indices(n: usize, seed: u64, b: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(b);
    (0..n).map(|_| rng.random_range(0..n)).collect()
}

type Outcome<T> = Vec<Option<(T, usize)>>;

fn one_run<T: Scalar>(d: &Dataset<T>, cfg: &BootstrapConfig) -> Outcome<T> {
    let covs = d.covariates();
    let g = match pc_cpdag(d, cfg.test, cfg.max_level) {
        Ok(r) => r.cpdag,
        Err(_) => return vec![None; covs.len()],
    };
    ida_local_all(d, &g, d.response(), cfg.ida)
        .into_iter()
        .map(|r| r.ok().and_then(|m| Some((m.summarize(Summary::MinAbs).ok()?, m.ambiguity()))))
        .collect()
}

/// Causal scores: PC plus the local method on `replicates` row resamples,
/// the median minimum absolute effect per covariate.
pub fn bootstrap_causal_scores<T: Scalar>(d: &Dataset<T>, cfg: BootstrapConfig) -> Result<BootstrapScores<T>> {
    if cfg.replicates == 0 {
        return Err(Error::Precondition("at least one bootstrap replicate is required".into()));
    }
    let runs: Vec<Outcome<T>> = (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|b| match d.resample(&resample_indices(d.n(), cfg.seed, b)) {
            Ok(r) => one_run(&r, &cfg),
            Err(_) => vec![None; d.covariates().len()],
        })
        .collect();
    let full = one_run(d, &cfg);
    let scores = d
        .covariates()
        .into_iter()
        .enumerate()
        .map(|(k, covariate)| {
            let per: Vec<Option<(T, usize)>> = runs.iter().map(|r| r[k]).collect();
            let ok: Vec<T> = per.iter().flatten().map(|x| x.0).collect();
            CovariateScore {
                covariate,
                score: median(&ok),
                replicate_min_abs: per.iter().map(|x| x.map(|x| x.0)).collect(),
                replicate_ambiguity: per.iter().map(|x| x.map(|x| x.1)).collect(),
                ambiguity: full[k].map(|x| x.1),
                failures: per.iter().filter(|x| x.is_none()).count(),
            }
        })
        .collect();
    Ok(BootstrapScores { response: d.response(), scores })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn median_conventions() {
        assert_eq!(median::<f64>(&[]), None);
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    #[test]
    fn resampling_is_seeded() {
        assert_eq!(resample_indices(50, 9, 3), resample_indices(50, 9, 3));
        assert_ne!(resample_indices(50, 9, 3), resample_indices(50, 9, 4));
        assert!(resample_indices(50, 9, 0).iter().all(|&r| r < 50));
    }

    fn noise_data(n: usize, seed: u64) -> Dataset<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = (0..n)
            .map(|_| {
                let a: f64 = StandardNormal.sample(&mut rng);
                let z: f64 = StandardNormal.sample(&mut rng);
                let e: f64 = StandardNormal.sample(&mut rng);
                vec![a, z, 0.8 * a + e]
            })
            .collect();
        Dataset::with_default_names(rows).unwrap()
    }

    fn cfg(replicates: usize) -> BootstrapConfig {
        BootstrapConfig {
            test: CiTestConfig::new(0.01).unwrap(),
            replicates,
            seed: 5,
            ida: IdaConfig::default(),
            max_level: None,
        }
    }

    #[test]
    fn single_replicate_equals_its_resample() {
        let d = noise_data(300, 1);
        let s = bootstrap_causal_scores(&d, cfg(1)).unwrap();
        let r = d.resample(&resample_indices(d.n(), 5, 0)).unwrap();
        let g = pc_cpdag(&r, cfg(1).test, None).unwrap().cpdag;
        for (k, m) in ida_local_all(&r, &g, 2, IdaConfig::default()).into_iter().enumerate() {
            assert_eq!(s.scores[k].score, Some(m.unwrap().summarize(Summary::MinAbs).unwrap()));
        }
    }

    #[test]
    fn independent_covariate_scores_near_zero() {
        let d = noise_data(10_000, 2);
        let s = bootstrap_causal_scores(&d, cfg(10)).unwrap();
        assert!(s.scores[1].score.unwrap().abs() < 0.05);
        assert_eq!(s.scores[1].failures, 0);
        assert_eq!(s, bootstrap_causal_scores(&d, cfg(10)).unwrap());
    }
}
