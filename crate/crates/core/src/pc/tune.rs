use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{pc_cpdag, repair_cpdag, RepairStage};
use crate::error::{Error, Result};
use crate::graph::{extend_to_dag, Pdag};
use crate::scalar::Scalar;
use crate::stats::{bic_score, CiTestConfig, Dataset};

/// Score of one candidate significance level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaScore {
    pub alpha: f64,
    /// `+inf` when the pipeline failed.
    pub bic: f64,
    pub stage: Option<RepairStage>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSelection {
    pub alpha: f64,
    pub cpdag: Pdag,
    pub scores: Vec<AlphaScore>,
}

/// Picks the level whose repaired and extended PC estimate has the lowest
/// BIC. Ties go to the smaller level.
pub fn bic_select_alpha<T: Scalar>(
    d: &Dataset<T>,
    alphas: &[f64],
    max_level: Option<usize>,
    seed: u64,
) -> Result<AlphaSelection> {
    if alphas.is_empty() {
        return Err(Error::Precondition("at least one alpha is required".into()));
    }
    let runs: Vec<(AlphaScore, Option<Pdag>)> = alphas
        .par_iter()
        .map(|&alpha| match score_alpha(d, alpha, max_level, seed) {
            Ok((bic, stage, cpdag)) => (AlphaScore { alpha, bic, stage: Some(stage), error: None }, Some(cpdag)),
            Err(e) => (AlphaScore { alpha, bic: f64::INFINITY, stage: None, error: Some(e.to_string()) }, None),
        })
        .collect();
    let best = (0..runs.len())
        .filter(|&k| runs[k].1.is_some())
        .min_by(|&a, &b| {
            let (sa, sb) = (&runs[a].0, &runs[b].0);
            sa.bic.total_cmp(&sb.bic).then(sa.alpha.total_cmp(&sb.alpha))
        })
        .ok_or_else(|| Error::DegenerateData(format!("no alpha produced a model: {}", first_error(&runs))))?;
    let alpha = runs[best].0.alpha;
    let cpdag = runs[best].1.clone().expect("filtered on success");
    Ok(AlphaSelection { alpha, cpdag, scores: runs.into_iter().map(|r| r.0).collect() })
}

fn first_error(runs: &[(AlphaScore, Option<Pdag>)]) -> String {
    runs.iter().find_map(|r| r.0.error.clone()).unwrap_or_default()
}

fn score_alpha<T: Scalar>(
    d: &Dataset<T>,
    alpha: f64,
    max_level: Option<usize>,
    seed: u64,
) -> Result<(f64, RepairStage, Pdag)> {
    let res = pc_cpdag(d, CiTestConfig::new(alpha)?, max_level)?;
    let repaired = repair_cpdag(&res, seed);
    let dag = extend_to_dag(&repaired.cpdag)?;
    let bic = bic_score(d, &dag)?.as_f64();
    if !bic.is_finite() {
        return Err(Error::DegenerateData(format!("non-finite BIC at alpha {alpha}")));
    }
    Ok((bic, repaired.stage, repaired.cpdag))
}
