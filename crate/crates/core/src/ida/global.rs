use std::collections::{BTreeMap, HashMap};

use super::{Effect, EffectMultiset, IdaConfig, Method};
use crate::error::{Error, Result};
use crate::graph::{enumerate_dags, has_directed_path, reachable_toward, Over, Pdag, Vertex};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::stats::{beta_given_s, RegressionSource};

/// Effects of every covariate under every member of an equivalence class.
/// Column `j` belongs to the `j`-th enumerated DAG.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaMatrix<T> {
    pub response: Vertex,
    pub covariates: Vec<Vertex>,
    pub values: Matrix<T>,
    /// `adjustments[r][j]` is the set behind `values[(r, j)]`.
    pub adjustments: Vec<Vec<Option<Vec<Vertex>>>>,
    pub cfg: IdaConfig,
}

impl<T: Scalar> ThetaMatrix<T> {
    /// Number of DAGs in the class.
    pub fn dags(&self) -> usize {
        self.values.cols()
    }

    /// Row of covariate `i` grouped by adjustment set.
    pub fn row(&self, i: Vertex) -> Option<EffectMultiset<T>> {
        let r = self.covariates.iter().position(|&c| c == i)?;
        let mut groups: BTreeMap<Option<Vec<Vertex>>, Effect<T>> = BTreeMap::new();
        for (j, adj) in self.adjustments[r].iter().enumerate() {
            groups
                .entry(adj.clone())
                .or_insert_with(|| Effect { value: self.values[(r, j)], adjustment: adj.clone(), multiplicity: 0 })
                .multiplicity += 1;
        }
        Some(EffectMultiset {
            covariate: i,
            response: self.response,
            method: Method::Global,
            mods: self.cfg.mods,
            entries: groups.into_values().collect(),
        })
    }

    pub fn rows(&self) -> Vec<EffectMultiset<T>> {
        self.covariates.iter().filter_map(|&i| self.row(i)).collect()
    }
}

/// Enumerates the class of `g` and regresses `y` on each covariate and its
/// parents in every member.
pub fn ida_global<T: Scalar, R: RegressionSource<T> + ?Sized>(
    source: &R,
    g: &Pdag,
    y: Vertex,
    cfg: IdaConfig,
) -> Result<ThetaMatrix<T>> {
    let p1 = g.vertex_count();
    if source.vars() != p1 || y >= p1 {
        return Err(Error::Precondition(format!(
            "graph has {p1} vertices, data {} variables, response {y}",
            source.vars()
        )));
    }
    let dags = enumerate_dags(g, cfg.limits).map_err(|e| match e {
        Error::Resource(msg) => Error::Resource(format!("{msg}; the local method avoids enumeration")),
        other => other,
    })?;
    let covariates: Vec<Vertex> = (0..p1).filter(|&v| v != y).collect();
    let mut values = Matrix::zeros(covariates.len(), dags.len());
    let mut adjustments = vec![Vec::with_capacity(dags.len()); covariates.len()];
    let mut cache: HashMap<(Vertex, Vec<Vertex>), T> = HashMap::new();
    for (j, d) in dags.iter().enumerate() {
        for (r, &i) in covariates.iter().enumerate() {
            if cfg.mods.zero_path && !has_directed_path(d, i, y) {
                adjustments[r].push(None);
                continue;
            }
            let adj = if cfg.mods.prune_y { reachable_toward(d, i, y, Over::Parents) } else { d.parents(i) };
            let key = (i, adj);
            let v = match cache.get(&key) {
                Some(&v) => v,
                None => {
                    let v = beta_given_s(source, i, &key.1, y)?;
                    cache.insert(key.clone(), v);
                    v
                }
            };
            values[(r, j)] = v;
            adjustments[r].push(Some(key.1));
        }
    }
    Ok(ThetaMatrix { response: y, covariates, values, adjustments, cfg })
}
