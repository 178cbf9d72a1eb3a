//! Multisets of possible total causal effects: the global method over every
//! member of the equivalence class, the local method over sibling subsets,
//! the enumeration oracle, summaries and bootstrap scores.

mod bootstrap;
mod global;
mod local;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use bootstrap::{
    bootstrap_causal_scores, median, resample_indices, BootstrapConfig, BootstrapScores, CovariateScore,
};
pub use global::{ida_global, ThetaMatrix};
pub use local::{ida_local, ida_local_all, ida_oracle, ida_oracle_multiplicities};

use crate::error::{Error, Result};
use crate::graph::{EnumLimits, Vertex};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Global,
    Local,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Global => "global",
            Method::Local => "local",
            Method::Oracle => "oracle",
        }
    }
}

/// Optional refinements of the basic algorithms. Both default to off.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modifications {
    /// Report an exact zero when no directed path to the response is
    /// possible.
    pub zero_path: bool,
    /// Restrict parents (and, for the local method, siblings) to those
    /// joined to the response by a path avoiding the covariate.
    pub prune_y: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdaConfig {
    pub mods: Modifications,
    pub limits: EnumLimits,
    /// Largest sibling set the local method will expand.
    pub max_siblings: usize,
}

impl Default for IdaConfig {
    fn default() -> Self {
        Self { mods: Modifications::default(), limits: EnumLimits::default(), max_siblings: 25 }
    }
}

/// One distinct value of a multiset.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect<T> {
    pub value: T,
    /// Regression set used, `None` for a zero forced by the path check.
    pub adjustment: Option<Vec<Vertex>>,
    pub multiplicity: usize,
}

/// Possible causal effects of one covariate on the response.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectMultiset<T> {
    pub covariate: Vertex,
    pub response: Vertex,
    pub method: Method,
    pub mods: Modifications,
    pub entries: Vec<Effect<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Summary {
    MinAbs,
    Range,
    MeanAbs,
    Min,
    Max,
}

impl<T: Scalar> EffectMultiset<T> {
    /// Number of values counted with multiplicity.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// All values, each repeated by its multiplicity.
    pub fn values(&self) -> Vec<T> {
        self.entries.iter().flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity)).collect()
    }

    /// Number of distinct adjustment sets.
    pub fn ambiguity(&self) -> usize {
        self.entries.len()
    }

    /// Number of values that differ by more than `tol` from every smaller one.
    pub fn distinct_values(&self, tol: T) -> usize {
        let mut v: Vec<T> = self.entries.iter().map(|e| e.value).collect();
        v.sort_by(total_cmp);
        v.windows(2).filter(|w| w[1] - w[0] > tol).count() + usize::from(!v.is_empty())
    }

    /// Adjustment sets in entry order.
    pub fn adjustments(&self) -> Vec<Option<Vec<Vertex>>> {
        self.entries.iter().map(|e| e.adjustment.clone()).collect()
    }

    pub fn summarize(&self, f: Summary) -> Result<T> {
        if self.entries.is_empty() {
            return Err(Error::Precondition("summary of an empty multiset".into()));
        }
        let vals = self.entries.iter().map(|e| e.value);
        Ok(match f {
            Summary::MinAbs => vals.map(|v| v.abs()).fold(T::infinity(), T::min),
            Summary::Min => vals.fold(T::infinity(), T::min),
            Summary::Max => vals.fold(T::neg_infinity(), T::max),
            Summary::Range => self.summarize(Summary::Max)? - self.summarize(Summary::Min)?,
            Summary::MeanAbs => {
                let s: T = self.entries.iter().map(|e| e.value.abs() * T::of(e.multiplicity as f64)).sum();
                s / T::of(self.total() as f64)
            }
        })
    }

    /// Report object with names resolved through `names`.
    pub fn to_json(&self, names: &[String]) -> Value {
        let effects: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "value": e.value.as_f64(),
                    "adjustment": e.adjustment.as_ref().map(|s| s.iter().map(|&v| names[v].clone()).collect::<Vec<_>>()),
                    "multiplicity": e.multiplicity,
                })
            })
            .collect();
        json!({
            "covariate": names[self.covariate],
            "method": self.method.as_str(),
            "effects": effects,
            "min_abs": self.summarize(Summary::MinAbs).ok().map(Scalar::as_f64),
            "range": self.summarize(Summary::Range).ok().map(Scalar::as_f64),
            "ambiguity": self.ambiguity(),
        })
    }
}

fn total_cmp<T: Scalar>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Largest gap between matched order statistics, or infinity when the
/// cardinalities differ.
pub fn d_multiset<T: Scalar>(a: &[T], b: &[T]) -> T {
    if a.len() != b.len() {
        return T::infinity();
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(total_cmp);
    b.sort_by(total_cmp);
    a.iter().zip(&b).map(|(&x, &y)| (x - y).abs()).fold(T::zero(), T::max)
}
