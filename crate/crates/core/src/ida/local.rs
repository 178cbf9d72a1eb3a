use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Effect, EffectMultiset, IdaConfig, Method};
use crate::error::{Error, Result};
use crate::graph::{allows_directed_path, enumerate_dags, reachable_toward, EnumLimits, Over, Pdag, Vertex};
use crate::scalar::Scalar;
use crate::stats::{beta_given_s, RegressionSource};

fn check_pair<T: Scalar, R: RegressionSource<T> + ?Sized>(source: &R, g: &Pdag, i: Vertex, y: Vertex) -> Result<()> {
    let p1 = g.vertex_count();
    if source.vars() != p1 || i >= p1 || y >= p1 {
        return Err(Error::Precondition(format!(
            "graph has {p1} vertices, data {} variables, pair ({i}, {y})",
            source.vars()
        )));
    }
    if i == y {
        return Err(Error::Precondition("covariate and response coincide".into()));
    }
    Ok(())
}

fn forced_zero<T: Scalar>(i: Vertex, y: Vertex, method: Method, cfg: &IdaConfig) -> EffectMultiset<T> {
    EffectMultiset {
        covariate: i,
        response: y,
        method,
        mods: cfg.mods,
        entries: vec![Effect { value: T::zero(), adjustment: None, multiplicity: 1 }],
    }
}

/// Whether the class may contain a directed path from `i` to `y`. When the
/// class cannot be enumerated the answer is the permissive one.
fn path_possible(g: &Pdag, i: Vertex, y: Vertex, limits: EnumLimits) -> bool {
    allows_directed_path(g, i, y, limits).unwrap_or(true)
}

/// Effects of `i` on `y` from the neighbourhood of `i` alone: one regression
/// per sibling subset that can be oriented into `i` without a new collider.
///
/// Subsets are visited in bitmask order over the ascending sibling list.
pub fn ida_local<T: Scalar, R: RegressionSource<T> + ?Sized>(
    source: &R,
    g: &Pdag,
    i: Vertex,
    y: Vertex,
    cfg: IdaConfig,
) -> Result<EffectMultiset<T>> {
    check_pair(source, g, i, y)?;
    if cfg.mods.zero_path && !path_possible(g, i, y, cfg.limits) {
        return Ok(forced_zero(i, y, Method::Local, &cfg));
    }
    let (parents, siblings) = if cfg.mods.prune_y {
        (reachable_toward(g, i, y, Over::Parents), reachable_toward(g, i, y, Over::Siblings))
    } else {
        (g.parents(i), g.siblings(i))
    };
    if siblings.len() > cfg.max_siblings {
        return Err(Error::Resource(format!(
            "vertex {i} has {} siblings, above the limit of {}",
            siblings.len(),
            cfg.max_siblings
        )));
    }
    let mut entries = Vec::new();
    for mask in 0u64..1 << siblings.len() {
        let s: Vec<Vertex> = (0..siblings.len()).filter(|b| mask >> b & 1 == 1).map(|b| siblings[b]).collect();
        if !g.is_locally_valid(i, &s)? {
            continue;
        }
        let mut adj: Vec<Vertex> = parents.iter().chain(&s).copied().collect();
        adj.sort_unstable();
        let value = beta_given_s(source, i, &adj, y)?;
        entries.push(Effect { value, adjustment: Some(adj), multiplicity: 1 });
    }
    Ok(EffectMultiset { covariate: i, response: y, method: Method::Local, mods: cfg.mods, entries })
}

/// [`ida_local`] for every covariate in ascending order, run in parallel.
pub fn ida_local_all<T, R>(source: &R, g: &Pdag, y: Vertex, cfg: IdaConfig) -> Vec<Result<EffectMultiset<T>>>
where
    T: Scalar,
    R: RegressionSource<T> + Sync + ?Sized,
{
    (0..g.vertex_count()).into_par_iter().filter(|&i| i != y).map(|i| ida_local(source, g, i, y, cfg)).collect()
}

/// For every subset `S` of the siblings of `i`, the number of class members
/// in which the parents of `i` are exactly its current parents plus `S`.
pub fn ida_oracle_multiplicities(g: &Pdag, i: Vertex, limits: EnumLimits) -> Result<BTreeMap<Vec<Vertex>, usize>> {
    if i >= g.vertex_count() {
        return Err(Error::Precondition(format!("vertex {i} out of range")));
    }
    let dags = enumerate_dags(g, limits)?;
    let parents = g.parents(i);
    let siblings = g.siblings(i);
    let mut counts: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
    for mask in 0u64..1 << siblings.len() {
        let s: Vec<Vertex> = (0..siblings.len()).filter(|b| mask >> b & 1 == 1).map(|b| siblings[b]).collect();
        counts.insert(s, 0);
    }
    for d in &dags {
        let s: Vec<Vertex> = d.parents(i).into_iter().filter(|v| !parents.contains(v)).collect();
        *counts.get_mut(&s).expect("new parents are former siblings") += 1;
    }
    Ok(counts)
}

/// Global multiset of `i` rebuilt from the oracle counts: each subset with a
/// positive count contributes its regression with that multiplicity.
pub fn ida_oracle<T: Scalar, R: RegressionSource<T> + ?Sized>(
    source: &R,
    g: &Pdag,
    i: Vertex,
    y: Vertex,
    cfg: IdaConfig,
) -> Result<EffectMultiset<T>> {
    check_pair(source, g, i, y)?;
    let parents = g.parents(i);
    let mut entries = Vec::new();
    for (s, m) in ida_oracle_multiplicities(g, i, cfg.limits)? {
        if m == 0 {
            continue;
        }
        let mut adj: Vec<Vertex> = parents.iter().chain(&s).copied().collect();
        adj.sort_unstable();
        let value = beta_given_s(source, i, &adj, y)?;
        entries.push(Effect { value, adjustment: Some(adj), multiplicity: m });
    }
    Ok(EffectMultiset { covariate: i, response: y, method: Method::Oracle, mods: cfg.mods, entries })
}
