use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::orient::apply_colliders;
use super::PcResult;
use crate::graph::{cpdag_from_dag, extend_to_dag, meek_closure, orient_by_elimination, Dag, Pdag, VStructure};

/// Largest number of alternatives tried exhaustively in stages 1 and 2.
pub const EXACT_REPAIR_CAP: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepairStage {
    /// Input was already a valid CPDAG.
    Unchanged = 0,
    /// Conflicting colliders were re-resolved.
    Rearranged = 1,
    /// Some colliders were dropped.
    Destroyed = 2,
    /// A random DAG on the skeleton was used.
    RandomDag = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repair {
    pub cpdag: Pdag,
    pub stage: RepairStage,
    /// Colliders removed in stage 2.
    pub dropped: Vec<VStructure>,
}

/// Turns a possibly invalid PC output into a valid CPDAG.
///
/// 1. Each conflicting edge is given to either of its claimants, all
///    combinations in bitmask order, until the result is extendable.
/// 2. Otherwise colliders are dropped, smallest subsets first (exhaustive up
///    to [`EXACT_REPAIR_CAP`] subsets, then greedily one at a time).
/// 3. Otherwise the skeleton is oriented along a random vertex order drawn
///    from `seed`.
///
/// Every successful stage returns the CPDAG of the found extension.
pub fn repair_cpdag(res: &PcResult, seed: u64) -> Repair {
    if res.diagnostics.validity.is_valid() {
        return Repair { cpdag: res.cpdag.clone(), stage: RepairStage::Unchanged, dropped: Vec::new() };
    }
    let skeleton = &res.skeleton;
    let applied = &res.diagnostics.applied;

    if !res.diagnostics.conflicts.is_empty() {
        let contested: Vec<(usize, usize)> = res.diagnostics.conflicts.iter().map(|c| c.edge).unique().collect();
        let choices = 1usize << contested.len().min(12);
        for mask in 0..choices.min(EXACT_REPAIR_CAP) {
            let mut g = apply_colliders(skeleton, applied).graph;
            for (b, &(u, v)) in contested.iter().enumerate() {
                if mask >> b & 1 == 0 {
                    g.set_directed(u, v);
                } else {
                    g.set_directed(v, u);
                }
            }
            if let Some(c) = canonical(&g) {
                return Repair { cpdag: c, stage: RepairStage::Rearranged, dropped: Vec::new() };
            }
        }
    }

    let distinct: Vec<VStructure> = applied.iter().copied().unique().collect();
    let mut tried = 0usize;
    'sizes: for size in 1..=distinct.len() {
        for drop in (0..distinct.len()).combinations(size) {
            if tried >= EXACT_REPAIR_CAP {
                break 'sizes;
            }
            tried += 1;
            if let Some(r) = try_without(skeleton, applied, &distinct, &drop) {
                return r;
            }
        }
    }
    if tried >= EXACT_REPAIR_CAP {
        let mut dropped: Vec<usize> = Vec::new();
        for k in 0..distinct.len() {
            dropped.push(k);
            if let Some(r) = try_without(skeleton, applied, &distinct, &dropped) {
                return r;
            }
        }
    }

    Repair { cpdag: random_cpdag(skeleton, seed), stage: RepairStage::RandomDag, dropped: Vec::new() }
}

fn try_without(skeleton: &Pdag, applied: &[VStructure], distinct: &[VStructure], drop: &[usize]) -> Option<Repair> {
    let gone: BTreeSet<VStructure> = drop.iter().map(|&k| distinct[k]).collect();
    let kept: Vec<VStructure> = applied.iter().copied().filter(|t| !gone.contains(t)).collect();
    let g = apply_colliders(skeleton, &kept).graph;
    canonical(&g).map(|c| Repair { cpdag: c, stage: RepairStage::Destroyed, dropped: gone.into_iter().collect() })
}

fn canonical(g: &Pdag) -> Option<Pdag> {
    extend_to_dag(&meek_closure(g)).ok().map(|d| cpdag_from_dag(&d))
}

/// CPDAG of the DAG obtained by orienting `skeleton` along a random order.
pub fn random_cpdag(skeleton: &Pdag, seed: u64) -> Pdag {
    let mut order: Vec<usize> = (0..skeleton.vertex_count()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let oriented = orient_by_elimination(&skeleton.skeleton(), &order);
    cpdag_from_dag(&Dag::new(oriented).expect("orientation along a total order is acyclic"))
}
