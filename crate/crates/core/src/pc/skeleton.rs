use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Pdag, Vertex};
use crate::stats::{CiTest, Verdict};

/// Separating set recorded for each removed edge, keyed by `(min, max)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SepsetTable {
    sets: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
}

impl SepsetTable {
    fn key(i: Vertex, j: Vertex) -> (Vertex, Vertex) {
        (i.min(j), i.max(j))
    }

    pub fn insert(&mut self, i: Vertex, j: Vertex, s: Vec<Vertex>) {
        self.sets.insert(Self::key(i, j), s);
    }

    pub fn get(&self, i: Vertex, j: Vertex) -> Option<&[Vertex]> {
        self.sets.get(&Self::key(i, j)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Vertex, Vertex), &Vec<Vertex>)> {
        self.sets.iter()
    }
}

/// Bookkeeping from the skeleton search.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonStats {
    /// Tests performed at each conditioning-set size.
    pub tests_per_level: Vec<usize>,
    /// Tests skipped per level because of sample size or rank problems.
    pub skipped_per_level: Vec<usize>,
    /// Largest level at which at least one test ran.
    pub max_level_reached: Option<usize>,
}

/// Hierarchical edge removal starting from the complete graph.
///
/// At level `l` each ordered adjacent pair `(i, j)` is tested given every
/// `l`-subset of `adj(i) \ {j}`, subsets in lexicographic order, adjacency
/// sets frozen at the start of the level. The first independence verdict
/// removes the edge and stores the subset as separating set.
pub fn estimate_skeleton<C: CiTest + ?Sized>(
    test: &C,
    max_level: Option<usize>,
) -> Result<(Pdag, SepsetTable, SkeletonStats)> {
    let n = test.vars();
    let mut g = Pdag::complete(n);
    let mut sepsets = SepsetTable::default();
    let mut stats = SkeletonStats::default();
    let mut level = 0usize;
    loop {
        if max_level.is_some_and(|m| level > m) {
            break;
        }
        let frozen: Vec<Vec<Vertex>> = (0..n).map(|i| g.adjacent(i)).collect();
        if frozen.iter().all(|a| a.len() <= level) {
            break;
        }
        let mut tested = 0;
        let mut skipped = 0;
        let mut starved = false;
        for i in 0..n {
            for &j in &frozen[i] {
                if !g.is_adjacent(i, j) {
                    continue;
                }
                let others: Vec<Vertex> = frozen[i].iter().copied().filter(|&v| v != j).collect();
                for s in others.into_iter().combinations(level) {
                    match test.test(i, j, &s) {
                        Ok(Verdict::Independent) => {
                            tested += 1;
                            g.remove_edge(i, j);
                            sepsets.insert(i, j, s);
                            break;
                        }
                        Ok(Verdict::Dependent) => tested += 1,
                        Err(Error::InsufficientSample { .. }) => {
                            skipped += 1;
                            starved = true;
                            break;
                        }
                        Err(Error::NumericalRank(_)) => skipped += 1,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        stats.tests_per_level.push(tested);
        stats.skipped_per_level.push(skipped);
        if tested > 0 {
            stats.max_level_reached = Some(level);
        }
        if starved {
            // every larger conditioning set is short of observations as well
            break;
        }
        level += 1;
    }
    Ok((g, sepsets, stats))
}
