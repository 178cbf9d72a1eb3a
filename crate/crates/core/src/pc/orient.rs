use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SepsetTable;
use crate::graph::{Pdag, VStructure, Vertex};

/// Two unshielded colliders disagreeing on the direction of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    /// `(min, max)` endpoints of the contested edge.
    pub edge: (Vertex, Vertex),
    pub overwritten: VStructure,
    pub winner: VStructure,
}

/// Result of collider orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oriented {
    pub graph: Pdag,
    /// Colliders in the order they were applied.
    pub applied: Vec<VStructure>,
    pub conflicts: Vec<Conflict>,
}

/// Orients `i -> j <- k` for every nonadjacent pair `(i, k)`, `i < k`, with a
/// common neighbour `j` outside their separating set.
///
/// Triples are processed in lexicographic `(i, j, k)` order and a later
/// triple overwrites an earlier arrowhead on the same edge; each such
/// overwrite is reported as a [`Conflict`].
pub fn orient_v_structures(skeleton: &Pdag, sepsets: &SepsetTable) -> Oriented {
    apply_colliders(skeleton, &collider_triples(skeleton, sepsets))
}

/// Candidate colliders of a skeleton, in processing order.
pub fn collider_triples(skeleton: &Pdag, sepsets: &SepsetTable) -> Vec<VStructure> {
    let n = skeleton.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in skeleton.adjacent(i) {
            for k in skeleton.adjacent(j) {
                if k <= i || skeleton.is_adjacent(i, k) {
                    continue;
                }
                if sepsets.get(i, k).is_some_and(|s| !s.contains(&j)) {
                    out.push(VStructure { left: i, collider: j, right: k });
                }
            }
        }
    }
    out
}

/// Writes arrowheads of `triples` onto `skeleton` in order, later ones
/// winning.
pub fn apply_colliders(skeleton: &Pdag, triples: &[VStructure]) -> Oriented {
    let mut g = skeleton.skeleton();
    let mut owner: BTreeMap<(Vertex, Vertex), (Vertex, VStructure)> = BTreeMap::new();
    let mut conflicts = Vec::new();
    for &t in triples {
        for tail in [t.left, t.right] {
            let key = (tail.min(t.collider), tail.max(t.collider));
            if let Some(&(head, prev)) = owner.get(&key) {
                if head != t.collider {
                    conflicts.push(Conflict { edge: key, overwritten: prev, winner: t });
                }
            }
            g.set_directed(tail, t.collider);
            owner.insert(key, (t.collider, t));
        }
    }
    Oriented { graph: g, applied: triples.to_vec(), conflicts }
}
