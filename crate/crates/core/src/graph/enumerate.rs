use serde::{Deserialize, Serialize};

use super::{undirected_components, Dag, Pdag, Vertex};
use crate::error::{Error, Result};

/// Caps for exhaustive enumeration of an equivalence class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumLimits {
    /// Largest number of undirected edges allowed in one connected component.
    pub max_component_edges: usize,
    /// Largest number of DAGs returned before giving up.
    pub max_dags: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        Self { max_component_edges: 12, max_dags: 1 << 20 }
    }
}

/// All DAGs with the skeleton and v-structures of `g`.
///
/// Undirected edges `(u, v)`, `u < v`, are taken in lexicographic order and
/// tried as `u -> v` before `v -> u`, so members come out in lexicographic
/// order of their orientation vector. Branches that close a directed cycle
/// or form a new v-structure are cut as soon as the offending edge is placed.
pub fn enumerate_dags(g: &Pdag, limits: EnumLimits) -> Result<Vec<Dag>> {
    for comp in undirected_components(g) {
        let m = comp.iter().map(|&v| g.siblings(v).len()).sum::<usize>() / 2;
        if m > limits.max_component_edges {
            return Err(Error::Resource(format!(
                "undirected component with {m} edges exceeds enumeration cap {}",
                limits.max_component_edges
            )));
        }
    }
    if !g.is_directed_acyclic() {
        return Err(Error::NotExtendable);
    }
    let edges = g.undirected_edges();
    let mut work = g.clone();
    let mut out = Vec::new();
    search(&mut work, &edges, 0, limits.max_dags, &mut out)?;
    if out.is_empty() {
        return Err(Error::NotExtendable);
    }
    Ok(out)
}

fn search(g: &mut Pdag, edges: &[(Vertex, Vertex)], k: usize, cap: usize, out: &mut Vec<Dag>) -> Result<()> {
    let Some(&(u, v)) = edges.get(k) else {
        if out.len() >= cap {
            return Err(Error::Resource(format!("equivalence class larger than {cap} DAGs")));
        }
        out.push(Dag::new(g.clone()).expect("search keeps acyclicity"));
        return Ok(());
    };
    for (a, b) in [(u, v), (v, u)] {
        g.set_directed(a, b);
        if admissible(g, a, b) {
            search(g, edges, k + 1, cap, out)?;
        }
        g.set_undirected(u, v);
    }
    Ok(())
}

/// Checks the freshly placed arc `a -> b` for a new v-structure at `b` and for
/// a directed cycle through it.
fn admissible(g: &Pdag, a: Vertex, b: Vertex) -> bool {
    if g.parents(b).into_iter().any(|c| c != a && !g.is_adjacent(a, c)) {
        return false;
    }
    !reaches(g, b, a)
}

fn reaches(g: &Pdag, from: Vertex, to: Vertex) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for c in g.children(x) {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cpdag_from_dag;
    use crate::graph::fixtures::*;

    #[test]
    fn four_member_has_four_members() {
        let dags = enumerate_dags(&four_member_cpdag(), EnumLimits::default()).unwrap();
        assert_eq!(dags.len(), 4);
        let mut pa: Vec<Vec<usize>> = dags.iter().map(|d| d.parents(0)).collect();
        pa.sort();
        assert_eq!(pa, vec![vec![], vec![1], vec![1], vec![3]]);
        for d in &dags {
            assert_eq!(cpdag_from_dag(d), four_member_cpdag());
        }
    }

    #[test]
    fn dag_input_gives_singleton() {
        let d = four_member_g1();
        assert_eq!(enumerate_dags(&d, EnumLimits::default()).unwrap(), vec![d]);
    }

    #[test]
    fn triangle_has_six_members() {
        assert_eq!(enumerate_dags(&Pdag::complete(3), EnumLimits::default()).unwrap().len(), 6);
    }

    #[test]
    fn component_cap_is_enforced() {
        let g = Pdag::complete(6); // 15 undirected edges
        assert!(matches!(enumerate_dags(&g, EnumLimits::default()), Err(Error::Resource(_))));
        let dags = enumerate_dags(&g, EnumLimits { max_component_edges: 15, max_dags: 1000 }).unwrap();
        assert_eq!(dags.len(), 720);
    }

    #[test]
    fn output_is_lexicographic() {
        let dags = enumerate_dags(&Pdag::complete(3), EnumLimits::default()).unwrap();
        // first member orients every edge low -> high
        assert_eq!(dags[0].directed_edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn four_cycle_is_rejected() {
        let mut g = Pdag::new(4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            g.add_undirected(u, v).unwrap();
        }
        assert_eq!(enumerate_dags(&g, EnumLimits::default()), Err(Error::NotExtendable));
    }
}
