use super::{Dag, Pdag, Vertex};
use crate::error::{Error, Result};

/// Consistent extension by repeated sink removal (Dor and Tarsi).
///
/// A remaining vertex `x` may be removed when it has no outgoing arc into the
/// remaining graph and each of its undirected neighbours is adjacent to all
/// other remaining neighbours of `x`. Its undirected edges are then pointed
/// into `x`. The smallest eligible index is taken at every step.
pub fn extend_to_dag(g: &Pdag) -> Result<Dag> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut out = g.clone();
    for _ in 0..n {
        let x = (0..n).filter(|&x| alive[x]).find(|&x| removable(g, &alive, x)).ok_or(Error::NotExtendable)?;
        for y in g.siblings(x) {
            if alive[y] {
                out.set_directed(y, x);
            }
        }
        alive[x] = false;
    }
    Dag::new(out)
}

pub fn is_extendable(g: &Pdag) -> bool {
    extend_to_dag(g).is_ok()
}

fn removable(g: &Pdag, alive: &[bool], x: Vertex) -> bool {
    if g.children(x).into_iter().any(|c| alive[c]) {
        return false;
    }
    let nbrs: Vec<Vertex> = g.adjacent(x).into_iter().filter(|&v| alive[v]).collect();
    g.siblings(x).into_iter().filter(|&y| alive[y]).all(|y| nbrs.iter().all(|&z| z == y || g.is_adjacent(y, z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn four_member_extends_to_a_member() {
        let g = four_member_cpdag();
        let d = extend_to_dag(&g).unwrap();
        assert!(d.same_skeleton(&g));
        assert_eq!(d.v_structures(), g.v_structures());
    }

    #[test]
    fn four_cycle_is_not_extendable() {
        let mut g = Pdag::new(4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            g.add_undirected(u, v).unwrap();
        }
        assert_eq!(extend_to_dag(&g), Err(Error::NotExtendable));
        assert!(!is_extendable(&g));
    }

    #[test]
    fn dag_extends_to_itself() {
        let d = four_member_g1();
        assert_eq!(extend_to_dag(&d).unwrap(), d);
    }

    #[test]
    fn directed_cycle_is_not_extendable() {
        let mut g = Pdag::new(3);
        g.add_directed(0, 1).unwrap();
        g.add_directed(1, 2).unwrap();
        g.add_directed(2, 0).unwrap();
        assert!(!is_extendable(&g));
    }
}
