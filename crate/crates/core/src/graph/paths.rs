use super::{enumerate_dags, EnumLimits, Pdag, Vertex};
use crate::error::{Error, Result};

/// Which neighbours of a vertex [`reachable_toward`] filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Over {
    Parents,
    Siblings,
}

fn search(g: &Pdag, from: Vertex, to: Vertex, step: impl Fn(Vertex, Vertex) -> bool) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for z in 0..n {
            if !seen[z] && step(x, z) {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    false
}

/// Reachability of `y` from `i` along directed edges only.
pub fn has_directed_path(g: &Pdag, i: Vertex, y: Vertex) -> bool {
    search(g, i, y, |a, b| g.has_directed(a, b))
}

/// Reachability of `y` from `i` along edges `a -> b` or `a - b`.
pub fn has_possibly_directed_path(g: &Pdag, i: Vertex, y: Vertex) -> bool {
    search(g, i, y, |a, b| g.has_directed(a, b) || g.has_undirected(a, b))
}

/// Whether some member of the equivalence class of `g` has a directed path
/// from `i` to `y`.
///
/// Settles the easy cases first: an existing directed path answers yes, and
/// no path along `->`/`-` edges answers no. Otherwise the class is enumerated
/// under `limits`.
pub fn allows_directed_path(g: &Pdag, i: Vertex, y: Vertex, limits: EnumLimits) -> Result<bool> {
    if i == y {
        return Err(Error::Precondition("source and target coincide".into()));
    }
    if has_directed_path(g, i, y) {
        return Ok(true);
    }
    if !has_possibly_directed_path(g, i, y) {
        return Ok(false);
    }
    Ok(enumerate_dags(g, limits)?.iter().any(|d| has_directed_path(d, i, y)))
}

/// Members of `pa_i` (or `sib_i`) joined to `y` by a skeleton path that
/// avoids `i`.
pub fn reachable_toward(g: &Pdag, i: Vertex, y: Vertex, over: Over) -> Vec<Vertex> {
    let cands = match over {
        Over::Parents => g.parents(i),
        Over::Siblings => g.siblings(i),
    };
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    seen[i] = true;
    let mut reach = vec![false; n];
    if y != i {
        let mut stack = vec![y];
        seen[y] = true;
        while let Some(x) = stack.pop() {
            reach[x] = true;
            for z in 0..n {
                if !seen[z] && g.is_adjacent(x, z) {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    cands.into_iter().filter(|&v| reach[v]).collect()
}
