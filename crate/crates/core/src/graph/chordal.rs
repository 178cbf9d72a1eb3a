use std::collections::BTreeSet;

use super::{Dag, Pdag, Vertex};
use crate::error::{Error, Result};

/// Connected components (with at least one edge) of the undirected part of
/// `g`, each sorted, ordered by smallest member.
pub fn undirected_components(g: &Pdag) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] || g.siblings(s).is_empty() {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            for t in g.siblings(comp[k]) {
                if !seen[t] {
                    seen[t] = true;
                    comp.push(t);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Whether every connected component of the undirected part of `g` is chordal.
/// Directed edges are ignored.
pub fn is_chordal(g: &Pdag) -> bool {
    undirected_components(g).iter().all(|c| perfect_elimination_order(g, c, &[]).is_some())
}

/// Perfect elimination scheme of the undirected subgraph induced by
/// `vertices`, or `None` if that subgraph is not chordal.
///
/// Every vertex is simplicial among those that follow it. A non-empty `tail`
/// pins the end of the order: once the remaining vertices form a clique they
/// are emitted as (remaining minus `tail`, ascending) followed by `tail` in the
/// given order; before that only vertices outside `tail` are eliminated. This
/// fails when `tail` is not a clique.
pub fn perfect_elimination_order(g: &Pdag, vertices: &[Vertex], tail: &[Vertex]) -> Option<Vec<Vertex>> {
    let mut rest: BTreeSet<Vertex> = vertices.iter().copied().collect();
    if tail.iter().any(|t| !rest.contains(t)) {
        return None;
    }
    let mut order = Vec::with_capacity(rest.len());
    loop {
        let members: Vec<Vertex> = rest.iter().copied().collect();
        if is_clique(g, &members) {
            order.extend(members.into_iter().filter(|v| !tail.contains(v)));
            order.extend_from_slice(tail);
            return Some(order);
        }
        let pick = members.iter().copied().find(|&v| {
            !tail.contains(&v) && {
                let nb: Vec<Vertex> = g.siblings(v).into_iter().filter(|u| rest.contains(u)).collect();
                is_clique(g, &nb)
            }
        })?;
        order.push(pick);
        rest.remove(&pick);
    }
}

fn is_clique(g: &Pdag, vs: &[Vertex]) -> bool {
    vs.iter().enumerate().all(|(k, &u)| vs[k + 1..].iter().all(|&v| g.has_undirected(u, v)))
}

/// Directs each undirected edge between vertices of `order` from the later
/// vertex to the earlier one.
pub fn orient_by_elimination(g: &Pdag, order: &[Vertex]) -> Pdag {
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let mut out = g.clone();
    for (u, v) in g.undirected_edges() {
        if pos[u] == usize::MAX || pos[v] == usize::MAX {
            continue;
        }
        if pos[u] < pos[v] {
            out.set_directed(v, u);
        } else {
            out.set_directed(u, v);
        }
    }
    out
}

/// A member of the class of `g` in which the parents of `i` are exactly
/// `parents(g, i) ∪ s`, built from perfect elimination schemes of the
/// undirected components.
pub fn extension_with_parents(g: &Pdag, i: Vertex, s: &[Vertex]) -> Result<Dag> {
    if !g.is_locally_valid(i, s)? {
        return Err(Error::NotExtendable);
    }
    let mut out = g.clone();
    for comp in undirected_components(g) {
        let tail: Vec<Vertex> =
            if comp.contains(&i) { std::iter::once(i).chain(s.iter().copied()).collect() } else { Vec::new() };
        let order = perfect_elimination_order(g, &comp, &tail).ok_or(Error::NotExtendable)?;
        out = orient_by_elimination(&out, &order);
    }
    let d = Dag::new(out).map_err(|_| Error::NotExtendable)?;
    if d.v_structures() != g.v_structures() {
        return Err(Error::NotExtendable);
    }
    Ok(d)
}
