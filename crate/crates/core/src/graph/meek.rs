use super::{Pdag, Vertex};

/// Applies the four Meek orientation rules until no undirected edge changes.
///
/// Only undirected edges are ever oriented; existing arrowheads are left as
/// they are. Edges are visited in canonical order so the result is
/// reproducible even on inconsistent inputs.
pub fn meek_closure(g: &Pdag) -> Pdag {
    let mut g = g.clone();
    loop {
        let mut changed = false;
        for (u, v) in g.undirected_edges() {
            if forces(&g, u, v) {
                g.set_directed(u, v);
                changed = true;
            } else if forces(&g, v, u) {
                g.set_directed(v, u);
                changed = true;
            }
        }
        if !changed {
            return g;
        }
    }
}

/// Whether one of the rules orients the undirected edge `a - b` as `a -> b`.
fn forces(g: &Pdag, a: Vertex, b: Vertex) -> bool {
    rule1(g, a, b) || rule2(g, a, b) || rule3(g, a, b) || rule4(g, a, b)
}

// c -> a - b, c and b nonadjacent
fn rule1(g: &Pdag, a: Vertex, b: Vertex) -> bool {
    g.parents(a).into_iter().any(|c| c != b && !g.is_adjacent(c, b))
}

// a -> c -> b
fn rule2(g: &Pdag, a: Vertex, b: Vertex) -> bool {
    g.children(a).into_iter().any(|c| g.has_directed(c, b))
}

// a - c -> b and a - d -> b with c, d nonadjacent
fn rule3(g: &Pdag, a: Vertex, b: Vertex) -> bool {
    let cands: Vec<Vertex> = g.siblings(a).into_iter().filter(|&c| c != b && g.has_directed(c, b)).collect();
    cands.iter().enumerate().any(|(k, &c)| cands[k + 1..].iter().any(|&d| !g.is_adjacent(c, d)))
}

// a - c -> d -> b with a, d adjacent and c, b nonadjacent
fn rule4(g: &Pdag, a: Vertex, b: Vertex) -> bool {
    g.siblings(a)
        .into_iter()
        .filter(|&c| c != b && !g.is_adjacent(c, b))
        .any(|c| g.children(c).into_iter().any(|d| d != a && g.is_adjacent(a, d) && g.has_directed(d, b)))
}
