//! Partially directed graphs and the combinatorics of Markov equivalence
//! classes: orientation, Meek closure, consistent extension, chordality and
//! enumeration of class members.

mod chordal;
mod enumerate;
mod extend;
pub mod io;
mod meek;
mod paths;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chordal::{
    extension_with_parents, is_chordal, orient_by_elimination, perfect_elimination_order, undirected_components,
};
pub use enumerate::{enumerate_dags, EnumLimits};
pub use extend::{extend_to_dag, is_extendable};
pub use meek::meek_closure;
pub use paths::{allows_directed_path, has_directed_path, has_possibly_directed_path, reachable_toward, Over};

pub type Vertex = usize;

/// Mark of the edge between a row vertex and a column vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
enum Cell {
    #[default]
    Absent,
    Undirected,
    /// row -> column
    Out,
    /// row <- column
    In,
}

/// A single edge as reported by [`Pdag::edges`]. Undirected edges have
/// `from < to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub directed: bool,
}

/// Graph with directed and undirected edges, at most one per vertex pair.
///
/// Stored as a dense mark matrix so adjacency and orientation queries are
/// constant time; vertex sets are returned sorted by index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pdag {
    n: usize,
    cells: Vec<Cell>,
}

impl Pdag {
    /// Graph on `n` vertices without edges.
    pub fn new(n: usize) -> Self {
        Self { n, cells: vec![Cell::Absent; n * n] }
    }

    /// Complete undirected graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_undirected(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = Self::new(n);
        for e in edges {
            if e.directed {
                g.add_directed(e.from, e.to)?;
            } else {
                g.add_undirected(e.from, e.to)?;
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn cell(&self, u: Vertex, v: Vertex) -> Cell {
        self.cells[u * self.n + v]
    }

    fn put(&mut self, u: Vertex, v: Vertex, c: Cell) {
        let mirror = match c {
            Cell::Out => Cell::In,
            Cell::In => Cell::Out,
            other => other,
        };
        self.cells[u * self.n + v] = c;
        self.cells[v * self.n + u] = mirror;
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Precondition(format!("vertex out of range ({u}, {v}) for n = {}", self.n)));
        }
        if u == v {
            return Err(Error::Precondition(format!("self-loop at {u}")));
        }
        Ok(())
    }

    /// Adds `u - v`; fails if the pair already carries an edge.
    pub fn add_undirected(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        if self.is_adjacent(u, v) {
            return Err(Error::Precondition(format!("parallel edge {u} - {v}")));
        }
        self.put(u, v, Cell::Undirected);
        Ok(())
    }

    /// Adds `u -> v`; fails if the pair already carries an edge.
    pub fn add_directed(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        if self.is_adjacent(u, v) {
            return Err(Error::Precondition(format!("parallel edge {u} -> {v}")));
        }
        self.put(u, v, Cell::Out);
        Ok(())
    }

    /// Sets the pair to `u -> v`, replacing whatever was there.
    pub fn set_directed(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v);
        self.put(u, v, Cell::Out);
    }

    /// Sets the pair to `u - v`, replacing whatever was there.
    pub fn set_undirected(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v);
        self.put(u, v, Cell::Undirected);
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.put(u, v, Cell::Absent);
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.cell(u, v) != Cell::Absent
    }

    /// True iff `u -> v`.
    pub fn has_directed(&self, u: Vertex, v: Vertex) -> bool {
        self.cell(u, v) == Cell::Out
    }

    pub fn has_undirected(&self, u: Vertex, v: Vertex) -> bool {
        self.cell(u, v) == Cell::Undirected
    }

    fn collect(&self, i: Vertex, want: Cell) -> Vec<Vertex> {
        (0..self.n).filter(|&j| self.cell(i, j) == want).collect()
    }

    /// All `j` with `j -> i`.
    pub fn parents(&self, i: Vertex) -> Vec<Vertex> {
        self.collect(i, Cell::In)
    }

    /// All `j` with `i -> j`.
    pub fn children(&self, i: Vertex) -> Vec<Vertex> {
        self.collect(i, Cell::Out)
    }

    /// All `j` with `i - j`.
    pub fn siblings(&self, i: Vertex) -> Vec<Vertex> {
        self.collect(i, Cell::Undirected)
    }

    pub fn adjacent(&self, i: Vertex) -> Vec<Vertex> {
        (0..self.n).filter(|&j| self.is_adjacent(i, j)).collect()
    }

    pub fn degree(&self, i: Vertex) -> usize {
        (0..self.n).filter(|&j| self.is_adjacent(i, j)).count()
    }

    /// Edges in canonical order: sorted by `(min, max)` vertex pair.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                match self.cell(u, v) {
                    Cell::Absent => {}
                    Cell::Undirected => out.push(Edge { from: u, to: v, directed: false }),
                    Cell::Out => out.push(Edge { from: u, to: v, directed: true }),
                    Cell::In => out.push(Edge { from: v, to: u, directed: true }),
                }
            }
        }
        out
    }

    /// Undirected edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn undirected_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges().into_iter().filter(|e| !e.directed).map(|e| (e.from, e.to)).collect()
    }

    pub fn directed_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges().into_iter().filter(|e| e.directed).map(|e| (e.from, e.to)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.cells.iter().filter(|c| **c != Cell::Absent).count() / 2
    }

    pub fn undirected_count(&self) -> usize {
        self.cells.iter().filter(|c| **c == Cell::Undirected).count() / 2
    }

    /// Same adjacencies, every edge undirected.
    pub fn skeleton(&self) -> Pdag {
        let mut s = Pdag::new(self.n);
        for e in self.edges() {
            s.set_undirected(e.from, e.to);
        }
        s
    }

    pub fn same_skeleton(&self, other: &Pdag) -> bool {
        self.n == other.n && (0..self.n).all(|u| (0..self.n).all(|v| self.is_adjacent(u, v) == other.is_adjacent(u, v)))
    }

    /// Topological order of the directed part, or `None` if it has a cycle.
    /// Ties are broken by smallest vertex index.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|i| self.parents(i).len()).collect();
        let mut ready: BTreeSet<Vertex> = (0..self.n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for c in self.children(v) {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_directed_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// All v-structures `left -> collider <- right`, `left < right`.
    pub fn v_structures(&self) -> BTreeSet<VStructure> {
        let mut out = BTreeSet::new();
        for j in 0..self.n {
            let pa = self.parents(j);
            for (a, &i) in pa.iter().enumerate() {
                for &k in &pa[a + 1..] {
                    if !self.is_adjacent(i, k) {
                        out.insert(VStructure { left: i, collider: j, right: k });
                    }
                }
            }
        }
        out
    }

    /// `G_{S -> i}`: siblings of `i` in `s` point into `i`, the remaining
    /// siblings point away from it.
    pub fn orient_siblings(&self, i: Vertex, s: &[Vertex]) -> Result<Pdag> {
        let sib = self.siblings(i);
        if let Some(bad) = s.iter().find(|v| !sib.contains(v)) {
            return Err(Error::Precondition(format!("{bad} is not a sibling of {i}")));
        }
        let mut g = self.clone();
        for &j in &sib {
            if s.contains(&j) {
                g.set_directed(j, i);
            } else {
                g.set_directed(i, j);
            }
        }
        Ok(g)
    }

    /// Whether `G_{S -> i}` avoids new v-structures with collider `i`:
    /// members of `s` are pairwise adjacent and adjacent to every parent of `i`.
    pub fn is_locally_valid(&self, i: Vertex, s: &[Vertex]) -> Result<bool> {
        let sib = self.siblings(i);
        if let Some(bad) = s.iter().find(|v| !sib.contains(v)) {
            return Err(Error::Precondition(format!("{bad} is not a sibling of {i}")));
        }
        let pa = self.parents(i);
        for (a, &u) in s.iter().enumerate() {
            if s[a + 1..].iter().any(|&v| !self.is_adjacent(u, v)) {
                return Ok(false);
            }
            if pa.iter().any(|&p| !self.is_adjacent(u, p)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Structural validity report for a graph claimed to be a CPDAG.
    pub fn validate(&self) -> CpdagReport {
        let directed_acyclic = self.is_directed_acyclic();
        let chordal_components = is_chordal(self);
        let extension = extend_to_dag(self).ok();
        let complete = extension.as_ref().is_some_and(|d| cpdag_from_dag(d) == *self);
        CpdagReport { directed_acyclic, chordal_components, extendable: extension.is_some(), complete }
    }
}

impl fmt::Debug for Pdag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pdag({}; {})", self.n, io::to_edge_list(self, None).trim_end().replace('\n', ", "))
    }
}

/// Outcome of [`Pdag::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpdagReport {
    pub directed_acyclic: bool,
    pub chordal_components: bool,
    pub extendable: bool,
    /// The graph equals the CPDAG of its own consistent extension.
    pub complete: bool,
}

impl CpdagReport {
    pub fn is_valid(&self) -> bool {
        self.directed_acyclic && self.chordal_components && self.extendable && self.complete
    }
}

/// `left -> collider <- right` with `left` and `right` nonadjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VStructure {
    pub left: Vertex,
    pub collider: Vertex,
    pub right: Vertex,
}

/// A fully directed acyclic [`Pdag`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dag(Pdag);

impl Dag {
    pub fn new(g: Pdag) -> Result<Self> {
        if g.undirected_count() > 0 {
            return Err(Error::Precondition("DAG may not contain undirected edges".into()));
        }
        if !g.is_directed_acyclic() {
            return Err(Error::Precondition("graph contains a directed cycle".into()));
        }
        Ok(Dag(g))
    }

    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Pdag::new(n);
        for &(u, v) in arcs {
            g.add_directed(u, v)?;
        }
        Dag::new(g)
    }

    pub fn into_inner(self) -> Pdag {
        self.0
    }

    pub fn topological_order(&self) -> Vec<Vertex> {
        self.0.topological_order().expect("DAG invariant")
    }

    /// Ancestors of `v`, including `v` itself.
    pub fn ancestors(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for p in self.0.parents(u) {
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        seen
    }
}

impl Deref for Dag {
    type Target = Pdag;
    fn deref(&self) -> &Pdag {
        &self.0
    }
}

/// CPDAG of the equivalence class of `d`: its skeleton with v-structure
/// arrowheads kept and the Meek rules run to a fixpoint.
pub fn cpdag_from_dag(d: &Dag) -> Pdag {
    let mut g = d.skeleton();
    for v in d.v_structures() {
        g.set_directed(v.left, v.collider);
        g.set_directed(v.right, v.collider);
    }
    meek_closure(&g)
}
