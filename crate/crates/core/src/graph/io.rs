//! Graph serialization: a JSON document and a line-oriented edge list.
//!
//! JSON: `{"p": 3, "names": ["a", "b", "c"], "edges": [{"from": 0, "to": 1, "directed": true}]}`
//! where `p` is the vertex count and undirected edges are stored once with
//! `from < to`.
//!
//! Edge list: one edge per line, `u -> v` or `u -- v`, vertices by name when
//! names are given and by index otherwise. `#` starts a comment.

use serde::{Deserialize, Serialize};

use super::{Edge, Pdag};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub p: usize,
    pub names: Vec<String>,
    pub edges: Vec<Edge>,
}

impl GraphDoc {
    pub fn new(g: &Pdag, names: Option<&[String]>) -> Self {
        let names = match names {
            Some(n) => n.to_vec(),
            None => (0..g.vertex_count()).map(|i| format!("X{}", i + 1)).collect(),
        };
        GraphDoc { p: g.vertex_count(), names, edges: g.edges() }
    }

    pub fn to_graph(&self) -> Result<Pdag> {
        if !self.names.is_empty() && self.names.len() != self.p {
            return Err(Error::Parse(format!("{} names for {} vertices", self.names.len(), self.p)));
        }
        for e in &self.edges {
            if !e.directed && e.from > e.to {
                return Err(Error::Parse(format!("undirected edge {} -- {} not stored with from < to", e.from, e.to)));
            }
        }
        Pdag::from_edges(self.p, &self.edges).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn to_json(g: &Pdag, names: Option<&[String]>) -> String {
    serde_json::to_string_pretty(&GraphDoc::new(g, names)).expect("graph serializes")
}

pub fn from_json(s: &str) -> Result<(Pdag, Vec<String>)> {
    let doc: GraphDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((doc.to_graph()?, doc.names))
}

pub fn to_edge_list(g: &Pdag, names: Option<&[String]>) -> String {
    let label = |v: usize| names.map_or_else(|| v.to_string(), |n| n[v].clone());
    g.edges()
        .into_iter()
        .map(|e| format!("{} {} {}\n", label(e.from), if e.directed { "->" } else { "--" }, label(e.to)))
        .collect()
}

pub fn from_edge_list(s: &str, n: usize, names: Option<&[String]>) -> Result<Pdag> {
    let lookup = |tok: &str| -> Result<usize> {
        match names {
            Some(ns) => ns.iter().position(|x| x == tok),
            None => tok.parse().ok(),
        }
        .ok_or_else(|| Error::Parse(format!("unknown vertex `{tok}`")))
    };
    let mut g = Pdag::new(n);
    for (ln, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [a, mark, b] = toks[..] else {
            return Err(Error::Parse(format!("line {}: expected `u -> v` or `u -- v`", ln + 1)));
        };
        let (u, v) = (lookup(a)?, lookup(b)?);
        let res = match mark {
            "->" => g.add_directed(u, v),
            "<-" => g.add_directed(v, u),
            "--" => g.add_undirected(u, v),
            other => return Err(Error::Parse(format!("line {}: unknown edge mark `{other}`", ln + 1))),
        };
        res.map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?;
    }
    Ok(g)
}
