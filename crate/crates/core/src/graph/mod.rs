//! Simple undirected graphs with dense adjacency.

pub mod shape;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use shape::{recognize, Component, ShapeDescriptor, ShapeExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("malformed shape expression: {0}")]
    MalformedExpression(String),
}

/// Finite simple graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self { n, adj: vec![false; n * n], labels: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(k: usize) -> Self {
        let mut g = Self::new(k);
        for u in 0..k {
            for v in u + 1..k {
                g.set(u, v, true);
            }
        }
        g
    }

    /// `K1 ∨ mK2`: vertex 0 is the hub, pairs `(2i+1, 2i+2)` are the blades.
    pub fn friendship(m: usize) -> Self {
        let mut g = Self::new(2 * m + 1);
        for i in 0..m {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            g.set(0, a, true);
            g.set(0, b, true);
            g.set(a, b, true);
        }
        g
    }

    /// Central triangle with one further triangle hanging on each of its
    /// vertices (9 vertices, 12 edges).
    pub fn graph_d() -> Self {
        // A B C D E F G H I -> 0..8
        Self::from_edges(
            9,
            &[
                (0, 1), (0, 2), (1, 2),
                (2, 3), (2, 4), (3, 4),
                (4, 5), (4, 6), (5, 6),
                (3, 7), (3, 8), (7, 8),
            ],
        )
        .expect("static edge list is valid")
    }

    /// Star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Self {
        let mut g = Self::new(k + 1);
        for v in 1..=k {
            g.set(0, v, true);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    fn set(&mut self, u: usize, v: usize, value: bool) {
        self.adj[u * self.n + v] = value;
        self.adj[v * self.n + u] = value;
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set(u, v, true);
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n].iter().filter(|&&b| b).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adj[v * self.n + u])
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u * self.n + v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v, true);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut g = Self::new(n);
        for (u, v) in self.edges() {
            g.set(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set(self.n + u, self.n + v, true);
        }
        g
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Self) -> Self {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.set(u, self.n + v, true);
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = Self::new(self.n);
        for (u, v) in self.edges() {
            g.set(perm[u], perm[v], true);
        }
        g
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = Self::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.set(i, j, true);
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        g
    }

    /// Connected components ordered by smallest original vertex. Each carries
    /// the original vertex indices in increasing order.
    pub fn components(&self) -> Vec<ComponentView> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut verts = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                verts.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            verts.sort_unstable();
            out.push(ComponentView { graph: self.induced(&verts), vertices: verts });
        }
        out
    }

    /// Graphviz rendering with one colour per connected component.
    pub fn to_dot(&self, name: &str) -> String {
        const PALETTE: [&str; 8] = [
            "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
            "#7f7f7f",
        ];
        let mut colour = vec![0usize; self.n];
        for (i, c) in self.components().iter().enumerate() {
            for &v in &c.vertices {
                colour[v] = i;
            }
        }
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{}\" {{", escape(name));
        for v in 0..self.n {
            let label = match &self.labels {
                Some(l) => escape(&l[v]),
                None => v.to_string(),
            };
            let _ = writeln!(
                s,
                "  {v} [label=\"{label}\", style=filled, fillcolor=\"{}\"];",
                PALETTE[colour[v] % PALETTE.len()]
            );
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A connected component with back-references into the parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentView {
    pub graph: SimpleGraph,
    pub vertices: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        assert_eq!(SimpleGraph::complete(8).edge_count(), 28);
        let f = SimpleGraph::friendship(3);
        assert_eq!((f.n(), f.edge_count()), (7, 9));
        assert_eq!(f.degree(0), 6);
        let d = SimpleGraph::graph_d();
        assert_eq!((d.n(), d.edge_count()), (9, 12));
        assert_eq!(SimpleGraph::star(5).edge_count(), 5);
    }

    #[test]
    fn complement_is_involution() {
        let g = SimpleGraph::friendship(2).disjoint_union(&SimpleGraph::complete(3));
        let c = g.complement();
        assert_eq!(c.edge_count(), 8 * 7 / 2 - g.edge_count());
        assert_eq!(c.complement(), g);
    }

    #[test]
    fn edge_errors() {
        let mut g = SimpleGraph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert_eq!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
    }

    #[test]
    fn components_keep_back_references() {
        let g = SimpleGraph::from_edges(6, &[(0, 4), (1, 2), (4, 5)]).unwrap();
        let comps = g.components();
        let verts: Vec<_> = comps.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(verts, vec![vec![0, 4, 5], vec![1, 2], vec![3]]);
        assert_eq!(comps[0].graph.edge_count(), 2);
    }

    #[test]
    fn join_counts() {
        let g = SimpleGraph::new(1).join(&SimpleGraph::complete(2).disjoint_union(&SimpleGraph::complete(2)));
        assert_eq!(g, SimpleGraph::friendship(2));
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = SimpleGraph::complete(3).to_dot("k3");
        assert!(dot.starts_with("graph \"k3\" {"));
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
