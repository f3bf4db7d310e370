use num_rational::BigRational;
use num_traits::One;

use super::MetricGraph;
use crate::error::{Error, Result};

/// Combinatorial shadow of a metric graph.
///
/// `adj(u, v)` for `u != v` counts parallel edges; `adj(u, u)` is twice the
/// number of loops at `u`, so row sums are metric degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteGraph {
    n: usize,
    adj: Vec<u32>,
}

impl DiscreteGraph {
    pub fn empty(n: usize) -> Self {
        DiscreteGraph { n, adj: vec![0; n * n] }
    }

    /// Builds from a row-major matrix; must be symmetric with even diagonal.
    pub fn from_matrix(n: usize, adj: Vec<u32>) -> Result<Self> {
        if adj.len() != n * n {
            return Err(Error::InvalidGraph("adjacency matrix has wrong size".into()));
        }
        for u in 0..n {
            if adj[u * n + u] % 2 != 0 {
                return Err(Error::InvalidGraph(format!("odd diagonal entry at {u}")));
            }
            for v in 0..u {
                if adj[u * n + v] != adj[v * n + u] {
                    return Err(Error::InvalidGraph("adjacency matrix not symmetric".into()));
                }
            }
        }
        Ok(DiscreteGraph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adj(&self, u: usize, v: usize) -> u32 {
        self.adj[u * self.n + v]
    }

    pub fn matrix(&self) -> &[u32] {
        &self.adj
    }

    /// Adds one edge; `u == v` adds a loop.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            self.adj[u * self.n + u] += 2;
        } else {
            self.adj[u * self.n + v] += 1;
            self.adj[v * self.n + u] += 1;
        }
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.adj[u * self.n..(u + 1) * self.n].iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = (0..self.n).map(|u| self.degree(u)).sum();
        (total / 2) as usize
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if !seen[v] && self.adj(u, v) > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Unilateral metric graph with this shadow and no contacts.
    pub fn to_metric(&self) -> Result<MetricGraph> {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for _ in 0..self.adj(u, u) / 2 {
                edges.push((u, u, BigRational::one()));
            }
            for v in u + 1..self.n {
                for _ in 0..self.adj(u, v) {
                    edges.push((u, v, BigRational::one()));
                }
            }
        }
        MetricGraph::from_edges(self.n, &edges, vec![])
    }

    /// Graph with vertex `v` relabelled `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> DiscreteGraph {
        let mut out = DiscreteGraph::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                out.adj[perm[u] * self.n + perm[v]] = self.adj(u, v);
            }
        }
        out
    }
}

impl MetricGraph {
    /// Forgets lengths and contacts.
    pub fn to_discrete(&self) -> DiscreteGraph {
        let mut d = DiscreteGraph::empty(self.vertex_count());
        for (u, v) in self.edge_vertices() {
            d.add_edge(u, v);
        }
        d
    }
}
