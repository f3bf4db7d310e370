//! Metric multigraphs with contact vertices.
//!
//! A [`MetricGraph`] is a list of edges, each owning two globally unique
//! endpoint ids, together with a partition of all endpoints into vertex
//! classes. Loops (both endpoints in one class) and parallel edges are
//! allowed. An ordered subset of vertices forms the contact set used by the
//! M-function layer.

mod canonical;
mod discrete;
pub mod format;
mod surgery;

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use canonical::{canonical_form, metric_form, DEFAULT_CANONICAL_BOUND};
pub(crate) use canonical::degree_canonical_form;
pub use discrete::DiscreteGraph;
pub use surgery::{compose, Part};

/// An edge with two endpoint ids and an exact positive length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub length: BigRational,
}

/// A metric graph: edges with lengths, a vertex partition of edge endpoints
/// and an ordered contact set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGraph {
    name: String,
    edges: Vec<Edge>,
    vertices: Vec<Vec<usize>>,
    contacts: Vec<usize>,
}

/// A single broken invariant reported by [`MetricGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EndpointInMultipleClasses(usize),
    EndpointWithoutClass(usize),
    UnknownEndpoint(usize),
    EndpointReused(usize),
    NonpositiveLength(usize),
    EmptyVertex(usize),
    ContactOutOfRange(usize),
    DuplicateContact(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EndpointInMultipleClasses(x) => {
                write!(f, "endpoint in multiple classes (endpoint {x})")
            }
            Violation::EndpointWithoutClass(x) => write!(f, "endpoint without vertex (endpoint {x})"),
            Violation::UnknownEndpoint(x) => {
                write!(f, "vertex class lists unknown endpoint {x}")
            }
            Violation::EndpointReused(x) => write!(f, "endpoint {x} belongs to several edges"),
            Violation::NonpositiveLength(e) => write!(f, "nonpositive length (edge {e})"),
            Violation::EmptyVertex(v) => write!(f, "empty vertex class {v}"),
            Violation::ContactOutOfRange(v) => write!(f, "contact {v} out of range"),
            Violation::DuplicateContact(v) => write!(f, "duplicate contact {v}"),
        }
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl MetricGraph {
    /// Builds a graph from vertex-level edge triples `(u, v, length)`.
    ///
    /// Endpoint ids are assigned as `2e` and `2e + 1`. Every vertex in
    /// `0..vertex_count` must be incident to at least one edge.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(usize, usize, BigRational)],
        contacts: Vec<usize>,
    ) -> Result<Self> {
        let mut vertices = vec![Vec::new(); vertex_count];
        let mut out = Vec::with_capacity(edges.len());
        for (e, (u, v, length)) in edges.iter().enumerate() {
            if *u >= vertex_count || *v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} references vertex outside 0..{vertex_count}"
                )));
            }
            vertices[*u].push(2 * e);
            vertices[*v].push(2 * e + 1);
            out.push(Edge { a: 2 * e, b: 2 * e + 1, length: length.clone() });
        }
        Self::from_parts(String::new(), out, vertices, contacts)
    }

    /// Unit-length convenience constructor.
    pub fn unit(vertex_count: usize, edges: &[(usize, usize)], contacts: Vec<usize>) -> Result<Self> {
        let triples: Vec<_> = edges.iter().map(|&(u, v)| (u, v, BigRational::one())).collect();
        Self::from_edges(vertex_count, &triples, contacts)
    }

    /// Builds a graph from raw parts and rejects it if any invariant fails.
    pub fn from_parts(
        name: String,
        edges: Vec<Edge>,
        vertices: Vec<Vec<usize>>,
        contacts: Vec<usize>,
    ) -> Result<Self> {
        let g = Self::from_raw(name, edges, vertices, contacts);
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            let msg: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidGraph(msg.join("; ")))
        }
    }

    /// Builds a graph without checking invariants; pair with [`validate`](Self::validate).
    pub fn from_raw(
        name: String,
        edges: Vec<Edge>,
        mut vertices: Vec<Vec<usize>>,
        contacts: Vec<usize>,
    ) -> Self {
        for class in &mut vertices {
            class.sort_unstable();
        }
        MetricGraph { name, edges, vertices, contacts }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for (e, edge) in self.edges.iter().enumerate() {
            for x in [edge.a, edge.b] {
                if owner.insert(x, e).is_some() {
                    out.push(Violation::EndpointReused(x));
                }
            }
            if !edge.length.is_positive() {
                out.push(Violation::NonpositiveLength(e));
            }
        }
        let mut seen: HashSet<usize> = HashSet::new();
        for (v, class) in self.vertices.iter().enumerate() {
            if class.is_empty() {
                out.push(Violation::EmptyVertex(v));
            }
            for &x in class {
                if !owner.contains_key(&x) {
                    out.push(Violation::UnknownEndpoint(x));
                } else if !seen.insert(x) {
                    out.push(Violation::EndpointInMultipleClasses(x));
                }
            }
        }
        let mut all: Vec<usize> = owner.keys().copied().collect();
        all.sort_unstable();
        for x in all {
            if !seen.contains(&x) {
                out.push(Violation::EndpointWithoutClass(x));
            }
        }
        let mut contact_seen = HashSet::new();
        for &c in &self.contacts {
            if c >= self.vertices.len() {
                out.push(Violation::ContactOutOfRange(c));
            } else if !contact_seen.insert(c) {
                out.push(Violation::DuplicateContact(c));
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn contacts(&self) -> &[usize] {
        &self.contacts
    }

    /// Replaces the contact set. Indices must be valid and distinct.
    pub fn with_contacts(&self, contacts: Vec<usize>) -> Result<Self> {
        let g = MetricGraph { contacts, ..self.clone() };
        match g.validate().into_iter().next() {
            None => Ok(g),
            Some(v) => Err(Error::InvalidGraph(v.to_string())),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    pub fn is_contact(&self, v: usize) -> bool {
        self.contacts.contains(&v)
    }

    /// Maps each endpoint id to its vertex index.
    pub fn endpoint_vertex(&self) -> HashMap<usize, usize> {
        let mut map = HashMap::with_capacity(2 * self.edges.len());
        for (v, class) in self.vertices.iter().enumerate() {
            for &x in class {
                map.insert(x, v);
            }
        }
        map
    }

    /// Vertex pair `(vertex of a, vertex of b)` for every edge.
    ///
    /// # Panics
    /// If an endpoint has no vertex class (the graph is invalid).
    pub fn edge_vertices(&self) -> Vec<(usize, usize)> {
        let map = self.endpoint_vertex();
        self.edges
            .iter()
            .map(|e| {
                let u = *map.get(&e.a).expect("endpoint without vertex class");
                let v = *map.get(&e.b).expect("endpoint without vertex class");
                (u, v)
            })
            .collect()
    }

    pub fn total_length(&self) -> BigRational {
        self.edges.iter().fold(BigRational::zero(), |acc, e| acc + &e.length)
    }

    pub fn is_unilateral(&self) -> bool {
        self.edges.iter().all(|e| e.length.is_one())
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for (u, v) in self.edge_vertices() {
            uf.union(u, v);
        }
        uf.count()
    }

    /// First Betti number `N - M + C`.
    pub fn betti(&self) -> usize {
        self.edges.len() + self.components() - self.vertices.len()
    }

    /// Vertex-level edge triples, in edge order.
    pub fn edge_triples(&self) -> Vec<(usize, usize, BigRational)> {
        self.edge_vertices()
            .into_iter()
            .zip(&self.edges)
            .map(|((u, v), e)| (u, v, e.length.clone()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
