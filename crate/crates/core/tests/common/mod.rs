#![allow(dead_code)]

use num_rational::BigRational;
use proptest::prelude::*;
use specgraph::graph::{DiscreteGraph, MetricGraph};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Connected multigraph: a random spanning tree plus extra edges (loops and
/// parallel edges allowed).
pub fn connected_edges(max_n: usize, max_extra: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(move |n| {
        let tree = (1..n).map(|i| (0..i).prop_map(move |p| (p, i))).collect::<Vec<_>>();
        let extra = prop::collection::vec((0..n, 0..n), 0..=max_extra);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let mut e = tree;
            e.extend(extra);
            (n, e)
        })
    })
}

/// Connected simple graph on `2..=max_n` vertices.
pub fn connected_simple(max_n: usize) -> impl Strategy<Value = DiscreteGraph> {
    connected_edges(max_n, 10).prop_map(|(n, edges)| {
        let mut d = DiscreteGraph::empty(n);
        for (u, v) in edges {
            if u != v && d.adj(u, v) == 0 {
                d.add_edge(u, v);
            }
        }
        d
    })
}

pub fn unit_graph(max_n: usize, max_extra: usize) -> impl Strategy<Value = MetricGraph> {
    connected_edges(max_n, max_extra).prop_map(|(n, e)| MetricGraph::unit(n, &e, vec![]).unwrap())
}

/// Connected graph with rational lengths in (0, 4] and a nonempty contact
/// set.
pub fn metric_graph_with_contacts(max_n: usize, max_extra: usize) -> impl Strategy<Value = MetricGraph> {
    connected_edges(max_n, max_extra)
        .prop_flat_map(|(n, e)| {
            let m = e.len();
            (
                Just(n),
                Just(e),
                prop::collection::vec((1i64..=8, 1i64..=3), m),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(n, e, lens, mut mask)| {
            mask[0] = true;
            let triples: Vec<_> = e.iter().zip(&lens).map(|(&(u, v), &(a, b))| (u, v, rat(a, 2 * b))).collect();
            let contacts = (0..n).filter(|&v| mask[v]).collect();
            MetricGraph::from_edges(n, &triples, contacts).unwrap()
        })
}
