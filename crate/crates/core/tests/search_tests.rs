use std::collections::BTreeSet;

use specgraph::graph::{canonical_form, DiscreteGraph, MetricGraph};
use specgraph::search::{classify, enumerate_connected_multi, enumerate_connected_simple, enumerate_connected_simple_sharded, ClassifyKey};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Counts isomorphism classes of connected simple graphs by taking the
/// smallest relabelled edge mask of every connected mask.
fn brute_force_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if u != v && !seen[v] && mask >> index(u, v) & 1 == 1 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            continue;
        }
        let min = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .fold(0u32, |acc, (_, &(i, j))| acc | 1 << index(p[i], p[j]))
            })
            .min()
            .unwrap();
        classes.insert(min);
    }
    classes.len()
}

#[test]
fn counts_match_brute_force() {
    for n in 1..=5 {
        assert_eq!(enumerate_connected_simple(n).unwrap().len(), brute_force_count(n), "n = {n}");
    }
    assert_eq!(enumerate_connected_simple(5).unwrap().len(), 21);
    assert_eq!(enumerate_connected_simple(6).unwrap().len(), 112);
}

#[test]
fn shard_count_does_not_matter() {
    let one = enumerate_connected_simple_sharded(6, 1).unwrap();
    for shards in [2, 3, 7, 64] {
        assert_eq!(enumerate_connected_simple_sharded(6, shards).unwrap(), one);
    }
}

fn shuffled(graphs: &[DiscreteGraph], seed: u64) -> Vec<DiscreteGraph> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<DiscreteGraph> = graphs
        .iter()
        .map(|d| {
            let mut p: Vec<usize> = (0..d.n()).collect();
            p.shuffle(&mut rng);
            d.permuted(&p)
        })
        .collect();
    out.shuffle(&mut rng);
    out
}

fn structure(fams: &[specgraph::search::IsospectralFamily]) -> Vec<(String, Vec<Vec<u8>>)> {
    fams.iter()
        .map(|f| (f.key.to_string(), f.members.iter().map(|m| m.canonical.clone()).collect()))
        .collect()
}

#[test]
fn relabelled_inputs_give_identical_families() {
    let graphs = enumerate_connected_simple(5).unwrap();
    for key in [ClassifyKey::Ln, ClassifyKey::Secular] {
        let a = classify(&graphs, key).unwrap();
        let b = classify(&shuffled(&graphs, 7), key).unwrap();
        assert_eq!(structure(&a), structure(&b));
    }
}

#[test]
fn small_secular_families_are_singletons() {
    for n in 2..=4 {
        let fams = classify(&enumerate_connected_simple(n).unwrap(), ClassifyKey::Secular).unwrap();
        assert!(fams.iter().all(|f| f.members.len() == 1), "n = {n}");
    }
}

#[test]
fn family_members_share_the_key() {
    let graphs = enumerate_connected_simple(5).unwrap();
    for f in classify(&graphs, ClassifyKey::Ln).unwrap() {
        for m in &f.members {
            assert_eq!(specgraph::search::family_key(&m.graph, ClassifyKey::Ln).unwrap(), f.key);
        }
    }
}

fn suppressed_shadow(g: &MetricGraph) -> Vec<u8> {
    canonical_form(&g.with_contacts(vec![]).unwrap().suppress_degree2().to_discrete(), 8).unwrap()
}

/// The unit figure-eight and watermelon-on-a-stick have degree-2 vertices
/// that suppress to a bouquet of two loops and to a triple edge with a
/// pendant; those shadows must be enumerated.
#[test]
fn multigraph_shadows_are_enumerated() {
    use specgraph::constructions::{catalog, CatalogId};
    let eight = suppressed_shadow(&catalog(CatalogId::FigureEightUnit));
    let melon = suppressed_shadow(&catalog(CatalogId::WatermelonStickUnit));
    let forms = |n: usize, m: usize| -> Vec<Vec<u8>> {
        enumerate_connected_multi(n, m)
            .unwrap()
            .iter()
            .map(|d| canonical_form(d, 8).unwrap())
            .collect()
    };
    assert!(forms(1, 2).contains(&eight));
    assert!(forms(3, 4).contains(&melon));
    assert!(enumerate_connected_multi(2, 3).unwrap().iter().any(|d| d.adj(0, 1) == 3));
}
