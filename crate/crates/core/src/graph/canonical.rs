//! Brute-force canonical forms for small graphs.

use num_rational::BigRational;

use super::{DiscreteGraph, MetricGraph};
use crate::error::{Error, Result};

pub const DEFAULT_CANONICAL_BOUND: usize = 8;

/// Lexicographically smallest row-major encoding of `entry` over the given
/// permutations. `perms` yields permutations `p`, position `i` holding old
/// vertex `p[i]`.
fn min_encoding<F>(n: usize, perms: impl Iterator<Item = Vec<usize>>, entry: F) -> Vec<u32>
where
    F: Fn(usize, usize) -> u32,
{
    let mut best: Option<Vec<u32>> = None;
    for p in perms {
        match &best {
            None => {
                best = Some(encode(n, &p, &entry));
            }
            Some(b) => {
                let mut smaller = false;
                'scan: for i in 0..n {
                    for j in 0..n {
                        let x = entry(p[i], p[j]);
                        let y = b[i * n + j];
                        if x != y {
                            smaller = x < y;
                            break 'scan;
                        }
                    }
                }
                if smaller {
                    best = Some(encode(n, &p, &entry));
                }
            }
        }
    }
    best.unwrap_or_default()
}

fn encode<F: Fn(usize, usize) -> u32>(n: usize, p: &[usize], entry: &F) -> Vec<u32> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(entry(p[i], p[j]));
        }
    }
    out
}

/// All permutations of `0..n` (Heap's algorithm).
pub(crate) fn all_permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut i = 0;
    let mut first = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
            return Some(a.clone());
        }
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    a.swap(0, i);
                } else {
                    a.swap(c[i], i);
                }
                c[i] += 1;
                i = 0;
                return Some(a.clone());
            }
            c[i] = 0;
            i += 1;
        }
        None
    })
}

/// Permutations that list vertices cell by cell, cells ordered by key.
/// Any graph isomorphism preserving `keys` maps into this family, so the
/// minimum over it is still a complete invariant.
fn cell_permutations(keys: &[u64]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by_key(|&v| (keys[v], v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match cells.last_mut() {
            Some(cell) if keys[cell[0]] == keys[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut out = vec![Vec::new()];
    for cell in cells {
        let mut next = Vec::new();
        for prefix in &out {
            for p in all_permutations(cell.len()) {
                let mut q = prefix.clone();
                q.extend(p.iter().map(|&i| cell[i]));
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn to_bytes(n: usize, enc: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + 4 * enc.len());
    out.push(n as u8);
    for &x in enc {
        if x < 255 {
            out.push(x as u8);
        } else {
            out.push(255);
            out.extend_from_slice(&x.to_be_bytes());
        }
    }
    out
}

/// Minimal row-major adjacency encoding over all `n!` vertex permutations,
/// prefixed by `n`. Two graphs get equal forms iff they are isomorphic.
pub fn canonical_form(d: &DiscreteGraph, bound: usize) -> Result<Vec<u8>> {
    let n = d.n();
    if n > bound {
        return Err(Error::CanonicalBound { n, bound });
    }
    let enc = min_encoding(n, all_permutations(n), |u, v| d.adj(u, v));
    Ok(to_bytes(n, &enc))
}

/// Canonical form restricted to degree-respecting permutations. Different
/// bytes from [`canonical_form`], same equivalence; fast enough for
/// exhaustive enumeration at seven vertices.
pub(crate) fn degree_canonical_form(d: &DiscreteGraph) -> Vec<u8> {
    let n = d.n();
    let keys: Vec<u64> = (0..n).map(|u| ((d.degree(u) as u64) << 16) | d.adj(u, u) as u64).collect();
    let enc = min_encoding(n, cell_permutations(&keys).into_iter(), |u, v| d.adj(u, v));
    to_bytes(n, &enc)
}

/// Canonical form of a metric graph including edge lengths and the contact
/// set (as an unordered set). Equal iff there is a length-preserving
/// isomorphism mapping contacts onto contacts.
pub fn metric_form(g: &MetricGraph) -> Result<Vec<u8>> {
    let n = g.vertex_count();
    if n > DEFAULT_CANONICAL_BOUND {
        return Err(Error::CanonicalBound { n, bound: DEFAULT_CANONICAL_BOUND });
    }
    let mut lists: Vec<Vec<BigRational>> = vec![Vec::new(); n * n];
    for (u, v, len) in g.edge_triples() {
        lists[u * n + v].push(len.clone());
        if u != v {
            lists[v * n + u].push(len);
        }
    }
    for l in &mut lists {
        l.sort();
    }
    let mut distinct = lists.clone();
    distinct.sort();
    distinct.dedup();
    let ids: Vec<u32> = lists
        .iter()
        .map(|l| distinct.binary_search(l).expect("list present") as u32)
        .collect();
    let contact: Vec<u32> = (0..n).map(|v| g.is_contact(v) as u32).collect();
    // contact flag folded into the diagonal so it is permuted with the vertex
    let entry = |u: usize, v: usize| {
        if u == v {
            ids[u * n + v] * 2 + contact[u]
        } else {
            ids[u * n + v]
        }
    };
    let enc = min_encoding(n, all_permutations(n), entry);
    let mut out = to_bytes(n, &enc);
    for l in distinct {
        out.push(b'|');
        for x in l {
            out.extend_from_slice(x.to_string().as_bytes());
            out.push(b',');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3(order: [usize; 3]) -> DiscreteGraph {
        let mut d = DiscreteGraph::empty(3);
        d.add_edge(order[0], order[1]);
        d.add_edge(order[1], order[2]);
        d
    }

    #[test]
    fn heap_permutation_count() {
        assert_eq!(all_permutations(4).count(), 24);
        assert_eq!(all_permutations(0).count(), 1);
        let mut ps: Vec<_> = all_permutations(3).collect();
        ps.sort();
        ps.dedup();
        assert_eq!(ps.len(), 6);
    }

    #[test]
    fn path_labelings_agree() {
        let a = canonical_form(&path3([0, 1, 2]), 8).unwrap();
        let b = canonical_form(&path3([1, 0, 2]), 8).unwrap();
        assert_eq!(a, b);
        let mut tri = path3([0, 1, 2]);
        tri.add_edge(2, 0);
        assert_ne!(a, canonical_form(&tri, 8).unwrap());
    }

    #[test]
    fn bound_enforced() {
        let d = DiscreteGraph::empty(9);
        assert_eq!(canonical_form(&d, 8), Err(Error::CanonicalBound { n: 9, bound: 8 }));
    }

    #[test]
    fn degree_form_agrees_on_equivalence() {
        let a = degree_canonical_form(&path3([0, 1, 2]));
        let b = degree_canonical_form(&path3([2, 0, 1]));
        assert_eq!(a, b);
    }
}
