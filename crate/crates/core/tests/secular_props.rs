mod common;

use common::rat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use specgraph::algebra::{poly_roots_unit_circle, ProjectivePoly, RationalMatrix};
use specgraph::constructions::{catalog, CatalogId};
use specgraph::graph::MetricGraph;
use specgraph::secular::{build_secular_matrix, metric_isospectral, secular_poly, spectrum_report};

/// `(z² - 1)^(N - M) det((1 + z²) D - 2 z A)` at `z`, computed from the
/// vertex adjacency data. Returns the two sides of the identity with the
/// power moved to whichever side keeps it nonnegative.
fn vertex_route(g: &MetricGraph, z: &BigRational) -> (BigRational, BigRational) {
    let d = g.to_discrete();
    let n = d.n();
    let mut m = RationalMatrix::zeros(n, n);
    let one = BigRational::one();
    for u in 0..n {
        for v in 0..n {
            let a = BigRational::from_integer(d.adj(u, v).into());
            let mut x = -(rat(2, 1) * z * a);
            if u == v {
                x += (&one + z * z) * BigRational::from_integer(d.degree(u).into());
            }
            m.set(u, v, x);
        }
    }
    let det = m.determinant();
    let diff = g.edge_count() as i64 - n as i64;
    let w = z * z - &one;
    if diff >= 0 {
        (BigRational::one(), det * num_traits::pow(w, diff as usize))
    } else {
        (num_traits::pow(w, (-diff) as usize), det)
    }
}

fn substitute_square(p: &ProjectivePoly) -> ProjectivePoly {
    let mut c = vec![BigInt::zero(); 2 * p.coeffs().len() - 1];
    for (i, x) in p.coeffs().iter().enumerate() {
        c[2 * i] = x.clone();
    }
    ProjectivePoly::from_ints(c)
}

fn half_subdivision(g: &MetricGraph) -> MetricGraph {
    g.scaled(&rat(2, 1)).unwrap().unit_subdivide().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn degree_and_palindromy(g in common::unit_graph(6, 5)) {
        let p = secular_poly(&g).unwrap();
        prop_assert_eq!(p.degree(), 2 * g.edge_count());
        prop_assert!(p.is_palindromic());
        prop_assert!(poly_roots_unit_circle(&p, 1e-8).is_ok());
    }

    #[test]
    fn agrees_with_vertex_route(g in common::unit_graph(6, 5), probes in prop::collection::vec((-12i64..=12, 1i64..=5), 3)) {
        let p = secular_poly(&g).unwrap();
        let deg = 2 * g.edge_count() + 2 * g.vertex_count();
        // enough points to pin a polynomial identity of this degree
        let mut points: Vec<BigRational> = (0..=deg as i64 + 1).map(|i| rat(2 * i + 3, 2 * i + 7)).collect();
        points.extend(probes.iter().map(|&(a, b)| rat(a, b)));
        let mut ratio: Option<BigRational> = None;
        for z in &points {
            let (left, right) = vertex_route(&g, z);
            let lhs = p.eval(z) * left;
            if lhs.is_zero() {
                prop_assert!(right.is_zero());
                continue;
            }
            let r = right / lhs;
            prop_assert!(!r.is_zero());
            match &ratio {
                None => ratio = Some(r),
                Some(c) => prop_assert_eq!(c, &r),
            }
        }
    }

    #[test]
    fn halving_edges_squares_the_variable(g in common::unit_graph(4, 3)) {
        let p = secular_poly(&g).unwrap();
        prop_assert_eq!(secular_poly(&half_subdivision(&g)).unwrap(), substitute_square(&p));
    }

    #[test]
    fn relabelling_preserves_the_polynomial(g in common::unit_graph(6, 4), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.permute_vertices(&perm).unwrap();
        prop_assert!(metric_isospectral(&g, &h).unwrap());
    }

    #[test]
    fn unit_root_multiplicity_is_one_plus_betti(g in common::unit_graph(6, 5)) {
        prop_assert_eq!(secular_poly(&g).unwrap().multiplicity_at(1), 1 + g.betti());
    }
}

#[test]
fn unit_root_multiplicity_on_connected_catalog() {
    for id in CatalogId::all() {
        let g = catalog(id);
        if g.components() != 1 {
            continue;
        }
        let p = secular_poly(&g).unwrap();
        let u = specgraph::secular::unilateral_form(&g).unwrap();
        assert_eq!(p.multiplicity_at(1), 1 + u.betti(), "{id}");
    }
}

#[test]
fn single_edge_and_loop() {
    let e = MetricGraph::unit(2, &[(0, 1)], vec![]).unwrap();
    assert_eq!(secular_poly(&e).unwrap(), ProjectivePoly::from_i64(&[-1, 0, 1]));
    let l = MetricGraph::unit(1, &[(0, 0)], vec![]).unwrap();
    // circle of length 1: eigenvalues (2πm)², double for m ≥ 1
    assert_eq!(secular_poly(&l).unwrap(), ProjectivePoly::from_i64(&[1, -2, 1]));
}

#[test]
fn strict_builder_rejects_non_unit_lengths() {
    let g = MetricGraph::from_edges(2, &[(0, 1, rat(2, 1))], vec![]).unwrap();
    assert!(build_secular_matrix(&g).is_err());
    assert_eq!(secular_poly(&g).unwrap(), ProjectivePoly::product(&[(&[-1, 0, 1], 1), (&[1, 0, 1], 1)]));
}

#[test]
fn cycle_spectrum() {
    // C_n unit: eigenvalues (2πj/n)² with multiplicity 2 for 0 < j < n/2
    let r = spectrum_report(&catalog(CatalogId::Cycle(5)), 1e-9).unwrap();
    let tau = std::f64::consts::TAU;
    let expected: Vec<(f64, usize)> = vec![(tau / 5.0, 2), (2.0 * tau / 5.0, 2), (3.0 * tau / 5.0, 2), (4.0 * tau / 5.0, 2), (tau, 2)];
    assert_eq!(r.fundamental_roots.len(), expected.len());
    for (a, b) in r.fundamental_roots.iter().zip(&expected) {
        assert!((a.0 - b.0).abs() < 1e-9);
        assert_eq!(a.1, b.1);
    }
}
