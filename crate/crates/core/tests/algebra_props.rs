mod common;

use std::f64::consts::PI;

use common::rat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use specgraph::algebra::{charpoly_exact, poly_normalize, poly_roots_unit_circle, polymat_det, ProjectivePoly, RationalMatrix};
use specgraph::graph::{canonical_form, DiscreteGraph};

fn eval_int(c: &[i64], z: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, &x| acc * z + BigRational::from_integer(x.into()))
}

/// Checks `values[i] = c * p(points[i])` for one nonzero constant `c`.
fn proportional(p: &ProjectivePoly, points: &[BigRational], values: &[BigRational]) -> bool {
    let pv: Vec<BigRational> = points.iter().map(|z| p.eval(z)).collect();
    let Some(i) = pv.iter().position(|x| !x.is_zero()) else { return false };
    let c = &values[i] / &pv[i];
    !c.is_zero() && pv.iter().zip(values).all(|(a, b)| &(a * &c) == b)
}

proptest! {
    #[test]
    fn normalize_is_scale_invariant(
        coeffs in prop::collection::vec(-20i64..=20, 1..8),
        num in prop::sample::select(vec![-7i64, -3, -1, 1, 2, 5, 9]),
        den in 1i64..=6,
    ) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let base: Vec<BigRational> = coeffs.iter().map(|&c| rat(c, 1)).collect();
        let scaled: Vec<BigRational> = base.iter().map(|c| c * rat(num, den)).collect();
        let a = poly_normalize(&base).unwrap();
        prop_assert_eq!(&a, &poly_normalize(&scaled).unwrap());
        prop_assert!(a.coeffs().last().unwrap() > &BigInt::zero());
    }

    #[test]
    fn polymat_det_matches_pointwise_determinant(
        size in 1usize..=4,
        entries in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 16),
        probes in prop::collection::vec((-9i64..=9, 1i64..=4), 6),
    ) {
        let entry = |i: usize, j: usize| entries[i * 4 + j].clone();
        let eval = |z: &BigRational| {
            let data = (0..size * size).map(|k| eval_int(&entry(k / size, k % size), z)).collect();
            RationalMatrix::new(size, size, data)
        };
        let direct: Vec<BigRational> = probes.iter().map(|&(a, b)| eval(&rat(a, b)).unwrap().determinant()).collect();
        match polymat_det(eval, size, 2 * size) {
            Ok(p) => {
                prop_assert!(p.degree() <= 2 * size);
                let points: Vec<BigRational> = probes.iter().map(|&(a, b)| rat(a, b)).collect();
                let zero_everywhere = direct.iter().all(|x| x.is_zero());
                prop_assert!(zero_everywhere || proportional(&p, &points, &direct));
            }
            Err(_) => prop_assert!(direct.iter().all(|x| x.is_zero())),
        }
    }

    #[test]
    fn charpoly_matches_determinant(
        n in 1usize..=5,
        data in prop::collection::vec((-5i64..=5, 1i64..=3), 25),
        x in (-7i64..=7, 1i64..=3),
    ) {
        let m = RationalMatrix::new(n, n, data[..n * n].iter().map(|&(a, b)| rat(a, b)).collect()).unwrap();
        let c = charpoly_exact(&m);
        prop_assert_eq!(c.len(), n + 1);
        prop_assert!(c[n].is_one());
        let x = rat(x.0, x.1);
        let mut shifted = RationalMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j { &x - m.get(i, j) } else { -m.get(i, j) };
                shifted.set(i, j, v);
            }
        }
        let value = c.iter().rev().fold(BigRational::zero(), |acc, a| acc * &x + a);
        prop_assert_eq!(value, shifted.determinant());
    }

    #[test]
    fn canonical_form_ignores_labels(d in common::connected_simple(6), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..d.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(canonical_form(&d, 8).unwrap(), canonical_form(&d.permuted(&perm), 8).unwrap());
    }
}

#[test]
fn canonical_form_separates_path_and_star() {
    let mut path = DiscreteGraph::empty(4);
    let mut star = DiscreteGraph::empty(4);
    for i in 0..3 {
        path.add_edge(i, i + 1);
        star.add_edge(0, i + 1);
    }
    assert_ne!(canonical_form(&path, 8).unwrap(), canonical_form(&star, 8).unwrap());
}

#[test]
fn cyclotomic_roots() {
    let p = ProjectivePoly::product(&[(&[-1, 1], 2), (&[1, 1], 1), (&[1, 0, 1], 3), (&[1, 1, 1], 1)]);
    let roots = poly_roots_unit_circle(&p, 1e-8).unwrap();
    let expected = [
        (PI / 2.0, 3),
        (2.0 * PI / 3.0, 1),
        (PI, 1),
        (4.0 * PI / 3.0, 1),
        (3.0 * PI / 2.0, 3),
        (2.0 * PI, 2),
    ];
    assert_eq!(roots.len(), expected.len());
    for ((k, m), (ek, em)) in roots.iter().zip(expected) {
        assert!((k - ek).abs() < 1e-10, "{k} vs {ek}");
        assert_eq!(*m, em);
    }
}

#[test]
fn off_circle_roots_are_rejected() {
    let p = ProjectivePoly::from_i64(&[-2, 1]);
    assert!(poly_roots_unit_circle(&p, 1e-8).is_err());
}
