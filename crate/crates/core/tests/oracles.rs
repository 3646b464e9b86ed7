//! Cross-checks against independent implementations: nalgebra for the
//! dense linear algebra, brute force for the graph algorithms.

use std::collections::HashSet;

use idemnorm::bigraph::BiGraph;
use idemnorm::exact::{certificate, char_poly};
use idemnorm::linalg::{hadamard, spectral_norm, svd, symmetric_eigen, trace_norm, DenseMatrix};
use idemnorm::GraphName;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn to_na(a: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice())
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(-2.0f64..2.0, m * n).prop_map(move |v| DenseMatrix::from_vec(m, n, v).unwrap())
    })
}

fn square_strategy(max: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(-2.0f64..2.0, n * n).prop_map(move |v| DenseMatrix::from_vec(n, n, v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn singular_values_match_nalgebra(a in matrix_strategy(8)) {
        let ours = svd(&a).singular_values;
        let mut theirs: Vec<f64> = to_na(&a).singular_values().iter().copied().collect();
        theirs.sort_by(|x, y| y.total_cmp(x));
        prop_assert_eq!(ours.len(), theirs.len());
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() < 1e-10, "{:?} vs {:?}", ours, theirs);
        }
        prop_assert!((spectral_norm(&a) - theirs[0]).abs() < 1e-10);
        prop_assert!((trace_norm(&a) - theirs.iter().sum::<f64>()).abs() < 1e-9);
    }

    #[test]
    fn low_rank_singular_values_match_nalgebra(l in matrix_strategy(12), r in matrix_strategy(12)) {
        let k = l.cols().min(r.rows());
        let l = DenseMatrix::from_fn(l.rows(), k, |i, j| l[(i, j)]);
        let r = DenseMatrix::from_fn(k, r.cols(), |i, j| r[(i, j)]);
        let a = l.matmul(&r).unwrap();
        let res = svd(&a);
        let mut theirs: Vec<f64> = to_na(&a).singular_values().iter().copied().collect();
        theirs.sort_by(|x, y| y.total_cmp(x));
        let scale = theirs[0].max(1.0);
        for (x, y) in res.singular_values.iter().zip(&theirs) {
            prop_assert!((x - y).abs() < 1e-9 * scale, "{:?} vs {:?}", res.singular_values, theirs);
        }
        let sv = &res.singular_values;
        let us = DenseMatrix::from_fn(a.rows(), sv.len(), |i, j| res.u[(i, j)] * sv[j]);
        let back = us.matmul(&res.v.transpose()).unwrap();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                prop_assert!((back[(i, j)] - a[(i, j)]).abs() < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn symmetric_eigenvalues_match_nalgebra(b in square_strategy(7)) {
        let s = b.add(&b.transpose()).unwrap();
        let ours = symmetric_eigen(&s).values;
        let mut theirs: Vec<f64> = to_na(&s).symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(|x, y| y.total_cmp(x));
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn linear_solve_matches_nalgebra(a in square_strategy(6), seed in 0u64..1000) {
        let n = a.rows();
        let shifted = a.add(&DenseMatrix::identity(n).scale(5.0)).unwrap();
        let rhs = DenseMatrix::from_fn(n, 2, |i, j| ((seed + (i * 3 + j) as u64) % 7) as f64 - 3.0);
        let ours = shifted.solve(&rhs).unwrap();
        let theirs = to_na(&shifted).lu().solve(&to_na(&rhs)).unwrap();
        for i in 0..n {
            for j in 0..2 {
                prop_assert!((ours[(i, j)] - theirs[(i, j)]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn characteristic_polynomial_roots_match_eigenvalues() {
    let cert = certificate(GraphName::Obstruction56).unwrap();
    let bu = hadamard(&cert.bits, cert.u.as_ref().unwrap()).unwrap();
    let eig: Vec<f64> = to_na(&bu).symmetric_eigen().eigenvalues.iter().copied().collect();
    let p = char_poly(&bu);
    for lam in eig {
        let val = p.iter().fold(0.0, |acc, c| acc * lam + c);
        assert!(val.abs() < 1e-10, "p({lam}) = {val}");
    }
}

// ---- brute-force graph oracles ----

fn from_mask(m: usize, n: usize, mask: u64) -> BiGraph {
    BiGraph::from_fn(m, n, |i, j| mask >> (i * n + j) & 1 == 1)
}

fn injections(k: usize, from: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in injections(k - 1, from) {
        for v in 0..from {
            if !rest.contains(&v) {
                let mut next = rest.clone();
                next.push(v);
                out.push(next);
            }
        }
    }
    out
}

fn embeds_brute(h: &BiGraph, g: &BiGraph) -> bool {
    if h.m() > g.m() || h.n() > g.n() {
        return false;
    }
    let cols = injections(h.n(), g.n());
    injections(h.m(), g.m())
        .iter()
        .any(|r| cols.iter().any(|c| (0..h.m()).all(|i| (0..h.n()).all(|j| h.get(i, j) == g.get(r[i], c[j])))))
}

fn induced_brute(h: &BiGraph, g: &BiGraph) -> bool {
    embeds_brute(h, g) || embeds_brute(&h.transpose(), g)
}

#[test]
fn induced_subgraph_matches_brute_force() {
    let hosts: Vec<BiGraph> = (0..400u64).map(|k| from_mask(4, 4, k.wrapping_mul(0x9e37_79b9) % (1 << 16))).collect();
    let patterns: Vec<BiGraph> = (1..=3)
        .flat_map(|m| (1..=3).flat_map(move |n| (0..1u64 << (m * n)).step_by(7).map(move |k| from_mask(m, n, k))))
        .collect();
    for g in hosts.iter().step_by(20) {
        for h in &patterns {
            assert_eq!(h.is_induced_subgraph(g), induced_brute(h, g), "{h:?} in {g:?}");
        }
    }
}

#[test]
fn canonical_keys_match_brute_isomorphism() {
    let graphs: Vec<BiGraph> = [(2, 3), (3, 2), (3, 3)]
        .iter()
        .flat_map(|&(m, n)| (0..1u64 << (m * n)).step_by(3).map(move |k| from_mask(m, n, k)))
        .collect();
    for a in graphs.iter().step_by(5) {
        for b in &graphs {
            let iso = a.edge_count() == b.edge_count()
                && (((a.m(), a.n()) == (b.m(), b.n()) && embeds_brute(a, b))
                    || ((a.n(), a.m()) == (b.m(), b.n()) && embeds_brute(&a.transpose(), b)));
            assert_eq!(a.canonical_key() == b.canonical_key(), iso, "{a:?} {b:?}");
            assert_eq!(a.is_isomorphic(b), iso);
        }
    }
}

/// Merge equal rows, then equal columns, until nothing changes.
fn twin_reduce_brute(g: &BiGraph) -> BiGraph {
    let mut cur = g.clone();
    loop {
        let mut seen = HashSet::new();
        let rows: Vec<usize> = (0..cur.m()).filter(|&i| seen.insert(cur.row_bits(i).to_vec())).collect();
        let mut seen = HashSet::new();
        let cols: Vec<usize> = (0..cur.n()).filter(|&j| seen.insert(cur.col_bits(j))).collect();
        let next = cur.select(&rows, &cols);
        if (next.m(), next.n()) == (cur.m(), cur.n()) {
            return next;
        }
        cur = next;
    }
}

fn component_count_brute(g: &BiGraph) -> usize {
    let total = g.m() + g.n();
    let mut seen = vec![false; total];
    let mut count = 0;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            let nbrs: Vec<usize> = if v < g.m() {
                (0..g.n()).filter(|&j| g.get(v, j)).map(|j| g.m() + j).collect()
            } else {
                (0..g.m()).filter(|&i| g.get(i, v - g.m())).collect()
            };
            for w in nbrs {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

#[test]
fn twin_reduction_and_components_match_brute_force() {
    for (m, n) in [(2, 2), (2, 4), (3, 3), (3, 4), (4, 3)] {
        for k in 0..1u64 << (m * n) {
            let g = from_mask(m, n, k);
            let ours = g.twin_reduce();
            assert!(ours.is_isomorphic(&twin_reduce_brute(&g)), "{g:?}");
            assert_eq!(g.components().len(), component_count_brute(&g), "{g:?}");
        }
    }
}
