//! Engine results checked against independent brute-force computations.

mod common;

use std::collections::HashSet;

use treedepth::{
    betti_numbers, betti_oracle_hochster, build_caterpillar, char_poset, edge_ideal,
    sdepth_quotient, verify_certificate, Limits, Monomial, MonomialIdeal, PrimeField, VariableSet,
};

use common::squarefree_corpus;

/// Products of `t` generators, then a plain divisibility filter.
fn naive_power(gens: &[Vec<u32>], t: u32) -> Vec<Vec<u32>> {
    let mut layer: Vec<Vec<u32>> = vec![vec![0; gens[0].len()]];
    for _ in 0..t {
        let mut next = HashSet::new();
        for m in &layer {
            for g in gens {
                next.insert(m.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<u32>>());
            }
        }
        layer = next.into_iter().collect();
    }
    let divides = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut minimal: Vec<Vec<u32>> = layer
        .iter()
        .filter(|m| !layer.iter().any(|o| o != *m && divides(o, m)))
        .cloned()
        .collect();
    minimal.sort();
    minimal
}

fn exps_of(i: &MonomialIdeal) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = i.gens().iter().map(|m| m.exps().to_vec()).collect();
    v.sort();
    v
}

#[test]
fn caterpillar_edge_ideal_has_one_generator_per_edge() {
    let i = edge_ideal(&build_caterpillar(4, 7, 5).unwrap());
    assert_eq!(i.gens().len(), 25);
}

#[test]
fn powers_match_the_divisibility_filter() {
    let path = edge_ideal(&build_caterpillar(2, 2, 2).unwrap());
    assert_eq!(path.power(2).unwrap().gens().len(), 6);
    for (n, k, l) in [(2, 2, 2), (3, 2, 1), (3, 3, 2), (4, 2, 2)] {
        let i = edge_ideal(&build_caterpillar(n, k, l).unwrap());
        for t in 1..=3 {
            assert_eq!(
                exps_of(&i.power(t).unwrap()),
                naive_power(&exps_of(&i), t),
                "P({n},{k},{l}) t={t}"
            );
        }
    }
}

#[test]
fn betti_tables_match_hochster() {
    let limits = Limits::default();
    for p in [2, 32003] {
        let field = PrimeField::new(p).unwrap();
        for (name, i) in squarefree_corpus().into_iter().filter(|(_, i)| i.nvars() <= 10) {
            let a = betti_numbers(&i, field, &limits).unwrap();
            let b = betti_oracle_hochster(&i, field).unwrap();
            assert_eq!(a, b, "{name} in char {p}");
        }
    }
}

/// Largest `min ρ(b)` over all interval partitions, by exhaustive search.
/// Intervals start at the first uncovered point of a linear extension.
fn brute_sdepth(points: &[Vec<u32>], g: &[u32]) -> usize {
    fn go(points: &[Vec<u32>], g: &[u32], covered: &mut Vec<bool>, floor: usize) -> Option<usize> {
        let Some(p) = covered.iter().position(|c| !c) else {
            return Some(floor);
        };
        let mut best = None;
        for (bi, b) in points.iter().enumerate() {
            if covered[bi] || !points[p].iter().zip(b).all(|(x, y)| x <= y) {
                continue;
            }
            let inside: Vec<usize> = (0..points.len())
                .filter(|&q| {
                    points[p].iter().zip(&points[q]).all(|(x, y)| x <= y)
                        && points[q].iter().zip(b).all(|(x, y)| x <= y)
                })
                .collect();
            let volume: usize = points[p].iter().zip(b).map(|(x, y)| (y - x + 1) as usize).product();
            if inside.len() != volume || inside.iter().any(|&q| covered[q]) {
                continue;
            }
            let rho = b.iter().zip(g).filter(|(x, y)| x == y).count();
            for &q in &inside {
                covered[q] = true;
            }
            if let Some(v) = go(points, g, covered, floor.min(rho)) {
                best = best.max(Some(v));
            }
            for &q in &inside {
                covered[q] = false;
            }
        }
        best
    }
    let mut order: Vec<Vec<u32>> = points.to_vec();
    order.sort_by_key(|p| (p.iter().sum::<u32>(), p.clone()));
    go(&order, g, &mut vec![false; order.len()], g.len()).expect("singletons always partition")
}

fn ideal(vars: &[&str], gens: &[&[u32]]) -> MonomialIdeal {
    let v = VariableSet::new(vars.iter().copied()).unwrap();
    MonomialIdeal::new(v, gens.iter().map(|g| Monomial::from_exps(g.to_vec())).collect()).unwrap()
}

#[test]
fn stanley_depth_matches_exhaustive_partitions() {
    let limits = Limits::default();
    let xy = ideal(&["x", "y"], &[&[1, 1]]);
    let cases = [
        xy.clone(),
        ideal(&["x", "y", "z"], &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]),
        ideal(&["x", "y", "z", "w"], &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]),
        ideal(&["x", "y"], &[&[2, 0], &[1, 1]]),
        ideal(&["x", "y"], &[&[2, 1], &[0, 3]]),
        ideal(&["x", "y", "z"], &[&[2, 0, 0], &[1, 1, 0], &[0, 1, 1]]),
        edge_ideal(&build_caterpillar(2, 2, 1).unwrap()),
        edge_ideal(&build_caterpillar(2, 2, 2).unwrap()),
        edge_ideal(&build_caterpillar(2, 2, 1).unwrap()).power(2).unwrap(),
    ];
    for i in cases {
        let p = char_poset(&i, &limits).unwrap();
        let points: Vec<Vec<u32>> = p.points().collect();
        let want = brute_sdepth(&points, p.g());
        let got = sdepth_quotient(&i, None, &limits).unwrap();
        assert_eq!(got.sdepth, want, "{:?}", i.gens());
        assert!(verify_certificate(&p, &got.certificate));
    }
    assert_eq!(sdepth_quotient(&xy, None, &limits).unwrap().sdepth, 1);
}
