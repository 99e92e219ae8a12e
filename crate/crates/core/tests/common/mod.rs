#![allow(dead_code)]

use betweenness::generators::{bounded_degree, cycle, gnp, path, star, with_random_weights};
use betweenness::Graph;

pub struct Named {
    pub name: String,
    pub graph: Graph,
}

fn named(name: impl Into<String>, graph: Graph) -> Named {
    Named { name: name.into(), graph }
}

/// Small connected graphs: unweighted, weighted and bounded-degree families.
pub fn corpus() -> Vec<Named> {
    let mut out = vec![
        named("cycle(9)", cycle(9).unwrap()),
        named("cycle(12)", cycle(12).unwrap()),
        named("path(9)", path(9).unwrap()),
        named("star(7)", star(7).unwrap()),
    ];
    for seed in 0..8 {
        out.push(named(format!("gnp(20, 0.2, {seed})"), gnp(20, 0.2, seed).unwrap()));
    }
    for seed in 0..4 {
        out.push(named(format!("bounded_degree(24, 3, {seed})"), bounded_degree(24, 3, seed).unwrap()));
    }
    out
}

pub fn weighted_corpus() -> Vec<Named> {
    (0..6)
        .map(|seed| {
            let g = with_random_weights(&gnp(16, 0.25, seed).unwrap(), 10, seed).unwrap();
            named(format!("weighted gnp(16, 0.25, {seed}) M=10"), g)
        })
        .collect()
}

/// Floyd-Warshall distances and path counts, independent of the library's
/// search and product code. `None` is unreachable.
pub fn reference_apsp(g: &Graph) -> (Vec<Vec<Option<u64>>>, Vec<Vec<u128>>) {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for e in g.edges() {
        let w = Some(e.w);
        if d[e.u][e.v].map_or(true, |x| x > e.w) {
            d[e.u][e.v] = w;
        }
        if !g.is_directed() && d[e.v][e.u].map_or(true, |x| x > e.w) {
            d[e.v][e.u] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].map_or(true, |x| x > a + b) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    // Count by increasing distance over tight arcs.
    let mut counts = vec![vec![0u128; n]; n];
    for s in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&v| d[s][v].is_some()).collect();
        order.sort_by_key(|&v| d[s][v]);
        counts[s][s] = 1;
        for &v in order.iter().skip(1) {
            let mut total = 0;
            for e in g.edges() {
                let mut arcs = vec![(e.u, e.v)];
                if !g.is_directed() {
                    arcs.push((e.v, e.u));
                }
                for (a, b) in arcs {
                    if b == v && d[s][a].is_some_and(|da| da + e.w == d[s][v].unwrap()) {
                        total += counts[s][a];
                    }
                }
            }
            counts[s][v] = total;
        }
    }
    (d, counts)
}

pub fn assert_close(a: &[f64], b: &[f64], tol: f64, what: &str) {
    assert_eq!(a.len(), b.len(), "{what}: length");
    for (v, (x, y)) in a.iter().zip(b).enumerate() {
        assert!((x - y).abs() <= tol * (1.0 + y.abs()), "{what}: vertex {v}: {x} vs {y}");
    }
}
