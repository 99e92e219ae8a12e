//! Every method against every other, plus fixtures with known answers.

mod common;

use betweenness::generators::{cycle, gnp, lattice, path, tripartite_lb, with_random_weights};
use betweenness::oracle::{oracle_bc, OracleCaps};
use betweenness::{compute, ComputeOptions, Error, Graph, Method};
use common::{assert_close, corpus, weighted_corpus};
use proptest::prelude::*;

fn all_scores(g: &Graph, opts: &ComputeOptions) -> Vec<(Method, Vec<f64>)> {
    Method::ALL
        .into_iter()
        .filter(|m| m.supports(g))
        .map(|m| (m, compute(g, m, opts).unwrap().scores.0))
        .collect()
}

fn assert_agree(g: &Graph, what: &str) {
    let scores = all_scores(g, &ComputeOptions::default());
    let (_, reference) = &scores[0];
    for (m, s) in &scores[1..] {
        assert_close(s, reference, 1e-9, &format!("{what}: {m}"));
    }
}

#[test]
fn corpus_agreement() {
    for case in corpus().into_iter().chain(weighted_corpus()) {
        assert_agree(&case.graph, &case.name);
    }
}

#[test]
fn weighted_algebraic_is_exact_on_larger_graphs() {
    for (n, p, seed) in [(20, 0.2, 3), (40, 0.1, 4)] {
        let g = with_random_weights(&gnp(n, p, seed).unwrap(), 10, seed).unwrap();
        let algebraic = compute(&g, Method::Algebraic, &ComputeOptions::default()).unwrap();
        let brandes = compute(&g, Method::Brandes, &ComputeOptions::default()).unwrap();
        assert_close(&algebraic.scores, &brandes.scores, 1e-9, &format!("n={n}"));
    }
}

#[test]
fn wavefront_matches_algebraic() {
    let g = gnp(30, 0.2, 9).unwrap();
    let wave = compute(&g, Method::ParallelWavefront, &ComputeOptions::default()).unwrap();
    let alg = compute(&g, Method::Algebraic, &ComputeOptions::default()).unwrap();
    assert_close(&wave.scores, &alg.scores, 1e-9, "gnp(30, 0.2, 9)");
}

#[test]
fn thread_count_does_not_change_bits() {
    let graphs = [gnp(70, 0.08, 11).unwrap(), with_random_weights(&gnp(30, 0.2, 2).unwrap(), 7, 5).unwrap()];
    for g in &graphs {
        for m in Method::ALL.into_iter().filter(|&m| m != Method::Oracle) {
            let run = |t| compute(g, m, &ComputeOptions { threads: Some(t), ..Default::default() }).unwrap().scores.0;
            let one = run(1);
            for t in [2, 4, 7] {
                assert_eq!(run(t), one, "{m} with {t} threads");
            }
        }
    }
}

#[test]
fn odd_cycles_score_k_times_2k_minus_1() {
    for k in 1..=5usize {
        let g = cycle(4 * k + 1).unwrap();
        let expected = (k * (2 * k - 1)) as f64;
        let oracle = oracle_bc(&g, OracleCaps::default()).unwrap().rounded;
        assert!(oracle.iter().all(|&x| x == expected), "k={k}: {oracle:?}");
        assert_agree(&g, &format!("cycle({})", 4 * k + 1));
    }
}

#[test]
fn path_scores_follow_i_times_n_minus_1_minus_i() {
    for k in 1..=5usize {
        let n = 4 * k + 1;
        let g = path(n).unwrap();
        let expected: Vec<f64> = (0..n).map(|i| (i * (n - 1 - i)) as f64).collect();
        assert_eq!(expected[1], (4 * k - 1) as f64);
        assert_eq!(expected[2], (2 * (4 * k - 2)) as f64);
        assert_eq!(expected[2 * k], (4 * k * k) as f64);
        for (m, s) in all_scores(&g, &ComputeOptions::default()) {
            assert_close(&s, &expected, 1e-9, &format!("path({n}) {m}"));
        }
    }
}

#[test]
fn tripartite_center_carries_everything() {
    for n in [2usize, 4, 8] {
        let g = tripartite_lb(n).unwrap();
        for m in [Method::Brandes, Method::Oracle] {
            let s = compute(&g, m, &ComputeOptions::default()).unwrap().scores;
            assert_eq!(s[n], (n * n) as f64, "{m} n={n}");
            assert!((n + 1..2 * n).all(|v| s[v] == 0.0), "{m} n={n}");
        }
    }
}

#[test]
fn lattice_counts_overflow() {
    let g = lattice(70, 2).unwrap();
    for m in Method::ALL.into_iter().filter(|&m| m != Method::Oracle) {
        assert_eq!(compute(&g, m, &ComputeOptions::default()).map(|o| o.scores), Err(Error::Overflow), "{m}");
    }
    assert!(matches!(oracle_bc(&g, OracleCaps::default()), Err(Error::OracleCap(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_graphs_agree(n in 4usize..16, p in 0.15f64..0.6, seed in any::<u64>(), weights in 1u64..6) {
        let g = gnp(n, p, seed).unwrap();
        let g = if weights == 1 { g } else { with_random_weights(&g, weights, seed).unwrap() };
        let oracle = oracle_bc(&g, OracleCaps::default()).unwrap().rounded;
        for (m, s) in all_scores(&g, &ComputeOptions::default()) {
            for (v, (x, y)) in s.iter().zip(oracle.iter()).enumerate() {
                prop_assert!((x - y).abs() <= 1e-9 * (1.0 + y.abs()), "{} vertex {}: {} vs {}", m, v, x, y);
            }
        }
    }
}
