//! Structural identities of the backward passes.

mod common;

use betweenness::algebraic::{compute_dependency, compute_dependency_traced, compute_path_count};
use betweenness::brandes::{accumulate_dependencies, brandes_bc, sssp_with_counts};
use betweenness::oracle::{oracle_pair_dependency, OracleCaps};
use betweenness::parallel::{parallel_dijkstra_apsp, wavefront_dependencies};
use betweenness::Dist;
use common::{corpus, reference_apsp, weighted_corpus};
use num_traits::ToPrimitive;

#[test]
fn diameter_pairs_have_no_dependency() {
    for case in corpus() {
        let apsp = compute_path_count(&case.graph).unwrap();
        let dep = compute_dependency(&case.graph, &apsp).unwrap();
        let diam = Dist::finite(apsp.diameter);
        for i in 0..case.graph.n() {
            for j in 0..case.graph.n() {
                if apsp.dist[(i, j)] == diam {
                    assert_eq!(dep.delta[(i, j)], 0.0, "{}: ({i}, {j})", case.name);
                }
            }
        }
    }
}

#[test]
fn level_steps_stay_local() {
    for case in corpus() {
        let g = &case.graph;
        let apsp = compute_path_count(g).unwrap();
        let mut steps = 0;
        compute_dependency_traced(g, &apsp, |step| {
            steps += 1;
            let l = step.level;
            for i in 0..g.n() {
                for j in 0..g.n() {
                    let d = apsp.dist[(i, j)].get().unwrap();
                    if step.unmasked[(i, j)] != 0.0 {
                        assert!(d + 1 >= l && d <= l + 1, "{}: unmasked ({i}, {j}) at d={d}, l={l}", case.name);
                    }
                    if step.delta[(i, j)] != 0.0 {
                        assert_eq!(d, l - 1, "{}: masked ({i}, {j})", case.name);
                    }
                }
            }
        })
        .unwrap();
        assert_eq!(steps as u64, apsp.diameter.saturating_sub(1), "{}", case.name);
    }
}

#[test]
fn accumulated_dependencies_satisfy_the_recurrence() {
    for case in corpus().into_iter().chain(weighted_corpus()) {
        let g = &case.graph;
        for s in 0..g.n() {
            let st = sssp_with_counts(g, s).unwrap();
            let delta = accumulate_dependencies(&st);
            let mut direct = vec![0.0; g.n()];
            for w in 0..g.n() {
                for &v in &st.preds[w] {
                    direct[v] += st.sigma[v] as f64 / st.sigma[w] as f64 * (1.0 + delta[w]);
                }
            }
            direct[s] = 0.0;
            for v in 0..g.n() {
                assert!((direct[v] - delta[v]).abs() <= 1e-12, "{}: s={s} v={v}", case.name);
            }
        }
    }
}

#[test]
fn sigma_is_conserved_over_predecessors() {
    for case in corpus().into_iter().chain(weighted_corpus()) {
        let g = &case.graph;
        for s in 0..g.n() {
            let st = sssp_with_counts(g, s).unwrap();
            for v in (0..g.n()).filter(|&v| v != s) {
                let sum: u64 = st.preds[v].iter().map(|&u| st.sigma[u]).sum();
                assert_eq!(st.sigma[v], sum, "{}: s={s} v={v}", case.name);
            }
        }
    }
}

#[test]
fn sum_rule() {
    for case in corpus() {
        let g = &case.graph;
        let (d, _) = reference_apsp(g);
        let mut expected = 0.0;
        for s in 0..g.n() {
            for t in s + 1..g.n() {
                expected += (d[s][t].unwrap() - 1) as f64;
            }
        }
        let total: f64 = brandes_bc(g).unwrap().iter().sum();
        assert!((total - expected).abs() <= 1e-6, "{}: {total} vs {expected}", case.name);
    }
}

#[test]
fn pair_dependencies_sum_to_interior_length() {
    let g = betweenness::generators::gnp(12, 0.3, 4).unwrap();
    let (d, _) = reference_apsp(&g);
    for s in 0..g.n() {
        for t in 0..g.n() {
            if s == t {
                continue;
            }
            let mass: f64 = (0..g.n())
                .map(|v| oracle_pair_dependency(&g, s, t, v, OracleCaps::default()).unwrap().to_f64().unwrap())
                .sum();
            assert!((mass - (d[s][t].unwrap() - 1) as f64).abs() < 1e-12, "({s}, {t})");
        }
    }
}

#[test]
fn wavefront_matches_per_source_accumulation() {
    for case in corpus().into_iter().chain(weighted_corpus()) {
        let g = &case.graph;
        let dep = wavefront_dependencies(g, &parallel_dijkstra_apsp(g).unwrap()).unwrap();
        for s in 0..g.n() {
            let delta = accumulate_dependencies(&sssp_with_counts(g, s).unwrap());
            common::assert_close(dep.delta.row(s), &delta, 1e-9, &case.name);
        }
    }
}
