//! Randomized parallel method.
//!
//! Forward pass (unit weights): each round draws a sample `S` of distinguished
//! vertices and runs a `ceil(sqrt(n))`-hop limited search from every member
//! in parallel. The limited distances between sampled vertices form an
//! auxiliary graph `H`; shortest paths in `H` spliced with a final limited
//! segment give full distance rows for the sampled sources. Each row is then
//! certified (no tense arc), so a returned result is always exact; a row that
//! fails is retried in a later round with a doubled sample. Path counts are recomputed from the
//! certified distances over the induced shortest-path DAG.
//!
//! Weighted graphs use one Dijkstra search per source, fanned out over the
//! pool.
//!
//! Backward passes: the pairwise formula summing `lambda_sv * lambda_vt /
//! lambda_st` per vertex, and a wavefront that finishes all pairs at one
//! distance concurrently before moving one level closer.
//!
//! Every work unit writes its own output cell or row; results are collected
//! in a fixed order, so any pool width produces bit-identical output.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::brandes::sssp_with_counts;
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::matrix::{CountMatrix, DistMatrix, RealMatrix};
use crate::scores::{ApspResult, BcVector, DependencyResult};
use crate::stats::WorkCounters;

/// Sampling parameters for [`sampled_apsp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    /// Oversampling constant `c` in `ceil(c * sqrt(n) * ln n)`.
    pub c: f64,
    pub seed: u64,
    pub max_rounds: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { c: 3.0, seed: 0, max_rounds: 64 }
    }
}

impl SampleConfig {
    pub fn with_seed(seed: u64) -> Self {
        SampleConfig { seed, ..Self::default() }
    }

    /// `min(n, ceil(c * sqrt(n) * ln n))`, and at least 1 for nonempty graphs.
    pub fn sample_size(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        let nf = n as f64;
        let raw = (self.c * nf.sqrt() * nf.ln()).ceil();
        (raw.max(1.0) as usize).min(n)
    }
}

/// Hop bound of the limited searches: `ceil(sqrt(n))`.
pub fn hop_bound(n: usize) -> usize {
    let mut k = (n as f64).sqrt().ceil() as usize;
    // Guard against float rounding around perfect squares.
    while k > 0 && (k - 1) * (k - 1) >= n {
        k -= 1;
    }
    while k * k < n {
        k += 1;
    }
    k
}

/// Result of a hop-limited breadth-first search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitedSearch {
    /// Exact distance within the hop bound, `None` beyond it.
    pub dist: Vec<Option<u64>>,
    /// Shortest-path count for resolved vertices, 0 otherwise.
    pub count: Vec<u64>,
    pub relaxations: u64,
}

/// Breadth-first search from `x` that stops expanding at `k` hops.
pub fn limited_bfs(g: &Graph, x: VertexId, k: usize) -> Result<LimitedSearch> {
    if !g.is_unit_weight() {
        return Err(Error::Unsupported("limited breadth-first search needs unit weights"));
    }
    let n = g.n();
    let mut dist = vec![None; n];
    let mut count = vec![0u64; n];
    let mut relaxations = 0;
    dist[x] = Some(0);
    count[x] = 1;
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].expect("queued vertices are resolved");
        if dv as usize >= k {
            continue;
        }
        for nb in g.neighbors(v) {
            relaxations += 1;
            let w = nb.vertex;
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
            if dist[w] == Some(dv + 1) {
                count[w] = count[w].checked_add(count[v]).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(LimitedSearch { dist, count, relaxations })
}

/// Graph on the sampled vertices whose arc lengths are limited distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    pub vertices: Vec<VertexId>,
    /// `(a, b, length)` with `a`, `b` indexing `vertices`.
    pub arcs: Vec<(usize, usize, u64)>,
    /// Number of limited shortest paths behind each arc.
    pub counts: Vec<u64>,
}

impl AuxiliaryGraph {
    fn build(vertices: Vec<VertexId>, searches: &[LimitedSearch]) -> Self {
        let mut arcs = Vec::new();
        let mut counts = Vec::new();
        for (a, search) in searches.iter().enumerate() {
            for (b, &y) in vertices.iter().enumerate() {
                if a == b {
                    continue;
                }
                if let Some(len) = search.dist[y] {
                    arcs.push((a, b, len));
                    counts.push(search.count[y]);
                }
            }
        }
        AuxiliaryGraph { vertices, arcs, counts }
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Unrestricted shortest distances in `H` from sampled vertex `a`.
    fn distances_from(&self, a: usize, adjacency: &[Vec<(usize, u64)>]) -> Vec<Dist> {
        let mut dist = vec![Dist::INFINITY; self.len()];
        dist[a] = Dist::ZERO;
        let mut heap = BinaryHeap::from([Reverse((Dist::ZERO, a))]);
        while let Some(Reverse((d, x))) = heap.pop() {
            if d > dist[x] {
                continue;
            }
            for &(y, len) in &adjacency[x] {
                let cand = d.plus_weight(len);
                if cand < dist[y] {
                    dist[y] = cand;
                    heap.push(Reverse((cand, y)));
                }
            }
        }
        dist
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u64)>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b, len) in &self.arcs {
            adj[a].push((b, len));
        }
        adj
    }
}

/// True iff `dist[s] = 0` and no arc `(u, v)` has `dist[v] > dist[u] + w`.
///
/// Together with the precondition that every finite label is the length of
/// some real path from `s`, this proves the labels are exact distances.
pub fn certify_sssp(g: &Graph, s: VertexId, dist: &[Dist]) -> bool {
    if dist.len() != g.n() || dist[s] != Dist::ZERO {
        return false;
    }
    (0..g.n()).all(|u| {
        let du = dist[u];
        du.is_infinite() || g.neighbors(u).iter().all(|nb| dist[nb.vertex] <= du.plus_weight(nb.weight))
    })
}

/// Shortest-path counts from `s` given exact distances: vertices in
/// non-decreasing distance sum the counts over their tight incoming arcs.
pub fn count_paths_from_distances(g: &Graph, s: VertexId, dist: &[Dist]) -> Result<Vec<u64>> {
    let mut order: Vec<VertexId> = (0..g.n()).filter(|&v| dist[v].is_finite()).collect();
    order.sort_unstable_by_key(|&v| (dist[v], v));
    let mut count = vec![0u64; g.n()];
    count[s] = 1;
    for v in order {
        if v == s {
            continue;
        }
        let mut total = 0u64;
        for nb in g.in_neighbors(v) {
            if dist[nb.vertex].plus_weight(nb.weight) == dist[v] {
                total = total.checked_add(count[nb.vertex]).ok_or(Error::Overflow)?;
            }
        }
        count[v] = total;
    }
    Ok(count)
}

/// Certified distances and counts of one source.
type Row = (Vec<Dist>, Vec<u64>);

/// Diagnostics of a [`sampled_apsp`] run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SamplingReport {
    pub rounds: usize,
    /// Rows rejected by certification across all rounds.
    pub rejected_rows: usize,
    pub relaxations: u64,
}

/// All-pairs distances and counts of a connected unit-weight graph by the
/// sampled limited-search method. The result is exact; randomness only
/// affects how many rounds are needed.
pub fn sampled_apsp(g: &Graph, cfg: &SampleConfig) -> Result<ApspResult> {
    sampled_apsp_report(g, cfg).map(|(apsp, _)| apsp)
}

pub fn sampled_apsp_report(g: &Graph, cfg: &SampleConfig) -> Result<(ApspResult, SamplingReport)> {
    if !g.is_unit_weight() {
        return Err(Error::Unsupported("sampled limited search needs unit weights; use parallel_dijkstra_apsp"));
    }
    if cfg.c.is_nan() || cfg.c <= 0.0 {
        return Err(Error::InvalidParameter(format!("sampling constant must be positive, got {}", cfg.c)));
    }
    g.require_connected()?;

    let n = g.n();
    let k = hop_bound(n);
    let mut size = cfg.sample_size(n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows: Vec<Option<Row>> = vec![None; n];
    let mut pending: Vec<VertexId> = (0..n).collect();
    let mut report = SamplingReport::default();

    while !pending.is_empty() {
        if report.rounds == cfg.max_rounds {
            return Err(Error::RoundsExhausted { rounds: cfg.max_rounds });
        }
        report.rounds += 1;

        let sample = draw_sample(&mut rng, n, size, &pending);
        let searches: Vec<LimitedSearch> =
            sample.par_iter().map(|&x| limited_bfs(g, x, k)).collect::<Result<Vec<_>>>()?;
        report.relaxations += searches.iter().map(|s| s.relaxations).sum::<u64>();

        let aux = AuxiliaryGraph::build(sample.clone(), &searches);
        let aux_adj = aux.adjacency();

        let sources: Vec<usize> = (0..sample.len()).filter(|&a| rows[sample[a]].is_none()).collect();
        let finished: Vec<(VertexId, Option<Row>)> = sources
            .par_iter()
            .map(|&a| -> Result<_> {
                let s = sample[a];
                let hub = aux.distances_from(a, &aux_adj);
                let row = splice_row(n, &hub, &searches);
                if !certify_sssp(g, s, &row) {
                    return Ok((s, None));
                }
                let counts = count_paths_from_distances(g, s, &row)?;
                Ok((s, Some((row, counts))))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut rejected = 0;
        for (s, row) in finished {
            match row {
                Some(r) => rows[s] = Some(r),
                None => rejected += 1,
            }
        }
        if rejected > 0 {
            // A full sample makes H exact, so growth bounds the round count.
            report.rejected_rows += rejected;
            size = (size * 2).min(n);
        }
        pending.retain(|&s| rows[s].is_none());
    }

    let mut dist = DistMatrix::filled(n, Dist::INFINITY);
    let mut counts = CountMatrix::zeros(n);
    for (s, row) in rows.into_iter().enumerate() {
        let (d, c) = row.expect("every row is certified when the loop ends");
        dist.set_row(s, &d);
        counts.set_row(s, &c);
    }
    Ok((ApspResult::new(dist, counts), report))
}

/// Pending sources first (in random order, up to the sample size), then a
/// random fill from the remaining vertices. Sorted for a stable layout.
fn draw_sample(rng: &mut ChaCha8Rng, n: usize, size: usize, pending: &[VertexId]) -> Vec<VertexId> {
    let mut forced = pending.to_vec();
    forced.shuffle(rng);
    forced.truncate(size);
    let mut chosen = vec![false; n];
    for &v in &forced {
        chosen[v] = true;
    }
    let mut rest: Vec<VertexId> = (0..n).filter(|&v| !chosen[v]).collect();
    rest.shuffle(rng);
    forced.extend(rest.into_iter().take(size - forced.len()));
    forced.sort_unstable();
    forced
}

/// `d(s, v) = min over sampled x of d_H(s, x) + d_limited(x, v)`.
fn splice_row(n: usize, hub: &[Dist], searches: &[LimitedSearch]) -> Vec<Dist> {
    let mut row = vec![Dist::INFINITY; n];
    for (x, search) in searches.iter().enumerate() {
        let base = hub[x];
        if base.is_infinite() {
            continue;
        }
        for (cell, tail) in row.iter_mut().zip(&search.dist) {
            if let Some(t) = *tail {
                let cand = base.plus_weight(t);
                if cand < *cell {
                    *cell = cand;
                }
            }
        }
    }
    row
}

/// Exact all-pairs distances and counts by one priority-queue search per
/// source, run in parallel.
pub fn parallel_dijkstra_apsp(g: &Graph) -> Result<ApspResult> {
    parallel_dijkstra_apsp_counted(g, &mut WorkCounters::default())
}

fn parallel_dijkstra_apsp_counted(g: &Graph, counters: &mut WorkCounters) -> Result<ApspResult> {
    let n = g.n();
    let states = (0..n).into_par_iter().map(|s| sssp_with_counts(g, s)).collect::<Result<Vec<_>>>()?;
    let mut dist = DistMatrix::filled(n, Dist::INFINITY);
    let mut counts = CountMatrix::zeros(n);
    for st in states {
        counters.relaxations += st.relaxations;
        dist.set_row(st.source, &st.dist);
        counts.set_row(st.source, &st.sigma);
    }
    Ok(ApspResult::new(dist, counts))
}

/// Parallel forward pass: sampled limited search for unit weights, per-source
/// Dijkstra otherwise.
pub fn parallel_forward(g: &Graph, cfg: &SampleConfig) -> Result<ApspResult> {
    parallel_forward_counted(g, cfg, &mut WorkCounters::default())
}

pub(crate) fn parallel_forward_counted(g: &Graph, cfg: &SampleConfig, counters: &mut WorkCounters) -> Result<ApspResult> {
    g.require_connected()?;
    if g.is_unit_weight() {
        let (apsp, report) = sampled_apsp_report(g, cfg)?;
        counters.rounds += report.rounds as u64;
        counters.relaxations += report.relaxations;
        Ok(apsp)
    } else {
        parallel_dijkstra_apsp_counted(g, counters)
    }
}

/// Betweenness straight from distances and counts: for every ordered pair
/// `(s, t)` and every `v` on some shortest `s-t` path, add
/// `lambda_sv * lambda_vt / lambda_st`. Halved when undirected.
pub fn pairwise_bc(apsp: &ApspResult, directed: bool) -> BcVector {
    let n = apsp.n();
    let (dist, lambda) = (&apsp.dist, &apsp.counts);
    let scores: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut acc = 0.0;
            for s in 0..n {
                let dsv = dist[(s, v)];
                if s == v || dsv.is_infinite() {
                    continue;
                }
                let (drow, lrow) = (dist.row(s), lambda.row(s));
                for t in 0..n {
                    if t == s || t == v {
                        continue;
                    }
                    let dvt = dist[(v, t)];
                    if dvt.is_finite() && drow[t].is_finite() && dsv.plus(dvt) == drow[t] {
                        let through = lambda[(s, v)] as u128 * lambda[(v, t)] as u128;
                        acc += through as f64 / lrow[t] as f64;
                    }
                }
            }
            acc
        })
        .collect();
    let bc = BcVector(scores);
    if directed {
        bc
    } else {
        bc.halved()
    }
}

/// Dependencies by distance wavefronts: all pairs at distance `d` are
/// finished in parallel from pairs at larger distance, for each realized `d`
/// from the largest down.
pub fn wavefront_dependencies(g: &Graph, apsp: &ApspResult) -> Result<DependencyResult> {
    let n = g.n();
    if apsp.n() != n || apsp.counts.n() != n {
        return Err(Error::Inconsistent(format!("graph has {n} vertices, matrices have {}", apsp.n())));
    }
    let mut pairs: Vec<(u64, VertexId, VertexId)> = Vec::new();
    for u in 0..n {
        for (v, d) in apsp.dist.row(u).iter().enumerate() {
            if let Some(d) = d.get().filter(|&d| d > 0) {
                pairs.push((d, u, v));
            }
        }
    }
    pairs.sort_unstable_by(|a, b| b.cmp(a));

    let mut delta = RealMatrix::zeros_real(n);
    // Level at which each entry was finished; u64::MAX while open.
    let mut finished_at = vec![u64::MAX; if cfg!(debug_assertions) { n * n } else { 0 }];

    for wave in pairs.chunk_by(|a, b| a.0 == b.0) {
        let level = wave[0].0;
        let values: Vec<f64> = wave
            .par_iter()
            .map(|&(_, u, v)| {
                let mut sum = 0.0;
                for nb in g.neighbors(v) {
                    let w = nb.vertex;
                    if apsp.d(u, w) == Dist::finite(level).plus_weight(nb.weight) {
                        debug_assert!(
                            finished_at[u * n + w] != u64::MAX && finished_at[u * n + w] > level,
                            "read of ({u}, {w}) before it was finished"
                        );
                        sum += (1.0 + delta[(u, w)]) / apsp.counts[(u, w)] as f64;
                    }
                }
                sum * apsp.counts[(u, v)] as f64
            })
            .collect();
        for (&(_, u, v), x) in wave.iter().zip(values) {
            delta[(u, v)] = x;
            if cfg!(debug_assertions) {
                finished_at[u * n + v] = level;
            }
        }
    }
    Ok(DependencyResult { delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn cycle(n: usize) -> Graph {
        Graph::unweighted(n, false, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::unweighted(n, false, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    fn d(v: u64) -> Dist {
        Dist::finite(v)
    }

    #[test]
    fn sizing() {
        let cfg = SampleConfig::default();
        assert_eq!(cfg.sample_size(100), 100);
        // 3 * 10 * ln(100) = 138.15...
        let narrow = SampleConfig { c: 1.0, ..cfg };
        assert_eq!(narrow.sample_size(100), 47);
        assert_eq!(cfg.sample_size(1), 1);
        assert_eq!(hop_bound(100), 10);
        assert_eq!(hop_bound(101), 11);
        assert_eq!(hop_bound(9), 3);
        assert_eq!(hop_bound(1), 1);
    }

    #[test]
    fn limited_search_on_path() {
        let r = limited_bfs(&path(5), 0, 2).unwrap();
        assert_eq!(r.dist, vec![Some(0), Some(1), Some(2), None, None]);
        assert_eq!(r.count, vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn limited_search_reaches_cycle() {
        let r = limited_bfs(&cycle(9), 0, 4).unwrap();
        assert!(r.dist.iter().all(Option::is_some));
    }

    #[test]
    fn certification() {
        let p3 = path(3);
        assert!(certify_sssp(&p3, 0, &[d(0), d(1), d(2)]));
        assert!(!certify_sssp(&p3, 0, &[d(0), d(1), d(3)]));
        assert!(!certify_sssp(&p3, 0, &[d(1), d(1), d(2)]));
        // Passes the tense check although 0 is not a realized length for vertex 1:
        // this is why finite labels must come from real paths.
        assert!(certify_sssp(&p3, 0, &[d(0), d(0), d(0)]));
        // A reachable vertex labelled infinite is caught.
        assert!(!certify_sssp(&p3, 0, &[d(0), d(1), Dist::INFINITY]));
    }

    #[test]
    fn counts_from_distances() {
        let c4 = cycle(4);
        let counts = count_paths_from_distances(&c4, 0, &[d(0), d(1), d(2), d(1)]).unwrap();
        assert_eq!(counts[2], 2);
    }

    #[test]
    fn sampled_cycle_is_exact() {
        let g = cycle(9);
        for seed in 0..5 {
            let r = sampled_apsp(&g, &SampleConfig::with_seed(seed)).unwrap();
            for i in 0..9usize {
                for j in 0..9usize {
                    let k = i.abs_diff(j);
                    assert_eq!(r.dist[(i, j)], d(k.min(9 - k) as u64));
                    assert_eq!(r.counts[(i, j)], 1);
                }
            }
        }
    }

    #[test]
    fn sparse_sampling_needs_more_rounds_but_stays_exact() {
        let g = cycle(64);
        let cfg = SampleConfig { c: 0.6, seed: 3, max_rounds: 8 };
        assert!(cfg.sample_size(64) < 64);
        let (r, report) = sampled_apsp_report(&g, &cfg).unwrap();
        assert!(report.rounds > 1);
        assert_eq!(r, parallel_dijkstra_apsp(&g).unwrap());
    }

    #[test]
    fn round_cap_is_reported() {
        let cfg = SampleConfig { c: 0.05, seed: 1, max_rounds: 1 };
        assert_eq!(sampled_apsp(&cycle(64), &cfg), Err(Error::RoundsExhausted { rounds: 1 }));
    }

    #[test]
    fn weighted_input_is_routed_elsewhere() {
        let g = Graph::new(2, false, vec![Edge::new(0, 1, 2)]).unwrap();
        assert!(matches!(sampled_apsp(&g, &SampleConfig::default()), Err(Error::Unsupported(_))));
        assert!(parallel_forward(&g, &SampleConfig::default()).is_ok());
    }

    #[test]
    fn dijkstra_apsp_examples() {
        let tri = Graph::new(3, false, vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(0, 2, 3)]).unwrap();
        assert_eq!(parallel_dijkstra_apsp(&tri).unwrap().dist[(0, 2)], d(2));
        let heavy = Graph::new(9, false, (0..9).map(|i| Edge::new(i, (i + 1) % 9, 4)).collect()).unwrap();
        let plain = parallel_dijkstra_apsp(&cycle(9)).unwrap();
        assert_eq!(parallel_dijkstra_apsp(&heavy).unwrap().dist, plain.dist.map(|x| d(4 * x.get().unwrap())));
    }

    #[test]
    fn pairwise_examples() {
        let k4 = Graph::unweighted(4, false, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(pairwise_bc(&parallel_dijkstra_apsp(&k4).unwrap(), false).0, vec![0.0; 4]);
        let star = Graph::unweighted(6, false, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let bc = pairwise_bc(&parallel_dijkstra_apsp(&star).unwrap(), false);
        assert_eq!(bc.0, vec![10.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn wavefront_examples() {
        let p3 = path(3);
        let apsp = parallel_dijkstra_apsp(&p3).unwrap();
        let dep = wavefront_dependencies(&p3, &apsp).unwrap();
        assert_eq!(dep.delta.row(0), &[0.0, 1.0, 0.0]);
        let c5 = cycle(5);
        let dep = wavefront_dependencies(&c5, &parallel_dijkstra_apsp(&c5).unwrap()).unwrap();
        assert!((dep.delta[(0, 1)] - 1.0).abs() < 1e-12);
    }
}
