//! Deterministic graph families.
//!
//! Random families draw from ChaCha8 (`rand_chacha` 0.3) seeded with
//! `seed_from_u64(seed)`. A retry `r` of the same seed uses stream `r` of that
//! generator, so corpora are reproducible across runs and platforms.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// Number of connectivity retries for `gnp`.
pub const GNP_ATTEMPTS: u64 = 1000;

/// A graph family with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Cycle { n: usize },
    Path { n: usize },
    Star { n: usize },
    Complete { n: usize },
    Gnp { n: usize, p: f64, seed: u64 },
    BoundedDegree { n: usize, d: usize, seed: u64 },
    TripartiteLb { n: usize },
    /// Layers of `width` vertices, consecutive layers completely joined.
    Lattice { layers: usize, width: usize },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GenSpec::Cycle { n } => cycle(n),
            GenSpec::Path { n } => path(n),
            GenSpec::Star { n } => star(n),
            GenSpec::Complete { n } => complete(n),
            GenSpec::Gnp { n, p, seed } => gnp(n, p, seed),
            GenSpec::BoundedDegree { n, d, seed } => bounded_degree(n, d, seed),
            GenSpec::TripartiteLb { n } => tripartite_lb(n),
            GenSpec::Lattice { layers, width } => lattice(layers, width),
        }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

fn build(n: usize, pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Graph> {
    Graph::new(n, false, pairs.into_iter().map(|(u, v)| Edge::unit(u, v)).collect())
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `C_n`: edges `(i, i + 1 mod n)`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `P_n`: edges `(i - 1, i)`.
pub fn path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(invalid(format!("path needs n >= 2, got {n}")));
    }
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// Center 0 joined to leaves `1..n`.
pub fn star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(invalid(format!("star needs n >= 2, got {n}")));
    }
    build(n, (1..n).map(|i| (0, i)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("complete graph needs n >= 1".into()));
    }
    build(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Erdős–Rényi `G(n, p)`, redrawn on a fresh stream until connected.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("gnp needs n >= 1".into()));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(format!("gnp needs 0 < p <= 1, got {p}")));
    }
    for attempt in 0..GNP_ATTEMPTS {
        let mut rng = rng_for(seed, attempt);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((i, j));
                }
            }
        }
        let g = build(n, pairs)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(invalid(format!("gnp({n}, {p}, seed {seed}) not connected after {GNP_ATTEMPTS} attempts")))
}

/// Connected graph with maximum degree at most `d`: a random Hamiltonian
/// path plus up to `n * d` rejection-sampled extra edges.
pub fn bounded_degree(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(invalid(format!("bounded_degree needs n >= 2, got {n}")));
    }
    if d < 2 {
        return Err(invalid(format!("bounded_degree needs d >= 2, got {d}")));
    }
    let mut rng = rng_for(seed, 0);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut seen = HashSet::new();
    let mut pairs = Vec::new();
    let mut join = |u: VertexId, v: VertexId, degree: &mut [usize], seen: &mut HashSet<(VertexId, VertexId)>| {
        pairs.push((u, v));
        seen.insert((u.min(v), u.max(v)));
        degree[u] += 1;
        degree[v] += 1;
    };
    for w in order.windows(2) {
        join(w[0], w[1], &mut degree, &mut seen);
    }
    for _ in 0..n * d {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || degree[u] >= d || degree[v] >= d || seen.contains(&(u.min(v), u.max(v))) {
            continue;
        }
        join(u, v, &mut degree, &mut seen);
    }
    build(n, pairs)
}

/// Directed tripartite instance on `u_i = i`, `v_j = n + j`, `w_k = 2n + k`
/// with arcs `u_i -> v_j` and `v_j -> w_k`. Arcs touching `v_0` weigh 1 and
/// all others `n + 2`, so every `u_i -> w_k` shortest path is `u_i, v_0, w_k`
/// (weight 2) and every alternative weighs `2n + 4`.
pub fn tripartite_lb(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("tripartite_lb needs n >= 1".into()));
    }
    let heavy = n as u64 + 2;
    let weight = |j: usize| if j == 0 { 1 } else { heavy };
    let mut edges = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            edges.push(Edge::new(i, n + j, weight(j)));
        }
    }
    for j in 0..n {
        for k in 0..n {
            edges.push(Edge::new(n + j, 2 * n + k, weight(j)));
        }
    }
    Ok(Graph::new(3 * n, true, edges)?.with_weighted_format(true))
}

/// Layered lattice: `layers` layers of `width` vertices, each vertex joined to
/// every vertex of the next layer. End-to-end path counts are
/// `width^(layers - 2)`, which overflows 64 bits for width 2 and 70 layers.
pub fn lattice(layers: usize, width: usize) -> Result<Graph> {
    if layers < 2 || width < 1 {
        return Err(invalid(format!("lattice needs layers >= 2 and width >= 1, got {layers} x {width}")));
    }
    let id = |layer: usize, k: usize| layer * width + k;
    build(
        layers * width,
        (0..layers - 1).flat_map(|l| (0..width).flat_map(move |a| (0..width).map(move |b| (id(l, a), id(l + 1, b))))),
    )
}

/// Copy of `g` with every weight drawn uniformly from `1..=max_weight`.
pub fn with_random_weights(g: &Graph, max_weight: u64, seed: u64) -> Result<Graph> {
    if max_weight < 1 {
        return Err(invalid("max_weight must be at least 1".into()));
    }
    let mut rng = rng_for(seed, u64::MAX);
    let edges = g.edges().iter().map(|e| Edge::new(e.u, e.v, rng.gen_range(1..=max_weight))).collect();
    Ok(Graph::new(g.n(), g.is_directed(), edges)?.with_weighted_format(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c = cycle(5).unwrap();
        assert_eq!((c.n(), c.m()), (5, 5));
        let p = path(5).unwrap();
        assert_eq!((p.n(), p.m()), (5, 4));
        assert_eq!(complete(4).unwrap().m(), 6);
        assert_eq!(star(6).unwrap().max_degree(), 5);
        let t = tripartite_lb(4).unwrap();
        assert_eq!((t.n(), t.m()), (12, 32));
        assert!(t.to_edge_list().starts_with("12 32 directed weighted\n"));
        assert!(t.is_connected());
        let l = lattice(70, 2).unwrap();
        assert_eq!((l.n(), l.m()), (140, 69 * 4));
    }

    #[test]
    fn small_parameters_are_rejected() {
        assert!(cycle(2).is_err());
        assert!(path(1).is_err());
        assert!(gnp(10, 0.0, 1).is_err());
        assert!(gnp(10, 1.5, 1).is_err());
        assert!(bounded_degree(10, 1, 1).is_err());
        assert!(tripartite_lb(0).is_err());
    }

    #[test]
    fn cycle_minus_closing_edge_is_the_path() {
        for n in [5, 9, 13] {
            let c = cycle(n).unwrap();
            let open: Vec<Edge> = c.edges().iter().copied().filter(|e| (e.u, e.v) != (n - 1, 0)).collect();
            assert_eq!(Graph::new(n, false, open).unwrap(), path(n).unwrap());
        }
    }

    #[test]
    fn random_families_are_deterministic() {
        assert_eq!(gnp(30, 0.2, 7).unwrap().to_edge_list(), gnp(30, 0.2, 7).unwrap().to_edge_list());
        assert_ne!(gnp(30, 0.2, 7).unwrap(), gnp(30, 0.2, 8).unwrap());
        assert_eq!(bounded_degree(40, 3, 2).unwrap(), bounded_degree(40, 3, 2).unwrap());
        let g = gnp(20, 0.3, 1).unwrap();
        assert_eq!(with_random_weights(&g, 10, 4).unwrap(), with_random_weights(&g, 10, 4).unwrap());
    }

    #[test]
    fn gnp_is_connected_even_when_sparse() {
        assert!(gnp(30, 0.08, 11).unwrap().is_connected());
    }

    #[test]
    fn bounded_degree_respects_cap() {
        for seed in 0..20 {
            for d in 2..6 {
                let g = bounded_degree(40, d, seed).unwrap();
                assert!(g.max_degree() <= d);
                assert!(g.is_connected());
            }
        }
    }

    #[test]
    fn tripartite_paths_through_v0_are_strictly_best() {
        for n in [1, 2, 4, 8] {
            let g = tripartite_lb(n).unwrap();
            for i in 0..n {
                for k in 0..n {
                    let best = g.weight(i, n).unwrap() + g.weight(n, 2 * n + k).unwrap();
                    assert_eq!(best, 2);
                    for j in 1..n {
                        let alt = g.weight(i, n + j).unwrap() + g.weight(n + j, 2 * n + k).unwrap();
                        assert!(alt >= n as u64 + 3);
                    }
                }
            }
        }
    }
}
