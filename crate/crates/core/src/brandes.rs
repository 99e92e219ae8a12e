//! Sequential baseline: one counting shortest-path search per source followed
//! by reverse-order dependency accumulation.
//!
//! Sources are split into fixed-size blocks that run on the rayon pool. Each
//! block owns one [`SsspState`] (reused as scratch between its sources) and a
//! private partial score vector; partials are added in block order, so the
//! result is the same for any pool width.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::scores::BcVector;

const SOURCE_BLOCK: usize = 32;

/// Single-source search result with shortest-path counts and predecessors.
#[derive(Debug, Clone, PartialEq)]
pub struct SsspState {
    pub source: VertexId,
    pub dist: Vec<Dist>,
    /// Number of shortest paths from `source`; 0 when unreachable.
    pub sigma: Vec<u64>,
    /// `preds[v]` holds every `u` with `d(s, v) = d(s, u) + w(u, v)`.
    pub preds: Vec<Vec<VertexId>>,
    /// Reached vertices in non-decreasing distance.
    pub order: Vec<VertexId>,
    /// Arcs examined during the search.
    pub relaxations: u64,
}

impl SsspState {
    fn empty(n: usize) -> Self {
        SsspState {
            source: 0,
            dist: vec![Dist::INFINITY; n],
            sigma: vec![0; n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            relaxations: 0,
        }
    }

    fn reset(&mut self, source: VertexId) {
        self.source = source;
        self.dist.fill(Dist::INFINITY);
        self.sigma.fill(0);
        self.preds.iter_mut().for_each(Vec::clear);
        self.order.clear();
        self.relaxations = 0;
    }

    fn run(&mut self, g: &Graph, s: VertexId) -> Result<()> {
        self.reset(s);
        self.dist[s] = Dist::ZERO;
        self.sigma[s] = 1;
        if g.is_unit_weight() {
            self.bfs(g, s)
        } else {
            self.dijkstra(g, s)
        }
    }

    fn bfs(&mut self, g: &Graph, s: VertexId) -> Result<()> {
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            self.order.push(v);
            let next = self.dist[v].plus_weight(1);
            for nb in g.neighbors(v) {
                self.relaxations += 1;
                let w = nb.vertex;
                if self.dist[w].is_infinite() {
                    self.dist[w] = next;
                    queue.push_back(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] = self.sigma[w].checked_add(self.sigma[v]).ok_or(Error::Overflow)?;
                    self.preds[w].push(v);
                }
            }
        }
        Ok(())
    }

    fn dijkstra(&mut self, g: &Graph, s: VertexId) -> Result<()> {
        // (distance, id) ordering keeps the settle order deterministic.
        let mut heap = BinaryHeap::from([Reverse((Dist::ZERO, s))]);
        let mut settled = vec![false; g.n()];
        while let Some(Reverse((d, v))) = heap.pop() {
            if settled[v] || d > self.dist[v] {
                continue;
            }
            settled[v] = true;
            self.order.push(v);
            for nb in g.neighbors(v) {
                self.relaxations += 1;
                let w = nb.vertex;
                let cand = d.plus_weight(nb.weight);
                if cand < self.dist[w] {
                    self.dist[w] = cand;
                    self.sigma[w] = self.sigma[v];
                    self.preds[w].clear();
                    self.preds[w].push(v);
                    heap.push(Reverse((cand, w)));
                } else if cand == self.dist[w] {
                    self.sigma[w] = self.sigma[w].checked_add(self.sigma[v]).ok_or(Error::Overflow)?;
                    self.preds[w].push(v);
                }
            }
        }
        Ok(())
    }

    fn accumulate_into(&self, delta: &mut [f64]) {
        delta.fill(0.0);
        for &w in self.order.iter().rev() {
            let coeff = (1.0 + delta[w]) / self.sigma[w] as f64;
            for &v in &self.preds[w] {
                delta[v] += self.sigma[v] as f64 * coeff;
            }
        }
        delta[self.source] = 0.0;
    }
}

/// Breadth-first search on unit-weight graphs, Dijkstra otherwise.
/// Unreachable vertices keep an infinite distance and no predecessors.
pub fn sssp_with_counts(g: &Graph, s: VertexId) -> Result<SsspState> {
    if s >= g.n() {
        return Err(Error::InvalidParameter(format!("source {s} out of range for n = {}", g.n())));
    }
    let mut state = SsspState::empty(g.n());
    state.run(g, s)?;
    Ok(state)
}

/// Dependencies `delta[v]` of the state's source on every vertex, obtained by
/// sweeping the search order backwards. The source's own entry is 0.
pub fn accumulate_dependencies(state: &SsspState) -> Vec<f64> {
    let mut delta = vec![0.0; state.dist.len()];
    state.accumulate_into(&mut delta);
    delta
}

/// Betweenness of every vertex, halved for undirected graphs.
///
/// Works on directed and disconnected graphs; unreachable pairs add nothing.
/// Fails only if a shortest-path count exceeds 64 bits.
pub fn brandes_bc(g: &Graph) -> Result<BcVector> {
    brandes_bc_counted(g).map(|(bc, _)| bc)
}

/// [`brandes_bc`] plus the total number of arcs relaxed.
pub fn brandes_bc_counted(g: &Graph) -> Result<(BcVector, u64)> {
    let n = g.n();
    let sources: Vec<VertexId> = (0..n).collect();
    let partials = sources
        .par_chunks(SOURCE_BLOCK)
        .map(|block| -> Result<(Vec<f64>, u64)> {
            let mut state = SsspState::empty(n);
            let mut delta = vec![0.0; n];
            let mut bc = vec![0.0; n];
            let mut relaxations = 0;
            for &s in block {
                state.run(g, s)?;
                relaxations += state.relaxations;
                state.accumulate_into(&mut delta);
                for (acc, &d) in bc.iter_mut().zip(&delta) {
                    *acc += d;
                }
            }
            Ok((bc, relaxations))
        })
        .collect::<Vec<_>>();

    let mut bc = vec![0.0; n];
    let mut relaxations = 0;
    for partial in partials {
        let (p, r) = partial?;
        relaxations += r;
        for (acc, x) in bc.iter_mut().zip(p) {
            *acc += x;
        }
    }
    let bc = BcVector(bc);
    Ok((if g.is_directed() { bc } else { bc.halved() }, relaxations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::unweighted(n, false, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::unweighted(n, false, &edges).unwrap()
    }

    fn weighted_triangle() -> Graph {
        Graph::new(3, false, vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(0, 2, 3)]).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::unweighted(leaves + 1, false, &edges).unwrap()
    }

    #[test]
    fn path_three_from_end() {
        let st = sssp_with_counts(&path(3), 0).unwrap();
        assert_eq!(st.dist, vec![Dist::finite(0), Dist::finite(1), Dist::finite(2)]);
        assert_eq!(st.sigma, vec![1, 1, 1]);
        assert_eq!(accumulate_dependencies(&st), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn cycle_four_antipode_has_two_paths() {
        let st = sssp_with_counts(&cycle(4), 0).unwrap();
        assert_eq!(st.sigma[2], 2);
        assert_eq!(st.preds[2], vec![1, 3]);
    }

    #[test]
    fn weighted_detour_beats_heavy_edge() {
        let st = sssp_with_counts(&weighted_triangle(), 0).unwrap();
        assert_eq!(st.dist[2], Dist::finite(2));
        assert_eq!(st.preds[2], vec![1]);
        assert_eq!(accumulate_dependencies(&st)[1], 1.0);
    }

    #[test]
    fn star_leaf_depends_on_center() {
        let st = sssp_with_counts(&star(4), 1).unwrap();
        assert_eq!(accumulate_dependencies(&st)[0], 3.0);
    }

    #[test]
    fn cycle_five_neighbor_dependency() {
        let st = sssp_with_counts(&cycle(5), 0).unwrap();
        assert_eq!(accumulate_dependencies(&st)[1], 1.0);
    }

    #[test]
    fn closed_forms() {
        // Odd cycle C_{2r+1}: every vertex scores r(r - 1) / 2.
        assert!(brandes_bc(&cycle(9)).unwrap().iter().all(|&x| (x - 6.0).abs() < 1e-12));
        assert!(brandes_bc(&cycle(5)).unwrap().iter().all(|&x| (x - 1.0).abs() < 1e-12));
        let p9 = brandes_bc(&path(9)).unwrap();
        assert_eq!(p9.0, vec![0.0, 7.0, 12.0, 15.0, 16.0, 15.0, 12.0, 7.0, 0.0]);
    }

    #[test]
    fn unreachable_vertices() {
        let g = Graph::unweighted(4, false, &[(0, 1), (2, 3)]).unwrap();
        let st = sssp_with_counts(&g, 0).unwrap();
        assert!(st.dist[2].is_infinite());
        assert!(st.preds[2].is_empty());
        assert_eq!(st.sigma[3], 0);
        assert_eq!(brandes_bc(&g).unwrap().0, vec![0.0; 4]);
    }

    #[test]
    fn directed_scores_are_not_halved() {
        let g = Graph::unweighted(3, true, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(brandes_bc(&g).unwrap().0, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn bad_source() {
        assert!(matches!(sssp_with_counts(&path(3), 3), Err(Error::InvalidParameter(_))));
    }
}
