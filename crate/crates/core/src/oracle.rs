//! Brute-force ground truth for small graphs.
//!
//! Distances come from a plain Floyd-Warshall sweep, paths are listed one by
//! one by walking tight arcs backwards from the target, and betweenness is
//! summed in exact rational arithmetic. Nothing here shares code with the
//! production methods.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::scores::BcVector;

pub type Rational = BigRational;

/// Size limits; exceeding one is an error, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_vertices: usize,
    /// Per source-target pair.
    pub max_paths: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { max_vertices: 64, max_paths: 1_000_000 }
    }
}

/// Every shortest path between two vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSet {
    pub source: VertexId,
    pub target: VertexId,
    pub paths: Vec<Vec<VertexId>>,
    /// Common weight of the listed paths; infinite when unreachable.
    pub length: Dist,
}

impl PathSet {
    pub fn count(&self) -> usize {
        self.paths.len()
    }
}

/// Exact betweenness plus its rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleBc {
    pub exact: Vec<Rational>,
    pub rounded: BcVector,
}

struct Oracle<'g> {
    g: &'g Graph,
    caps: OracleCaps,
    dist: Vec<Vec<Option<u64>>>,
    // Incoming arcs (tail, weight) per head, straight from the edge list.
    arcs_into: Vec<Vec<(VertexId, u64)>>,
}

impl<'g> Oracle<'g> {
    fn new(g: &'g Graph, caps: OracleCaps) -> Result<Self> {
        if g.n() > caps.max_vertices {
            return Err(Error::OracleCap(format!("{} vertices exceed the cap of {}", g.n(), caps.max_vertices)));
        }
        let n = g.n();
        let mut dist = vec![vec![None; n]; n];
        for (v, row) in dist.iter_mut().enumerate() {
            row[v] = Some(0u64);
        }
        for e in g.edges() {
            let mut relax = |a: usize, b: usize| {
                if dist[a][b].map_or(true, |d| e.w < d) {
                    dist[a][b] = Some(e.w);
                }
            };
            relax(e.u, e.v);
            if !g.is_directed() {
                relax(e.v, e.u);
            }
        }
        for k in 0..n {
            for i in 0..n {
                let Some(dik) = dist[i][k] else { continue };
                for j in 0..n {
                    if let Some(dkj) = dist[k][j] {
                        let via = dik + dkj;
                        if dist[i][j].map_or(true, |d| via < d) {
                            dist[i][j] = Some(via);
                        }
                    }
                }
            }
        }
        let mut arcs_into = vec![Vec::new(); n];
        for e in g.edges() {
            arcs_into[e.v].push((e.u, e.w));
            if !g.is_directed() {
                arcs_into[e.u].push((e.v, e.w));
            }
        }
        Ok(Oracle { g, caps, dist, arcs_into })
    }

    /// Tails of arcs `(u, x)` lying on a shortest path from `s`.
    fn tight_preds(&self, s: VertexId, x: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let dsx = self.dist[s][x];
        self.arcs_into[x]
            .iter()
            .filter(move |&&(u, w)| dsx.is_some() && self.dist[s][u].map(|d| d + w) == dsx)
            .map(|&(u, _)| u)
    }

    /// Shortest-path counts from `s` to every vertex, by dynamic programming
    /// over tight arcs. Used to enforce the cap before enumerating.
    fn counts_from(&self, s: VertexId) -> Vec<BigUint> {
        let n = self.g.n();
        let mut order: Vec<VertexId> = (0..n).filter(|&v| self.dist[s][v].is_some()).collect();
        order.sort_by_key(|&v| self.dist[s][v]);
        let mut count = vec![BigUint::zero(); n];
        count[s] = BigUint::from(1u8);
        for &x in &order {
            if x != s {
                count[x] = self.tight_preds(s, x).map(|u| count[u].clone()).sum();
            }
        }
        count
    }

    fn within_cap(&self, s: VertexId, t: VertexId, count: &BigUint) -> Result<u64> {
        match count.to_u64() {
            Some(c) if c <= self.caps.max_paths => Ok(c),
            _ => Err(Error::OracleCap(format!(
                "{count} shortest paths from {s} to {t} exceed the cap of {}",
                self.caps.max_paths
            ))),
        }
    }

    /// Depth-first walk over tight arcs from `t` back to `s`, calling `emit`
    /// with each path in target-to-source order.
    fn walk(&self, s: VertexId, t: VertexId, emit: &mut dyn FnMut(&[VertexId])) {
        let mut stack = vec![t];
        self.walk_from(s, &mut stack, emit);
    }

    fn walk_from(&self, s: VertexId, stack: &mut Vec<VertexId>, emit: &mut dyn FnMut(&[VertexId])) {
        let x = *stack.last().expect("nonempty");
        if x == s {
            emit(stack);
            return;
        }
        let preds: Vec<VertexId> = self.tight_preds(s, x).collect();
        for u in preds {
            stack.push(u);
            self.walk_from(s, stack, emit);
            stack.pop();
        }
    }

    fn path_set(&self, s: VertexId, t: VertexId) -> Result<PathSet> {
        let Some(length) = self.dist[s][t] else {
            return Ok(PathSet { source: s, target: t, paths: Vec::new(), length: Dist::INFINITY });
        };
        let expected = self.within_cap(s, t, &self.counts_from(s)[t])?;
        let mut paths = Vec::with_capacity(expected as usize);
        self.walk(s, t, &mut |rev| paths.push(rev.iter().rev().copied().collect()));
        debug_assert_eq!(paths.len() as u64, expected);
        Ok(PathSet { source: s, target: t, paths, length: Dist::finite(length) })
    }

    /// Number of shortest `s-t` paths and, per vertex, how many pass through it.
    fn through_counts(&self, s: VertexId, t: VertexId, counts_from_s: &[BigUint]) -> Result<(u64, Vec<u64>)> {
        let mut through = vec![0u64; self.g.n()];
        if self.dist[s][t].is_none() {
            return Ok((0, through));
        }
        self.within_cap(s, t, &counts_from_s[t])?;
        let mut total = 0u64;
        self.walk(s, t, &mut |rev| {
            total += 1;
            for &v in rev {
                through[v] += 1;
            }
        });
        Ok((total, through))
    }
}

fn check_vertex(g: &Graph, v: VertexId) -> Result<()> {
    if v < g.n() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("vertex {v} out of range for n = {}", g.n())))
    }
}

/// Lists every shortest path from `s` to `t`.
pub fn enumerate_shortest_paths(g: &Graph, s: VertexId, t: VertexId, caps: OracleCaps) -> Result<PathSet> {
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    Oracle::new(g, caps)?.path_set(s, t)
}

/// Fraction of shortest `s-t` paths through `v`; 0 when `v` is an endpoint or
/// `t` is unreachable.
pub fn oracle_pair_dependency(g: &Graph, s: VertexId, t: VertexId, v: VertexId, caps: OracleCaps) -> Result<Rational> {
    for x in [s, t, v] {
        check_vertex(g, x)?;
    }
    if v == s || v == t {
        return Ok(Rational::zero());
    }
    let oracle = Oracle::new(g, caps)?;
    let (total, through) = oracle.through_counts(s, t, &oracle.counts_from(s))?;
    if total == 0 {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(BigInt::from(through[v]), BigInt::from(total)))
}

/// Exact betweenness of every vertex, halved for undirected graphs.
pub fn oracle_bc(g: &Graph, caps: OracleCaps) -> Result<OracleBc> {
    let oracle = Oracle::new(g, caps)?;
    let n = g.n();
    let mut exact = vec![Rational::zero(); n];
    for s in 0..n {
        let counts_from_s = oracle.counts_from(s);
        for t in 0..n {
            if s == t {
                continue;
            }
            let (total, through) = oracle.through_counts(s, t, &counts_from_s)?;
            if total == 0 {
                continue;
            }
            let denom = BigInt::from(total);
            for v in (0..n).filter(|&v| v != s && v != t && through[v] > 0) {
                exact[v] += Rational::new(BigInt::from(through[v]), denom.clone());
            }
        }
    }
    if !g.is_directed() {
        let two = Rational::from_integer(BigInt::from(2));
        exact.iter_mut().for_each(|x| *x /= two.clone());
    }
    let rounded = BcVector(exact.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect());
    Ok(OracleBc { exact, rounded })
}
