//! Immutable graph representation and the edge-list text format.
//!
//! A [`Graph`] keeps the edges in input order (so serialization round-trips)
//! alongside a compressed neighbor index: one contiguous, id-sorted slice of
//! [`Neighbor`]s per vertex. Undirected edges are stored once in the edge list
//! and twice in the index. Directed graphs additionally carry an incoming
//! index, which the predecessor-style passes need.
//!
//! The text format is
//!
//! ```text
//! # comment
//! n m directed|undirected weighted|unweighted
//! u v [w]
//! ...
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{EdgeFault, Error, Result};
use crate::matrix::CountMatrix;

/// Dense zero-based vertex index.
pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: u64,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, w: u64) -> Self {
        Edge { u, v, w }
    }

    pub fn unit(u: VertexId, v: VertexId) -> Self {
        Edge { u, v, w: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    pub vertex: VertexId,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    entries: Vec<Neighbor>,
}

impl Csr {
    fn build(n: usize, arcs: impl Iterator<Item = (VertexId, VertexId, u64)> + Clone) -> Csr {
        let mut offsets = vec![0usize; n + 1];
        for (u, _, _) in arcs.clone() {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut entries = vec![Neighbor { vertex: 0, weight: 0 }; offsets[n]];
        for (u, v, w) in arcs {
            entries[cursor[u]] = Neighbor { vertex: v, weight: w };
            cursor[u] += 1;
        }
        for u in 0..n {
            entries[offsets[u]..offsets[u + 1]].sort_unstable_by_key(|nb| nb.vertex);
        }
        Csr { offsets, entries }
    }

    #[inline]
    fn row(&self, u: VertexId) -> &[Neighbor] {
        &self.entries[self.offsets[u]..self.offsets[u + 1]]
    }
}

/// Immutable graph with positive integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    weighted_format: bool,
    edges: Vec<Edge>,
    max_weight: u64,
    out: Csr,
    // Only populated for directed graphs; undirected graphs reuse `out`.
    incoming: Option<Csr>,
}

impl Graph {
    /// Validates `edges` and builds the neighbor index.
    ///
    /// The graph is written in the weighted text format if any weight is
    /// above 1; use [`Graph::with_weighted_format`] to override.
    pub fn new(n: usize, directed: bool, edges: Vec<Edge>) -> Result<Graph> {
        let weighted = edges.iter().any(|e| e.w != 1);
        Graph::build(n, directed, weighted, edges)
    }

    pub fn unweighted(n: usize, directed: bool, pairs: &[(VertexId, VertexId)]) -> Result<Graph> {
        Graph::new(n, directed, pairs.iter().map(|&(u, v)| Edge::unit(u, v)).collect())
    }

    /// Forces the text format written by [`Graph::to_edge_list`].
    pub fn with_weighted_format(mut self, weighted: bool) -> Graph {
        self.weighted_format = weighted || self.max_weight > 1;
        self
    }

    fn build(n: usize, directed: bool, weighted_format: bool, edges: Vec<Edge>) -> Result<Graph> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (index, e) in edges.iter().enumerate() {
            let fault = if e.u >= n || e.v >= n {
                Some(EdgeFault::VertexOutOfRange)
            } else if e.u == e.v {
                Some(EdgeFault::SelfLoop)
            } else if e.w == 0 {
                Some(EdgeFault::ZeroWeight)
            } else {
                let key = if directed || e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
                (!seen.insert(key)).then_some(EdgeFault::Duplicate)
            };
            if let Some(fault) = fault {
                return Err(Error::InvalidEdge { index, u: e.u, v: e.v, fault });
            }
        }
        let max_weight = edges.iter().map(|e| e.w).max().unwrap_or(1);

        let forward = edges.iter().map(|e| (e.u, e.v, e.w));
        let (out, incoming) = if directed {
            let out = Csr::build(n, forward);
            let incoming = Csr::build(n, edges.iter().map(|e| (e.v, e.u, e.w)));
            (out, Some(incoming))
        } else {
            let both = forward.clone().chain(edges.iter().map(|e| (e.v, e.u, e.w)));
            (Csr::build(n, both), None)
        };

        Ok(Graph {
            n,
            directed,
            weighted_format: weighted_format || max_weight > 1,
            edges,
            max_weight,
            out,
            incoming,
        })
    }

    /// Parses the edge-list text format. Errors carry 1-based line numbers.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or_else(|| Error::Parse {
            line: text.lines().count().max(1),
            message: "missing header".into(),
        })?;
        let parse_err = |line: usize, message: String| Error::Parse { line, message };

        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(parse_err(
                header_line,
                format!("header needs 4 fields `n m directed|undirected weighted|unweighted`, found {}", fields.len()),
            ));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(header_line, format!("bad vertex count {:?}", fields[0])))?;
        let m: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(header_line, format!("bad edge count {:?}", fields[1])))?;
        let directed = match fields[2] {
            "directed" => true,
            "undirected" => false,
            other => return Err(parse_err(header_line, format!("expected directed|undirected, found {other:?}"))),
        };
        let weighted = match fields[3] {
            "weighted" => true,
            "unweighted" => false,
            other => return Err(parse_err(header_line, format!("expected weighted|unweighted, found {other:?}"))),
        };

        let arity = if weighted { 3 } else { 2 };
        let mut edges = Vec::with_capacity(m);
        let mut line_of = Vec::with_capacity(m);
        let mut last_line = header_line;
        for (line, body) in lines {
            last_line = line;
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != arity {
                return Err(parse_err(line, format!("expected {arity} fields, found {}", toks.len())));
            }
            let vertex = |tok: &str| -> Result<usize> {
                tok.parse().map_err(|_| parse_err(line, format!("bad vertex id {tok:?}")))
            };
            let u = vertex(toks[0])?;
            let v = vertex(toks[1])?;
            let w = if weighted {
                let w: u64 = toks[2]
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad weight {:?}", toks[2])))?;
                if w == 0 {
                    return Err(parse_err(line, format!("weight {w} < 1")));
                }
                // Keep weights far from the distance sentinel.
                if w > u32::MAX as u64 {
                    return Err(parse_err(line, format!("weight {w} exceeds {}", u32::MAX)));
                }
                w
            } else {
                1
            };
            edges.push(Edge::new(u, v, w));
            line_of.push(line);
        }
        if edges.len() != m {
            return Err(parse_err(last_line, format!("header declares {m} edges, found {}", edges.len())));
        }

        Graph::build(n, directed, weighted, edges).map_err(|e| match e {
            Error::InvalidEdge { index, u, v, fault } => {
                let detail = match fault {
                    EdgeFault::VertexOutOfRange => format!("vertex id out of range in ({u}, {v}); n = {n}"),
                    other => format!("{other} ({u}, {v})"),
                };
                parse_err(line_of[index], detail)
            }
            other => other,
        })
    }

    /// Writes the edge-list text format; parsing the result yields an equal graph.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 12);
        let _ = writeln!(
            out,
            "{} {} {} {}",
            self.n,
            self.edges.len(),
            if self.directed { "directed" } else { "undirected" },
            if self.weighted_format { "weighted" } else { "unweighted" },
        );
        for e in &self.edges {
            if self.weighted_format {
                let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
            } else {
                let _ = writeln!(out, "{} {}", e.u, e.v);
            }
        }
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Largest edge weight (1 for an edgeless graph).
    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    /// True when every edge has weight 1, so breadth-first search is exact.
    pub fn is_unit_weight(&self) -> bool {
        self.max_weight == 1
    }

    pub fn is_weighted_format(&self) -> bool {
        self.weighted_format
    }

    /// Outgoing neighbors of `u` (all neighbors when undirected), sorted by id.
    #[inline]
    pub fn neighbors(&self, u: VertexId) -> &[Neighbor] {
        self.out.row(u)
    }

    /// Incoming neighbors of `v` (all neighbors when undirected), sorted by id.
    #[inline]
    pub fn in_neighbors(&self, v: VertexId) -> &[Neighbor] {
        match &self.incoming {
            Some(csr) => csr.row(v),
            None => self.out.row(v),
        }
    }

    /// Weight of the arc `u -> v`, if present.
    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<u64> {
        let row = self.neighbors(u);
        row.binary_search_by_key(&v, |nb| nb.vertex).ok().map(|i| row[i].weight)
    }

    /// Degree for undirected graphs; out-degree plus in-degree for directed ones.
    pub fn degree(&self, v: VertexId) -> usize {
        match &self.incoming {
            Some(csr) => self.out.row(v).len() + csr.row(v).len(),
            None => self.out.row(v).len(),
        }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// One traversal from vertex 0, ignoring arc direction.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            let out = self.neighbors(u).iter();
            let back = if self.directed { self.in_neighbors(u) } else { &[] };
            for nb in out.chain(back.iter()) {
                if !seen[nb.vertex] {
                    seen[nb.vertex] = true;
                    reached += 1;
                    stack.push(nb.vertex);
                }
            }
        }
        reached == self.n
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// The 0-1 adjacency matrix (`a_ij = 1` iff the arc `i -> j` exists).
    pub fn adjacency_matrix(&self) -> CountMatrix {
        let mut a = CountMatrix::zeros(self.n);
        for u in 0..self.n {
            for nb in self.neighbors(u) {
                a[(u, nb.vertex)] = 1;
            }
        }
        a
    }

    /// Total arc count seen by traversals: `m` when directed, `2m` otherwise.
    pub fn arc_count(&self) -> usize {
        self.out.entries.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3() -> Graph {
        Graph::from_edge_list("3 3 undirected unweighted\n0 1\n1 2\n0 2\n").unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = k3();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(!g.is_directed());
        assert_eq!(g.max_weight(), 1);
        let row: Vec<_> = g.neighbors(0).iter().map(|nb| nb.vertex).collect();
        assert_eq!(row, vec![1, 2]);
    }

    #[test]
    fn parses_weighted_edge() {
        let g = Graph::from_edge_list("2 1 undirected weighted\n0 1 5\n").unwrap();
        assert_eq!(g.max_weight(), 5);
        assert_eq!(g.weight(1, 0), Some(5));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = Graph::from_edge_list("# header next\n\n2 1 directed unweighted\n# arc\n1 0\n").unwrap();
        assert_eq!(g.weight(1, 0), Some(1));
        assert_eq!(g.weight(0, 1), None);
    }

    fn parse_error_line(text: &str) -> usize {
        match Graph::from_edge_list(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn self_loop_is_reported_with_line() {
        assert_eq!(parse_error_line("2 1 undirected unweighted\n0 0\n"), 2);
    }

    #[test]
    fn edge_faults_are_reported_with_line() {
        assert_eq!(parse_error_line("3 2 undirected unweighted\n0 1\n1 0\n"), 3);
        assert_eq!(parse_error_line("3 1 undirected unweighted\n# c\n0 3\n"), 3);
        assert_eq!(parse_error_line("3 1 undirected weighted\n0 1 0\n"), 2);
        assert_eq!(parse_error_line("3 1 undirected weighted\n0 1\n"), 2);
        assert_eq!(parse_error_line("3 1 sideways unweighted\n0 1\n"), 1);
        assert_eq!(parse_error_line("3 2 undirected unweighted\n0 1\n"), 2);
    }

    #[test]
    fn directed_reverse_arcs_are_not_duplicates() {
        let g = Graph::unweighted(2, true, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn connectivity() {
        assert!(k3().is_connected());
        let split = Graph::unweighted(4, false, &[(0, 1), (2, 3)]).unwrap();
        assert!(!split.is_connected());
        // Weak connectivity: 0 <- 1 -> 2 has no path out of 0.
        let weak = Graph::unweighted(3, true, &[(1, 0), (1, 2)]).unwrap();
        assert!(weak.is_connected());
    }

    #[test]
    fn degrees() {
        let star = Graph::unweighted(6, false, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(star.max_degree(), 5);
        let k4 = Graph::unweighted(4, false, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.max_degree(), 3);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..12, any::<bool>(), proptest::collection::vec((0usize..12, 0usize..12, 1u64..6), 0..30)).prop_map(
            |(n, directed, raw)| {
                let mut seen = HashSet::new();
                let edges: Vec<Edge> = raw
                    .into_iter()
                    .map(|(u, v, w)| Edge::new(u % n, v % n, w))
                    .filter(|e| e.u != e.v)
                    .filter(|e| {
                        let key = if directed || e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
                        seen.insert(key)
                    })
                    .collect();
                Graph::new(n, directed, edges).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn edge_list_round_trips(g in arb_graph()) {
            let again = Graph::from_edge_list(&g.to_edge_list()).unwrap();
            prop_assert_eq!(again, g);
        }

        #[test]
        fn undirected_index_is_symmetric(g in arb_graph()) {
            if !g.is_directed() {
                for u in 0..g.n() {
                    for nb in g.neighbors(u) {
                        prop_assert_eq!(g.weight(nb.vertex, u), Some(nb.weight));
                    }
                }
            }
        }
    }
}
