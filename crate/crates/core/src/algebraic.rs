//! Matrix formulation of betweenness for undirected graphs.
//!
//! The forward pass finds distances and path counts with matrix products:
//! powers of the adjacency matrix for unit weights, distance products for
//! integer weights. The backward pass walks the distance levels from the
//! diameter downwards. At level `l`, every pair at distance `l` pushes
//! `(1 + delta) / lambda` through the adjacency matrix; masking keeps only
//! pairs one step closer, and multiplying by `lambda` turns the sums into
//! dependencies.

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{
    counting_min_plus, elementwise, level_indicator, mask, mat_mul, min_plus, mul_real_count, CountMatrix, DistMatrix,
    ElementwiseOp, RealMatrix,
};
use crate::scores::{ApspResult, BcVector, DependencyResult};
use crate::stats::WorkCounters;

fn require_undirected(g: &Graph) -> Result<()> {
    if g.is_directed() {
        Err(Error::Unsupported("the algebraic method handles undirected graphs only"))
    } else {
        Ok(())
    }
}

fn require_unit(g: &Graph) -> Result<()> {
    if g.is_unit_weight() {
        Ok(())
    } else {
        Err(Error::Unsupported("this pass expects unit weights; use the weighted variant"))
    }
}

fn require_size(g: &Graph, apsp: &ApspResult) -> Result<()> {
    if g.n() == apsp.n() && apsp.counts.n() == g.n() {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("graph has {} vertices, matrices have {}", g.n(), apsp.n())))
    }
}

/// Distances and shortest-path counts of an unweighted, connected, undirected
/// graph from successive powers of its adjacency matrix.
///
/// `A^l` counts walks of length `l`; the first `l` at which `(A^l)_ij` becomes
/// nonzero is `d(i, j)`, and since every walk of that length is a shortest
/// path the entry is `lambda_ij`. The loop stops once every pair is resolved,
/// after exactly `Diam(G)` products.
pub fn compute_path_count(g: &Graph) -> Result<ApspResult> {
    compute_path_count_counted(g, &mut WorkCounters::default())
}

pub(crate) fn compute_path_count_counted(g: &Graph, counters: &mut WorkCounters) -> Result<ApspResult> {
    require_undirected(g)?;
    require_unit(g)?;
    g.require_connected()?;

    let n = g.n();
    let a = g.adjacency_matrix();
    let mut dist = DistMatrix::min_plus_identity(n);
    let mut counts = CountMatrix::identity(n);
    let mut unresolved = n * n.saturating_sub(1);
    let mut walks = CountMatrix::identity(n);
    let mut level = 0u64;

    while unresolved > 0 {
        level += 1;
        walks = mat_mul(&walks, &a)?;
        counters.products += 1;
        counters.forward_iterations += 1;
        for i in 0..n {
            for j in 0..n {
                if dist[(i, j)].is_infinite() && walks[(i, j)] != 0 {
                    dist[(i, j)] = Dist::finite(level);
                    counts[(i, j)] = walks[(i, j)];
                    unresolved -= 1;
                }
            }
        }
    }

    Ok(ApspResult { dist, counts, diameter: level })
}

/// One backward step as seen by [`compute_dependency_traced`].
pub struct LevelStep<'a> {
    /// The farther level `l`; the step produces dependencies at `l - 1`.
    pub level: u64,
    /// `((D_l + Delta_l) div Lambda) . A` before masking.
    pub unmasked: &'a RealMatrix,
    /// The dependencies of pairs at distance `l - 1`.
    pub delta: &'a RealMatrix,
}

/// Dependencies of an unweighted, connected, undirected graph from its
/// forward-pass matrices.
pub fn compute_dependency(g: &Graph, apsp: &ApspResult) -> Result<DependencyResult> {
    compute_dependency_traced(g, apsp, |_| {})
}

/// [`compute_dependency`] reporting every level step to `observe`.
pub fn compute_dependency_traced(
    g: &Graph,
    apsp: &ApspResult,
    observe: impl FnMut(LevelStep<'_>),
) -> Result<DependencyResult> {
    compute_dependency_inner(g, apsp, observe, &mut WorkCounters::default())
}

pub(crate) fn compute_dependency_inner(
    g: &Graph,
    apsp: &ApspResult,
    mut observe: impl FnMut(LevelStep<'_>),
    counters: &mut WorkCounters,
) -> Result<DependencyResult> {
    require_undirected(g)?;
    require_unit(g)?;
    require_size(g, apsp)?;
    g.require_connected()?;

    let n = g.n();
    let a = g.adjacency_matrix();
    if level_indicator(&apsp.dist, 1) != a {
        return Err(Error::Inconsistent("pairs at distance 1 differ from the adjacency matrix".into()));
    }

    let lambda = &apsp.counts;
    let mut delta = RealMatrix::zeros_real(n);
    // Pairs at the diameter have no dependency.
    let mut farther = RealMatrix::zeros_real(n);

    // Level 1 would produce the diagonal, i.e. a source's dependency on
    // itself, which is excluded from betweenness.
    for level in (2..=apsp.diameter).rev() {
        let at_level = level_indicator(&apsp.dist, level);
        let numer = elementwise(&at_level, &farther, ElementwiseOp::Add)?;
        let scaled = elementwise(&numer, lambda, ElementwiseOp::Div)?;
        let pushed = mul_real_count(&scaled, &a)?;
        counters.products += 1;
        let closer = mask(&pushed, &apsp.dist, level - 1)?;
        let closer = elementwise(&closer, lambda, ElementwiseOp::Mult)?;
        observe(LevelStep { level, unmasked: &pushed, delta: &closer });
        delta = elementwise(&delta, &closer, ElementwiseOp::Add)?;
        farther = closer;
    }

    Ok(DependencyResult { delta })
}

/// The one-step pair: arc weights with a zero diagonal, and a count of 1 on
/// every arc and on the diagonal.
pub fn one_step_matrices(g: &Graph) -> (DistMatrix, CountMatrix) {
    let n = g.n();
    let mut dist = DistMatrix::min_plus_identity(n);
    let mut counts = CountMatrix::identity(n);
    for u in 0..n {
        for nb in g.neighbors(u) {
            dist[(u, nb.vertex)] = Dist::finite(nb.weight);
            counts[(u, nb.vertex)] = 1;
        }
    }
    (dist, counts)
}

/// Arc-only pair: like [`one_step_matrices`] but with an infinite diagonal,
/// so a product with it appends exactly one arc.
fn arc_matrices(g: &Graph) -> (DistMatrix, CountMatrix) {
    let (mut dist, mut counts) = one_step_matrices(g);
    for i in 0..g.n() {
        dist[(i, i)] = Dist::INFINITY;
        counts[(i, i)] = 0;
    }
    (dist, counts)
}

/// Distances by repeated distance-product squaring of the one-step matrix,
/// until a fixed point.
pub fn distances_by_squaring(g: &Graph) -> Result<DistMatrix> {
    distances_by_squaring_counted(g, &mut WorkCounters::default())
}

fn distances_by_squaring_counted(g: &Graph, counters: &mut WorkCounters) -> Result<DistMatrix> {
    let (mut dist, _) = one_step_matrices(g);
    loop {
        let squared = min_plus(&dist, &dist)?;
        counters.products += 1;
        counters.forward_iterations += 1;
        if squared == dist {
            return Ok(dist);
        }
        dist = squared;
    }
}

/// Shortest-path counts from exact distances, by appending one arc at a time
/// with the counting distance product.
///
/// After `h` steps the working pair holds, for every pair whose `h`-arc
/// minimum equals its true distance, the number of shortest paths with
/// exactly `h` arcs. Entries that exceed the true distance are dropped, so
/// only prefixes of shortest paths survive and every path is counted once,
/// under its arc count. The loop ends when no entry survives.
pub fn counts_by_arc_extension(g: &Graph, dist: &DistMatrix) -> Result<CountMatrix> {
    counts_by_arc_extension_counted(g, dist, &mut WorkCounters::default())
}

fn counts_by_arc_extension_counted(g: &Graph, dist: &DistMatrix, counters: &mut WorkCounters) -> Result<CountMatrix> {
    let n = g.n();
    let (arc_dist, arc_count) = arc_matrices(g);
    let mut reach = DistMatrix::min_plus_identity(n);
    let mut reach_count = CountMatrix::identity(n);
    let mut counts = CountMatrix::identity(n);
    loop {
        let (d, mut c) = counting_min_plus(&reach, &reach_count, &arc_dist, &arc_count)?;
        counters.products += 1;
        let mut d = d;
        let mut alive = false;
        for i in 0..n {
            for j in 0..n {
                if d[(i, j)].is_finite() && d[(i, j)] == dist[(i, j)] {
                    counts[(i, j)] = counts[(i, j)].checked_add(c[(i, j)]).ok_or(Error::Overflow)?;
                    alive = true;
                } else {
                    d[(i, j)] = Dist::INFINITY;
                    c[(i, j)] = 0;
                }
            }
        }
        if !alive {
            return Ok(counts);
        }
        reach = d;
        reach_count = c;
    }
}

/// Distances and path counts of a connected, undirected graph with integer
/// weights: distances by repeated squaring, counts by arc extension.
pub fn weighted_forward(g: &Graph) -> Result<ApspResult> {
    weighted_forward_counted(g, &mut WorkCounters::default())
}

pub(crate) fn weighted_forward_counted(g: &Graph, counters: &mut WorkCounters) -> Result<ApspResult> {
    require_undirected(g)?;
    g.require_connected()?;
    let dist = distances_by_squaring_counted(g, counters)?;
    let counts = counts_by_arc_extension_counted(g, &dist, counters)?;
    Ok(ApspResult::new(dist, counts))
}

/// Dependencies for integer-weighted, connected, undirected graphs.
///
/// Realized distances are visited in descending order. Pairs at distance `l`
/// are final when reached; they push `(1 + delta) / lambda` through the
/// adjacency matrix of each weight class `w`, masked to pairs at `l - w`, so
/// only arcs `(j, k)` with `d(i, k) = d(i, j) + w(j, k)` contribute.
pub fn weighted_backward(g: &Graph, apsp: &ApspResult) -> Result<DependencyResult> {
    weighted_backward_counted(g, apsp, &mut WorkCounters::default())
}

pub(crate) fn weighted_backward_counted(
    g: &Graph,
    apsp: &ApspResult,
    counters: &mut WorkCounters,
) -> Result<DependencyResult> {
    require_undirected(g)?;
    require_size(g, apsp)?;
    g.require_connected()?;
    let n = g.n();
    for i in 0..n {
        if apsp.d(i, i) != Dist::ZERO || apsp.counts[(i, i)] != 1 {
            return Err(Error::Inconsistent(format!("diagonal entry {i} is not (0, 1)")));
        }
    }
    for e in g.edges() {
        if apsp.d(e.u, e.v).get().map_or(true, |d| d > e.w) {
            return Err(Error::Inconsistent(format!("d({}, {}) exceeds the edge weight {}", e.u, e.v, e.w)));
        }
    }

    let mut weights: Vec<u64> = g.edges().iter().map(|e| e.w).collect();
    weights.sort_unstable();
    weights.dedup();
    let by_weight: Vec<(u64, CountMatrix)> = weights
        .iter()
        .map(|&w| {
            let mut a = CountMatrix::zeros(n);
            for e in g.edges().iter().filter(|e| e.w == w) {
                a[(e.u, e.v)] = 1;
                a[(e.v, e.u)] = 1;
            }
            (w, a)
        })
        .collect();

    let levels = apsp.levels_descending();
    let realized: std::collections::HashSet<u64> = levels.iter().copied().collect();
    let lambda = &apsp.counts;
    // Per pair, the running sum of (1 + delta_ik) / lambda_ik over successors k.
    let mut pending = RealMatrix::zeros_real(n);
    let mut delta = RealMatrix::zeros_real(n);

    for &level in &levels {
        let here = elementwise(&mask(&pending, &apsp.dist, level)?, lambda, ElementwiseOp::Mult)?;
        delta = elementwise(&delta, &here, ElementwiseOp::Add)?;
        let at_level = level_indicator(&apsp.dist, level);
        let scaled = elementwise(&elementwise(&at_level, &here, ElementwiseOp::Add)?, lambda, ElementwiseOp::Div)?;
        for (w, a) in &by_weight {
            if *w >= level || !realized.contains(&(level - w)) {
                continue;
            }
            let pushed = mul_real_count(&scaled, a)?;
            counters.products += 1;
            pending = elementwise(&pending, &mask(&pushed, &apsp.dist, level - w)?, ElementwiseOp::Add)?;
        }
    }

    Ok(DependencyResult { delta })
}

/// Betweenness as column sums of the dependency matrix, halved when undirected.
pub fn bc_from_dependencies(dep: &DependencyResult, directed: bool) -> BcVector {
    dep.betweenness(directed)
}

/// Full algebraic pipeline, choosing the unit-weight or weighted passes.
pub fn algebraic_bc(g: &Graph) -> Result<BcVector> {
    algebraic_bc_counted(g, &mut WorkCounters::default())
}

pub(crate) fn algebraic_bc_counted(g: &Graph, counters: &mut WorkCounters) -> Result<BcVector> {
    require_undirected(g)?;
    let dep = if g.is_unit_weight() {
        let apsp = compute_path_count_counted(g, counters)?;
        compute_dependency_inner(g, &apsp, |_| {}, counters)?
    } else {
        let apsp = weighted_forward_counted(g, counters)?;
        weighted_backward_counted(g, &apsp, counters)?
    };
    Ok(bc_from_dependencies(&dep, false))
}
