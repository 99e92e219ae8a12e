use std::ops::Deref;

use crate::dist::Dist;
use crate::matrix::{CountMatrix, DistMatrix, RealMatrix};

/// Absolute and relative tolerance used for every cross-method comparison.
pub const TOLERANCE: f64 = 1e-9;

/// Betweenness score per vertex, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BcVector(pub Vec<f64>);

impl BcVector {
    pub fn zeros(n: usize) -> Self {
        BcVector(vec![0.0; n])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Halves every score; applied to undirected graphs, where each path is
    /// seen from both endpoints.
    pub fn halved(mut self) -> Self {
        self.0.iter_mut().for_each(|x| *x /= 2.0);
        self
    }

    /// Largest absolute difference to `other`; infinite when lengths differ.
    pub fn max_abs_diff(&self, other: &BcVector) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.iter().zip(other.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// True when every entry agrees within [`TOLERANCE`], absolute or relative,
    /// whichever is looser.
    pub fn approx_eq(&self, other: &BcVector) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(&a, &b)| close(a, b))
    }
}

impl Deref for BcVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for BcVector {
    fn from(v: Vec<f64>) -> Self {
        BcVector(v)
    }
}

#[inline]
pub fn close(a: f64, b: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= TOLERANCE.max(TOLERANCE * scale)
}

/// Forward-pass output: all-pairs distances and shortest-path counts.
#[derive(Debug, Clone, PartialEq)]
pub struct ApspResult {
    pub dist: DistMatrix,
    pub counts: CountMatrix,
    /// Largest finite distance.
    pub diameter: u64,
}

impl ApspResult {
    pub fn new(dist: DistMatrix, counts: CountMatrix) -> Self {
        let diameter = dist.max_finite();
        ApspResult { dist, counts, diameter }
    }

    pub fn n(&self) -> usize {
        self.dist.n()
    }

    /// Realized finite distances, descending, excluding 0.
    pub fn levels_descending(&self) -> Vec<u64> {
        let mut levels: Vec<u64> = self.dist.as_slice().iter().filter_map(|d| d.get()).filter(|&d| d > 0).collect();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        levels.dedup();
        levels
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> Dist {
        self.dist[(i, j)]
    }
}

/// Backward-pass output: `delta[(s, v)]` is the dependency of `s` on `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct DependencyResult {
    pub delta: RealMatrix,
}

impl DependencyResult {
    /// Column sums of the dependency matrix, halved for undirected graphs.
    pub fn betweenness(&self, directed: bool) -> BcVector {
        let n = self.delta.n();
        let mut bc = vec![0.0; n];
        for row in self.delta.rows() {
            for (acc, &x) in bc.iter_mut().zip(row) {
                *acc += x;
            }
        }
        let bc = BcVector(bc);
        if directed {
            bc
        } else {
            bc.halved()
        }
    }
}
