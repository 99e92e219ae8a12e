//! Dense square matrices and the product kernels behind the algebraic method.
//!
//! Products walk the output in blocks of rows that are distributed over the
//! rayon pool; inside a block the shared dimension is tiled so a panel of the
//! right operand stays in cache while every row of the block consumes it.
//! Each output row is produced by exactly one task in a fixed summation order,
//! so results do not depend on the pool width.

use std::ops::{Index, IndexMut};

use rayon::prelude::*;

use crate::dist::Dist;
use crate::error::{Error, Result};

const ROW_BLOCK: usize = 16;
const K_BLOCK: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

/// Exact non-negative integers: adjacency, walk counts, path counts.
pub type CountMatrix = Matrix<u64>;
/// Shortest distances with a dedicated infinity.
pub type DistMatrix = Matrix<Dist>;
/// Real-valued dependencies.
pub type RealMatrix = Matrix<f64>;

impl<T: Copy> Matrix<T> {
    pub fn filled(n: usize, value: T) -> Self {
        Matrix { n, data: vec![value; n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    /// Builds from row-major nested rows; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        Matrix { n, data: rows.iter().flatten().copied().collect() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Replaces row `i` with `values`.
    pub fn set_row(&mut self, i: usize, values: &[T]) {
        self.row_mut(i).copy_from_slice(values);
    }

    pub fn from_row_vecs(rows: Vec<Vec<T>>) -> Self {
        Matrix::from_rows(&rows)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl CountMatrix {
    pub fn zeros(n: usize) -> Self {
        Matrix::filled(n, 0)
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| u64::from(i == j))
    }
}

impl RealMatrix {
    pub fn zeros_real(n: usize) -> Self {
        Matrix::filled(n, 0.0)
    }
}

impl DistMatrix {
    /// Identity of the min-plus product: zero diagonal, infinity elsewhere.
    pub fn min_plus_identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { Dist::ZERO } else { Dist::INFINITY })
    }

    /// Largest finite entry (0 for an empty matrix).
    pub fn max_finite(&self) -> u64 {
        self.data.iter().filter_map(|d| d.get()).max().unwrap_or(0)
    }
}

fn same_size<A, B>(x: &Matrix<A>, y: &Matrix<B>) -> Result<usize> {
    if x.n == y.n {
        Ok(x.n)
    } else {
        Err(Error::DimensionMismatch { left: x.n, right: y.n })
    }
}

/// Runs `body(first_row, rows)` over disjoint row blocks of `out` in parallel.
fn for_row_blocks<T, F>(n: usize, out: &mut [T], body: F) -> Result<()>
where
    T: Send,
    F: Fn(usize, &mut [T]) -> Result<()> + Sync,
{
    if n == 0 {
        return Ok(());
    }
    out.par_chunks_mut(ROW_BLOCK * n)
        .enumerate()
        .map(|(b, rows)| body(b * ROW_BLOCK, rows))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Integer product with overflow detection.
pub fn mat_mul(x: &CountMatrix, y: &CountMatrix) -> Result<CountMatrix> {
    let n = same_size(x, y)?;
    let mut out = CountMatrix::zeros(n);
    for_row_blocks(n, &mut out.data, |first, rows| {
        let height = rows.len() / n;
        for k0 in (0..n).step_by(K_BLOCK) {
            let k1 = (k0 + K_BLOCK).min(n);
            for r in 0..height {
                let xrow = x.row(first + r);
                let acc = &mut rows[r * n..(r + 1) * n];
                for k in k0..k1 {
                    let xik = xrow[k];
                    if xik == 0 {
                        continue;
                    }
                    for (a, &ykj) in acc.iter_mut().zip(y.row(k)) {
                        if ykj != 0 {
                            let term = xik.checked_mul(ykj).ok_or(Error::Overflow)?;
                            *a = a.checked_add(term).ok_or(Error::Overflow)?;
                        }
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(out)
}

/// Real-by-integer product, used to push scaled dependencies through adjacency.
pub fn mul_real_count(x: &RealMatrix, y: &CountMatrix) -> Result<RealMatrix> {
    let n = same_size(x, y)?;
    let mut out = RealMatrix::zeros_real(n);
    for_row_blocks(n, &mut out.data, |first, rows| {
        let height = rows.len() / n;
        for k0 in (0..n).step_by(K_BLOCK) {
            let k1 = (k0 + K_BLOCK).min(n);
            for r in 0..height {
                let xrow = x.row(first + r);
                let acc = &mut rows[r * n..(r + 1) * n];
                for k in k0..k1 {
                    let xik = xrow[k];
                    if xik == 0.0 {
                        continue;
                    }
                    for (a, &ykj) in acc.iter_mut().zip(y.row(k)) {
                        if ykj != 0 {
                            *a += xik * ykj as f64;
                        }
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(out)
}

/// Distance product: `z_ij = min_k x_ik + y_kj`, with infinity absorbing.
pub fn min_plus(x: &DistMatrix, y: &DistMatrix) -> Result<DistMatrix> {
    let n = same_size(x, y)?;
    let mut out = DistMatrix::filled(n, Dist::INFINITY);
    for_row_blocks(n, &mut out.data, |first, rows| {
        let height = rows.len() / n;
        for k0 in (0..n).step_by(K_BLOCK) {
            let k1 = (k0 + K_BLOCK).min(n);
            for r in 0..height {
                let xrow = x.row(first + r);
                let acc = &mut rows[r * n..(r + 1) * n];
                for k in k0..k1 {
                    let xik = xrow[k];
                    if xik.is_infinite() {
                        continue;
                    }
                    for (a, &ykj) in acc.iter_mut().zip(y.row(k)) {
                        let cand = xik.plus(ykj);
                        if cand < *a {
                            *a = cand;
                        }
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(out)
}

/// Distance product that also carries path counts.
///
/// `CZ_ij` is the sum of `CX_ik * CY_kj` over every `k` attaining the minimum
/// `Z_ij`, and 0 where `Z_ij` is infinite. The counts are exact when every
/// minimizing path splits uniquely at `k`, e.g. when `Y` holds single arcs.
pub fn counting_min_plus(
    x: &DistMatrix,
    cx: &CountMatrix,
    y: &DistMatrix,
    cy: &CountMatrix,
) -> Result<(DistMatrix, CountMatrix)> {
    let n = same_size(x, y)?;
    same_size(x, cx)?;
    same_size(y, cy)?;
    let mut dist = DistMatrix::filled(n, Dist::INFINITY);
    let mut count = CountMatrix::zeros(n);
    // Rows are independent; the pair of outputs is zipped per row block.
    dist.data
        .par_chunks_mut(ROW_BLOCK * n.max(1))
        .zip(count.data.par_chunks_mut(ROW_BLOCK * n.max(1)))
        .enumerate()
        .map(|(b, (drows, crows))| -> Result<()> {
            let first = b * ROW_BLOCK;
            let height = drows.len() / n;
            for r in 0..height {
                let i = first + r;
                let (xrow, cxrow) = (x.row(i), cx.row(i));
                let dacc = &mut drows[r * n..(r + 1) * n];
                let cacc = &mut crows[r * n..(r + 1) * n];
                for k in 0..n {
                    let xik = xrow[k];
                    if xik.is_infinite() {
                        continue;
                    }
                    let cik = cxrow[k];
                    for j in 0..n {
                        let ykj = y[(k, j)];
                        if ykj.is_infinite() {
                            continue;
                        }
                        let cand = xik.plus(ykj);
                        let paths = cik.checked_mul(cy[(k, j)]).ok_or(Error::Overflow)?;
                        if cand < dacc[j] {
                            dacc[j] = cand;
                            cacc[j] = paths;
                        } else if cand == dacc[j] {
                            cacc[j] = cacc[j].checked_add(paths).ok_or(Error::Overflow)?;
                        }
                    }
                }
            }
            Ok(())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<()>>()?;
    Ok((dist, count))
}

/// Entry types that widen losslessly enough into `f64` for elementwise work.
pub trait Scalar: Copy + Send + Sync {
    fn to_f64(self) -> f64;
}

impl Scalar for u64 {
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementwiseOp {
    Mult,
    Div,
    Add,
}

/// Entrywise `x op y` as reals. Division defines `0 / 0 = 0` and rejects a
/// nonzero numerator over a zero denominator.
pub fn elementwise<A: Scalar, B: Scalar>(x: &Matrix<A>, y: &Matrix<B>, op: ElementwiseOp) -> Result<RealMatrix> {
    let n = same_size(x, y)?;
    let mut data = Vec::with_capacity(n * n);
    for (idx, (&a, &b)) in x.data.iter().zip(&y.data).enumerate() {
        let (a, b) = (a.to_f64(), b.to_f64());
        data.push(match op {
            ElementwiseOp::Mult => a * b,
            ElementwiseOp::Add => a + b,
            ElementwiseOp::Div => {
                if b != 0.0 {
                    a / b
                } else if a == 0.0 {
                    0.0
                } else {
                    return Err(Error::DivisionByZero { row: idx / n, col: idx % n });
                }
            }
        });
    }
    Ok(Matrix { n, data })
}

/// Copy of `x` with every entry zeroed where `d(i, j) != level`.
pub fn mask(x: &RealMatrix, d: &DistMatrix, level: u64) -> Result<RealMatrix> {
    same_size(x, d)?;
    let level = Dist::finite(level);
    let data = x.data.iter().zip(&d.data).map(|(&v, &dij)| if dij == level { v } else { 0.0 }).collect();
    Ok(Matrix { n: x.n, data })
}

/// 0-1 matrix with a one exactly where `d(i, j) == level`.
pub fn level_indicator(d: &DistMatrix, level: u64) -> CountMatrix {
    let level = Dist::finite(level);
    d.map(|dij| u64::from(dij == level))
}
