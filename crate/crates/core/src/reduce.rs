//! Deterministic reductions and maps over index ranges.
//!
//! Sums use a pairwise tree whose shape depends only on the number of terms:
//! a range is split at its midpoint until it holds at most [`LEAF`] terms,
//! which are then added left to right. The parallel version hands the two
//! halves of large ranges to `rayon::join` but keeps the same tree, so the
//! floating-point result is bit-identical to the sequential one and
//! independent of the thread count.

use std::ops::Add;

/// Terms summed sequentially at the bottom of the tree.
pub const LEAF: usize = 32;

/// Ranges at least this long are split across workers.
#[cfg(feature = "parallel")]
const PAR_MIN: usize = 1 << 13;

/// Pairwise sum of `term(i)` for `i in 0..n`, single-threaded.
pub fn tree_sum_seq<T, F>(n: usize, term: F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    sum_range_seq(0, n, &term)
}

fn sum_range_seq<T, F>(lo: usize, hi: usize, term: &F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    let len = hi - lo;
    if len <= LEAF {
        let mut acc = T::default();
        for i in lo..hi {
            acc = acc + term(i);
        }
        return acc;
    }
    let mid = lo + len / 2;
    sum_range_seq(lo, mid, term) + sum_range_seq(mid, hi, term)
}

/// Pairwise sum of `term(i)` for `i in 0..n` on the rayon pool.
///
/// Bit-identical to [`tree_sum_seq`].
#[cfg(feature = "parallel")]
pub fn tree_sum_par<T, F>(n: usize, term: F) -> T
where
    T: Copy + Default + Send + Add<Output = T>,
    F: Fn(usize) -> T + Sync,
{
    sum_range_par(0, n, &term)
}

#[cfg(feature = "parallel")]
fn sum_range_par<T, F>(lo: usize, hi: usize, term: &F) -> T
where
    T: Copy + Default + Send + Add<Output = T>,
    F: Fn(usize) -> T + Sync,
{
    let len = hi - lo;
    if len < PAR_MIN {
        return sum_range_seq(lo, hi, term);
    }
    let mid = lo + len / 2;
    let (a, b) = rayon::join(
        || sum_range_par(lo, mid, term),
        || sum_range_par(mid, hi, term),
    );
    a + b
}

/// Pairwise sum using the parallel path when the `parallel` feature is on.
pub fn tree_sum<T, F>(n: usize, term: F) -> T
where
    T: Copy + Default + Send + Add<Output = T>,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        tree_sum_par(n, term)
    }
    #[cfg(not(feature = "parallel"))]
    {
        tree_sum_seq(n, term)
    }
}

/// Order-preserving map of `f` over `0..n`.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Order-preserving map over a slice of independent inputs (scan points).
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Pairwise sum of a slice.
pub fn sum_slice(values: &[f64]) -> f64 {
    tree_sum(values.len(), |i| values[i])
}
