//! Conditional data parallelism.
//!
//! The hot inner loops (weight-table levels, dense row kernels, sample maps)
//! fan out to the rayon pool when the `parallel` feature is enabled and run
//! sequentially otherwise. Every job writes its own output slot and partial
//! reductions are combined in input order, so both paths produce identical
//! results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Jobs below this size are not worth shipping to the pool.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 64;

/// `(0..n).map(f)` collected in order.
pub(crate) fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .with_min_len(MIN_CHUNK)
            .map(f)
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Applies `f` to each `width`-sized row of `data`, passing the row index
/// and the mutable row slice. Rows are disjoint, so this is safe to fan out.
pub(crate) fn for_each_row<T, F>(data: &mut [T], width: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    debug_assert_eq!(data.len() % width.max(1), 0);
    #[cfg(feature = "parallel")]
    {
        data.par_chunks_mut(width)
            .enumerate()
            .for_each(|(i, row)| f(i, row));
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(width)
            .enumerate()
            .for_each(|(i, row)| f(i, row));
    }
}
