//! Data-parallel helpers. With the `parallel` feature these run on the
//! rayon pool; without it they fall back to plain iterators. Results never
//! depend on the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of independent work items handed to the pool per reduction batch.
const BATCH: usize = 16;

/// `(start..end).map(f).collect()`, possibly in parallel.
pub(crate) fn map_range<T, F>(start: usize, end: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (start..end).into_par_iter().with_min_len(256).map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (start..end).map(f).collect()
    }
}

/// Like [`map_range`] but without a minimum chunk length, for items that
/// are individually expensive (one dense row, one FFT).
pub(crate) fn map_heavy<T, F>(start: usize, end: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (start..end).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (start..end).map(f).collect()
    }
}

/// Sums `f(0) + f(1) + … + f(count−1)` elementwise into `acc`.
///
/// Items are evaluated in parallel batches but always added in index
/// order, so the floating-point result is identical to the sequential one.
pub(crate) fn ordered_accumulate<F>(acc: &mut [f64], count: usize, f: F)
where
    F: Fn(usize, &mut Vec<f64>) + Sync + Send,
{
    let mut start = 0;
    while start < count {
        let end = (start + BATCH).min(count);
        let parts = map_heavy(start, end, |i| {
            let mut out = Vec::new();
            f(i, &mut out);
            out
        });
        for part in parts {
            for (a, p) in acc.iter_mut().zip(&part) {
                *a += p;
            }
        }
        start = end;
    }
}
