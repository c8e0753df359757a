//! Per-slice execution helpers. With the `parallel` feature (default) slice maps
//! run on rayon; otherwise they run sequentially. Output order is the slice
//! order either way, so results are deterministic and schedule-independent.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_depth<U, F>(depth: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..depth).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_depth<U, F>(depth: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..depth).map(f).collect()
}

/// Fallible map over slice indices. The error reported is the one from the
/// lowest failing slice index, independent of scheduling.
#[cfg(feature = "parallel")]
pub(crate) fn try_map_depth<U, E, F>(depth: usize, f: F) -> Result<Vec<U>, E>
where
    U: Send,
    E: Send,
    F: Fn(usize) -> Result<U, E> + Sync + Send,
{
    let results: Vec<Result<U, E>> = (0..depth).into_par_iter().map(f).collect();
    results.into_iter().collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn try_map_depth<U, E, F>(depth: usize, f: F) -> Result<Vec<U>, E>
where
    F: Fn(usize) -> Result<U, E>,
{
    (0..depth).map(f).collect()
}
