//! Execution policy for the data-parallel fan-out points (corpus sweeps,
//! subset scans, top-level solver branches).
//!
//! With the `parallel` feature (default) the work runs on rayon; without it
//! everything falls back to plain sequential iteration. Both policies return
//! identical results: ordered maps preserve input order and first-match scans
//! return the earliest match in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How fan-out points schedule their work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(f).collect(),
        Exec::Parallel => items.par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<T, R, F>(_exec: Exec, items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Applies `f` to every item and returns the first `Some` in input order.
#[cfg(feature = "parallel")]
pub(crate) fn find_first_map<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().find_map(f),
        Exec::Parallel => items.par_iter().filter_map(f).find_first(|_| true),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_first_map<T, R, F>(_exec: Exec, items: &[T], f: F) -> Option<R>
where
    F: Fn(&T) -> Option<R>,
{
    items.iter().find_map(f)
}
