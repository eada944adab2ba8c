//! Tuple enumeration with optional worker threads.
//!
//! Results always come back in lexicographic tuple order, so callers see the
//! same output for every job count.

use itertools::Itertools;
use rayon::prelude::*;

/// Applies `f` to every increasing `k`-subset of `0..n`, in lexicographic order.
pub fn map_tuples<T, F>(n: usize, k: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[usize]) -> T + Sync + Send,
{
    if jobs <= 1 {
        return (0..n).combinations(k).map(|t| f(&t)).collect();
    }
    let tuples: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    map_items(&tuples, jobs, |t| f(t))
}

/// Applies `f` to every item, keeping input order.
pub fn map_items<I, T, F>(items: &[I], jobs: usize, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}
