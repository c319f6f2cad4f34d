//! Execution strategy for the data-parallel kernels.
//!
//! With the `parallel` feature the kernels fan out over rayon's pool;
//! without it every [`Exec`] value runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a kernel iterates over its index range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel. Output order is index order.
pub(crate) fn map_range<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Smallest index in `0..n` satisfying `pred`, if any. Deterministic in both modes.
pub(crate) fn find_first<F>(exec: Exec, n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = exec;
    (0..n).find(|&i| pred(i))
}

/// Sum of `f(i)` over `0..n`.
pub(crate) fn sum_range<F>(exec: Exec, n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    let _ = exec;
    (0..n).map(f).sum()
}

/// Apply `f` to consecutive chunks of `data` of length `chunk`.
pub(crate) fn for_each_chunk_mut<T, F>(exec: Exec, data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(&mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        data.par_chunks_mut(chunk).for_each(f);
        return;
    }
    let _ = exec;
    data.chunks_mut(chunk).for_each(f);
}

/// Elementwise sum of the length-`len` vectors produced by `f(i, acc)` over `0..n`,
/// where `f` adds its contribution into `acc`.
pub(crate) fn accumulate<F>(exec: Exec, n: usize, len: usize, f: F) -> Vec<u64>
where
    F: Fn(usize, &mut [u64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n)
            .into_par_iter()
            .fold(
                || vec![0u64; len],
                |mut acc, i| {
                    f(i, &mut acc);
                    acc
                },
            )
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
    }
    let _ = exec;
    let mut acc = vec![0u64; len];
    (0..n).for_each(|i| f(i, &mut acc));
    acc
}
