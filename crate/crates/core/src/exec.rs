//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature (default) heavy sweeps run on the rayon pool.
//! Results are always collected in index order so output is identical for
//! either strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Execution {
    pub fn available() -> &'static [Execution] {
        #[cfg(feature = "parallel")]
        {
            &[Execution::Sequential, Execution::Parallel]
        }
        #[cfg(not(feature = "parallel"))]
        {
            &[Execution::Sequential]
        }
    }
}

/// `(0..len).map(f).collect()`, possibly in parallel; order is preserved.
pub(crate) fn map_indexed<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..len).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..len).into_par_iter().map(f).collect(),
    }
}

/// Map every item then merge. `merge` must be associative and commutative
/// for the parallel result to equal the sequential one.
pub(crate) fn map_reduce<I, T, F, M>(exec: Execution, items: &[I], identity: T, f: F, merge: M) -> T
where
    I: Sync,
    T: Send + Clone + Sync,
    F: Fn(&I) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).fold(identity, merge),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items
            .par_iter()
            .map(f)
            .reduce(|| identity.clone(), merge),
    }
}
