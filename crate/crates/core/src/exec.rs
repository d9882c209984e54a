//! Sequential / parallel execution of the crate's data-parallel loops.

use std::ops::Range;

/// How a data-parallel loop is executed.
///
/// `Parallel` uses rayon when the `parallel` feature is enabled and silently
/// degrades to `Sequential` otherwise, so results never depend on the choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Folds every index of `range` into per-worker accumulators and merges them.
///
/// `fold` and `reduce` must describe a commutative, associative combination;
/// the result is then independent of how the range was split.
pub(crate) fn fold_range<A, I, F, R>(
    range: Range<usize>,
    exec: Execution,
    init: I,
    fold: F,
    reduce: R,
) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            range
                .into_par_iter()
                .fold(&init, &fold)
                .reduce(&init, &reduce)
        }
        _ => {
            let _ = &reduce;
            range.fold(init(), fold)
        }
    }
}

/// Maps every index of `range`, keeping output order.
pub(crate) fn map_range<T, F>(range: Range<usize>, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let s = fold_range(0..1000, exec, || 0u64, |a, i| a + i as u64, |a, b| a + b);
            assert_eq!(s, 499_500);
            let v = map_range(0..10, exec, |i| i * i);
            assert_eq!(v, (0..10).map(|i| i * i).collect::<Vec<_>>());
        }
    }
}
