//! Execution strategy for the data-parallel inner loops.
//!
//! Every per-index sum in this crate (Dirichlet convolution at each `n`,
//! encoding sums, independent verification checks) is a pure function of
//! immutable inputs, so it can be evaluated on the rayon pool. Without the
//! `parallel` feature, [`Execution::Parallel`] silently runs sequentially.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
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

impl Execution {
    /// Whether this strategy actually fans out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Evaluates `op` at every index of `range`, preserving order.
pub fn map_range<T, F>(exec: Execution, range: Range<usize>, op: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(op).collect();
    }
    let _ = exec;
    range.map(op).collect()
}

/// Maps `op` over a slice, preserving order.
pub fn map_slice<'a, S, T, F>(exec: Execution, items: &'a [S], op: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&'a S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(op).collect();
    }
    let _ = exec;
    items.iter().map(op).collect()
}

/// Runs two closures, concurrently when the strategy allows it.
pub fn join<A, B, RA, RB>(exec: Execution, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return rayon::join(a, b);
    }
    let _ = exec;
    (a(), b())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree_and_preserve_order() {
        let seq = map_range(Execution::Sequential, 0..500, |i| i * i);
        let par = map_range(Execution::Parallel, 0..500, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[17], 289);

        let items: Vec<u32> = (0..64).collect();
        assert_eq!(
            map_slice(Execution::Parallel, &items, |x| x + 1),
            map_slice(Execution::Sequential, &items, |x| x + 1)
        );
        assert_eq!(join(Execution::Parallel, || 1, || 2), (1, 2));
    }
}
