//! Data-parallel map helpers with a sequential fallback.
//!
//! All reductions in the crate collect mapped values in input order and fold
//! them sequentially afterwards, so results are bit-identical whichever
//! execution mode runs.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a batch of independent work items executes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for ExecMode {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        ExecMode::Parallel
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        ExecMode::Sequential
    }
}

/// Order-preserving map over a slice.
pub fn map_with<T: Sync, U: Send>(
    mode: ExecMode,
    items: &[T],
    f: impl Fn(&T) -> U + Sync + Send,
) -> Vec<U> {
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.par_iter().map(f).collect(),
    }
}

/// Order-preserving map in the default execution mode.
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    map_with(ExecMode::default(), items, f)
}

/// Order-preserving map over an index range.
pub fn map_range<U: Send>(
    mode: ExecMode,
    range: std::ops::Range<i64>,
    f: impl Fn(i64) -> U + Sync + Send,
) -> Vec<U> {
    match mode {
        ExecMode::Sequential => range.map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => range.into_par_iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_preserve_order() {
        let items: Vec<i64> = (0..100).collect();
        let seq = map_with(ExecMode::Sequential, &items, |x| x * x);
        let def = map(&items, |x| x * x);
        assert_eq!(seq, def);
        assert_eq!(seq[3], 9);
    }
}
