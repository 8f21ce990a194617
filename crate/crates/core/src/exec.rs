//! Execution strategy for the exhaustive sweeps.
//!
//! With the `parallel` feature (default) sweeps run on the rayon global
//! pool; without it only [`Execution::Sequential`] exists. Both paths fold
//! the same per-item function and merge partial results with the same
//! associative reducer, so they return identical answers.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
}

impl Execution {
    /// Every strategy compiled into this build.
    pub fn available() -> Vec<Execution> {
        vec![
            Execution::Sequential,
            #[cfg(feature = "parallel")]
            Execution::Parallel,
        ]
    }

    #[cfg_attr(not(feature = "parallel"), allow(unused_variables))]
    pub fn fold_range<A, I, F, R>(self, range: Range<usize>, identity: I, fold: F, reduce: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        match self {
            Execution::Sequential => range.fold(identity(), fold),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().fold(&identity, &fold).reduce(&identity, &reduce)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_on_a_sum() {
        let sums: Vec<u64> = Execution::available()
            .into_iter()
            .map(|e| e.fold_range(0..10_000, || 0u64, |a, i| a + i as u64, |a, b| a + b))
            .collect();
        assert!(sums.iter().all(|&s| s == 49_995_000));
    }
}
