//! Data-parallel mapping over independent work items.
//!
//! With the `parallel` feature (on by default) [`Executor::Parallel`] fans
//! out over rayon's global pool; without it every executor runs
//! sequentially. Results always come back in index order, so reductions over
//! them do not depend on completion order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Executor {
    Sequential,
    Parallel,
}

impl Default for Executor {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Executor::Parallel
        } else {
            Executor::Sequential
        }
    }
}

impl Executor {
    /// `(0..n).map(f)`, collected in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Executor::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let f = |i: usize| i * i + 1;
        let a = Executor::Sequential.map(1000, f);
        let b = Executor::Parallel.map(1000, f);
        assert_eq!(a, b);
        assert_eq!(a[10], 101);
        assert!(Executor::default().map(0, f).is_empty());
    }
}
