//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the heavy loops in [`crate::nk`] and
//! [`crate::coxeter`] fan out over rayon's current thread pool. Without it,
//! or with [`Exec::Sequential`], they run as plain iterators. Both paths
//! produce identical results: work items are evaluated independently and
//! merged in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }

    pub fn is_parallel(self) -> bool {
        !matches!(self, Exec::Sequential)
    }
}
