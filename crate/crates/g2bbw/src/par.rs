//! Data-parallel helpers with a sequential fallback.
//!
//! Everything in this crate is pure, so sweeps and tables parallelize over
//! independent inputs and merge deterministically (callers sort or index the
//! results). With the `parallel` feature disabled the same entry points run
//! sequentially; [`Exec::Parallel`] then degrades to the sequential path,
//! which keeps benchmark and test code feature-agnostic.

/// Execution strategy for sweeps and tables.
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

/// Maps `f` over `items`, preserving order.
pub fn map_indexed<T, U, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    match exec {
        Exec::Sequential => items.into_iter().map(f).collect(),
        Exec::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}
