//! Sequential/parallel switch for the enumeration sweeps.
//!
//! With the `parallel` feature disabled every [`Execution`] runs
//! sequentially; results are identical either way because every parallel
//! search reduces to the first hit in enumeration order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// First `i` in `0..count` (in increasing order) for which `f` yields `Some`.
    pub fn find_first<T, F>(self, count: u64, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..count).into_par_iter().find_map_first(f);
        }
        (0..count).find_map(f)
    }

    /// Order-preserving map.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}
