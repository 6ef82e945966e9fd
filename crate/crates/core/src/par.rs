//! Batch execution. With the `parallel` feature, [`Execution::Parallel`]
//! runs on the rayon global pool; without it every batch runs sequentially.
//!
//! Results always come back in index order, so output does not depend on
//! scheduling.

/// Environment variable capping the worker count (`0` or unset = automatic).
pub const THREADS_ENV: &str = "TORSIONLAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Whether this build can actually run batches in parallel.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// `(0..count).map(f)` under the requested execution mode.
pub fn map_indexed<T, F>(count: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        _ => (0..count).map(f).collect(),
    }
}

/// Reads [`THREADS_ENV`]; unparsable values are reported as errors.
pub fn threads_from_env() -> Result<usize, String> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => {
            v.trim().parse().map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"))
        }
        _ => Ok(0),
    }
}

/// Sizes the global pool. `0` leaves rayon's default. Must run before the
/// first parallel batch; later calls are ignored.
pub fn init_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
