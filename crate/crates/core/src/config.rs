//! Desk-scale limits and parallelism shared by all solvers.

use crate::error::{Error, Result};

/// Default cap on formula variables for exact search.
pub const DEFAULT_MAX_VARS: usize = 24;
/// Default cap on graph vertices for exact search.
pub const DEFAULT_MAX_VERTICES: usize = 64;

/// Limits and parallelism for the exact solvers.
///
/// `jobs > 1` lets a solver fan same-size candidates out over the current
/// rayon pool. Results never depend on `jobs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_vars: usize,
    pub max_vertices: usize,
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_vars: DEFAULT_MAX_VARS,
            max_vertices: DEFAULT_MAX_VERTICES,
            jobs: 1,
        }
    }
}

impl SearchConfig {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub(crate) fn check_vars(&self, actual: usize) -> Result<()> {
        if actual > self.max_vars {
            return Err(Error::CapExceeded {
                what: "variables",
                actual,
                cap: self.max_vars,
            });
        }
        Ok(())
    }

    pub(crate) fn check_vertices(&self, actual: usize) -> Result<()> {
        if actual > self.max_vertices {
            return Err(Error::CapExceeded {
                what: "vertices",
                actual,
                cap: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// Runs `f` inside a dedicated rayon pool of `jobs` threads.
pub fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("failed to build rayon thread pool");
    pool.install(f)
}
