//! Worker pool abstraction for the data-parallel loops.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// How parallel loops are run.
///
/// `Sequential` visits indices in increasing order, which together with the
/// fixed edge order of the layout makes every run reproducible.
#[derive(Clone)]
pub enum Executor {
    Sequential,
    Pool(Arc<rayon::ThreadPool>),
}

impl Executor {
    pub fn new(workers: usize) -> Result<Self> {
        match workers {
            0 => Err(Error::InvalidParameter("workers must be at least 1".into())),
            1 => Ok(Executor::Sequential),
            w => rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map(|p| Executor::Pool(Arc::new(p)))
                .map_err(|e| Error::Internal(format!("thread pool: {e}"))),
        }
    }

    pub fn workers(&self) -> usize {
        match self {
            Executor::Sequential => 1,
            Executor::Pool(p) => p.current_num_threads(),
        }
    }

    pub fn for_each<F>(&self, len: usize, f: F)
    where
        F: Fn(usize) + Sync + Send,
    {
        match self {
            Executor::Sequential => (0..len).for_each(f),
            Executor::Pool(pool) => pool.install(|| (0..len).into_par_iter().for_each(f)),
        }
    }
}

impl std::fmt::Debug for Executor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Executor({} workers)", self.workers())
    }
}
