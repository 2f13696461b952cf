//! Rayon-backed executor for the ensemble runner.

use rayon::prelude::*;
use trpower::montecarlo::Executor;

/// Runs batches on the rayon thread pool.
///
/// Batches are disjoint preallocated slots, so the worker count (including
/// `RAYON_NUM_THREADS=1`) has no effect on the output.
pub struct Threaded;

impl Executor for Threaded {
    fn run<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        items.par_iter_mut().for_each(|item| f(item));
    }
}
