//! Multi-threaded sweep. Nodes are independent, so the result does not
//! depend on the number of workers.

use betadome::sweep::{node_coordinates, solve_node, validate_sweep};
use betadome::SweepGrid;
use rayon::prelude::*;

use crate::error::CliError;

/// Runs the sweep on `workers` threads (at least one).
pub fn run_sweep(n_mean: usize, n_var: usize, lambda: f64, rate: f64, workers: usize) -> Result<SweepGrid, CliError> {
    validate_sweep(n_mean, n_var, lambda, rate)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
    let cells = pool.install(|| {
        (0..n_mean * n_var)
            .into_par_iter()
            .map(|k| {
                let (m, v) = node_coordinates(n_mean, n_var, k / n_var, k % n_var);
                solve_node(m, v, lambda, rate)
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(SweepGrid::from_cells(n_mean, n_var, lambda, rate, cells)?)
}

/// Available hardware threads, or one if that cannot be queried.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
