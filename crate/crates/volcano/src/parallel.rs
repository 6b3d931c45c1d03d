//! Worker-pool versions of the sweeps. Results come back in input order.

use rayon::prelude::*;
use volcano_core::spectrum::{
    analyze, split_states, track_splitting, AnalysisOptions, SplitRow, SweepRow, SPLIT_START_CENTER,
};
use volcano_core::{Param, PotentialSpec};

use crate::error::{CliError, Result};

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "VOLCANO_JOBS";

pub fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

pub fn sweep(
    base: &PotentialSpec,
    param: Param,
    values: &[f64],
    opts: &AnalysisOptions,
    jobs: Option<usize>,
) -> Result<Vec<SweepRow>> {
    Ok(pool(jobs)?.install(|| {
        values
            .par_iter()
            .map(|&v| {
                let result = base.with_param(param, v).and_then(|spec| analyze(&spec, opts));
                SweepRow::from_result(param, v, result)
            })
            .collect()
    }))
}

/// Solves every `c` in parallel, then follows the pair in order.
pub fn splitting_curve(
    a: f64,
    b: f64,
    c_values: &[f64],
    opts: &AnalysisOptions,
    jobs: Option<usize>,
) -> Result<Vec<SplitRow>> {
    let rows: Vec<_> = pool(jobs)?.install(|| c_values.par_iter().map(|&c| (c, split_states(a, b, c, opts))).collect());
    Ok(track_splitting(&rows, SPLIT_START_CENTER, opts.pair_threshold))
}
