//! Execution of the subcommands under a worker budget.
//!
//! Independent units (trace times, sweep rows, crossover finders) run on a
//! dedicated thread pool; results are gathered back in input order, so the
//! output does not depend on the number of workers.

use bec_probe_core::dynamics::{
    non_markovianity, trace_point, trace_times, DecoherenceKernel, DecoherenceTrace, MeasureResult,
};
use bec_probe_core::sweeps::{all_failed, check_values, critical_point, evaluate_row, Axis, Crossover, SweepRow};
use bec_probe_core::units::to_reduced;
use bec_probe_core::{Dimension, ReducedParams};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{Error, Result};

pub struct Runner {
    pool: rayon::ThreadPool,
}

impl Runner {
    pub fn new(workers: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| Error::Usage(format!("cannot start {workers} workers: {e}")))?;
        Ok(Runner { pool })
    }

    pub fn params(&self, config: &RunConfig, dim: Dimension) -> Result<ReducedParams> {
        Ok(to_reduced(&config.physical(dim)?)?)
    }

    /// `Γ`, `γ` and the coherence on `[0, t_end]`; the earliest failing time
    /// aborts the trace.
    pub fn trace(&self, config: &RunConfig, dim: Dimension) -> Result<DecoherenceTrace> {
        let params = self.params(config, dim)?;
        let times = trace_times(config.trace.t_end, config.trace.n_points)?;
        let kernel = DecoherenceKernel::new(&params, &config.measure.quadrature, config.trace.t_end)?;
        let results: Vec<_> = self.pool.install(|| times.par_iter().map(|&t| trace_point(&kernel, t)).collect());
        let points = results.into_iter().collect::<bec_probe_core::Result<Vec<_>>>()?;
        Ok(DecoherenceTrace { params, points })
    }

    pub fn measure(&self, config: &RunConfig, dim: Dimension) -> Result<MeasureResult> {
        let params = self.params(config, dim)?;
        let m = &config.measure;
        let kernel = DecoherenceKernel::new(&params, &m.quadrature, m.horizon)?;
        Ok(non_markovianity(&kernel, m.horizon, &m.scan)?)
    }

    /// One row per (dimension, value), dimension-major.
    pub fn sweep(&self, config: &RunConfig, axis: Axis, dims: &[Dimension]) -> Result<Vec<SweepRow>> {
        let values = match axis {
            Axis::Temperature => config.sweep.temperature.values(),
            Axis::ScatteringLength => config.sweep.scattering.values(),
        };
        check_values(&values)?;
        let bases = dims.iter().map(|&d| config.physical(d)).collect::<Result<Vec<_>>>()?;
        let jobs: Vec<(usize, f64)> =
            (0..dims.len()).flat_map(|i| values.iter().map(move |&v| (i, v))).collect();
        let rows: Vec<SweepRow> = self.pool.install(|| {
            jobs.par_iter().map(|&(i, v)| evaluate_row(&bases[i], axis, v, &config.measure)).collect()
        });
        all_failed(&rows)?;
        Ok(rows)
    }

    /// One finder per dimension; finders run concurrently.
    pub fn critical(
        &self,
        config: &RunConfig,
        axis: Axis,
        dims: &[Dimension],
    ) -> Result<Vec<(Dimension, bec_probe_core::Result<Crossover>)>> {
        let (lo, hi) = match axis {
            Axis::Temperature => config.critical.temperature,
            Axis::ScatteringLength => config.critical.scattering,
        };
        let bases = dims.iter().map(|&d| config.physical(d)).collect::<Result<Vec<_>>>()?;
        let results = self.pool.install(|| {
            bases
                .par_iter()
                .map(|base| {
                    critical_point(base, axis, lo, hi, &config.measure, &config.critical.crossover)
                })
                .collect::<Vec<_>>()
        });
        Ok(dims.iter().copied().zip(results).collect())
    }
}
