//! Parameter sweeps of the non-Markovianity measure and bisection of the
//! Markovian/non-Markovian crossover along one axis.
//!
//! Rows are independent; this module runs them in order and leaves parallel
//! execution to the caller through [`evaluate_row`].

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::dynamics::{measure, MeasureResult, ScanSpec};
use crate::math::sqrt;
use crate::quadrature::QuadratureSpec;
use crate::units::{to_reduced, Dimension, PhysicalConfig};
use crate::{Error, Result};

/// Swept physical parameter, in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Axis {
    /// Temperature `T` (K).
    Temperature,
    /// Boson-boson scattering length `a_B` (m).
    ScatteringLength,
}

impl Axis {
    pub fn apply(self, base: &PhysicalConfig, value: f64) -> PhysicalConfig {
        let mut config = base.clone();
        match self {
            Axis::Temperature => config.temperature = value,
            Axis::ScatteringLength => config.a_boson = value,
        }
        config
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::Temperature => "temperature",
            Axis::ScatteringLength => "a_boson",
        }
    }
}

/// Settings shared by every evaluation of the measure.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasureSettings {
    /// End of the time window searched for negative rates (units of `ħ/E_τ`).
    pub horizon: f64,
    pub scan: ScanSpec,
    pub quadrature: QuadratureSpec,
}

impl Default for MeasureSettings {
    fn default() -> Self {
        MeasureSettings { horizon: 600.0, scan: ScanSpec::default(), quadrature: QuadratureSpec::default() }
    }
}

/// One row of a sweep. A failed row keeps its error and does not stop the
/// sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub dim: Dimension,
    pub result: Result<MeasureResult>,
}

/// Sweep values must be finite, non-empty and strictly increasing.
pub fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidSweep("no sweep values".into()));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidSweep(format!("sweep value {v} is not finite")));
    }
    if let Some(w) = values.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidSweep(format!("sweep values must increase strictly ({} then {})", w[0], w[1])));
    }
    Ok(())
}

/// Measure at `axis = value`, everything else taken from `base`.
pub fn evaluate_at(base: &PhysicalConfig, axis: Axis, value: f64, settings: &MeasureSettings) -> Result<MeasureResult> {
    let params = to_reduced(&axis.apply(base, value))?;
    measure(&params, &settings.quadrature, settings.horizon, &settings.scan)
}

pub fn evaluate_row(base: &PhysicalConfig, axis: Axis, value: f64, settings: &MeasureSettings) -> SweepRow {
    SweepRow { value, dim: base.dim, result: evaluate_at(base, axis, value, settings) }
}

/// Fails only if the values are invalid or every row fails.
pub fn run_sweep(
    base: &PhysicalConfig,
    axis: Axis,
    values: &[f64],
    settings: &MeasureSettings,
) -> Result<Vec<SweepRow>> {
    check_values(values)?;
    let rows: Vec<SweepRow> = values.iter().map(|&v| evaluate_row(base, axis, v, settings)).collect();
    all_failed(&rows)?;
    Ok(rows)
}

/// `SweepFailed` with the first error when no row succeeded.
pub fn all_failed(rows: &[SweepRow]) -> Result<()> {
    if rows.iter().any(|r| r.result.is_ok()) {
        return Ok(());
    }
    match rows.iter().find_map(|r| r.result.as_ref().err()) {
        Some(e) => Err(Error::SweepFailed(Box::new(e.clone()))),
        None => Ok(()),
    }
}

/// Bisection settings for [`critical_point`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CrossoverSpec {
    /// `N` above this counts as non-Markovian.
    pub threshold: f64,
    /// Bisection stops once `hi - lo` is below this fraction of `hi`.
    pub rel_width: f64,
    pub max_steps: usize,
}

impl Default for CrossoverSpec {
    fn default() -> Self {
        CrossoverSpec { threshold: 1e-6, rel_width: 1e-3, max_steps: 60 }
    }
}

/// A bracketed crossover.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Crossover {
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    /// `N` at the final bracket ends.
    pub n_lo: f64,
    pub n_hi: f64,
    pub evaluations: usize,
}

impl Crossover {
    /// Geometric centre of the bracket when both ends are positive.
    pub fn estimate(&self) -> f64 {
        midpoint(self.lo, self.hi)
    }
}

fn midpoint(lo: f64, hi: f64) -> f64 {
    if lo > 0.0 {
        sqrt(lo * hi)
    } else {
        0.5 * (lo + hi)
    }
}

/// Brackets the value on `[lo, hi]` where `N > threshold` switches.
///
/// Bisection is geometric when both ends are positive, so brackets spanning
/// decades converge as fast as narrow ones. Fails with [`Error::Bracket`]
/// when both ends lie on the same side.
pub fn critical_point(
    base: &PhysicalConfig,
    axis: Axis,
    lo: f64,
    hi: f64,
    settings: &MeasureSettings,
    crossover: &CrossoverSpec,
) -> Result<Crossover> {
    if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && hi > lo) {
        return Err(Error::InvalidSweep(format!("bracket [{lo}, {hi}] must satisfy 0 ≤ lo < hi")));
    }
    let eval = |v: f64| evaluate_at(base, axis, v, settings).map(|m| m.n);
    let mut n_lo = eval(lo)?;
    let mut n_hi = eval(hi)?;
    let side = |n: f64| n > crossover.threshold;
    if side(n_lo) == side(n_hi) {
        return Err(Error::Bracket { lo, hi, n_lo, n_hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut evaluations = 2;
    while hi - lo > crossover.rel_width * hi && evaluations < crossover.max_steps + 2 {
        let mid = midpoint(lo, hi);
        let n = eval(mid)?;
        evaluations += 1;
        if side(n) == side(n_lo) {
            lo = mid;
            n_lo = n;
        } else {
            hi = mid;
            n_hi = n;
        }
    }
    Ok(Crossover { axis, lo, hi, n_lo, n_hi, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::fixtures::rb87;

    #[test]
    fn values_must_increase() {
        assert!(check_values(&[]).is_err());
        assert!(check_values(&[1.0, 1.0]).is_err());
        assert!(check_values(&[1.0, f64::NAN]).is_err());
        assert!(check_values(&[0.0, 1e-9, 2e-9]).is_ok());
    }

    #[test]
    fn axis_sets_only_its_field() {
        let base = rb87(Dimension::D3);
        let c = Axis::Temperature.apply(&base, 5e-9);
        assert_eq!(c.temperature, 5e-9);
        assert_eq!(c.a_boson, base.a_boson);
        let c = Axis::ScatteringLength.apply(&base, 1e-9);
        assert_eq!(c.a_boson, 1e-9);
        assert_eq!(c.temperature, base.temperature);
    }

    #[test]
    fn failed_rows_are_kept() {
        let base = rb87(Dimension::D3);
        let settings = MeasureSettings { horizon: 5.0, ..Default::default() };
        // A negative scattering length is rejected by validation.
        let rows = run_sweep(&base, Axis::ScatteringLength, &[-1e-9, 0.0], &settings).unwrap();
        assert!(matches!(rows[0].result, Err(Error::InvalidConfig(_))));
        assert!(rows[1].result.is_ok());
        let err = run_sweep(&base, Axis::ScatteringLength, &[-2e-9, -1e-9], &settings).unwrap_err();
        assert!(matches!(err, Error::SweepFailed(_)));
    }

    #[test]
    fn same_side_bracket_is_an_error() {
        // The free gas is Markovian at every temperature.
        let base = Axis::ScatteringLength.apply(&rb87(Dimension::D3), 0.0);
        let settings = MeasureSettings { horizon: 60.0, ..Default::default() };
        let err = critical_point(&base, Axis::Temperature, 1e-9, 1e-7, &settings, &CrossoverSpec::default())
            .unwrap_err();
        assert!(matches!(err, Error::Bracket { n_lo, n_hi, .. } if n_lo == 0.0 && n_hi == 0.0));
    }
}
