//! Decoherence factor `Γ(t)`, decay rate `γ(t)`, the negative-rate interval
//! and the normalized non-Markovianity measure.
//!
//! [`DecoherenceKernel`] is the evaluator used by sweeps. It tabulates the
//! time-independent spectral weight once, on panels fine enough for every
//! time up to its horizon, so each later evaluation costs one sine per node.
//! When the tabulated estimate misses the tolerance the kernel falls back to
//! the adaptive integrator.

use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::bogoliubov::{assemble_integrand, energy, spectral_weight, time_kernel, IntegrandKind};
use crate::math::{exp, expm1};
use crate::quadrature::{
    breakpoints, gk15_combine, integrate, panel_nodes, Estimate, OscillationHint, QuadratureSpec,
    NODES_PER_PANEL,
};
use crate::units::ReducedParams;
use crate::{Error, Result};

/// Source of `Γ(t)` and `γ(t)`; the interval search and the measure only see
/// this trait.
pub trait RateModel {
    fn gamma_factor(&self, t: f64) -> Result<Estimate>;
    fn decay_rate(&self, t: f64) -> Result<Estimate>;
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTime { what: "t", value: t })
    }
}

fn adaptive(t: f64, params: &ReducedParams, spec: &QuadratureSpec, kind: IntegrandKind) -> Result<Estimate> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(Estimate::default());
    }
    let hint = OscillationHint::for_params(params, t);
    integrate(|k| assemble_integrand(k, t, params, kind), spec, &hint)
        .map(|e| e.scaled(params.prefactor))
        .map_err(|e| e.at_time(t))
}

/// `Γ(t)` by adaptive quadrature.
pub fn gamma_factor(t: f64, params: &ReducedParams, spec: &QuadratureSpec) -> Result<Estimate> {
    adaptive(t, params, spec, IntegrandKind::GammaFactor)
}

/// `γ(t) = dΓ/dt` by adaptive quadrature.
pub fn decay_rate(t: f64, params: &ReducedParams, spec: &QuadratureSpec) -> Result<Estimate> {
    adaptive(t, params, spec, IntegrandKind::DecayRate)
}

struct TablePanel {
    half_length: f64,
    weight: [f64; NODES_PER_PANEL],
    energy: [f64; NODES_PER_PANEL],
}

/// Tabulated evaluator of `Γ` and `γ` for one parameter set.
pub struct DecoherenceKernel {
    params: ReducedParams,
    spec: QuadratureSpec,
    horizon: f64,
    table: Vec<TablePanel>,
    fallbacks: AtomicUsize,
}

impl DecoherenceKernel {
    /// Builds the table for times in `[0, horizon]`.
    pub fn new(params: &ReducedParams, spec: &QuadratureSpec, horizon: f64) -> Result<Self> {
        params.check()?;
        spec.check()?;
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidTime { what: "horizon", value: horizon });
        }
        let gn = params.sound_speed_sq();
        let points = breakpoints(spec, &OscillationHint::for_params(params, horizon))?;
        let table = points
            .windows(2)
            .map(|w| {
                let nodes = panel_nodes(w[0], w[1]);
                let mut weight = [0.0; NODES_PER_PANEL];
                let mut energy_at = [0.0; NODES_PER_PANEL];
                for i in 0..NODES_PER_PANEL {
                    weight[i] = spectral_weight(nodes[i], params);
                    energy_at[i] = energy(nodes[i], gn);
                }
                TablePanel { half_length: 0.5 * (w[1] - w[0]), weight, energy: energy_at }
            })
            .collect();
        Ok(DecoherenceKernel {
            params: params.clone(),
            spec: *spec,
            horizon,
            table,
            fallbacks: AtomicUsize::new(0),
        })
    }

    pub fn params(&self) -> &ReducedParams {
        &self.params
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn panels(&self) -> usize {
        self.table.len()
    }

    /// Evaluations that missed the tolerance on the table and went adaptive.
    pub fn fallbacks(&self) -> usize {
        self.fallbacks.load(Ordering::Relaxed)
    }

    /// Table-only estimate and `∫|f|`, both including the prefactor. Two
    /// calls at different times use the same nodes.
    pub fn tabulated(&self, t: f64, kind: IntegrandKind) -> (Estimate, f64) {
        let mut total = Estimate::default();
        let mut magnitude = 0.0;
        let mut values = [0.0; NODES_PER_PANEL];
        for p in &self.table {
            for i in 0..NODES_PER_PANEL {
                let w = p.weight[i];
                values[i] = if w == 0.0 { 0.0 } else { w * time_kernel(p.energy[i], t, kind) };
            }
            let est = gk15_combine(&values, p.half_length);
            total.value += est.value;
            total.error += est.error;
            magnitude += est.magnitude;
        }
        let c = self.params.prefactor;
        (total.scaled(c), magnitude * c)
    }

    fn evaluate(&self, t: f64, kind: IntegrandKind) -> Result<Estimate> {
        check_time(t).map_err(|e| e.at_time(t))?;
        if t == 0.0 {
            return Ok(Estimate::default());
        }
        if t <= self.horizon {
            let (est, magnitude) = self.tabulated(t, kind);
            let spec = QuadratureSpec { abs_tol: self.spec.abs_tol * self.params.prefactor, ..self.spec };
            if est.error <= spec.attainable_tolerance(est.value, magnitude) {
                return Ok(est);
            }
        }
        self.fallbacks.fetch_add(1, Ordering::Relaxed);
        adaptive(t, &self.params, &self.spec, kind)
    }
}

impl RateModel for DecoherenceKernel {
    fn gamma_factor(&self, t: f64) -> Result<Estimate> {
        self.evaluate(t, IntegrandKind::GammaFactor)
    }

    fn decay_rate(&self, t: f64) -> Result<Estimate> {
        self.evaluate(t, IntegrandKind::DecayRate)
    }
}

/// One sample of a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TracePoint {
    pub t: f64,
    pub gamma_factor: f64,
    pub decay_rate: f64,
    /// `|ρ_01(t)/ρ_01(0)| = exp(-Γ(t))`.
    pub coherence: f64,
}

/// `Γ`, `γ` and the coherence on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecoherenceTrace {
    pub params: ReducedParams,
    pub points: Vec<TracePoint>,
}

/// `n_points` uniform times from 0 to `t_end` inclusive.
pub fn trace_times(t_end: f64, n_points: usize) -> Result<Vec<f64>> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidTime { what: "t_end", value: t_end });
    }
    if n_points < 2 {
        return Err(Error::InvalidTime { what: "n_points", value: n_points as f64 });
    }
    let dt = t_end / (n_points - 1) as f64;
    Ok((0..n_points).map(|i| if i + 1 == n_points { t_end } else { i as f64 * dt }).collect())
}

/// Evaluates one trace sample.
pub fn trace_point<M: RateModel + ?Sized>(model: &M, t: f64) -> Result<TracePoint> {
    let g = model.gamma_factor(t).map_err(|e| annotate(e, t))?.value;
    let r = model.decay_rate(t).map_err(|e| annotate(e, t))?.value;
    Ok(TracePoint { t, gamma_factor: g, decay_rate: r, coherence: exp(-g) })
}

fn annotate(e: Error, t: f64) -> Error {
    match e {
        Error::AtTime { .. } => e,
        other => other.at_time(t),
    }
}

/// Sequential trace; the first failing time aborts the run.
pub fn trace(params: &ReducedParams, spec: &QuadratureSpec, t_end: f64, n_points: usize) -> Result<DecoherenceTrace> {
    let times = trace_times(t_end, n_points)?;
    let kernel = DecoherenceKernel::new(params, spec, t_end)?;
    let points = times.iter().map(|&t| trace_point(&kernel, t)).collect::<Result<Vec<_>>>()?;
    Ok(DecoherenceTrace { params: params.clone(), points })
}

/// Settings of the negative-rate search.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanSpec {
    /// Uniform samples of `γ` on `(0, horizon]`.
    pub points: usize,
    /// Sampled local minima of `γ` that get a golden-section search for a
    /// dip below zero between samples.
    pub max_refined_minima: usize,
    pub golden_iterations: usize,
    /// Relative width at which endpoint bisection stops.
    pub root_rel_tol: f64,
}

impl Default for ScanSpec {
    fn default() -> Self {
        ScanSpec { points: 240, max_refined_minima: 32, golden_iterations: 20, root_rel_tol: 1e-8 }
    }
}

/// A maximal interval `(a, b)` with `γ < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NegativeInterval {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diagnostics {
    /// Number of separate negative intervals seen before the horizon.
    pub intervals_found: usize,
    pub multiple_intervals: bool,
    /// `γ` was still negative at the horizon; `b` is the horizon itself.
    pub open_at_horizon: bool,
    pub refined_minima: usize,
    pub evaluations: usize,
}

/// Result of [`find_negative_interval`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSearch {
    /// First negative interval, if any.
    pub interval: Option<NegativeInterval>,
    pub all: Vec<NegativeInterval>,
    pub diagnostics: Diagnostics,
}

struct Probe<'a, M: ?Sized> {
    model: &'a M,
    evaluations: usize,
}

impl<M: RateModel + ?Sized> Probe<'_, M> {
    fn rate(&mut self, t: f64) -> Result<Estimate> {
        self.evaluations += 1;
        self.model.decay_rate(t).map_err(|e| annotate(e, t))
    }

    // Negative only when the rate is below minus its own error estimate, so
    // quadrature noise around an exact zero never opens an interval.
    fn negative(&mut self, t: f64) -> Result<bool> {
        let r = self.rate(t)?;
        Ok(is_negative(r))
    }

    // Shrinks [lo, hi], with `negative(lo) != negative(hi)`, to the switch.
    fn bisect(&mut self, mut lo: f64, mut hi: f64, lo_negative: bool, rel_tol: f64) -> Result<f64> {
        while hi - lo > rel_tol * hi {
            let mid = 0.5 * (lo + hi);
            if !(mid > lo && mid < hi) {
                break;
            }
            if self.negative(mid)? == lo_negative {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    // Golden-section search for the minimum of γ on [lo, hi]; stops early
    // once a negative value is found.
    fn dip(&mut self, mut lo: f64, mut hi: f64, iterations: usize) -> Result<Option<(f64, Estimate)>> {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = self.rate(x1)?;
        let mut f2 = self.rate(x2)?;
        for _ in 0..iterations {
            if is_negative(f1) {
                return Ok(Some((x1, f1)));
            }
            if is_negative(f2) {
                return Ok(Some((x2, f2)));
            }
            if f1.value < f2.value {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.rate(x1)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.rate(x2)?;
            }
        }
        Ok([(x1, f1), (x2, f2)].into_iter().find(|(_, f)| is_negative(*f)))
    }
}

fn is_negative(r: Estimate) -> bool {
    r.value < -r.error
}

/// Locates the intervals on `(0, horizon]` where `γ < 0`.
///
/// `γ` is sampled uniformly; sampled local minima that stay non-negative are
/// searched for a dip between samples; each sign change is then bisected. An
/// interval still open at the horizon is closed there and flagged.
pub fn find_negative_interval<M: RateModel + ?Sized>(
    model: &M,
    horizon: f64,
    scan: &ScanSpec,
) -> Result<IntervalSearch> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidTime { what: "horizon", value: horizon });
    }
    if scan.points < 3 {
        return Err(Error::InvalidTime { what: "scan points", value: scan.points as f64 });
    }
    let mut probe = Probe { model, evaluations: 0 };
    let dt = horizon / scan.points as f64;
    let mut samples: Vec<(f64, Estimate)> = Vec::with_capacity(scan.points + 1);
    samples.push((0.0, Estimate::default()));
    for i in 1..=scan.points {
        let t = if i == scan.points { horizon } else { i as f64 * dt };
        samples.push((t, probe.rate(t)?));
    }

    let mut minima: Vec<usize> = (1..samples.len() - 1)
        .filter(|&i| {
            let (v0, v, v1) = (samples[i - 1].1, samples[i].1, samples[i + 1].1);
            !is_negative(v) && !is_negative(v0) && !is_negative(v1) && v.value < v0.value && v.value <= v1.value
        })
        .collect();
    minima.sort_by(|&i, &j| samples[i].1.value.total_cmp(&samples[j].1.value));
    minima.truncate(scan.max_refined_minima);
    let mut extra = Vec::new();
    for &i in &minima {
        if let Some(found) = probe.dip(samples[i - 1].0, samples[i + 1].0, scan.golden_iterations)? {
            extra.push(found);
        }
    }
    let refined_minima = minima.len();
    samples.extend(extra);
    samples.sort_by(|p, q| p.0.total_cmp(&q.0));

    let negative: Vec<bool> = samples.iter().map(|s| is_negative(s.1)).collect();
    let mut all = Vec::new();
    let mut open_at_horizon = false;
    let mut i = 1;
    while i < samples.len() {
        if !negative[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < samples.len() && negative[i] {
            i += 1;
        }
        let a = probe.bisect(samples[start - 1].0, samples[start].0, false, scan.root_rel_tol)?;
        let b = if i == samples.len() {
            open_at_horizon = true;
            horizon
        } else {
            probe.bisect(samples[i - 1].0, samples[i].0, true, scan.root_rel_tol)?
        };
        all.push(NegativeInterval { a, b });
    }
    let diagnostics = Diagnostics {
        intervals_found: all.len(),
        multiple_intervals: all.len() > 1,
        open_at_horizon,
        refined_minima,
        evaluations: probe.evaluations,
    };
    Ok(IntervalSearch { interval: all.first().copied(), all, diagnostics })
}

/// `(e^{-Γ_b} - e^{-Γ_a}) / (1 - e^{-Γ_a})`, written with `expm1` so small
/// decoherence factors keep their digits.
pub fn normalized_measure(gamma_a: f64, gamma_b: f64, a: f64) -> Result<f64> {
    if !(gamma_a > 0.0) {
        return Err(Error::DegenerateMeasure { a });
    }
    let numerator = -exp(-gamma_b) * expm1(gamma_b - gamma_a);
    let denominator = -expm1(-gamma_a);
    Ok(numerator / denominator)
}

/// Non-Markovianity of one parameter set.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasureResult {
    /// Normalized measure; exactly 0 when `γ` never goes negative.
    pub n: f64,
    pub interval: Option<NegativeInterval>,
    pub gamma_a: Option<f64>,
    pub gamma_b: Option<f64>,
    pub diagnostics: Diagnostics,
}

/// Normalized non-Markovianity from the first negative-rate interval.
pub fn non_markovianity<M: RateModel + ?Sized>(model: &M, horizon: f64, scan: &ScanSpec) -> Result<MeasureResult> {
    let search = find_negative_interval(model, horizon, scan)?;
    let Some(iv) = search.interval else {
        return Ok(MeasureResult { n: 0.0, interval: None, gamma_a: None, gamma_b: None, diagnostics: search.diagnostics });
    };
    let ga = model.gamma_factor(iv.a).map_err(|e| annotate(e, iv.a))?.value;
    let gb = model.gamma_factor(iv.b).map_err(|e| annotate(e, iv.b))?.value;
    let n = normalized_measure(ga, gb, iv.a)?;
    Ok(MeasureResult { n, interval: Some(iv), gamma_a: Some(ga), gamma_b: Some(gb), diagnostics: search.diagnostics })
}

/// Builds a kernel up to `horizon` and computes the measure.
pub fn measure(params: &ReducedParams, spec: &QuadratureSpec, horizon: f64, scan: &ScanSpec) -> Result<MeasureResult> {
    let kernel = DecoherenceKernel::new(params, spec, horizon)?;
    non_markovianity(&kernel, horizon, scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, sin};
    use crate::units::fixtures::rb87;
    use crate::units::to_reduced;
    use crate::Dimension;

    /// `Γ = t + 0.8 sin 2t`, `γ = 1 + 1.6 cos 2t`.
    struct Wobble;

    impl RateModel for Wobble {
        fn gamma_factor(&self, t: f64) -> Result<Estimate> {
            Ok(Estimate { value: t + 0.8 * sin(2.0 * t), error: 0.0 })
        }
        fn decay_rate(&self, t: f64) -> Result<Estimate> {
            Ok(Estimate { value: 1.0 + 1.6 * cos(2.0 * t), error: 0.0 })
        }
    }

    /// Monotone `Γ = 1 - e^{-t}`.
    struct Monotone;

    impl RateModel for Monotone {
        fn gamma_factor(&self, t: f64) -> Result<Estimate> {
            Ok(Estimate { value: -expm1(-t), error: 0.0 })
        }
        fn decay_rate(&self, t: f64) -> Result<Estimate> {
            Ok(Estimate { value: exp(-t), error: 0.0 })
        }
    }

    /// `γ` dips below zero only on `(5.0187, 5.0287)`, between scan samples.
    struct NarrowDip;

    impl RateModel for NarrowDip {
        fn gamma_factor(&self, _t: f64) -> Result<Estimate> {
            Ok(Estimate { value: 1.0, error: 0.0 })
        }
        fn decay_rate(&self, t: f64) -> Result<Estimate> {
            let x = t - 5.0237;
            Ok(Estimate { value: 10.0 * (x * x - 0.005 * 0.005), error: 0.0 })
        }
    }

    #[test]
    fn wobble_interval_matches_the_cosine_roots() {
        let search = find_negative_interval(&Wobble, 3.0, &ScanSpec::default()).unwrap();
        let iv = search.interval.unwrap();
        // cos 2t = -1/1.6
        let a = 0.5 * libm::acos(-1.0 / 1.6);
        let b = core::f64::consts::PI - a;
        assert!((iv.a - a).abs() < 1e-6, "{}", iv.a);
        assert!((iv.b - b).abs() < 1e-6, "{}", iv.b);
        assert!(!search.diagnostics.multiple_intervals && !search.diagnostics.open_at_horizon);
    }

    #[test]
    fn wobble_measure_uses_the_endpoints() {
        let m = non_markovianity(&Wobble, 3.0, &ScanSpec::default()).unwrap();
        let iv = m.interval.unwrap();
        let (ga, gb) = (iv.a + 0.8 * sin(2.0 * iv.a), iv.b + 0.8 * sin(2.0 * iv.b));
        let expected = (exp(-gb) - exp(-ga)) / (1.0 - exp(-ga));
        assert!((m.n - expected).abs() < 1e-9);
        assert!(m.n > 0.0 && m.n < 1.0);
    }

    #[test]
    fn later_intervals_are_counted() {
        let search = find_negative_interval(&Wobble, 7.0, &ScanSpec::default()).unwrap();
        assert_eq!(search.diagnostics.intervals_found, 2);
        assert!(search.diagnostics.multiple_intervals);
        assert!((search.all[1].a - search.all[0].a - core::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn monotone_decay_is_markovian() {
        let m = non_markovianity(&Monotone, 50.0, &ScanSpec::default()).unwrap();
        assert_eq!(m.n, 0.0);
        assert!(m.interval.is_none() && m.gamma_a.is_none());
    }

    #[test]
    fn dips_between_samples_are_found() {
        let search = find_negative_interval(&NarrowDip, 12.0, &ScanSpec::default()).unwrap();
        let iv = search.interval.expect("dip between samples");
        assert!((iv.a - 5.0187).abs() < 1e-6 && (iv.b - 5.0287).abs() < 1e-6, "{iv:?}");
    }

    #[test]
    fn interval_open_at_horizon_is_flagged() {
        let search = find_negative_interval(&Wobble, 1.5, &ScanSpec::default()).unwrap();
        assert!(search.diagnostics.open_at_horizon);
        assert_eq!(search.interval.unwrap().b, 1.5);
    }

    #[test]
    fn measure_formula() {
        let n = normalized_measure(1.0, 0.5, 0.0).unwrap();
        let expected = (libm::exp(-0.5) - libm::exp(-1.0)) / (1.0 - libm::exp(-1.0));
        assert!((n - expected).abs() < 1e-15);
        assert!((n - 0.377_540_668_798_145_4).abs() < 1e-12);
        assert_eq!(normalized_measure(0.7, 0.7, 0.0).unwrap(), 0.0);
        // Tiny factors keep their relative accuracy.
        let n = normalized_measure(1e-12, 5e-13, 0.0).unwrap();
        assert!((n - 0.5).abs() < 1e-9);
    }

    #[test]
    fn zero_gamma_at_a_is_degenerate() {
        assert!(matches!(normalized_measure(0.0, 0.0, 2.0), Err(Error::DegenerateMeasure { a }) if a == 2.0));
    }

    #[test]
    fn invalid_times_are_rejected() {
        let p = to_reduced(&rb87(Dimension::D1)).unwrap();
        let spec = QuadratureSpec::default();
        assert!(gamma_factor(-1.0, &p, &spec).is_err());
        assert!(decay_rate(f64::NAN, &p, &spec).is_err());
        assert!(DecoherenceKernel::new(&p, &spec, 0.0).is_err());
        assert!(find_negative_interval(&Wobble, f64::INFINITY, &ScanSpec::default()).is_err());
    }

    #[test]
    fn gamma_vanishes_at_zero_time() {
        let p = to_reduced(&rb87(Dimension::D3)).unwrap();
        let spec = QuadratureSpec::default();
        assert_eq!(gamma_factor(0.0, &p, &spec).unwrap().value, 0.0);
        let kernel = DecoherenceKernel::new(&p, &spec, 10.0).unwrap();
        assert_eq!(kernel.gamma_factor(0.0).unwrap().value, 0.0);
        assert_eq!(kernel.decay_rate(0.0).unwrap().value, 0.0);
    }

    #[test]
    fn kernel_agrees_with_adaptive_quadrature() {
        let spec = QuadratureSpec::default();
        for dim in Dimension::ALL {
            let p = to_reduced(&rb87(dim)).unwrap();
            let kernel = DecoherenceKernel::new(&p, &spec, 100.0).unwrap();
            for t in [0.3, 7.0, 41.0, 100.0, 130.0] {
                let g = kernel.gamma_factor(t).unwrap();
                let g_ref = gamma_factor(t, &p, &spec).unwrap();
                assert!((g.value - g_ref.value).abs() <= 1e-7 * g_ref.value.abs() + 1e-14, "{dim} t={t}");
                let r = kernel.decay_rate(t).unwrap();
                let r_ref = decay_rate(t, &p, &spec).unwrap();
                assert!((r.value - r_ref.value).abs() <= r.error + r_ref.error + 1e-7 * g_ref.value, "{dim} t={t}");
            }
        }
    }

    #[test]
    fn trace_has_unit_initial_coherence() {
        let p = to_reduced(&rb87(Dimension::D2)).unwrap();
        let tr = trace(&p, &QuadratureSpec::default(), 20.0, 11).unwrap();
        assert_eq!(tr.points.len(), 11);
        assert_eq!(tr.points[0].coherence, 1.0);
        assert_eq!(tr.points[10].t, 20.0);
        for pt in &tr.points {
            assert!(pt.gamma_factor >= 0.0 && pt.coherence <= 1.0);
        }
        assert!(trace_times(20.0, 1).is_err());
    }

    proptest::proptest! {
        #[test]
        fn measure_lies_in_unit_interval(gamma_a in 1e-8..50.0f64, drop in 0.0..1.0f64) {
            let n = normalized_measure(gamma_a, gamma_a * (1.0 - drop), 1.0).unwrap();
            proptest::prop_assert!((0.0..=1.0).contains(&n), "N = {}", n);
            let direct = ((-gamma_a * (1.0 - drop)).exp() - (-gamma_a).exp()) / (1.0 - (-gamma_a).exp());
            proptest::prop_assert!((n - direct).abs() <= 1e-9 * direct.abs().max(1e-300) + 1e-12);
        }
    }
}
