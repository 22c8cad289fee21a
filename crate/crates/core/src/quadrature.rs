//! Radial `k` integration of the decoherence integrands.
//!
//! The integrands oscillate like `sin(E_k t)` and `sin²(k ell)`, under a
//! Gaussian envelope `exp(-k²/2)`. Instead of a dedicated oscillatory rule the
//! domain `[0, k_max]` is cut a priori into panels that are uniform in the
//! total phase `E_k t + 2 k ell`, with at least `oscillation_guard` panels per
//! period. Each panel gets a 15-point Gauss-Kronrod rule; panels with the
//! largest error are bisected until the global tolerance is met.
//!
//! [`lattice_sum_oracle`] evaluates the same decoherence factor as a literal
//! mode sum on a finite periodic box, with `k·L` taken from the vector dot
//! product rather than from the closed-form angular averages.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use crate::bogoliubov::{directed_integrand, group_velocity, IntegrandKind};
use crate::math::sqrt;
use crate::units::{Dimension, ReducedParams};
use crate::{Error, Result};

/// 15-point Kronrod abscissae on `[-1, 1]`, positive half, outermost first.
/// Odd indices are the 7-point Gauss abscissae; the last entry is the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// 7-point Gauss weights for `XGK[1]`, `XGK[3]`, `XGK[5]` and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Number of nodes of the panel rule.
pub const NODES_PER_PANEL: usize = 15;

/// Smallest number of panels on the domain, whatever the oscillation scale.
const MIN_PANELS: usize = 32;

/// Tolerances and budgets for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper integration limit in units of the Gaussian width (which is 1).
    pub k_max_sigma: f64,
    /// Maximum number of panels, initial plus refined.
    pub max_panels: usize,
    /// Minimum panels per oscillation period.
    pub oscillation_guard: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            k_max_sigma: 8.0,
            max_panels: 400_000,
            oscillation_guard: 4,
        }
    }
}

impl QuadratureSpec {
    pub fn check(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidQuadratureSpec("tolerances must be > 0"));
        }
        if !(self.k_max_sigma >= 5.0) {
            return Err(Error::InvalidQuadratureSpec("k_max_sigma must be ≥ 5"));
        }
        if self.oscillation_guard < 2 {
            return Err(Error::InvalidQuadratureSpec("oscillation_guard must be ≥ 2"));
        }
        if self.max_panels < MIN_PANELS {
            return Err(Error::InvalidQuadratureSpec("max_panels is below the minimum panel count"));
        }
        Ok(())
    }

    pub fn k_max(&self) -> f64 {
        self.k_max_sigma
    }

    /// Tolerance for a result of magnitude `value`.
    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    /// Tolerance once cancellation is accounted for: an integral whose
    /// absolute integrand integrates to `magnitude` cannot be resolved below
    /// `ROUNDOFF_FLOOR · magnitude`.
    pub fn attainable_tolerance(&self, value: f64, magnitude: f64) -> f64 {
        self.tolerance(value).max(ROUNDOFF_FLOOR * magnitude)
    }
}

/// Value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Relative size of the rounding floor, against `∫|f|`, below which an error
/// estimate cannot be pushed by refinement.
pub const ROUNDOFF_FLOOR: f64 = 100.0 * f64::EPSILON;

impl Estimate {
    pub fn scaled(self, factor: f64) -> Estimate {
        Estimate { value: self.value * factor, error: self.error * factor.abs() }
    }
}

/// Oscillation scale of an integrand: phase `E_k time + spatial_frequency k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationHint {
    pub time: f64,
    /// `g_B n0`, fixing the dispersion and its group velocity.
    pub sound_speed_sq: f64,
    /// Extra phase per unit `k` from spatial factors such as `sin²(k ell)`.
    pub spatial_frequency: f64,
}

impl OscillationHint {
    /// No oscillation information: only the minimum panel count applies.
    pub const NONE: OscillationHint =
        OscillationHint { time: 0.0, sound_speed_sq: 0.0, spatial_frequency: 0.0 };

    pub fn for_params(params: &ReducedParams, time: f64) -> Self {
        OscillationHint {
            time,
            sound_speed_sq: params.sound_speed_sq(),
            spatial_frequency: 2.0 * params.ell,
        }
    }

    fn phase_rate(&self, k: f64) -> f64 {
        self.time * group_velocity(k, self.sound_speed_sq) + self.spatial_frequency
    }
}

/// Panel boundaries on `[0, k_max]` with at most `2π/guard` of phase per panel.
///
/// The group velocity grows with `k`, so the step taken from `k` uses the rate
/// at the predicted right end, which bounds the phase across the panel.
pub fn breakpoints(spec: &QuadratureSpec, hint: &OscillationHint) -> Result<Vec<f64>> {
    spec.check()?;
    let k_max = spec.k_max();
    let max_width = k_max / MIN_PANELS as f64;
    let phase_step = 2.0 * PI / spec.oscillation_guard as f64;
    let mut points = vec![0.0];
    let mut k = 0.0;
    while k < k_max {
        let rate = hint.phase_rate(k);
        let mut step = if rate > 0.0 { phase_step / rate } else { max_width };
        step = step.min(max_width);
        let rate_right = hint.phase_rate((k + step).min(k_max));
        if rate_right > 0.0 {
            step = step.min(phase_step / rate_right);
        }
        k += step;
        if k_max - k < 1e-3 * step {
            k = k_max;
        }
        points.push(k.min(k_max));
        if points.len() > spec.max_panels + 1 {
            return Err(Error::QuadratureBudget { value: f64::NAN, error: f64::INFINITY, panels: spec.max_panels });
        }
    }
    Ok(points)
}

/// Maps the 15 rule nodes onto `[a, b]`, in the order [`gk15_combine`] expects.
pub fn panel_nodes(a: f64, b: f64) -> [f64; NODES_PER_PANEL] {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut nodes = [centre; NODES_PER_PANEL];
    for j in 0..7 {
        nodes[2 * j] = centre - half * XGK[j];
        nodes[2 * j + 1] = centre + half * XGK[j];
    }
    nodes
}

/// One panel's Kronrod value, error estimate and `∫|f|`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PanelEstimate {
    pub value: f64,
    pub error: f64,
    pub magnitude: f64,
}

/// Combines integrand values at [`panel_nodes`] into a panel value and a
/// QUADPACK-style error estimate.
pub fn gk15_combine(values: &[f64; NODES_PER_PANEL], half_length: f64) -> PanelEstimate {
    let fc = values[14];
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.abs() * WGK[7];
    for j in 0..7 {
        let (lo, hi) = (values[2 * j], values[2 * j + 1]);
        resk += WGK[j] * (lo + hi);
        resabs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((values[2 * j] - mean).abs() + (values[2 * j + 1] - mean).abs());
    }
    let value = resk * half_length;
    resabs *= half_length.abs();
    resasc *= half_length.abs();
    let mut error = ((resk - resg) * half_length).abs();
    if resasc != 0.0 && error != 0.0 {
        let scale = libm::pow(200.0 * error / resasc, 1.5);
        error = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    PanelEstimate { value, error, magnitude: resabs }
}

fn panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let nodes = panel_nodes(a, b);
    let mut values = [0.0; NODES_PER_PANEL];
    for (v, &k) in values.iter_mut().zip(nodes.iter()) {
        let y = f(k);
        if !y.is_finite() {
            return Err(Error::NonFiniteIntegrand { k });
        }
        *v = y;
    }
    let est = gk15_combine(&values, 0.5 * (b - a));
    Ok(Panel { a, b, value: est.value, error: est.error, magnitude: est.magnitude })
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    magnitude: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position for a deterministic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn sum_in_order(panels: &mut [Panel]) -> Estimate {
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    panels.iter().fold(Estimate::default(), |acc, p| Estimate {
        value: acc.value + p.value,
        error: acc.error + p.error,
    })
}

/// Adaptive panel quadrature of `f` over `[0, k_max]`.
///
/// Fails with [`Error::QuadratureBudget`] (carrying the best value) if the
/// panel budget runs out, and with [`Error::NonFiniteIntegrand`] if `f`
/// returns NaN or an infinity.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    spec: &QuadratureSpec,
    hint: &OscillationHint,
) -> Result<Estimate> {
    let points = breakpoints(spec, hint)?;
    let mut heap = BinaryHeap::with_capacity(points.len());
    for w in points.windows(2) {
        heap.push(panel(&mut f, w[0], w[1])?);
    }
    let mut total = Estimate::default();
    let mut magnitude = 0.0;
    for p in heap.iter() {
        total.value += p.value;
        total.error += p.error;
        magnitude += p.magnitude;
    }
    let mut count = heap.len();
    while total.error > spec.attainable_tolerance(total.value, magnitude) {
        if count >= spec.max_panels {
            let mut panels = heap.into_vec();
            let best = sum_in_order(&mut panels);
            return Err(Error::QuadratureBudget { value: best.value, error: best.error, panels: count });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Panel can no longer be split in floating point; keep it.
            heap.push(Panel { error: 0.0, ..worst });
            total.error -= worst.error;
            continue;
        }
        let left = panel(&mut f, worst.a, mid)?;
        let right = panel(&mut f, mid, worst.b)?;
        total.value += left.value + right.value - worst.value;
        total.error += left.error + right.error - worst.error;
        magnitude += left.magnitude + right.magnitude - worst.magnitude;
        heap.push(left);
        heap.push(right);
        count += 1;
    }
    let mut panels = heap.into_vec();
    Ok(sum_in_order(&mut panels))
}

/// `Γ(t)` or `γ(t)` as a literal mode sum on a periodic box of side
/// `box_size` (units of `τ`), modes `k = 2πn/box_size` with `|k| ≤ k_max`.
///
/// `L` lies along the first axis and `sin²(k·L)` is evaluated directly. The
/// volume normalization `(2π)^D/V` turns the sum into the continuum integral
/// as the box grows. Includes the overall prefactor.
pub fn lattice_sum_oracle(
    params: &ReducedParams,
    t: f64,
    box_size: f64,
    kind: IntegrandKind,
    k_max: f64,
) -> f64 {
    let dk = 2.0 * PI / box_size;
    let n_max = libm::floor(k_max / dk) as i64;
    let n_max_sq = n_max * n_max;
    let ell = params.ell;
    let term = |nx: i64, n_sq: i64| {
        let k = dk * sqrt(n_sq as f64);
        directed_integrand(k, dk * nx as f64 * ell, t, params, kind)
    };
    let sum = match params.dim {
        Dimension::D1 => (1..=n_max).fold(0.0, |acc, n| acc + 2.0 * term(n, n * n)),
        Dimension::D2 => {
            let mut acc = 0.0;
            for nx in 0..=n_max {
                let mx = if nx > 0 { 2.0 } else { 1.0 };
                let mut row = 0.0;
                for ny in 0..=n_max {
                    let n_sq = nx * nx + ny * ny;
                    if n_sq == 0 || n_sq > n_max_sq {
                        continue;
                    }
                    let my = if ny > 0 { 2.0 } else { 1.0 };
                    row += my * term(nx, n_sq);
                }
                acc += mx * row;
            }
            acc
        }
        Dimension::D3 => {
            // Multiplicity of each transverse radius² s = ny² + nz².
            let mut transverse = vec![0u32; n_max_sq as usize + 1];
            for ny in -n_max..=n_max {
                for nz in -n_max..=n_max {
                    let s = ny * ny + nz * nz;
                    if s <= n_max_sq {
                        transverse[s as usize] += 1;
                    }
                }
            }
            let mut acc = 0.0;
            for nx in 0..=n_max {
                let mx = if nx > 0 { 2.0 } else { 1.0 };
                let mut shell = 0.0;
                for s in 0..=(n_max_sq - nx * nx) {
                    let m = transverse[s as usize];
                    if m == 0 || (nx == 0 && s == 0) {
                        continue;
                    }
                    shell += m as f64 * term(nx, nx * nx + s);
                }
                acc += mx * shell;
            }
            acc
        }
    };
    params.prefactor * crate::math::powi(dk, params.dim.as_u32() as i32) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_over_default_domain() {
        let spec = QuadratureSpec::default();
        let est = integrate(|k| libm::exp(-0.5 * k * k), &spec, &OscillationHint::NONE).unwrap();
        // √(π/2) erf(8/√2)
        let exact = (PI / 2.0).sqrt() * libm::erf(8.0 / 2f64.sqrt());
        assert!(((est.value - exact) / exact).abs() < spec.rel_tol, "{} vs {}", est.value, exact);
        assert!(est.error <= spec.tolerance(exact));
    }

    #[test]
    fn zero_integrand_gives_exact_zero() {
        let est = integrate(|_| 0.0, &QuadratureSpec::default(), &OscillationHint::NONE).unwrap();
        assert_eq!(est, Estimate { value: 0.0, error: 0.0 });
    }

    #[test]
    fn nan_is_a_hard_error() {
        let err = integrate(
            |k| if k > 3.0 { f64::NAN } else { 1.0 },
            &QuadratureSpec::default(),
            &OscillationHint::NONE,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { k } if k > 3.0));
    }

    #[test]
    fn exhausted_budget_reports_best_value() {
        let spec = QuadratureSpec { max_panels: 40, rel_tol: 1e-15, abs_tol: 1e-300, ..Default::default() };
        // A kink defeats the rule; 40 panels cannot reach 1e-15.
        let err = integrate(|k| (k - 1.234_567).abs().sqrt(), &spec, &OscillationHint::NONE).unwrap_err();
        match err {
            Error::QuadratureBudget { value, error, panels } => {
                assert!(value.is_finite() && error > 0.0);
                assert_eq!(panels, 40);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let bad = [
            QuadratureSpec { rel_tol: 0.0, ..Default::default() },
            QuadratureSpec { k_max_sigma: 4.0, ..Default::default() },
            QuadratureSpec { oscillation_guard: 1, ..Default::default() },
        ];
        for spec in bad {
            assert!(matches!(spec.check(), Err(Error::InvalidQuadratureSpec(_))));
        }
    }

    #[test]
    fn breakpoints_respect_the_phase_guard() {
        let spec = QuadratureSpec::default();
        let hint = OscillationHint { time: 250.0, sound_speed_sq: 0.05, spatial_frequency: 24.0 };
        let pts = breakpoints(&spec, &hint).unwrap();
        assert_eq!(pts[0], 0.0);
        assert_eq!(*pts.last().unwrap(), spec.k_max());
        let max_phase = 2.0 * PI / spec.oscillation_guard as f64;
        let phase = |k: f64| hint.time * crate::bogoliubov::energy(k, hint.sound_speed_sq) + hint.spatial_frequency * k;
        for w in pts.windows(2) {
            assert!(w[1] > w[0]);
            assert!(phase(w[1]) - phase(w[0]) <= max_phase * (1.0 + 1e-9));
        }
    }

    #[test]
    fn oscillatory_integral_matches_closed_form() {
        // ∫_0^∞ exp(-k²/2) cos(ωk) dk = √(π/2) exp(-ω²/2); the tail past 8 is
        // far below tolerance.
        let spec = QuadratureSpec::default();
        let omega = 3.0;
        let hint = OscillationHint { time: 0.0, sound_speed_sq: 0.0, spatial_frequency: omega };
        let est = integrate(|k| libm::exp(-0.5 * k * k) * libm::cos(omega * k), &spec, &hint).unwrap();
        let exact = (PI / 2.0).sqrt() * libm::exp(-0.5 * omega * omega);
        assert!((est.value - exact).abs() < 1e-10, "{} vs {}", est.value, exact);
    }

    #[test]
    fn panel_nodes_cover_the_panel_symmetrically() {
        let nodes = panel_nodes(2.0, 4.0);
        assert_eq!(nodes[14], 3.0);
        for j in 0..7 {
            assert!((nodes[2 * j] + nodes[2 * j + 1] - 6.0).abs() < 1e-15);
        }
        // Degree-21 exactness of the Kronrod rule on one panel.
        let mut vals = [0.0; NODES_PER_PANEL];
        for (v, &x) in vals.iter_mut().zip(nodes.iter()) {
            *v = x.powi(9);
        }
        let exact = (4f64.powi(10) - 2f64.powi(10)) / 10.0;
        assert!((gk15_combine(&vals, 1.0).value - exact).abs() < 1e-9);
    }
}
