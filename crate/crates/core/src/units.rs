//! Physical parameters, their validation, and the map onto reduced units.
//!
//! Internally `ħ = k_B = m_B = 1` and lengths are measured in units of the
//! impurity wavefunction width `τ`. Energies are then in units of
//! `E_τ = ħ²/(m_B τ²)` and times in `ħ/E_τ`, which makes the Gaussian cutoff
//! `exp(-k²τ²/2)` parameter free and keeps the integrands of order one.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::math::{powi, sqrt};
use crate::{Error, Result};

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;
/// Unified atomic mass unit (kg).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Bohr radius (m).
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

/// Effective dimension of the condensate reservoir.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Dimension {
    D1,
    D2,
    D3,
}

impl Dimension {
    pub const ALL: [Dimension; 3] = [Dimension::D1, Dimension::D2, Dimension::D3];

    pub fn as_u32(self) -> u32 {
        match self {
            Dimension::D1 => 1,
            Dimension::D2 => 2,
            Dimension::D3 => 3,
        }
    }

    pub fn from_u32(d: u32) -> Option<Self> {
        match d {
            1 => Some(Dimension::D1),
            2 => Some(Dimension::D2),
            3 => Some(Dimension::D3),
            _ => None,
        }
    }

    /// Measure of the unit sphere in `d` dimensions: the number of directions a
    /// radial integrand is summed over (2 points, a circle, a sphere).
    pub fn sphere_measure(self) -> f64 {
        match self {
            Dimension::D1 => 2.0,
            Dimension::D2 => 2.0 * PI,
            Dimension::D3 => 4.0 * PI,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}D", self.as_u32())
    }
}

/// Experiment parameters in SI units.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhysicalConfig {
    /// Impurity atom mass `m_A` (kg).
    pub m_impurity: f64,
    /// Condensate boson mass `m_B` (kg).
    pub m_boson: f64,
    /// Boson-boson s-wave scattering length `a_B` (m).
    pub a_boson: f64,
    /// Impurity-boson s-wave scattering length `a_AB` (m); any sign.
    pub a_impurity: f64,
    /// Condensate density in m^-D for the configured dimension.
    pub density: f64,
    /// Gaussian width `τ` of the impurity wavefunction in each well (m).
    pub tau: f64,
    /// Distance `L` between the two well minima (m).
    pub separation: f64,
    /// Temperature (K); zero is allowed.
    pub temperature: f64,
    pub dim: Dimension,
    /// Transverse harmonic length for quasi-1D condensates (m).
    pub transverse_1d: Option<f64>,
    /// Axial harmonic length for quasi-2D condensates (m).
    pub transverse_2d: Option<f64>,
}

/// A violated invariant of [`PhysicalConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn positive(out: &mut Vec<Violation>, field: &'static str, label: &str, value: f64) {
    if !(value > 0.0 && value.is_finite()) {
        out.push(Violation { field, message: format!("{label} must be > 0 (got {value:e})") });
    }
}

/// Every invariant `config` breaks, with a readable message. Empty on success.
pub fn validate(config: &PhysicalConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    positive(&mut out, "m_impurity", "m_A", config.m_impurity);
    positive(&mut out, "m_boson", "m_B", config.m_boson);
    positive(&mut out, "density", "n0", config.density);
    positive(&mut out, "tau", "tau", config.tau);
    positive(&mut out, "separation", "L", config.separation);
    if !(config.a_boson >= 0.0 && config.a_boson.is_finite()) {
        out.push(Violation { field: "a_boson", message: "a_B must be ≥ 0".into() });
    }
    if !config.a_impurity.is_finite() {
        out.push(Violation { field: "a_impurity", message: "a_AB must be finite".into() });
    }
    if !(config.temperature >= 0.0 && config.temperature.is_finite()) {
        out.push(Violation { field: "temperature", message: "T must be ≥ 0".into() });
    }
    if config.tau > 0.0 && !(config.separation > config.tau) {
        out.push(Violation { field: "separation", message: "L must exceed tau".into() });
    }
    for (field, value) in [("transverse_1d", config.transverse_1d), ("transverse_2d", config.transverse_2d)] {
        if let Some(v) = value {
            positive(&mut out, field, field, v);
        }
    }
    out
}

/// Scales that fix the reduced unit system; kept so the map can be inverted.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UnitSystem {
    /// Length unit `τ` (m).
    pub length: f64,
    /// Mass unit `m_B` (kg).
    pub mass: f64,
}

impl UnitSystem {
    /// `E_τ = ħ²/(m_B τ²)` in joules.
    pub fn energy(&self) -> f64 {
        HBAR * HBAR / (self.mass * self.length * self.length)
    }

    /// `ħ/E_τ` in seconds.
    pub fn time(&self) -> f64 {
        HBAR / self.energy()
    }

    /// `E_τ/k_B` in kelvin.
    pub fn temperature(&self) -> f64 {
        self.energy() / K_B
    }
}

/// The system in reduced units; the only parameter object the kernels take.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReducedParams {
    /// Effective boson-boson coupling in the run's dimension.
    pub g_boson: f64,
    /// Effective impurity-boson coupling in the run's dimension.
    pub g_impurity: f64,
    /// Condensate density `n0 τ^D`.
    pub density: f64,
    /// Inverse temperature `E_τ/(k_B T)`; `f64::INFINITY` at `T = 0`.
    pub beta: f64,
    /// Well separation over width, `L/τ`.
    pub ell: f64,
    pub dim: Dimension,
    /// `8 g_AB² n0 / (2π)^D`, multiplying the radial `k` integral.
    pub prefactor: f64,
    /// `m_A/m_B`; not used by the kernels.
    pub mass_ratio: f64,
    /// Transverse length over `τ` for reduced dimensions; not used by the kernels.
    pub transverse: Option<f64>,
    pub units: UnitSystem,
}

impl ReducedParams {
    /// `g_B n0`, the squared sound speed in reduced units.
    pub fn sound_speed_sq(&self) -> f64 {
        self.g_boson * self.density
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.beta == f64::INFINITY
    }

    /// Recomputes `prefactor` from the couplings and density.
    pub fn refresh_prefactor(&mut self) {
        self.prefactor = prefactor(self.g_impurity, self.density, self.dim);
    }

    /// Invariants the kernels rely on.
    pub fn check(&self) -> Result<()> {
        let mut out = Vec::new();
        if !(self.ell > 1.0) {
            out.push(Violation { field: "ell", message: "L/tau must exceed 1".into() });
        }
        if !(self.g_boson >= 0.0) {
            out.push(Violation { field: "g_boson", message: "g_B must be ≥ 0".into() });
        }
        if !(self.density > 0.0) {
            out.push(Violation { field: "density", message: "n0 must be > 0".into() });
        }
        if !(self.beta > 0.0) {
            out.push(Violation { field: "beta", message: "beta must lie in (0, inf]".into() });
        }
        if !(self.prefactor >= 0.0 && self.prefactor.is_finite()) {
            out.push(Violation { field: "prefactor", message: "prefactor must be finite and ≥ 0".into() });
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(out))
        }
    }
}

fn prefactor(g_impurity: f64, density: f64, dim: Dimension) -> f64 {
    8.0 * g_impurity * g_impurity * density / powi(2.0 * PI, dim.as_u32() as i32)
}

/// Reduction factor from a 3D contact coupling to the effective coupling of a
/// harmonically confined gas, in units where lengths are already over `τ`.
fn confinement_factor(dim: Dimension, transverse: f64) -> f64 {
    match dim {
        Dimension::D1 => 1.0 / (2.0 * PI * transverse * transverse),
        Dimension::D2 => 1.0 / (sqrt(2.0 * PI) * transverse),
        Dimension::D3 => 1.0,
    }
}

/// Maps laboratory parameters onto [`ReducedParams`].
///
/// 3D couplings are `g_B = 4πħ²a_B/m_B` and `g_AB = 2πħ²a_AB/μ` with the
/// reduced mass `μ = m_A m_B/(m_A + m_B)`. Quasi-1D and quasi-2D couplings
/// divide by `2π l⊥²` and `√(2π) l_z` respectively.
pub fn to_reduced(config: &PhysicalConfig) -> Result<ReducedParams> {
    let violations = validate(config);
    if !violations.is_empty() {
        return Err(Error::InvalidConfig(violations));
    }
    let units = UnitSystem { length: config.tau, mass: config.m_boson };
    let tau = config.tau;
    let reduced_mass = config.m_impurity * config.m_boson / (config.m_impurity + config.m_boson);

    let g_boson_3d = 4.0 * PI * config.a_boson / tau;
    let g_impurity_3d = 2.0 * PI * (config.m_boson / reduced_mass) * config.a_impurity / tau;

    let transverse = match config.dim {
        Dimension::D1 => Some(
            config.transverse_1d.ok_or(Error::MissingTransverseLength { dim: config.dim })? / tau,
        ),
        Dimension::D2 => Some(
            config.transverse_2d.ok_or(Error::MissingTransverseLength { dim: config.dim })? / tau,
        ),
        Dimension::D3 => None,
    };
    let factor = transverse.map_or(1.0, |l| confinement_factor(config.dim, l));
    let d = config.dim.as_u32() as i32;
    let density = config.density * powi(tau, d);
    let g_impurity = g_impurity_3d * factor;

    let beta = if config.temperature == 0.0 {
        f64::INFINITY
    } else {
        units.energy() / (K_B * config.temperature)
    };

    Ok(ReducedParams {
        g_boson: g_boson_3d * factor,
        g_impurity,
        density,
        beta,
        ell: config.separation / tau,
        dim: config.dim,
        prefactor: prefactor(g_impurity, density, config.dim),
        mass_ratio: config.m_impurity / config.m_boson,
        transverse,
        units,
    })
}

/// Inverse of [`to_reduced`].
///
/// The transverse length of the dimension that was not used is not part of the
/// reduced description and comes back as `None`.
pub fn from_reduced(params: &ReducedParams) -> PhysicalConfig {
    let tau = params.units.length;
    let m_boson = params.units.mass;
    let m_impurity = params.mass_ratio * m_boson;
    let reduced_mass = m_impurity * m_boson / (m_impurity + m_boson);
    let factor = params.transverse.map_or(1.0, |l| confinement_factor(params.dim, l));
    let d = params.dim.as_u32() as i32;

    let temperature = if params.is_zero_temperature() {
        0.0
    } else {
        params.units.energy() / (K_B * params.beta)
    };
    let transverse = params.transverse.map(|l| l * tau);

    PhysicalConfig {
        m_impurity,
        m_boson,
        a_boson: params.g_boson / factor * tau / (4.0 * PI),
        a_impurity: params.g_impurity / factor * tau * reduced_mass / (2.0 * PI * m_boson),
        density: params.density / powi(tau, d),
        tau,
        separation: params.ell * tau,
        temperature,
        dim: params.dim,
        transverse_1d: if params.dim == Dimension::D1 { transverse } else { None },
        transverse_2d: if params.dim == Dimension::D2 { transverse } else { None },
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::rb87;
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        if a == b {
            0.0
        } else {
            (a - b).abs() / a.abs().max(b.abs())
        }
    }

    #[test]
    fn negative_boson_scattering_length_is_reported() {
        let mut c = rb87(Dimension::D3);
        c.a_boson = -1e-9;
        let v = validate(&c);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].message, "a_B must be ≥ 0");
    }

    #[test]
    fn unresolved_double_well_is_reported() {
        let mut c = rb87(Dimension::D3);
        c.separation = c.tau / 2.0;
        let v = validate(&c);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].message, "L must exceed tau");
    }

    #[test]
    fn valid_config_has_no_violations() {
        for dim in Dimension::ALL {
            assert!(validate(&rb87(dim)).is_empty());
        }
    }

    #[test]
    fn several_violations_are_all_listed() {
        let mut c = rb87(Dimension::D3);
        c.m_boson = 0.0;
        c.temperature = -1.0;
        c.density = f64::NAN;
        assert_eq!(validate(&c).len(), 3);
    }

    #[test]
    fn zero_temperature_maps_to_infinite_beta() {
        let r = to_reduced(&rb87(Dimension::D3)).unwrap();
        assert_eq!(r.beta, f64::INFINITY);
        assert!(r.is_zero_temperature());
    }

    #[test]
    fn free_gas_has_zero_coupling() {
        let mut c = rb87(Dimension::D2);
        c.a_boson = 0.0;
        assert_eq!(to_reduced(&c).unwrap().g_boson, 0.0);
    }

    #[test]
    fn missing_transverse_length_is_a_config_error() {
        let mut c = rb87(Dimension::D1);
        c.transverse_1d = None;
        assert_eq!(
            to_reduced(&c).unwrap_err(),
            Error::MissingTransverseLength { dim: Dimension::D1 }
        );
        // 3D never needs one.
        let mut c = rb87(Dimension::D3);
        c.transverse_1d = None;
        c.transverse_2d = None;
        assert!(to_reduced(&c).is_ok());
    }

    #[test]
    fn three_dimensional_couplings_match_hand_values() {
        let c = rb87(Dimension::D3);
        let r = to_reduced(&c).unwrap();
        assert!(rel(r.g_boson, 4.0 * PI * c.a_boson / c.tau) < 1e-15);
        let mu = c.m_impurity * c.m_boson / (c.m_impurity + c.m_boson);
        // g_AB / (E_τ τ³) with g_AB = 2πħ² a_AB / μ
        let e_tau = HBAR * HBAR / (c.m_boson * c.tau * c.tau);
        let g_si = 2.0 * PI * HBAR * HBAR * c.a_impurity / mu;
        assert!(rel(r.g_impurity, g_si / (e_tau * c.tau.powi(3))) < 1e-12);
        assert!(rel(r.ell, 12.0) < 1e-15);
        assert!(rel(r.prefactor, 8.0 * r.g_impurity.powi(2) * r.density / (2.0 * PI).powi(3)) < 1e-15);
    }

    #[test]
    fn beta_uses_the_reduced_energy_unit() {
        let mut c = rb87(Dimension::D3);
        c.temperature = 6.5e-9;
        let r = to_reduced(&c).unwrap();
        let t_unit = r.units.temperature();
        assert!(rel(r.beta, t_unit / 6.5e-9) < 1e-14);
        // ħ²/(m τ²) for Rb-87 at τ = 80 nm is about 0.87 μK.
        assert!((t_unit - 0.872e-6).abs() < 0.005e-6, "{t_unit}");
    }

    #[test]
    fn round_trip_reproduces_every_field() {
        for dim in Dimension::ALL {
            let mut c = rb87(dim);
            c.temperature = 12.5e-9;
            c.a_impurity = -3.3e-9;
            let back = from_reduced(&to_reduced(&c).unwrap());
            for (a, b) in [
                (c.m_impurity, back.m_impurity),
                (c.m_boson, back.m_boson),
                (c.a_boson, back.a_boson),
                (c.a_impurity, back.a_impurity),
                (c.density, back.density),
                (c.tau, back.tau),
                (c.separation, back.separation),
                (c.temperature, back.temperature),
            ] {
                assert!(rel(a, b) < 1e-12, "{dim}: {a} vs {b}");
            }
            assert_eq!(back.dim, dim);
            match dim {
                Dimension::D1 => assert!(rel(back.transverse_1d.unwrap(), c.transverse_1d.unwrap()) < 1e-12),
                Dimension::D2 => assert!(rel(back.transverse_2d.unwrap(), c.transverse_2d.unwrap()) < 1e-12),
                Dimension::D3 => assert!(back.transverse_1d.is_none() && back.transverse_2d.is_none()),
            }
        }
    }

    #[test]
    fn zero_temperature_round_trips_to_zero() {
        let c = rb87(Dimension::D3);
        assert_eq!(from_reduced(&to_reduced(&c).unwrap()).temperature, 0.0);
    }

    #[test]
    fn reduced_dimension_couplings_use_harmonic_confinement() {
        let c3 = to_reduced(&rb87(Dimension::D3)).unwrap();
        let c1 = to_reduced(&rb87(Dimension::D1)).unwrap();
        let c2 = to_reduced(&rb87(Dimension::D2)).unwrap();
        let l = 100e-9 / 80e-9;
        assert!(rel(c1.g_boson, c3.g_boson / (2.0 * PI * l * l)) < 1e-14);
        assert!(rel(c2.g_boson, c3.g_boson / ((2.0 * PI).sqrt() * l)) < 1e-14);
        // With densities integrated over the transverse Gaussian profile the
        // sound speeds are fixed fractions of the 3D one.
        assert!(rel(c1.sound_speed_sq(), c3.sound_speed_sq() / 2.0) < 1e-12);
        assert!(rel(c2.sound_speed_sq(), c3.sound_speed_sq() / 2f64.sqrt()) < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn round_trip_holds_across_the_valid_domain(
            dim in 1u32..=3,
            temperature in 0.0..500e-9f64,
            a_boson in 0.0..30e-9f64,
            a_impurity in -10e-9..10e-9f64,
            tau in 20e-9..300e-9f64,
            ratio in 2.0..20.0f64,
            density_scale in -1.0..1.0f64,
        ) {
            let dim = Dimension::from_u32(dim).unwrap();
            let mut c = rb87(dim);
            c.temperature = temperature;
            c.a_boson = a_boson;
            c.a_impurity = a_impurity;
            c.tau = tau;
            c.separation = ratio * tau;
            c.density *= 10f64.powf(density_scale);
            let back = from_reduced(&to_reduced(&c).unwrap());
            for (a, b) in [
                (c.a_boson, back.a_boson),
                (c.a_impurity, back.a_impurity),
                (c.density, back.density),
                (c.separation, back.separation),
                (c.temperature, back.temperature),
            ] {
                proptest::prop_assert!(rel(a, b) < 1e-12, "{} vs {}", a, b);
            }
        }
    }
}
