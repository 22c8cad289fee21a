//! Wavenumber-dependent factors of the decoherence integrand.
//!
//! For a mode of wavenumber `k` (reduced units) the decoherence factor picks up
//!
//! ```text
//! S_D k^(D-1) · (ε_k/E_k) · exp(-k²/2) · coth(βE_k/2) · ⟨sin²(k·L)⟩ · sin²(E_k t/2)/E_k²
//! ```
//!
//! where `S_D k^(D-1)` is the radial measure of `d^D k`, `ε_k/E_k` is the
//! Bogoliubov weight `(|u_k| - |v_k|)²`, and `⟨sin²(k·L)⟩` is averaged over
//! the mode directions in closed form.

use crate::math::{exp, expm1, j0, powi, sin, sqrt};
use crate::units::{Dimension, ReducedParams};
use crate::{Error, Result};

/// Below this `βE` the thermal factor switches to its two-term series.
const THERMAL_SERIES_BELOW: f64 = 1e-4;
/// Below this argument the angular averages switch to their series.
const GEOMETRY_SERIES_BELOW: f64 = 1e-3;

/// Free-particle energy `ε_k = k²/2`.
#[inline]
pub fn free_energy(k: f64) -> f64 {
    0.5 * k * k
}

/// Bogoliubov energy `E_k = √(2 ε_k n0 g_B + ε_k²)`.
pub fn dispersion(k: f64, g_boson: f64, density: f64) -> Result<f64> {
    let gn = g_boson * density;
    if gn < 0.0 {
        return Err(Error::ComplexDispersion { coupling_density: gn });
    }
    Ok(energy(k, gn))
}

#[inline]
pub(crate) fn energy(k: f64, gn: f64) -> f64 {
    let eps = free_energy(k);
    sqrt(2.0 * eps * gn + eps * eps)
}

/// Group velocity `dE/dk = k (g_B n0 + k²/2) / E_k`; tends to the sound speed
/// as `k → 0`.
pub fn group_velocity(k: f64, gn: f64) -> f64 {
    if k == 0.0 {
        return sqrt(gn);
    }
    k * (gn + 0.5 * k * k) / energy(k, gn)
}

/// `(|u_k| - |v_k|)² = ε_k/E_k`, evaluated as `k/√(4 g_B n0 + k²)`.
///
/// At `k = 0` this returns the limit: 0 for an interacting gas, 1 for a free one.
pub fn bogoliubov_weight(k: f64, g_boson: f64, density: f64) -> f64 {
    weight(k, g_boson * density)
}

#[inline]
pub(crate) fn weight(k: f64, gn: f64) -> f64 {
    if gn == 0.0 {
        return 1.0;
    }
    k / sqrt(4.0 * gn + k * k)
}

/// `coth(βE/2)`. Exactly 1 for `β = ∞`; `+∞` for `E = 0` at finite `β`.
pub fn thermal_factor(energy: f64, beta: f64) -> f64 {
    if beta == f64::INFINITY {
        return 1.0;
    }
    let x = beta * energy;
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x < THERMAL_SERIES_BELOW {
        2.0 / x + x / 6.0
    } else {
        1.0 + 2.0 / expm1(x)
    }
}

/// Gaussian cutoff `exp(-k²τ²/2)` from the finite width of the impurity
/// wavefunction; `τ = 1` in reduced units.
#[inline]
pub fn gaussian_cutoff(k: f64) -> f64 {
    exp(-0.5 * k * k)
}

/// Direction average of `sin²(k·L)` at `|k| = k`, `|L| = ell`.
///
/// - 1D: `sin²(k ell)`
/// - 2D: `(1 - J0(2 k ell))/2`
/// - 3D: `(1 - sin(2 k ell)/(2 k ell))/2`
pub fn angular_geometry(k: f64, ell: f64, dim: Dimension) -> f64 {
    let x = k * ell;
    match dim {
        Dimension::D1 => {
            let s = sin(x);
            s * s
        }
        Dimension::D2 => {
            let z = 2.0 * x;
            if z < GEOMETRY_SERIES_BELOW {
                let z2 = z * z;
                z2 / 8.0 - z2 * z2 / 128.0
            } else {
                0.5 * (1.0 - j0(z))
            }
        }
        Dimension::D3 => {
            let z = 2.0 * x;
            if z < GEOMETRY_SERIES_BELOW {
                let z2 = z * z;
                0.5 * (z2 / 6.0 - z2 * z2 / 120.0)
            } else {
                0.5 * (1.0 - sin(z) / z)
            }
        }
    }
}

/// Radial measure `S_D k^(D-1)` of `d^D k`.
#[inline]
pub fn mode_density(k: f64, dim: Dimension) -> f64 {
    dim.sphere_measure() * powi(k, dim.as_u32() as i32 - 1)
}

/// All factors of one mode, for inspection and tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFactors {
    pub k: f64,
    pub eps: f64,
    pub energy: f64,
    pub weight: f64,
    pub thermal: f64,
    pub cutoff: f64,
    pub geometry: f64,
}

impl ModeFactors {
    pub fn at(k: f64, params: &ReducedParams) -> Self {
        let gn = params.sound_speed_sq();
        let energy = energy(k, gn);
        ModeFactors {
            k,
            eps: free_energy(k),
            energy,
            weight: weight(k, gn),
            thermal: thermal_factor(energy, params.beta),
            cutoff: gaussian_cutoff(k),
            geometry: angular_geometry(k, params.ell, params.dim),
        }
    }
}

/// Which time kernel multiplies the spectral weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum IntegrandKind {
    /// `sin²(E t/2)/E²`, giving `Γ(t)`.
    GammaFactor,
    /// `sin(E t)/(2E)`, its time derivative, giving `γ(t)`.
    DecayRate,
}

/// Time kernel for a single mode of energy `e > 0`.
#[inline]
pub fn time_kernel(e: f64, t: f64, kind: IntegrandKind) -> f64 {
    match kind {
        IntegrandKind::GammaFactor => {
            let s = sin(0.5 * e * t);
            s * s / (e * e)
        }
        IntegrandKind::DecayRate => sin(e * t) / (2.0 * e),
    }
}

/// Time-independent part of the integrand: measure, weight, cutoff, thermal
/// factor and geometry. Zero at `k = 0`, where the product vanishes even
/// though the thermal factor alone diverges.
#[inline]
pub fn spectral_weight(k: f64, params: &ReducedParams) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    let gn = params.sound_speed_sq();
    let e = energy(k, gn);
    mode_density(k, params.dim)
        * weight(k, gn)
        * gaussian_cutoff(k)
        * thermal_factor(e, params.beta)
        * angular_geometry(k, params.ell, params.dim)
}

/// The full radial integrand for `Γ(t)` or `γ(t)` without the overall prefactor.
pub fn assemble_integrand(k: f64, t: f64, params: &ReducedParams, kind: IntegrandKind) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    let e = energy(k, params.sound_speed_sq());
    spectral_weight(k, params) * time_kernel(e, t, kind)
}

/// Single-mode integrand with an explicit `sin²(k·L)` instead of the
/// direction average; used by the lattice sum.
pub(crate) fn directed_integrand(
    k: f64,
    k_dot_l: f64,
    t: f64,
    params: &ReducedParams,
    kind: IntegrandKind,
) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    let gn = params.sound_speed_sq();
    let e = energy(k, gn);
    let s = sin(k_dot_l);
    weight(k, gn) * gaussian_cutoff(k) * thermal_factor(e, params.beta) * s * s * time_kernel(e, t, kind)
}
