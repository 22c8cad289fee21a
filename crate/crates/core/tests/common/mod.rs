#![allow(dead_code)]

use bec_probe_core::units::{ATOMIC_MASS_UNIT, BOHR_RADIUS};
use bec_probe_core::{Dimension, PhysicalConfig};

pub const A_RB: f64 = 100.4 * BOHR_RADIUS;

/// Rb-87 condensate, Na-23 impurity, 100 nm confinement in reduced dimensions.
pub fn companion(dim: Dimension) -> PhysicalConfig {
    let n3 = 1.2e20;
    let l = 100e-9;
    let pi = std::f64::consts::PI;
    let density = match dim {
        Dimension::D1 => n3 * pi * l * l,
        Dimension::D2 => n3 * pi.sqrt() * l,
        Dimension::D3 => n3,
    };
    PhysicalConfig {
        m_impurity: 22.989_769_28 * ATOMIC_MASS_UNIT,
        m_boson: 86.909_180_527 * ATOMIC_MASS_UNIT,
        a_boson: A_RB,
        a_impurity: 55.0 * BOHR_RADIUS,
        density,
        tau: 80e-9,
        separation: 960e-9,
        temperature: 0.0,
        dim,
        transverse_1d: Some(l),
        transverse_2d: Some(l),
    }
}

pub fn at(dim: Dimension, temperature: f64, a_boson: f64) -> PhysicalConfig {
    PhysicalConfig { temperature, a_boson, ..companion(dim) }
}
