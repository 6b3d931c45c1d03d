//! Conversion of dimensionless energies to electron-volts and photon
//! wavelengths.
//!
//! With a length scale `x0`, the dimensionless equation
//! `-psi'' + V psi = E psi` corresponds to physical energies
//! `E_phys = hbar^2 / (2 m x0^2) * E`.

use alloc::format;
use core::fmt;

use crate::error::{Error, Result};

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Joules per electron-volt.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;
/// Electron mass in kg, to the three digits customary in device modelling.
pub const ELECTRON_MASS: f64 = 9.11e-31;
/// `h c` in eV um, rounded as in the usual `lambda = 1.2424 / E` rule.
pub const HC_EV_UM: f64 = 1.2424;
pub const ANGSTROM: f64 = 1e-10;

/// Violet end of the visible range, um.
pub const VISIBLE_MIN_UM: f64 = 0.4;
/// Red end of the visible range, um.
pub const VISIBLE_MAX_UM: f64 = 0.8;

/// `hbar^2 / (2 m x0^2)` in eV, for `x0` in angstrom and `mass` in kg.
pub fn energy_scale(x0_angstrom: f64, mass_kg: f64) -> Result<f64> {
    if !(x0_angstrom > 0.0 && x0_angstrom.is_finite()) {
        return Err(Error::Domain(format!("x0 must be positive, got {x0_angstrom}")));
    }
    if !(mass_kg > 0.0 && mass_kg.is_finite()) {
        return Err(Error::Domain(format!("mass must be positive, got {mass_kg}")));
    }
    let x0 = x0_angstrom * ANGSTROM;
    Ok(HBAR * HBAR / (2.0 * mass_kg * x0 * x0) / ELECTRON_VOLT)
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UnitContext {
    pub x0_angstrom: f64,
    pub mass_kg: f64,
    /// eV per dimensionless energy unit.
    pub energy_scale_ev: f64,
}

impl UnitContext {
    pub fn new(x0_angstrom: f64, mass_kg: f64) -> Result<Self> {
        Ok(Self {
            x0_angstrom,
            mass_kg,
            energy_scale_ev: energy_scale(x0_angstrom, mass_kg)?,
        })
    }

    /// An electron with the given length scale.
    pub fn electron(x0_angstrom: f64) -> Result<Self> {
        Self::new(x0_angstrom, ELECTRON_MASS)
    }

    pub fn to_ev(&self, energy: f64) -> f64 {
        energy * self.energy_scale_ev
    }
}

/// Photon wavelength in um for a dimensionless energy difference.
pub fn transition_wavelength(delta_e: f64, ctx: &UnitContext) -> Result<f64> {
    if !(delta_e > 0.0 && delta_e.is_finite()) {
        return Err(Error::Domain(format!(
            "energy difference must be positive, got {delta_e}"
        )));
    }
    Ok(HC_EV_UM / (delta_e * ctx.energy_scale_ev))
}

/// Inverse of [`transition_wavelength`].
pub fn delta_e_for_wavelength(lambda_um: f64, ctx: &UnitContext) -> Result<f64> {
    if !(lambda_um > 0.0 && lambda_um.is_finite()) {
        return Err(Error::Domain(format!("wavelength must be positive, got {lambda_um}")));
    }
    Ok(HC_EV_UM / (lambda_um * ctx.energy_scale_ev))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Band {
    Uv,
    Visible,
    Ir,
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Band::Uv => "UV",
            Band::Visible => "visible",
            Band::Ir => "IR",
        })
    }
}

/// Visible is the closed interval `[0.4, 0.8]` um.
pub fn classify_band(lambda_um: f64) -> Band {
    if lambda_um < VISIBLE_MIN_UM {
        Band::Uv
    } else if lambda_um <= VISIBLE_MAX_UM {
        Band::Visible
    } else {
        Band::Ir
    }
}
