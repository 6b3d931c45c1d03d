//! Run settings from a TOML file and from flags. Both use the same keys;
//! flags win.

use std::path::Path;

use serde::{Deserialize, Serialize};
use volcano_core::fd::{FdGrid, OracleOptions};
use volcano_core::spectrum::AnalysisOptions;
use volcano_core::units::{UnitContext, ELECTRON_MASS};
use volcano_core::{ExpansionPoint, Precision};

use crate::error::{CliError, Result};

/// `u0` may be written as a name or as a number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExpansionValue {
    Value(f64),
    Name(String),
}

impl ExpansionValue {
    pub fn resolve(&self) -> Result<ExpansionPoint> {
        match self {
            ExpansionValue::Value(u) => Ok(ExpansionPoint::At(*u)),
            ExpansionValue::Name(s) => s.parse().map_err(CliError::from),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub spec: Option<String>,
    pub k: Option<usize>,
    pub u0: Option<ExpansionValue>,
    pub precision: Option<Precision>,
    pub extra_order: Option<usize>,
    pub tol_converge: Option<f64>,
    pub tol_imag: Option<f64>,
    pub window: Option<(f64, f64)>,
    pub pair_threshold: Option<f64>,
    /// Length scale in angstrom for physical units.
    pub x0: Option<f64>,
    pub mass: Option<f64>,
    pub wavelength: Option<bool>,
    pub jobs: Option<usize>,
    #[serde(rename = "L")]
    pub half_width: Option<f64>,
    #[serde(rename = "N")]
    pub points: Option<usize>,
    pub levels: Option<usize>,
}

macro_rules! prefer {
    ($hi:expr, $lo:expr, $($field:ident),+) => {
        RunConfig { $($field: $hi.$field.clone().or_else(|| $lo.$field.clone())),+ }
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config file: {e}")))
    }

    /// `self` overrides `base` key by key.
    pub fn over(&self, base: &RunConfig) -> RunConfig {
        prefer!(
            self,
            base,
            spec,
            k,
            u0,
            precision,
            extra_order,
            tol_converge,
            tol_imag,
            window,
            pair_threshold,
            x0,
            mass,
            wavelength,
            jobs,
            half_width,
            points,
            levels
        )
    }

    pub fn units(&self) -> Result<UnitContext> {
        UnitContext::new(self.x0.unwrap_or(10.0), self.mass.unwrap_or(ELECTRON_MASS)).map_err(CliError::from)
    }

    pub fn analysis_options(&self) -> Result<AnalysisOptions> {
        let d = AnalysisOptions::default();
        let threshold = self.pair_threshold.unwrap_or(d.pair_threshold);
        if threshold.is_nan() || threshold <= 0.0 {
            return Err(CliError::Usage(format!(
                "pair threshold must be positive, got {threshold}"
            )));
        }
        Ok(AnalysisOptions {
            k_max: self.k.unwrap_or(d.k_max),
            expansion: match &self.u0 {
                Some(u) => u.resolve()?,
                None => d.expansion,
            },
            precision: self.precision.unwrap_or(d.precision),
            extra_order: self.extra_order.unwrap_or(d.extra_order),
            tol_converge: self.tol_converge.unwrap_or(d.tol_converge),
            tol_imag: self.tol_imag.unwrap_or(d.tol_imag),
            window: self.window.or(d.window),
            pair_threshold: threshold,
            transition: d.transition,
            units: if self.wavelength.unwrap_or(false) {
                Some(self.units()?)
            } else {
                None
            },
        })
    }

    pub fn oracle_options(&self) -> Result<OracleOptions> {
        let d = OracleOptions::default();
        let grid = FdGrid::new(
            self.half_width.unwrap_or(d.grid.half_width),
            self.points.unwrap_or(d.grid.points),
        )?;
        Ok(OracleOptions {
            grid,
            levels: self.levels.unwrap_or(d.levels),
            ..d
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_keys_parse() {
        let cfg = RunConfig::from_toml(
            "spec = \"coshsech(a=3,b=1)\"\nk = 13\nu0 = \"max\"\nprecision = \"extended\"\nL = 15.0\nN = 2000\n",
        )
        .unwrap();
        assert_eq!(cfg.k, Some(13));
        assert_eq!(cfg.precision, Some(Precision::Extended));
        assert_eq!(cfg.u0.as_ref().unwrap().resolve().unwrap(), ExpansionPoint::Maximum);
        let o = cfg.oracle_options().unwrap();
        assert_eq!((o.grid.half_width, o.grid.points), (15.0, 2000));
    }

    #[test]
    fn numeric_expansion_point() {
        let cfg = RunConfig::from_toml("u0 = 0.5").unwrap();
        assert_eq!(cfg.analysis_options().unwrap().expansion, ExpansionPoint::At(0.5));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(RunConfig::from_toml("kk = 3"), Err(CliError::Usage(_))));
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig {
            k: Some(10),
            x0: Some(20.0),
            ..Default::default()
        };
        let flags = RunConfig {
            k: Some(14),
            ..Default::default()
        };
        let merged = flags.over(&file);
        assert_eq!(merged.k, Some(14));
        assert_eq!(merged.x0, Some(20.0));
    }

    #[test]
    fn units_only_when_asked() {
        let mut cfg = RunConfig::default();
        assert!(cfg.analysis_options().unwrap().units.is_none());
        cfg.wavelength = Some(true);
        let u = cfg.analysis_options().unwrap().units.unwrap();
        assert_eq!(u.x0_angstrom, 10.0);
    }
}
