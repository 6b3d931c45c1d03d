use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::{Complex, ComplexScalar};
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::potential::{CoefficientPair, PotentialSpec};
use crate::real::Real;

use super::engine::AimIterations;

/// Arithmetic used for the jets, the discriminant and its roots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Precision {
    #[default]
    Double,
    /// Double-double, about 31 significant digits.
    Extended,
}

/// Where the coefficient jets are expanded, in the variable `u = sinh x`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ExpansionPoint {
    /// The bottom of the central well, `u0 = 0`.
    #[default]
    Valley,
    /// The barrier top `u0 = sinh(x_max)`, or the valley when there is no barrier.
    Maximum,
    At(f64),
}

impl ExpansionPoint {
    pub fn resolve(self, spec: &PotentialSpec) -> f64 {
        match self {
            ExpansionPoint::Valley => 0.0,
            ExpansionPoint::Maximum => spec.default_u0(),
            ExpansionPoint::At(u0) => u0,
        }
    }
}

impl core::str::FromStr for ExpansionPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "valley" | "min" => Ok(ExpansionPoint::Valley),
            "max" | "maximum" => Ok(ExpansionPoint::Maximum),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|u| u.is_finite())
                .map(ExpansionPoint::At)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "expansion point must be valley, max or a number, got '{other}'"
                    ))
                }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolverConfig {
    pub u0: f64,
    /// Number of iterations; the last discriminant is `delta_{k_max}`.
    pub k_max: usize,
    /// Truncation order of the coefficient jets, at least `k_max + 2`.
    pub jet_order: usize,
    pub tol_converge: f64,
    pub tol_imag: f64,
    pub energy_window: (f64, f64),
    pub precision: Precision,
}

impl SolverConfig {
    /// Defaults for `spec`: valley expansion point, the tightest jet order,
    /// and an energy window of `[V(0) - 20, max(V(0), 0) + 200]`, which keeps
    /// the states near the barrier top in view for deep wells.
    pub fn new(spec: &PotentialSpec, k_max: usize) -> Self {
        let v0 = spec.v_eval(0.0).unwrap_or(0.0);
        Self {
            u0: 0.0,
            k_max,
            jet_order: k_max + 2,
            tol_converge: 1e-6,
            tol_imag: 1e-4,
            energy_window: (v0 - 20.0, v0.max(0.0) + 200.0),
            precision: Precision::Double,
        }
    }

    pub fn with_u0(mut self, u0: f64) -> Self {
        self.u0 = u0;
        self
    }

    pub fn with_expansion(self, point: ExpansionPoint, spec: &PotentialSpec) -> Self {
        self.with_u0(point.resolve(spec))
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_max < 2 {
            return Err(Error::InvalidConfig(format!(
                "k must be at least 2, got {}",
                self.k_max
            )));
        }
        if self.jet_order < self.k_max + 2 {
            return Err(Error::InvalidConfig(format!(
                "jet order {} is below k + 2 = {}",
                self.jet_order,
                self.k_max + 2
            )));
        }
        if !(self.tol_converge > 0.0 && self.tol_imag > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        let (lo, hi) = self.energy_window;
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidConfig(format!("empty energy window [{lo}, {hi}]")));
        }
        if !self.u0.is_finite() {
            return Err(Error::InvalidConfig("expansion point must be finite".into()));
        }
        Ok(())
    }
}

/// One step of a candidate's history.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HistoryPoint {
    pub k: usize,
    pub energy: ComplexScalar,
    pub residual: f64,
}

/// A root of the discriminant followed across iterations.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenvalueCandidate {
    pub energy: ComplexScalar,
    pub first_seen_k: usize,
    /// Distance to the matched root of the previous iteration; infinite on
    /// the first sighting.
    pub last_delta: f64,
    /// `|delta_k(E)|` divided by `sum_j |c_j| |E|^j`.
    pub residual: f64,
    pub converged: bool,
    /// Consecutive iterations with `last_delta` below tolerance.
    pub streak: usize,
    pub history: Vec<HistoryPoint>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Solution {
    /// Candidates alive at the last iteration, sorted by real part.
    pub candidates: Vec<EigenvalueCandidate>,
    pub u0: f64,
    pub k_max: usize,
    /// Set when nothing survived the filters.
    pub diagnostic: Option<String>,
}

impl Solution {
    pub fn converged(&self) -> impl Iterator<Item = &EigenvalueCandidate> {
        self.candidates.iter().filter(|c| c.converged)
    }

    pub fn converged_energies(&self) -> Vec<f64> {
        self.converged().map(|c| c.energy.re).collect()
    }
}

/// Runs `k = 1..=k_max` iterations on `base` and tracks the real roots of
/// each discriminant inside the energy window.
///
/// `cfg.u0` is informational here (the jets already carry their expansion
/// point) and `cfg.precision` is ignored: the arithmetic is that of `R`.
pub fn solve<R: Real>(base: &CoefficientPair<R>, cfg: &SolverConfig) -> Result<Solution> {
    cfg.validate()?;
    if base.lambda0.order() < cfg.k_max {
        return Err(Error::OrderExhausted);
    }
    let mut alive: Vec<EigenvalueCandidate> = Vec::new();
    for record in AimIterations::new(base, cfg.k_max) {
        let record = record?;
        let k = record.k;
        let kept: Vec<(ComplexScalar, f64)> = record
            .roots
            .iter()
            .filter_map(|&z| {
                let e = z.to_f64();
                let inside = e.im.abs() < cfg.tol_imag && e.re >= cfg.energy_window.0 && e.re <= cfg.energy_window.1;
                inside.then(|| (e, residual(&record.discriminant, z)))
            })
            .collect();
        alive = track(&alive, &kept, k, cfg.tol_converge);
    }
    alive.sort_by(|a, b| a.energy.re.total_cmp(&b.energy.re));
    let diagnostic = alive.is_empty().then(|| {
        format!(
            "no real roots inside [{}, {}] at k = {}; widen the energy window or relax tol_imag",
            cfg.energy_window.0, cfg.energy_window.1, cfg.k_max
        )
    });
    Ok(Solution {
        candidates: alive,
        u0: base.u0,
        k_max: cfg.k_max,
        diagnostic,
    })
}

/// Builds the coefficient jets for `spec` at `cfg.u0` in the requested
/// precision and solves.
pub fn solve_spec(spec: &PotentialSpec, cfg: &SolverConfig) -> Result<Solution> {
    cfg.validate()?;
    match cfg.precision {
        Precision::Double => solve(&spec.init_coeffs::<f64>(cfg.u0, cfg.jet_order)?, cfg),
        Precision::Extended => solve(&spec.init_coeffs::<DoubleDouble>(cfg.u0, cfg.jet_order)?, cfg),
    }
}

fn residual<R: Real>(p: &crate::series::EnergyPoly<R>, z: Complex<R>) -> f64 {
    let scale = p.eval_scale(z);
    if scale == R::zero() {
        return 0.0;
    }
    (p.eval(z).abs() / scale).to_f64()
}

/// Greedy nearest-neighbour matching of this iteration's roots to the
/// previous candidates; ties go to the root with the smaller imaginary part.
fn track(prev: &[EigenvalueCandidate], roots: &[(ComplexScalar, f64)], k: usize, tol: f64) -> Vec<EigenvalueCandidate> {
    let mut pairs: Vec<(f64, f64, usize, usize)> = Vec::with_capacity(prev.len() * roots.len());
    for (ci, c) in prev.iter().enumerate() {
        for (ri, (z, _)) in roots.iter().enumerate() {
            pairs.push(((c.energy - *z).abs(), z.im.abs(), ci, ri));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut cand_used = alloc::vec![false; prev.len()];
    let mut matched: Vec<Option<usize>> = alloc::vec![None; roots.len()];
    for &(_, _, ci, ri) in &pairs {
        if !cand_used[ci] && matched[ri].is_none() {
            cand_used[ci] = true;
            matched[ri] = Some(ci);
        }
    }
    roots
        .iter()
        .zip(matched)
        .map(|(&(z, res), m)| {
            let point = HistoryPoint {
                k,
                energy: z,
                residual: res,
            };
            match m {
                Some(ci) => {
                    let old = &prev[ci];
                    let delta = (old.energy - z).abs();
                    let streak = if delta < tol { old.streak + 1 } else { 0 };
                    let mut history = old.history.clone();
                    history.push(point);
                    EigenvalueCandidate {
                        energy: z,
                        first_seen_k: old.first_seen_k,
                        last_delta: delta,
                        residual: res,
                        converged: streak >= 2,
                        streak,
                        history,
                    }
                }
                None => EigenvalueCandidate {
                    energy: z,
                    first_seen_k: k,
                    last_delta: f64::INFINITY,
                    residual: res,
                    converged: false,
                    streak: 0,
                    history: alloc::vec![point],
                },
            }
        })
        .collect()
}
