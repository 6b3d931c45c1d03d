//! Classification of solver output into bound and below-minimum states,
//! near-degenerate pairing, parameter sweeps and the splitting curve.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::aim::{solve_spec, EigenvalueCandidate, ExpansionPoint, Precision, SolverConfig};
use crate::error::Result;
use crate::potential::{Param, PotentialExtrema, PotentialSpec};
use crate::units::{classify_band, transition_wavelength, Band, UnitContext};

/// Largest gap for two adjacent states to count as a near-degenerate pair.
pub const DEFAULT_PAIR_THRESHOLD: f64 = 0.2;

/// Everything needed to turn a [`PotentialSpec`] into a [`SolverConfig`]
/// and a classified report. The energy window follows each spec's `V(0)`
/// unless overridden.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AnalysisOptions {
    pub k_max: usize,
    pub expansion: ExpansionPoint,
    pub precision: Precision,
    /// Extra jet order beyond the `k_max + 2` minimum.
    pub extra_order: usize,
    pub tol_converge: f64,
    pub tol_imag: f64,
    pub window: Option<(f64, f64)>,
    pub pair_threshold: f64,
    pub transition: TransitionRule,
    pub units: Option<UnitContext>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            k_max: 12,
            expansion: ExpansionPoint::Valley,
            precision: Precision::Double,
            extra_order: 0,
            tol_converge: 1e-6,
            tol_imag: 1e-4,
            window: None,
            pair_threshold: DEFAULT_PAIR_THRESHOLD,
            transition: TransitionRule::default(),
            units: None,
        }
    }
}

impl AnalysisOptions {
    pub fn with_k(mut self, k_max: usize) -> Self {
        self.k_max = k_max;
        self
    }

    pub fn config_for(&self, spec: &PotentialSpec) -> SolverConfig {
        let mut cfg = SolverConfig::new(spec, self.k_max)
            .with_expansion(self.expansion, spec)
            .with_precision(self.precision);
        cfg.jet_order = self.k_max + 2 + self.extra_order;
        cfg.tol_converge = self.tol_converge;
        cfg.tol_imag = self.tol_imag;
        if let Some(w) = self.window {
            cfg.energy_window = w;
        }
        cfg
    }
}

/// Picks the two states of a transition relative to the barrier top:
/// the `upper_index`-th bound state above `V_max` (0 = closest) and the
/// `lower_index`-th one below it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransitionRule {
    pub upper_index: usize,
    pub lower_index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Transition {
    pub upper: f64,
    pub lower: f64,
    pub delta_e: f64,
    pub wavelength_um: f64,
    pub band: Band,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Pair {
    pub low: f64,
    pub high: f64,
    pub gap: f64,
}

impl Pair {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.low + self.high)
    }
}

/// One real state as it appears in a report.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StateRecord {
    pub energy: f64,
    pub bound: bool,
    pub converged: bool,
    pub residual: f64,
    pub first_seen_k: usize,
}

#[derive(Clone, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Classification {
    pub bound_states: Vec<f64>,
    pub below_min_states: Vec<f64>,
    pub pairs: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumReport {
    pub spec: PotentialSpec,
    pub config: SolverConfig,
    pub extrema: PotentialExtrema,
    pub bound_states: Vec<f64>,
    pub below_min_states: Vec<f64>,
    pub pairs: Vec<Pair>,
    pub states: Vec<StateRecord>,
    pub transition: Option<Transition>,
    pub diagnostic: Option<String>,
}

/// Splits candidate energies at `V(0)` (inclusive on the bound side) and
/// pairs the bound ones.
pub fn classify(candidates: &[EigenvalueCandidate], extrema: &PotentialExtrema, threshold: f64) -> Classification {
    let mut energies: Vec<f64> = candidates.iter().map(|c| c.energy.re).collect();
    energies.sort_by(f64::total_cmp);
    let (bound_states, below_min_states): (Vec<f64>, Vec<f64>) =
        energies.into_iter().partition(|&e| e >= extrema.v_origin);
    let pairs = pair_degenerate(&bound_states, threshold);
    Classification {
        bound_states,
        below_min_states,
        pairs,
    }
}

/// Greedy left-to-right pairing of adjacent sorted energies closer than
/// `threshold`; each energy is used at most once.
pub fn pair_degenerate(sorted: &[f64], threshold: f64) -> Vec<Pair> {
    let mut pairs = Vec::new();
    let mut i = 0;
    while i + 1 < sorted.len() {
        let gap = sorted[i + 1] - sorted[i];
        if gap < threshold {
            pairs.push(Pair {
                low: sorted[i],
                high: sorted[i + 1],
                gap: gap.max(0.0),
            });
            i += 2;
        } else {
            i += 1;
        }
    }
    pairs
}

/// Transition between bound states on either side of `v_max`.
pub fn select_transition(bound: &[f64], v_max: f64, rule: TransitionRule, ctx: &UnitContext) -> Option<Transition> {
    let upper = bound.iter().copied().filter(|&e| e > v_max).nth(rule.upper_index)?;
    let lower = bound
        .iter()
        .rev()
        .copied()
        .filter(|&e| e <= v_max)
        .nth(rule.lower_index)?;
    let delta_e = upper - lower;
    let wavelength_um = transition_wavelength(delta_e, ctx).ok()?;
    Some(Transition {
        upper,
        lower,
        delta_e,
        wavelength_um,
        band: classify_band(wavelength_um),
    })
}

/// Solves one parameter point and classifies the result.
pub fn analyze(spec: &PotentialSpec, opts: &AnalysisOptions) -> Result<SpectrumReport> {
    let cfg = opts.config_for(spec);
    let solution = solve_spec(spec, &cfg)?;
    let extrema = spec.extrema();
    let cls = classify(&solution.candidates, &extrema, opts.pair_threshold);
    let states = solution
        .candidates
        .iter()
        .map(|c| StateRecord {
            energy: c.energy.re,
            bound: c.energy.re >= extrema.v_origin,
            converged: c.converged,
            residual: c.residual,
            first_seen_k: c.first_seen_k,
        })
        .collect();
    let transition = match (opts.units, extrema.v_max) {
        (Some(ctx), Some(v_max)) => select_transition(&cls.bound_states, v_max, opts.transition, &ctx),
        _ => None,
    };
    Ok(SpectrumReport {
        spec: *spec,
        config: cfg,
        extrema,
        bound_states: cls.bound_states,
        below_min_states: cls.below_min_states,
        pairs: cls.pairs,
        states,
        transition,
        diagnostic: solution.diagnostic,
    })
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepRow {
    pub param: Param,
    pub value: f64,
    /// `None` on success, otherwise the solver error for this point.
    pub error: Option<String>,
    pub bound_states: Vec<f64>,
    pub pair_gaps: Vec<f64>,
    pub transition: Option<Transition>,
}

impl SweepRow {
    pub fn from_result(param: Param, value: f64, result: Result<SpectrumReport>) -> Self {
        match result {
            Ok(report) => Self {
                param,
                value,
                error: None,
                pair_gaps: report.pairs.iter().map(|p| p.gap).collect(),
                bound_states: report.bound_states,
                transition: report.transition,
            },
            Err(e) => Self {
                param,
                value,
                error: Some(e.to_string()),
                bound_states: Vec::new(),
                pair_gaps: Vec::new(),
                transition: None,
            },
        }
    }
}

/// Sequential sweep; rows come back in the order of `values`.
pub fn sweep(base: &PotentialSpec, param: Param, values: &[f64], opts: &AnalysisOptions) -> Vec<SweepRow> {
    values
        .iter()
        .map(|&v| {
            let result = base.with_param(param, v).and_then(|spec| analyze(&spec, opts));
            SweepRow::from_result(param, v, result)
        })
        .collect()
}

/// Center the splitting curve starts from: the level shared by every `b`
/// when `a = 1`.
pub const SPLIT_START_CENTER: f64 = -0.25;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplitRow {
    pub c: f64,
    pub gap: Option<f64>,
    pub midpoint: Option<f64>,
    /// At `c = 0` there is no physical splitting; the gap is the method's
    /// numerical floor.
    pub numerical_floor: bool,
    /// Why no gap was reported.
    pub note: Option<String>,
}

/// The adjacent pair whose midpoint is closest to `center`.
pub fn pair_near(sorted: &[f64], center: f64) -> Option<Pair> {
    sorted
        .windows(2)
        .map(|w| Pair {
            low: w[0],
            high: w[1],
            gap: w[1] - w[0],
        })
        .min_by(|p, q| libm::fabs(p.midpoint() - center).total_cmp(&libm::fabs(q.midpoint() - center)))
}

/// Follows one near-degenerate pair along `rows` of `(c, real states)`,
/// starting near `start` and then near the previous row's midpoint.
pub fn track_splitting(rows: &[(f64, Result<Vec<f64>>)], start: f64, threshold: f64) -> Vec<SplitRow> {
    let mut center = start;
    rows.iter()
        .map(|(c, states)| {
            let numerical_floor = *c == 0.0;
            let lost = |note: String| SplitRow {
                c: *c,
                gap: None,
                midpoint: None,
                numerical_floor,
                note: Some(note),
            };
            let states = match states {
                Ok(s) => s,
                Err(e) => return lost(format!("solver failed: {e}")),
            };
            match pair_near(states, center) {
                Some(p) if p.gap < threshold && libm::fabs(p.midpoint() - center) < threshold => {
                    center = p.midpoint();
                    SplitRow {
                        c: *c,
                        gap: Some(p.gap),
                        midpoint: Some(p.midpoint()),
                        numerical_floor,
                        note: numerical_floor.then(|| "numerical floor".to_string()),
                    }
                }
                _ => lost(format!("pair near E = {center} lost")),
            }
        })
        .collect()
}

/// Real states of the modified potential at one `c`.
pub fn split_states(a: f64, b: f64, c: f64, opts: &AnalysisOptions) -> Result<Vec<f64>> {
    let spec = PotentialSpec::modified(a, b, c)?;
    let cfg = opts.config_for(&spec);
    let sol = solve_spec(&spec, &cfg)?;
    Ok(sol.candidates.iter().map(|c| c.energy.re).collect())
}

/// Gap of the pair near `E = -0.25` as a function of the damping `c`.
pub fn splitting_curve(a: f64, b: f64, c_values: &[f64], opts: &AnalysisOptions) -> Vec<SplitRow> {
    let rows: Vec<(f64, Result<Vec<f64>>)> = c_values.iter().map(|&c| (c, split_states(a, b, c, opts))).collect();
    track_splitting(&rows, SPLIT_START_CENTER, opts.pair_threshold)
}

/// Gap between the two roots closest to `center` (real or not).
pub fn nearest_root_gap(roots: &[crate::complex::ComplexScalar], center: f64) -> Option<f64> {
    let mut by_distance: Vec<_> = roots.to_vec();
    by_distance.sort_by(|p, q| {
        let dp = (*p - crate::complex::Complex::real(center)).abs();
        let dq = (*q - crate::complex::Complex::real(center)).abs();
        dp.total_cmp(&dq)
    });
    match by_distance.as_slice() {
        [p, q, ..] => Some((*p - *q).abs()),
        _ => None,
    }
}
