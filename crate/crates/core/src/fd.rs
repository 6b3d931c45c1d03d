//! Finite-difference reference spectrum: the three-point Laplacian plus the
//! potential on a symmetric interval with hard walls, diagonalized by
//! Sturm-sequence bisection.
//!
//! For the unbounded cosh-sech family the walls cut off a potential that
//! keeps falling, so the low end of the FD spectrum is made of wall-bound
//! states that plunge as the box grows. Comparisons there are advisory and
//! only truncation-stable levels are used.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::aim::{solve_spec, SolverConfig};
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FdGrid {
    pub half_width: f64,
    pub points: usize,
}

impl Default for FdGrid {
    fn default() -> Self {
        Self {
            half_width: 12.0,
            points: 4000,
        }
    }
}

impl FdGrid {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "half width must be positive, got {half_width}"
            )));
        }
        if points < 3 {
            return Err(Error::InvalidConfig(format!(
                "need at least 3 grid points, got {points}"
            )));
        }
        Ok(Self { half_width, points })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points + 1) as f64
    }

    /// Interior node `i` in `1..=points`.
    pub fn x(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.points).map(move |i| self.x(i))
    }

    /// Same spacing, walls moved out by `factor`.
    pub fn widened(&self, factor: f64) -> Self {
        let half_width = self.half_width * factor;
        let points = libm::round(2.0 * half_width / self.spacing()) as usize - 1;
        Self { half_width, points }
    }

    /// Same walls, twice as many intervals.
    pub fn refined(&self) -> Self {
        Self {
            half_width: self.half_width,
            points: 2 * self.points + 1,
        }
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

/// `-d^2/dx^2 + V` for the given potential.
pub fn build_hamiltonian(spec: &PotentialSpec, grid: &FdGrid) -> Result<TridiagonalOperator> {
    let mut values = Vec::with_capacity(grid.points);
    for x in grid.nodes() {
        let v = spec
            .v_eval(x)
            .map_err(|_| Error::OracleInapplicable(format!("{spec} overflows at x = {x}; shrink the box")))?;
        values.push(v);
    }
    Ok(hamiltonian_from_values(&values, grid.spacing()))
}

/// `-d^2/dx^2 + V` for an arbitrary potential function.
pub fn build_hamiltonian_with(v: impl Fn(f64) -> f64, grid: &FdGrid) -> TridiagonalOperator {
    let values: Vec<f64> = grid.nodes().map(v).collect();
    hamiltonian_from_values(&values, grid.spacing())
}

fn hamiltonian_from_values(values: &[f64], h: f64) -> TridiagonalOperator {
    let inv_h2 = 1.0 / (h * h);
    TridiagonalOperator {
        diagonal: values.iter().map(|v| 2.0 * inv_h2 + v).collect(),
        off_diagonal: vec![-inv_h2; values.len() - 1],
    }
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidConfig(
                "off-diagonal must be one shorter than the diagonal".into(),
            ));
        }
        Ok(Self { diagonal, off_diagonal })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Number of eigenvalues strictly below `t`: negative pivots of the
    /// `LDL^T` factorization of `T - t I`.
    pub fn sturm_count(&self, t: f64) -> usize {
        let tiny = f64::MIN_POSITIVE / f64::EPSILON;
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diagonal.iter().enumerate() {
            let b2 = if i == 0 {
                0.0
            } else {
                let b = self.off_diagonal[i - 1];
                b * b
            };
            d = a - t - b2 / d;
            if d == 0.0 {
                d = -tiny;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    fn bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 {
                libm::fabs(self.off_diagonal[i - 1])
            } else {
                0.0
            } + if i + 1 < n {
                libm::fabs(self.off_diagonal[i])
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }

    /// The `m` smallest eigenvalues in ascending order, each bisected until
    /// the bracket is below `1e-12` absolute or stops shrinking.
    pub fn lowest_eigenvalues(&self, m: usize) -> Result<Vec<f64>> {
        if m > self.dim() {
            return Err(Error::InvalidConfig(format!(
                "asked for {m} eigenvalues of a {0}x{0} matrix",
                self.dim()
            )));
        }
        let (lo0, hi0) = self.bounds();
        let pad = 1e-12 * (1.0 + lo0.abs().max(hi0.abs()));
        let (lo0, hi0) = (lo0 - pad, hi0 + pad);
        let mut out = Vec::with_capacity(m);
        let mut lo_floor = lo0;
        for j in 0..m {
            let (mut lo, mut hi) = (lo_floor, hi0);
            // invariant: count(lo) <= j < count(hi)
            loop {
                let mid = 0.5 * (lo + hi);
                if hi - lo <= 1e-12 || mid <= lo || mid >= hi {
                    break;
                }
                if self.sturm_count(mid) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let e = 0.5 * (lo + hi);
            out.push(e);
            lo_floor = lo;
        }
        Ok(out)
    }

    /// Eigenvector for a computed eigenvalue by inverse iteration, unit
    /// Euclidean norm.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.dim();
        let shift = eigenvalue + 1e-10 * (1.0 + eigenvalue.abs());
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.01 * ((i * 7919) % 13) as f64).collect();
        for _ in 0..4 {
            x = solve_shifted(self, shift, &x);
            let norm = libm::sqrt(x.iter().map(|v| v * v).sum::<f64>());
            for v in x.iter_mut() {
                *v /= norm;
            }
        }
        x
    }
}

/// `(T - shift I) y = rhs` by Gaussian elimination with partial pivoting.
fn solve_shifted(t: &TridiagonalOperator, shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = t.dim();
    // rows hold up to three nonzeros after pivoting: (main, super1, super2)
    let mut d: Vec<f64> = t.diagonal.iter().map(|a| a - shift).collect();
    let mut du: Vec<f64> = t.off_diagonal.clone();
    let mut dl: Vec<f64> = t.off_diagonal.clone();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut b = rhs.to_vec();
    let tiny = 1e-300;
    for i in 0..n.saturating_sub(1) {
        if libm::fabs(d[i]) >= libm::fabs(dl[i]) {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            b[i + 1] -= f * b[i];
            dl[i] = 0.0;
        } else {
            let f = d[i] / dl[i];
            d[i] = dl[i];
            let tmp = d[i + 1];
            d[i + 1] = du[i] - f * tmp;
            if i + 1 < n - 1 {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du2[i];
            }
            du[i] = tmp;
            b.swap(i, i + 1);
            b[i + 1] -= f * b[i];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    let mut y = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= du[i] * y[i + 1];
        }
        if i + 2 < n {
            s -= du2[i] * y[i + 2];
        }
        y[i] = s / d[i];
    }
    y
}

/// Whether the FD box is an honest model of the problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum OracleMode {
    /// The potential levels off at large `|x|`; hard walls only clip tails.
    Bounded,
    /// The potential falls without bound; results are indicative only.
    Advisory,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OracleOptions {
    pub grid: FdGrid,
    pub levels: usize,
    /// Largest level shift under `L -> 1.25 L` and `N -> 2N` for a level to
    /// be trusted is ten times this.
    pub stability_tol: f64,
    /// Relative AIM-FD deviation counted as agreement.
    pub agreement_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            grid: FdGrid::default(),
            levels: 12,
            stability_tol: 1e-4,
            agreement_tol: 1e-3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FdLevel {
    pub energy: f64,
    /// Distance to the nearest level with the walls at `1.25 L`.
    pub shift_wide: f64,
    /// Distance to the nearest level on the doubled grid.
    pub shift_fine: f64,
    pub stable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LevelComparison {
    pub aim: f64,
    pub fd: Option<f64>,
    pub abs_dev: Option<f64>,
    pub rel_dev: Option<f64>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CrossValidation {
    pub spec: PotentialSpec,
    pub mode: OracleMode,
    pub options: OracleOptions,
    pub fd_levels: Vec<FdLevel>,
    /// AIM bound states (at or above `V(0)`) each matched to the nearest
    /// stable FD level.
    pub comparisons: Vec<LevelComparison>,
}

impl CrossValidation {
    /// Comparison for the lowest AIM bound state, if any.
    pub fn lowest(&self) -> Option<&LevelComparison> {
        self.comparisons.first()
    }
}

pub fn oracle_mode(spec: &PotentialSpec) -> OracleMode {
    if spec.c > 0.0 || spec.b == 0.0 {
        OracleMode::Bounded
    } else {
        OracleMode::Advisory
    }
}

/// Lowest FD levels with truncation and resolution checks.
pub fn fd_levels(spec: &PotentialSpec, opts: &OracleOptions) -> Result<Vec<FdLevel>> {
    let m = opts.levels;
    let base = build_hamiltonian(spec, &opts.grid)?.lowest_eigenvalues(m)?;
    let wide = build_hamiltonian(spec, &opts.grid.widened(1.25))?.lowest_eigenvalues(m)?;
    let fine = build_hamiltonian(spec, &opts.grid.refined())?.lowest_eigenvalues(m)?;
    let nearest = |e: f64, set: &[f64]| set.iter().map(|x| libm::fabs(x - e)).fold(f64::INFINITY, f64::min);
    Ok(base
        .iter()
        .map(|&e| {
            let shift_wide = nearest(e, &wide);
            let shift_fine = nearest(e, &fine);
            FdLevel {
                energy: e,
                shift_wide,
                shift_fine,
                stable: shift_wide <= 10.0 * opts.stability_tol && shift_fine <= 10.0 * opts.stability_tol,
            }
        })
        .collect())
}

/// Solves with AIM and matches each bound state to the nearest stable FD
/// level.
pub fn cross_validate(spec: &PotentialSpec, cfg: &SolverConfig, opts: &OracleOptions) -> Result<CrossValidation> {
    let fd = fd_levels(spec, opts)?;
    let solution = solve_spec(spec, cfg)?;
    let v_origin = spec.extrema().v_origin;
    let stable: Vec<f64> = fd.iter().filter(|l| l.stable).map(|l| l.energy).collect();
    let comparisons = solution
        .candidates
        .iter()
        .map(|c| c.energy.re)
        .filter(|&e| e >= v_origin)
        .map(|aim| {
            let best = stable
                .iter()
                .copied()
                .min_by(|x, y| libm::fabs(x - aim).total_cmp(&libm::fabs(y - aim)));
            match best {
                Some(fd) => {
                    let abs_dev = libm::fabs(aim - fd);
                    let rel_dev = abs_dev / libm::fabs(fd).max(f64::MIN_POSITIVE);
                    LevelComparison {
                        aim,
                        fd: Some(fd),
                        abs_dev: Some(abs_dev),
                        rel_dev: Some(rel_dev),
                        agrees: rel_dev <= opts.agreement_tol,
                    }
                }
                None => LevelComparison {
                    aim,
                    fd: None,
                    abs_dev: None,
                    rel_dev: None,
                    agrees: false,
                },
            }
        })
        .collect();
    Ok(CrossValidation {
        spec: *spec,
        mode: oracle_mode(spec),
        options: *opts,
        fd_levels: fd,
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_by_three() {
        let t = TridiagonalOperator::new(vec![2.0; 3], vec![-1.0; 2]).unwrap();
        let e = t.lowest_eigenvalues(3).unwrap();
        let s = libm::sqrt(2.0);
        for (x, y) in e.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
            assert!((x - y).abs() < 1e-10);
        }
        assert_eq!(t.sturm_count(2.0 - s - 1e-9), 0);
        assert_eq!(t.sturm_count(1.0), 1);
        assert_eq!(t.sturm_count(10.0), 3);
    }

    #[test]
    fn grid_geometry() {
        let g = FdGrid::new(1.0, 3).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.x(1), -0.5);
        assert_eq!(g.x(3), 0.5);
        assert!(FdGrid::new(1.0, 2).is_err());
        assert!(FdGrid::new(0.0, 10).is_err());
        let w = FdGrid::new(12.0, 3999).unwrap().widened(1.25);
        assert!((w.spacing() - 0.006).abs() < 1e-12);
    }

    #[test]
    fn inverse_iteration_gives_eigenvector() {
        let t = TridiagonalOperator::new(vec![2.0; 3], vec![-1.0; 2]).unwrap();
        let v = t.eigenvector(2.0);
        let s = 1.0 / libm::sqrt(2.0);
        assert!((v[0].abs() - s).abs() < 1e-8 && v[1].abs() < 1e-8);
        assert!((v[0] + v[2]).abs() < 1e-8);
    }

    #[test]
    fn unbounded_box_is_rejected_when_it_overflows() {
        let spec = PotentialSpec::cosh_sech(1.0, 1.0).unwrap();
        let grid = FdGrid::new(400.0, 100).unwrap();
        assert!(matches!(
            build_hamiltonian(&spec, &grid),
            Err(Error::OracleInapplicable(_))
        ));
        assert_eq!(oracle_mode(&spec), OracleMode::Advisory);
        let m = PotentialSpec::modified(1.0, 1.0, 0.5).unwrap();
        assert_eq!(oracle_mode(&m), OracleMode::Bounded);
    }
}
