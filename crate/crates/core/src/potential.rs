//! The cosh-sech "volcano" potential, its Gaussian-damped modification, and
//! the coefficient pair `(lambda0, s0)` of the transformed equation
//! `y'' = lambda0(u) y' + s0(u) y` in the variable `u = sinh x`.
//!
//! The transform is `psi = exp(-f) y` with
//! `f(x) = i b sinh x + (a - 1/2) ln cosh x`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::series::{Jet, ScalarJet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Family {
    /// `V(x) = -(b^2/4) cosh^2 x - (a^2 - 1/4) sech^2 x`, unbounded below.
    CoshSech,
    /// The cosh^2 term damped by `exp(-c x^2)`; bounded for `c > 0`.
    Modified,
}

/// How the damping factor enters the constant part of `s0` for the
/// modified family.
///
/// `Additive` uses `(b^2/4)(2 + exp(-c asinh^2 u))`, the form used for the
/// reference splitting computations. `Exact` uses `(b^2/4)(4 - exp(-c asinh^2 u))`,
/// which is the exact transform of the damped potential evaluated by
/// [`PotentialSpec::v_eval`]. The two coincide at `c = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum S0Form {
    #[default]
    Additive,
    Exact,
}

/// Which potential parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Param {
    A,
    B,
    C,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::C => "c",
        }
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" => Ok(Param::A),
            "b" => Ok(Param::B),
            "c" => Ok(Param::C),
            other => Err(Error::Parse(format!(
                "unknown parameter '{other}' (expected a, b or c)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PotentialSpec {
    pub family: Family,
    pub a: f64,
    pub b: f64,
    /// Damping exponent; always 0 for [`Family::CoshSech`].
    pub c: f64,
    pub s0_form: S0Form,
}

/// Critical points of an even potential on `x >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PotentialExtrema {
    pub x_max: Option<f64>,
    pub v_max: Option<f64>,
    /// `V(0)`.
    pub v_origin: f64,
    /// Deepest value of the potential; `-inf` when it is not representable.
    pub v_min: f64,
}

/// `(lambda0, s0)` as jets about `u0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientPair<R = f64> {
    pub lambda0: Jet<R>,
    pub s0: Jet<R>,
    pub u0: f64,
}

const LN_OVERFLOW: f64 = 709.78;

fn ln_cosh(x: f64) -> f64 {
    let ax = libm::fabs(x);
    ax + libm::log1p(libm::exp(-2.0 * ax)) - core::f64::consts::LN_2
}

impl PotentialSpec {
    pub fn cosh_sech(a: f64, b: f64) -> Result<Self> {
        let spec = Self {
            family: Family::CoshSech,
            a,
            b,
            c: 0.0,
            s0_form: S0Form::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn modified(a: f64, b: f64, c: f64) -> Result<Self> {
        let spec = Self {
            family: Family::Modified,
            a,
            b,
            c,
            s0_form: S0Form::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_s0_form(mut self, form: S0Form) -> Self {
        self.s0_form = form;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.c.is_finite()) {
            return Err(Error::InvalidConfig("potential parameters must be finite".into()));
        }
        if self.b < 0.0 {
            return Err(Error::InvalidConfig(format!("b must be >= 0, got {}", self.b)));
        }
        if self.c < 0.0 {
            return Err(Error::InvalidConfig(format!("c must be >= 0, got {}", self.c)));
        }
        if self.family == Family::CoshSech && self.c != 0.0 {
            return Err(Error::InvalidConfig("the cosh-sech family has no c parameter".into()));
        }
        Ok(())
    }

    /// Copy with one parameter replaced. Setting `c` on a cosh-sech spec
    /// turns it into the modified family.
    pub fn with_param(&self, param: Param, value: f64) -> Result<Self> {
        let mut out = *self;
        match param {
            Param::A => out.a = value,
            Param::B => out.b = value,
            Param::C => {
                out.family = Family::Modified;
                out.c = value;
            }
        }
        out.validate()?;
        Ok(out)
    }

    pub fn get(&self, param: Param) -> f64 {
        match param {
            Param::A => self.a,
            Param::B => self.b,
            Param::C => self.c,
        }
    }

    /// True when the potential is the plain (unbounded) cosh-sech one.
    pub fn is_unbounded(&self) -> bool {
        self.c == 0.0 && self.b > 0.0
    }

    /// `V(x) = -(b^2/4) cosh^2 x exp(-c x^2) - (a^2 - 1/4) sech^2 x`.
    pub fn v_eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Overflow { x });
        }
        let well = (self.a * self.a - 0.25) * {
            let s = 1.0 / libm::cosh(x);
            s * s
        };
        let lift = if self.b == 0.0 {
            0.0
        } else if libm::fabs(x) < 20.0 {
            let ch = libm::cosh(x);
            0.25 * self.b * self.b * (ch * ch) * libm::exp(-self.c * x * x)
        } else {
            let expo = 2.0 * ln_cosh(x) - self.c * x * x;
            if expo > LN_OVERFLOW {
                return Err(Error::Overflow { x });
            }
            0.25 * self.b * self.b * libm::exp(expo)
        };
        let v = -lift - well;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow { x })
        }
    }

    /// Like [`v_eval`](Self::v_eval) but saturating to `-inf` where the
    /// cosh^2 term overflows.
    pub fn v_eval_saturating(&self, x: f64) -> f64 {
        self.v_eval(x).unwrap_or(f64::NEG_INFINITY)
    }

    /// Extrema from the closed forms; exact for the cosh-sech family and for
    /// the modified family at `c = 0`.
    pub fn analytic_extrema(&self) -> PotentialExtrema {
        let (a, b) = (self.a, self.b);
        let q = 4.0 * a * a - 1.0;
        let (x_max, v_max) = if b > 0.0 && q > 0.0 && b < libm::sqrt(q) {
            let ratio = libm::pow(q / (b * b), 0.25);
            (Some(libm::acosh(ratio)), Some(-(b / 2.0) * libm::sqrt(q)))
        } else {
            (None, None)
        };
        PotentialExtrema {
            x_max,
            v_max,
            v_origin: self.v_eval(0.0).expect("V(0) is always finite"),
            v_min: -(a * a - 0.25) - b * b / 4.0,
        }
    }

    /// Extrema of the potential: closed forms when `c = 0`, otherwise located
    /// numerically.
    pub fn extrema(&self) -> PotentialExtrema {
        if self.c == 0.0 {
            self.analytic_extrema()
        } else {
            self.locate_extrema_numeric()
        }
    }

    /// Grid scan plus golden-section refinement on `[0, x_cut]`, where the
    /// damped `cosh^2 x exp(-c x^2)` has decayed below `1e-8` of its peak.
    /// Interior maxima only; the symmetric ones at `-x` follow by parity.
    pub fn locate_extrema_numeric(&self) -> PotentialExtrema {
        let x_cut = self.cutoff().max(20.0);
        let grid = scan_grid(x_cut);
        let values: Vec<f64> = grid.iter().map(|&x| self.v_eval_saturating(x)).collect();
        let v = |x: f64| self.v_eval_saturating(x);

        let mut best_max: Option<(f64, f64)> = None;
        for i in 1..grid.len() - 1 {
            if values[i] > values[i - 1] && values[i] >= values[i + 1] {
                let x = golden_section(&v, grid[i - 1], grid[i + 1], true);
                let vx = v(x);
                if best_max.is_none_or(|(_, bv)| vx > bv) {
                    best_max = Some((x, vx));
                }
            }
        }

        let (imin, _) = values.iter().enumerate().fold(
            (0, f64::INFINITY),
            |(bi, bv), (i, &val)| {
                if val < bv {
                    (i, val)
                } else {
                    (bi, bv)
                }
            },
        );
        let v_min = if values[imin] == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            let lo = grid[imin.saturating_sub(1)];
            let hi = grid[(imin + 1).min(grid.len() - 1)];
            v(golden_section(&v, lo, hi, false)).min(values[imin])
        };

        PotentialExtrema {
            x_max: best_max.map(|(x, _)| x),
            v_max: best_max.map(|(_, vx)| vx),
            v_origin: self.v_eval(0.0).expect("V(0) is always finite"),
            v_min,
        }
    }

    /// Smallest x past the peak of `2 ln cosh x - c x^2` where it has dropped
    /// by `ln 1e8`.
    fn cutoff(&self) -> f64 {
        let c = self.c;
        let phi = |x: f64| 2.0 * ln_cosh(x) - c * x * x;
        // peak solves tanh x = c x, bracketed by [0, 1/c]
        let x_peak = if c >= 1.0 {
            0.0
        } else {
            let (mut lo, mut hi) = (0.0_f64, 1.0 / c);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if libm::tanh(mid) - c * mid > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let target = phi(x_peak) - libm::log(1e8);
        let mut hi = x_peak.max(1.0);
        while phi(hi) > target {
            hi *= 2.0;
        }
        let mut lo = x_peak;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if phi(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    /// The expansion point at the potential maximum, `u0 = sinh(x_max)`,
    /// falling back to the valley `u0 = 0` when there is no maximum.
    pub fn default_u0(&self) -> f64 {
        self.extrema().x_max.map_or(0.0, libm::sinh)
    }

    /// Jets of `lambda0` and `s0` about `u0`, truncated at `order`.
    ///
    /// ```text
    /// lambda0(u) = 2 [ i b + (a - 1) u / (u^2 + 1) ]
    /// s0(u)      = -2 i u b (a - 1)/(u^2 + 1) - E/(u^2 + 1) + (a - a^2 - 1/4)/(u^2 + 1) + tail(u)
    /// ```
    /// with `tail = 3 b^2 / 4` for the cosh-sech family and the damped form
    /// selected by [`S0Form`] for the modified family.
    pub fn init_coeffs<R: Real>(&self, u0: f64, order: usize) -> Result<CoefficientPair<R>> {
        if order < 1 {
            return Err(Error::InvalidConfig("coefficient jets need order >= 1".into()));
        }
        if !u0.is_finite() {
            return Err(Error::InvalidConfig(format!("expansion point {u0} is not finite")));
        }
        let a = R::from_f64(self.a);
        let b = R::from_f64(self.b);
        let two = R::from_f64(2.0);
        let quarter_b2 = b * b / R::from_f64(4.0);

        let recip = ScalarJet::<R>::one_plus_square_recip(u0, order);
        let u_over = ScalarJet::identity(u0, order).mul(&recip)?;

        let lambda0 = u_over
            .scale(Complex::real(two * (a - R::one())))
            .add_constant(Complex::new(R::zero(), two * b));

        let mut base = u_over
            .scale(Complex::new(R::zero(), -two * b * (a - R::one())))
            .add(&recip.scale(Complex::real(a - a * a - R::from_f64(0.25))))?;

        if self.family == Family::CoshSech || self.c == 0.0 {
            base = base.add_constant(Complex::real(quarter_b2 * R::from_f64(3.0)));
        } else {
            let ash = ScalarJet::<R>::asinh(u0, order);
            let damp = ash.mul(&ash)?.scale(Complex::real(-R::from_f64(self.c))).exp();
            let tail = match self.s0_form {
                S0Form::Additive => damp.add_constant(Complex::real(two)),
                S0Form::Exact => damp
                    .scale(Complex::real(-R::one()))
                    .add_constant(Complex::real(R::from_f64(4.0))),
            };
            base = base.add(&tail.scale(Complex::real(quarter_b2)))?;
        }

        let slope = recip.scale(Complex::real(-R::one()));
        Ok(CoefficientPair {
            lambda0: Jet::lift(&lambda0),
            s0: Jet::affine_in_energy(&base, &slope)?,
            u0,
        })
    }
}

/// Dense uniform grid near the origin plus a geometric tail out to `x_cut`.
fn scan_grid(x_cut: f64) -> Vec<f64> {
    const NEAR: usize = 8000;
    const FAR: usize = 4000;
    let near_end = x_cut.min(20.0);
    let mut grid: Vec<f64> = (0..=NEAR).map(|i| near_end * i as f64 / NEAR as f64).collect();
    if x_cut > near_end {
        let ratio = libm::pow(x_cut / near_end, 1.0 / FAR as f64);
        let mut x = near_end;
        for _ in 0..FAR {
            x *= ratio;
            grid.push(x);
        }
    }
    grid
}

fn golden_section(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, maximize: bool) -> f64 {
    let sign = if maximize { -1.0 } else { 1.0 };
    let g = |x: f64| sign * f(x);
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-13 * (1.0 + libm::fabs(lo)) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
        }
    }
    0.5 * (lo + hi)
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::CoshSech => write!(f, "coshsech(a={},b={})", self.a, self.b),
            Family::Modified => {
                write!(f, "modified(a={},b={},c={}", self.a, self.b, self.c)?;
                if self.s0_form == S0Form::Exact {
                    f.write_str(",s0=exact")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for PotentialSpec {
    type Err = Error;

    /// Parses `family(key=value,...)`, e.g. `coshsech(a=3,b=1)` or
    /// `modified(a=1,b=1,c=0.2)`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let open = text
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected family(key=value,...), got '{text}'")))?;
        if !text.ends_with(')') {
            return Err(Error::Parse(format!("missing closing ')' in '{text}'")));
        }
        let family = match text[..open].trim().to_ascii_lowercase().as_str() {
            "coshsech" | "cosh-sech" => Family::CoshSech,
            "modified" => Family::Modified,
            other => return Err(Error::Parse(format!("unknown potential family '{other}'"))),
        };
        let mut a = None;
        let mut b = None;
        let mut c = None;
        let mut s0_form = None;
        let body = &text[open + 1..text.len() - 1];
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{item}'")))?;
            let key = key.trim();
            let value = value.trim();
            if key == "s0" {
                if s0_form.is_some() {
                    return Err(Error::Parse("duplicate key 's0'".into()));
                }
                s0_form = Some(match value {
                    "additive" => S0Form::Additive,
                    "exact" => S0Form::Exact,
                    other => return Err(Error::Parse(format!("unknown s0 form '{other}'"))),
                });
                continue;
            }
            let slot = match key {
                "a" => &mut a,
                "b" => &mut b,
                "c" => &mut c,
                other => return Err(Error::Parse(format!("unknown key '{other}'"))),
            };
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate key '{key}'")));
            }
            let parsed: f64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("'{value}' is not a number")))?;
            *slot = Some(parsed);
        }
        let a = a.ok_or_else(|| Error::Parse("missing parameter a".to_string()))?;
        let b = b.ok_or_else(|| Error::Parse("missing parameter b".to_string()))?;
        let spec = match family {
            Family::CoshSech => {
                if c.is_some() || s0_form.is_some() {
                    return Err(Error::Parse("coshsech takes only a and b".into()));
                }
                Self::cosh_sech(a, b)
            }
            Family::Modified => {
                let c = c.ok_or_else(|| Error::Parse("missing parameter c".to_string()))?;
                Self::modified(a, b, c).map(|s| s.with_s0_form(s0_form.unwrap_or_default()))
            }
        };
        spec.map_err(|e| match e {
            Error::InvalidConfig(msg) => Error::Parse(msg),
            other => other,
        })
    }
}

impl PotentialSpec {
    /// Canonical textual form, e.g. `coshsech(a=3,b=1)`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}
