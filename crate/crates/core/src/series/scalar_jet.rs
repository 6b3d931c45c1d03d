use alloc::vec;
use alloc::vec::Vec;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::real::Real;

/// Truncated Taylor expansion `sum_m coeffs[m] (u - u0)^m` with `E`-free
/// complex coefficients.
///
/// All transcendental compositions live here; energy-dependent jets are
/// assembled from these by lifting (see [`Jet`](super::Jet)).
#[derive(Clone, PartialEq, Debug)]
pub struct ScalarJet<R = f64> {
    u0: f64,
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> ScalarJet<R> {
    /// # Panics
    /// If `coeffs` is empty or holds a non-finite value.
    pub fn new(u0: f64, coeffs: Vec<Complex<R>>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        assert!(coeffs.iter().all(|c| c.is_finite()), "non-finite jet coefficient");
        Self { u0, coeffs }
    }

    pub fn constant(u0: f64, order: usize, c: Complex<R>) -> Self {
        let mut coeffs = vec![Complex::zero(); order + 1];
        coeffs[0] = c;
        Self { u0, coeffs }
    }

    pub fn zero(u0: f64, order: usize) -> Self {
        Self::constant(u0, order, Complex::zero())
    }

    /// Jet of the independent variable `u` itself.
    pub fn identity(u0: f64, order: usize) -> Self {
        let mut j = Self::constant(u0, order, Complex::real(R::from_f64(u0)));
        if order >= 1 {
            j.coeffs[1] = Complex::one();
        }
        j
    }

    pub fn u0(&self) -> f64 {
        self.u0
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.u0.to_bits() != other.u0.to_bits() {
            return Err(Error::MismatchedExpansion {
                left: self.u0,
                right: other.u0,
            });
        }
        if self.order() != other.order() {
            return Err(Error::MismatchedOrder {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<R>, Complex<R>) -> Complex<R>) -> Self {
        Self {
            u0: self.u0,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, k: Complex<R>) -> Self {
        Self {
            u0: self.u0,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    pub fn add_constant(&self, k: Complex<R>) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += k;
        out
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|m| (0..=m).fold(Complex::zero(), |acc, j| acc + self.coeffs[j] * other.coeffs[m - j]))
            .collect();
        Ok(Self { u0: self.u0, coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let g0 = other.coeffs[0];
        if g0.is_zero() {
            return Err(Error::SingularDivision);
        }
        let n = self.coeffs.len();
        let mut h: Vec<Complex<R>> = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = self.coeffs[m];
            for j in 1..=m {
                acc -= other.coeffs[j] * h[m - j];
            }
            h.push(acc / g0);
        }
        Ok(Self { u0: self.u0, coeffs: h })
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderExhausted);
        }
        Ok(Self {
            u0: self.u0,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, &c)| c.scale(R::from_usize(m)))
                .collect(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            u0: self.u0,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// `exp(f)` by the recurrence `g_m = (1/m) sum_{j=1..m} j f_j g_{m-j}`.
    pub fn exp(&self) -> Self {
        let f = &self.coeffs;
        let n = f.len();
        let mut g: Vec<Complex<R>> = Vec::with_capacity(n);
        let ea = f[0].re.exp();
        let (s, c) = libm::sincos(f[0].im.to_f64());
        // exp(i*im) only needs double accuracy for the real potentials used here
        g.push(Complex::new(ea * R::from_f64(c), ea * R::from_f64(s)));
        for m in 1..n {
            let mut acc = Complex::zero();
            for j in 1..=m {
                acc += f[j].scale(R::from_usize(j)) * g[m - j];
            }
            g.push(acc.scale(R::one() / R::from_usize(m)));
        }
        Self { u0: self.u0, coeffs: g }
    }

    /// Jet of `(1 + u^2)^alpha` at `u0`.
    pub fn one_plus_square_pow(u0: f64, order: usize, alpha: R) -> Self {
        let uu = R::from_f64(u0);
        let g = [R::one() + uu * uu, uu + uu, R::one()];
        let gj = |j: usize| if j < 3 { g[j] } else { R::zero() };
        let mut h: Vec<R> = Vec::with_capacity(order + 1);
        h.push((alpha * g[0].ln()).exp());
        // h = g^alpha  =>  m g0 h_m = sum_{j=1..m} (alpha j - (m - j)) g_j h_{m-j}
        for m in 1..=order {
            let mut acc = R::zero();
            for j in 1..=m.min(2) {
                let w = alpha * R::from_usize(j) - R::from_usize(m - j);
                acc += w * gj(j) * h[m - j];
            }
            h.push(acc / (R::from_usize(m) * g[0]));
        }
        Self {
            u0,
            coeffs: h.into_iter().map(Complex::real).collect(),
        }
    }

    /// Jet of `1 / (1 + u^2)` at `u0`.
    pub fn one_plus_square_recip(u0: f64, order: usize) -> Self {
        let uu = R::from_f64(u0);
        let g = [R::one() + uu * uu, uu + uu, R::one()];
        let mut h: Vec<R> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut acc = if m == 0 { R::one() } else { R::zero() };
            for j in 1..=m.min(2) {
                acc -= g[j] * h[m - j];
            }
            h.push(acc / g[0]);
        }
        Self {
            u0,
            coeffs: h.into_iter().map(Complex::real).collect(),
        }
    }

    /// Jet of `asinh(u)` at `u0`: term-wise integral of `(1 + u^2)^(-1/2)`
    /// with constant term `asinh(u0)`.
    pub fn asinh(u0: f64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(Complex::real(R::from_f64(u0).asinh()));
        if order >= 1 {
            let r = Self::one_plus_square_pow(u0, order - 1, R::from_f64(-0.5));
            for (m, c) in r.coeffs.iter().enumerate() {
                coeffs.push(c.scale(R::one() / R::from_usize(m + 1)));
            }
        }
        Self { u0, coeffs }
    }
}
