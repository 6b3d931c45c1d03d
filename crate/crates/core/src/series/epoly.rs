use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::complex::Complex;
use crate::real::Real;

/// Dense polynomial in the energy symbol `E` with complex coefficients.
///
/// `coeffs[j]` holds the coefficient of `E^j`. The representation is kept
/// canonical: the last stored coefficient is nonzero, and the zero polynomial
/// has no coefficients at all.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct EnergyPoly<R = f64> {
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> EnergyPoly<R> {
    pub fn new(mut coeffs: Vec<Complex<R>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<R>) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex::one())
    }

    /// The polynomial `E`.
    pub fn energy() -> Self {
        Self::new(vec![Complex::zero(), Complex::one()])
    }

    pub fn monomial(c: Complex<R>, degree: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::from_f64(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<R>> {
        self.coeffs
    }

    /// Coefficient of `E^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Complex<R> {
        self.coeffs.get(j).copied().unwrap_or_else(Complex::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o += *s;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n).map(|j| self.coeff(j) - other.coeff(j)).collect();
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    /// Full convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        mul_acc(&mut out, &self.coeffs, &other.coeffs);
        Self::new(out)
    }

    pub fn scale(&self, k: Complex<R>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn scale_real(&self, k: R) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c.scale(k)).collect())
    }

    /// Exact scaling by `2^e`.
    pub fn ldexp(&self, e: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.ldexp(e)).collect(),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, e: Complex<R>) -> Complex<R> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * e + c)
    }

    /// Sum of `|c_j| |e|^j`: the natural scale of `eval(e)`.
    pub fn eval_scale(&self, e: Complex<R>) -> R {
        let r = e.abs();
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc * r + c.abs())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c.scale(R::from_usize(j)))
                .collect(),
        )
    }

    /// Largest coefficient modulus, zero for the zero polynomial.
    pub fn max_abs(&self) -> R {
        self.coeffs.iter().fold(R::zero(), |acc, c| acc.max(c.abs()))
    }

    /// Rescaled copy whose largest coefficient modulus is one.
    pub fn normalized(&self) -> Self {
        let m = self.max_abs();
        if m == R::zero() {
            return self.clone();
        }
        let inv = R::one() / m;
        Self::new(self.coeffs.iter().map(|&c| c.scale(inv)).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn to_f64(&self) -> EnergyPoly<f64> {
        EnergyPoly::new(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }

    pub fn from_f64(p: &EnergyPoly<f64>) -> Self {
        Self::new(p.coeffs.iter().map(|c| Complex::from_f64(c.re, c.im)).collect())
    }
}

/// `out += a * b` (convolution), with `out` long enough.
pub(crate) fn mul_acc<R: Real>(out: &mut [Complex<R>], a: &[Complex<R>], b: &[Complex<R>]) {
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
}

impl<R: Real> Add for &EnergyPoly<R> {
    type Output = EnergyPoly<R>;
    fn add(self, o: Self) -> EnergyPoly<R> {
        EnergyPoly::add(self, o)
    }
}

impl<R: Real> Sub for &EnergyPoly<R> {
    type Output = EnergyPoly<R>;
    fn sub(self, o: Self) -> EnergyPoly<R> {
        EnergyPoly::sub(self, o)
    }
}

impl<R: Real> Mul for &EnergyPoly<R> {
    type Output = EnergyPoly<R>;
    fn mul(self, o: Self) -> EnergyPoly<R> {
        EnergyPoly::mul(self, o)
    }
}

impl<R: Real> Neg for &EnergyPoly<R> {
    type Output = EnergyPoly<R>;
    fn neg(self) -> EnergyPoly<R> {
        EnergyPoly::neg(self)
    }
}
