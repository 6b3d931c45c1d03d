use alloc::vec;
use alloc::vec::Vec;

use super::epoly::{mul_acc, EnergyPoly};
use super::scalar_jet::ScalarJet;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::real::Real;

/// Truncated Taylor expansion in `u` about `u0` whose coefficients are
/// polynomials in the (not yet quantized) energy `E`.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet<R = f64> {
    u0: f64,
    coeffs: Vec<EnergyPoly<R>>,
}

impl<R: Real> Jet<R> {
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(u0: f64, coeffs: Vec<EnergyPoly<R>>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Self { u0, coeffs }
    }

    pub fn constant(u0: f64, order: usize, p: EnergyPoly<R>) -> Self {
        let mut coeffs = vec![EnergyPoly::zero(); order + 1];
        coeffs[0] = p;
        Self { u0, coeffs }
    }

    pub fn zero(u0: f64, order: usize) -> Self {
        Self::constant(u0, order, EnergyPoly::zero())
    }

    pub fn one(u0: f64, order: usize) -> Self {
        Self::constant(u0, order, EnergyPoly::one())
    }

    /// Embeds an `E`-free jet.
    pub fn lift(f: &ScalarJet<R>) -> Self {
        Self {
            u0: f.u0(),
            coeffs: f.coeffs().iter().map(|&c| EnergyPoly::constant(c)).collect(),
        }
    }

    /// `base + E * slope`, both `E`-free.
    pub fn affine_in_energy(base: &ScalarJet<R>, slope: &ScalarJet<R>) -> Result<Self> {
        if base.u0().to_bits() != slope.u0().to_bits() {
            return Err(Error::MismatchedExpansion {
                left: base.u0(),
                right: slope.u0(),
            });
        }
        if base.order() != slope.order() {
            return Err(Error::MismatchedOrder {
                left: base.order(),
                right: slope.order(),
            });
        }
        let coeffs = base
            .coeffs()
            .iter()
            .zip(slope.coeffs())
            .map(|(&c0, &c1)| EnergyPoly::new(vec![c0, c1]))
            .collect();
        Ok(Self { u0: base.u0(), coeffs })
    }

    pub fn u0(&self) -> f64 {
        self.u0
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[EnergyPoly<R>] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &EnergyPoly<R> {
        &self.coeffs[m]
    }

    /// Largest `E`-degree over all Taylor coefficients; `None` if the jet is zero.
    pub fn max_energy_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(EnergyPoly::degree).max()
    }

    /// Largest coefficient modulus over the whole jet.
    pub fn max_abs(&self) -> R {
        self.coeffs.iter().fold(R::zero(), |acc, p| acc.max(p.max_abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(EnergyPoly::is_finite)
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
        Ok(Self {
            u0: self.u0,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self {
            u0: self.u0,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, k: Complex<R>) -> Self {
        Self {
            u0: self.u0,
            coeffs: self.coeffs.iter().map(|p| p.scale(k)).collect(),
        }
    }

    /// Exact rescaling by `2^e`.
    pub fn ldexp(&self, e: i32) -> Self {
        Self {
            u0: self.u0,
            coeffs: self.coeffs.iter().map(|p| p.ldexp(e)).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|m| {
                let len = (0..=m)
                    .map(|j| {
                        let (a, b) = (&self.coeffs[j], &other.coeffs[m - j]);
                        if a.is_zero() || b.is_zero() {
                            0
                        } else {
                            a.coeffs().len() + b.coeffs().len() - 1
                        }
                    })
                    .max()
                    .unwrap_or(0);
                let mut acc = vec![Complex::zero(); len];
                for j in 0..=m {
                    mul_acc(&mut acc, self.coeffs[j].coeffs(), other.coeffs[m - j].coeffs());
                }
                EnergyPoly::new(acc)
            })
            .collect();
        Ok(Self { u0: self.u0, coeffs })
    }

    /// `h` with `g * h = f` up to truncation. The leading coefficient of the
    /// divisor must be a nonzero constant in `E`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.compatible(divisor)?;
        let lead = &divisor.coeffs[0];
        if lead.degree() != Some(0) {
            return Err(Error::SingularDivision);
        }
        let inv = lead.coeff(0).inv();
        let n = self.coeffs.len();
        let mut h: Vec<EnergyPoly<R>> = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = self.coeffs[m].clone();
            for j in 1..=m {
                acc = acc.sub(&divisor.coeffs[j].mul(&h[m - j]));
            }
            h.push(acc.scale(inv));
        }
        Ok(Self { u0: self.u0, coeffs: h })
    }

    /// Term-by-term derivative; the result has order one less.
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
                .map(|(m, p)| p.scale_real(R::from_usize(m)))
                .collect(),
        })
    }

    /// Drops Taylor coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            u0: self.u0,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Evaluates the jet as a function of the offset `t = u - u0` at a fixed energy.
    pub fn eval(&self, t: Complex<R>, energy: Complex<R>) -> Complex<R> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, p| acc * t + p.eval(energy))
    }

    pub fn to_f64(&self) -> Jet<f64> {
        Jet {
            u0: self.u0,
            coeffs: self.coeffs.iter().map(EnergyPoly::to_f64).collect(),
        }
    }
}
