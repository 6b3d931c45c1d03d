use alloc::vec::Vec;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::potential::CoefficientPair;
use crate::real::Real;
use crate::series::{EnergyPoly, Jet};

use super::roots::poly_roots;

/// The pair `(lambda_k, s_k)` after `k` iterations.
#[derive(Clone, Debug, PartialEq)]
pub struct AimIterate<R = f64> {
    pub k: usize,
    pub lambda: Jet<R>,
    pub s: Jet<R>,
}

impl<R: Real> AimIterate<R> {
    /// `(lambda_0, s_0)`.
    pub fn initial(base: &CoefficientPair<R>) -> Self {
        Self {
            k: 0,
            lambda: base.lambda0.clone(),
            s: base.s0.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.lambda.order()
    }

    /// Both jets multiplied by the same power of two so the largest
    /// coefficient lands in `[0.5, 1)`.
    ///
    /// The recurrence is linear in `(lambda, s)`, so this only rescales every
    /// later discriminant and leaves its roots untouched.
    pub fn rescaled(&self) -> Self {
        let m = self.lambda.max_abs().max(self.s.max_abs());
        if m == R::zero() {
            return self.clone();
        }
        let e = -m.exponent();
        Self {
            k: self.k,
            lambda: self.lambda.ldexp(e),
            s: self.s.ldexp(e),
        }
    }
}

/// One AIM iteration:
/// `lambda_k = lambda_{k-1}' + s_{k-1} + lambda_0 lambda_{k-1}` and
/// `s_k = s_{k-1}' + s_0 lambda_{k-1}`, truncated one order lower than `prev`.
pub fn aim_step<R: Real>(prev: &AimIterate<R>, base: &CoefficientPair<R>) -> Result<AimIterate<R>> {
    let n = prev.order();
    if n == 0 {
        return Err(Error::OrderExhausted);
    }
    let lam = prev.lambda.truncate(n - 1);
    let lambda0 = base.lambda0.truncate(n - 1);
    let s0 = base.s0.truncate(n - 1);
    let lambda = prev
        .lambda
        .derivative()?
        .add(&prev.s.truncate(n - 1))?
        .add(&lambda0.mul(&lam)?)?;
    let s = prev.s.derivative()?.add(&s0.mul(&lam)?)?;
    Ok(AimIterate {
        k: prev.k + 1,
        lambda,
        s,
    })
}

/// `delta_k = s_{k-1} lambda_k - s_k lambda_{k-1}` at the expansion point, as
/// a polynomial in the energy scaled to unit largest coefficient.
///
/// Leading coefficients that are indistinguishable from rounding noise of the
/// two products are dropped; otherwise they would show up as spurious roots
/// of enormous modulus.
pub fn discriminant<R: Real>(curr: &AimIterate<R>, prev: &AimIterate<R>) -> Result<EnergyPoly<R>> {
    if curr.k != prev.k + 1 {
        return Err(Error::InvalidConfig(alloc::format!(
            "discriminant needs consecutive iterates, got k = {} and {}",
            prev.k,
            curr.k
        )));
    }
    let (a, b) = (prev.s.coeff(0), curr.lambda.coeff(0));
    let (c, d) = (curr.s.coeff(0), prev.lambda.coeff(0));
    let raw = a.mul(b).sub(&c.mul(d));
    let mut bound = abs_product_bound(a, b);
    let other = abs_product_bound(c, d);
    if other.len() > bound.len() {
        bound.resize(other.len(), 0.0);
    }
    for (x, y) in bound.iter_mut().zip(other) {
        *x += y;
    }
    let noise = 64.0 * R::EPSILON;
    let mut coeffs = raw.into_coeffs();
    while let Some(last) = coeffs.last() {
        let j = coeffs.len() - 1;
        let scale = bound.get(j).copied().unwrap_or(0.0);
        if last.abs().to_f64() <= noise * scale {
            coeffs.pop();
        } else {
            break;
        }
    }
    let p = EnergyPoly::new(coeffs);
    if p.is_zero() {
        return Err(Error::DegenerateDiscriminant { k: curr.k });
    }
    Ok(p.normalized())
}

/// Coefficient-wise `sum |a_i| |b_(j-i)|`.
fn abs_product_bound<R: Real>(a: &EnergyPoly<R>, b: &EnergyPoly<R>) -> Vec<f64> {
    if a.is_zero() || b.is_zero() {
        return Vec::new();
    }
    let mut out = alloc::vec![0.0; a.coeffs().len() + b.coeffs().len() - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        let x = x.abs().to_f64();
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] += x * y.abs().to_f64();
        }
    }
    out
}

/// What one iteration produced.
#[derive(Clone, Debug)]
pub struct IterationRecord<R = f64> {
    pub k: usize,
    pub discriminant: EnergyPoly<R>,
    pub roots: Vec<Complex<R>>,
}

/// Lazily runs the recurrence, yielding the discriminant and its roots for
/// `k = 1, 2, ...` until the jet order runs out or `k_max` is reached.
pub struct AimIterations<'a, R = f64> {
    base: &'a CoefficientPair<R>,
    prev: AimIterate<R>,
    k_max: usize,
    failed: bool,
}

impl<'a, R: Real> AimIterations<'a, R> {
    pub fn new(base: &'a CoefficientPair<R>, k_max: usize) -> Self {
        Self {
            base,
            prev: AimIterate::initial(base),
            k_max,
            failed: false,
        }
    }
}

impl<R: Real> Iterator for AimIterations<'_, R> {
    type Item = Result<IterationRecord<R>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.prev.k >= self.k_max {
            return None;
        }
        let result = (|| {
            let curr = aim_step(&self.prev, self.base)?;
            let delta = discriminant(&curr, &self.prev)?;
            let roots = match poly_roots(&delta) {
                Ok(r) => r,
                Err(Error::NoRoots) => Vec::new(),
                Err(e) => return Err(e),
            };
            self.prev = curr.rescaled();
            Ok(IterationRecord {
                k: curr.k,
                discriminant: delta,
                roots,
            })
        })();
        if result.is_err() {
            self.failed = true;
        }
        Some(result)
    }
}
