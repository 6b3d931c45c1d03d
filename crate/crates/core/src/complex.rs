use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::real::Real;

/// Complex number over any [`Real`] field.
#[derive(Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Complex<R = f64> {
    pub re: R,
    pub im: R,
}

/// Double precision complex scalar used on every public surface.
pub type ComplexScalar = Complex<f64>;

impl<R: Real> Complex<R> {
    #[inline]
    pub fn new(re: R, im: R) -> Self {
        Self { re, im }
    }

    #[inline]
    pub fn real(re: R) -> Self {
        Self { re, im: R::zero() }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::real(R::zero())
    }

    #[inline]
    pub fn one() -> Self {
        Self::real(R::one())
    }

    #[inline]
    pub fn i() -> Self {
        Self::new(R::zero(), R::one())
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self::new(R::from_f64(re), R::from_f64(im))
    }

    pub fn to_f64(self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(self) -> bool {
        self.re == R::zero() && self.im == R::zero()
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    #[inline]
    pub fn scale(self, k: R) -> Self {
        Self::new(self.re * k, self.im * k)
    }

    #[inline]
    pub fn norm_sqr(self) -> R {
        self.re * self.re + self.im * self.im
    }

    /// Modulus, computed without intermediate overflow.
    pub fn abs(self) -> R {
        let a = self.re.abs();
        let b = self.im.abs();
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big == R::zero() {
            return R::zero();
        }
        let t = small / big;
        big * (R::one() + t * t).sqrt()
    }

    /// Cheap magnitude bound, `|re| + |im|`.
    #[inline]
    pub fn l1(self) -> R {
        self.re.abs() + self.im.abs()
    }

    pub fn inv(self) -> Self {
        Self::one() / self
    }

    /// Multiply by `2^e` exactly.
    pub fn ldexp(self, e: i32) -> Self {
        Self::new(self.re.ldexp(e), self.im.ldexp(e))
    }
}

impl<R: Real> Add for Complex<R> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl<R: Real> Sub for Complex<R> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl<R: Real> Neg for Complex<R> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<R: Real> Mul for Complex<R> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl<R: Real> Div for Complex<R> {
    type Output = Self;
    /// Smith's algorithm.
    fn div(self, o: Self) -> Self {
        if o.re.abs() >= o.im.abs() {
            let r = o.im / o.re;
            let d = o.re + o.im * r;
            Self::new((self.re + self.im * r) / d, (self.im - self.re * r) / d)
        } else {
            let r = o.re / o.im;
            let d = o.re * r + o.im;
            Self::new((self.re * r + self.im) / d, (self.im * r - self.re) / d)
        }
    }
}

impl<R: Real> AddAssign for Complex<R> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<R: Real> SubAssign for Complex<R> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<R: Real> MulAssign for Complex<R> {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<R: fmt::Debug> fmt::Debug for Complex<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for Complex<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}
