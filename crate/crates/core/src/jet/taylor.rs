use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Truncated Taylor arithmetic shared by the one- and two-variable jets.
///
/// Implementors supply the ring operations and the constant term; every
/// elementary function is then obtained by composing the jet with the
/// derivative table of a univariate function at the jet's value.
pub trait Taylor:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    /// Constant term (the function value at the expansion point).
    fn value(&self) -> f64;

    /// Truncation order.
    fn order(&self) -> usize;

    /// A constant jet with the same order and expansion point as `self`.
    fn constant_like(&self, c: f64) -> Self;

    /// `self` with its constant term replaced by `v`.
    fn with_value(&self, v: f64) -> Self;

    /// Composes a univariate function `g` with this jet, given
    /// `derivs[k] = g^(k)(self.value())` for `k = 0..=order`.
    fn compose(&self, derivs: &[f64]) -> Result<Self> {
        let n = self.order();
        if derivs.len() <= n {
            return Err(Error::Order {
                requested: n,
                max: derivs.len().saturating_sub(1),
            });
        }
        let delta = self.with_value(0.0);
        let mut fact = factorial(n);
        let mut acc = self.constant_like(derivs[n] / fact);
        for k in (0..n).rev() {
            fact /= (k + 1) as f64;
            acc = acc * delta + derivs[k] / fact;
        }
        Ok(acc)
    }

    fn recip(&self) -> Result<Self> {
        let a = self.value();
        if a == 0.0 || !a.is_finite() {
            return Err(Error::Domain { op: "div", value: a });
        }
        let mut d = Vec::with_capacity(self.order() + 1);
        let inv = 1.0 / a;
        let mut term = inv;
        for k in 0..=self.order() {
            d.push(term);
            term *= -((k + 1) as f64) * inv;
        }
        self.compose(&d)
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.recip()?)
    }

    /// Integer power; exact for any base when `n >= 0`.
    fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut out = self.constant_like(1.0);
        let mut base = *self;
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                out = out * base;
            }
            base = base * base;
            e >>= 1;
        }
        Ok(out)
    }

    /// Real power. Non-integer exponents need a positive base; a zero base
    /// is accepted only when every requested derivative stays finite.
    fn pow_real(&self, r: f64) -> Result<Self> {
        if r.fract() == 0.0 && r.abs() <= 64.0 {
            return self.powi(r as i32);
        }
        let a = self.value();
        let n = self.order();
        if a > 0.0 {
            let mut d = Vec::with_capacity(n + 1);
            let mut c = 1.0;
            for k in 0..=n {
                d.push(c * a.powf(r - k as f64));
                c *= r - k as f64;
            }
            self.compose(&d)
        } else if a == 0.0 && r >= n as f64 {
            let mut d = Vec::with_capacity(n + 1);
            let mut c = 1.0;
            for k in 0..=n {
                d.push(c * 0f64.powf(r - k as f64));
                c *= r - k as f64;
            }
            self.compose(&d)
        } else {
            Err(Error::Domain { op: "pow_real", value: a })
        }
    }

    fn sqrt(&self) -> Result<Self> {
        let a = self.value();
        if a > 0.0 || (a == 0.0 && self.order() == 0) {
            self.pow_real(0.5)
        } else {
            Err(Error::Domain { op: "sqrt", value: a })
        }
    }

    /// Real cube root on the signed branch, `sign(v)|v|^(1/3)`.
    fn signed_cbrt(&self) -> Result<Self> {
        let a = self.value();
        if !a.is_finite() {
            return Err(Error::Domain { op: "signed_cbrt", value: a });
        }
        if a == 0.0 {
            return if self.order() == 0 {
                Ok(self.constant_like(0.0))
            } else {
                Err(Error::Domain { op: "signed_cbrt", value: a })
            };
        }
        let c = a.cbrt();
        let mut d = Vec::with_capacity(self.order() + 1);
        let mut coef = 1.0;
        let mut pw = 1.0;
        for k in 0..=self.order() {
            d.push(coef * c / pw);
            coef *= 1.0 / 3.0 - k as f64;
            pw *= a;
        }
        self.compose(&d)
    }

    /// `ln|v|`.
    fn ln_abs(&self) -> Result<Self> {
        let a = self.value();
        if a == 0.0 || !a.is_finite() {
            return Err(Error::Domain { op: "ln", value: a });
        }
        let mut d = vec![a.abs().ln()];
        let mut term = 1.0 / a;
        for k in 1..=self.order() {
            d.push(term);
            term *= -(k as f64) / a;
        }
        self.compose(&d)
    }

    fn exp(&self) -> Result<Self> {
        let e = self.value().exp();
        self.compose(&vec![e; self.order() + 1])
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
