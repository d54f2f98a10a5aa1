use std::ops::{Add, Div, Mul, Neg, Sub};

use super::taylor::{factorial, Taylor};
use crate::error::{Error, Result};

/// Highest truncation order supported by [`Jet1`].
pub const MAX_ORDER1: usize = 5;

/// Truncated Taylor expansion of a function of one variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet1 {
    order: usize,
    center: f64,
    coeffs: [f64; MAX_ORDER1 + 1],
}

impl Jet1 {
    /// The identity jet `s ↦ s` expanded at `s`.
    pub fn variable(s: f64, order: usize) -> Result<Jet1> {
        let mut j = Jet1::constant(s, s, order)?;
        if order >= 1 {
            j.coeffs[1] = 1.0;
        }
        Ok(j)
    }

    pub fn constant(value: f64, center: f64, order: usize) -> Result<Jet1> {
        if order > MAX_ORDER1 {
            return Err(Error::Order {
                requested: order,
                max: MAX_ORDER1,
            });
        }
        let mut coeffs = [0.0; MAX_ORDER1 + 1];
        coeffs[0] = value;
        Ok(Jet1 {
            order,
            center,
            coeffs,
        })
    }

    /// Builds a jet from derivative values `[f, f', f'', ...]`.
    pub fn from_derivs(center: f64, derivs: &[f64]) -> Result<Jet1> {
        if derivs.is_empty() {
            return Err(Error::Order {
                requested: 0,
                max: 0,
            });
        }
        let mut j = Jet1::constant(derivs[0], center, derivs.len() - 1)?;
        for (k, d) in derivs.iter().enumerate() {
            j.coeffs[k] = d / factorial(k);
        }
        Ok(j)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// `k`-th derivative at the expansion point.
    pub fn deriv(&self, k: usize) -> Result<f64> {
        if k > self.order {
            return Err(Error::MultiIndex {
                i: k,
                j: 0,
                order: self.order,
            });
        }
        Ok(self.coeffs[k] * factorial(k))
    }

    /// All derivatives `[f, f', ..., f^(order)]`.
    pub fn derivs(&self) -> Vec<f64> {
        (0..=self.order)
            .map(|k| self.coeffs[k] * factorial(k))
            .collect()
    }
}

impl Taylor for Jet1 {
    fn value(&self) -> f64 {
        self.coeffs[0]
    }

    fn order(&self) -> usize {
        self.order
    }

    fn constant_like(&self, c: f64) -> Self {
        let mut coeffs = [0.0; MAX_ORDER1 + 1];
        coeffs[0] = c;
        Jet1 {
            order: self.order,
            center: self.center,
            coeffs,
        }
    }

    fn with_value(&self, v: f64) -> Self {
        let mut out = *self;
        out.coeffs[0] = v;
        out
    }
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(self, rhs: Jet1) -> Jet1 {
        let mut out = self.constant_like(0.0);
        out.order = self.order.min(rhs.order);
        for k in 0..=out.order {
            out.coeffs[k] = self.coeffs[k] + rhs.coeffs[k];
        }
        out
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: Jet1) -> Jet1 {
        self + (-rhs)
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: Jet1) -> Jet1 {
        let mut out = self.constant_like(0.0);
        out.order = self.order.min(rhs.order);
        for a in 0..=out.order {
            for b in 0..=out.order - a {
                out.coeffs[a + b] += self.coeffs[a] * rhs.coeffs[b];
            }
        }
        out
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        self * -1.0
    }
}

impl Add<f64> for Jet1 {
    type Output = Jet1;
    fn add(mut self, rhs: f64) -> Jet1 {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet1 {
    type Output = Jet1;
    fn sub(mut self, rhs: f64) -> Jet1 {
        self.coeffs[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet1 {
    type Output = Jet1;
    fn mul(mut self, rhs: f64) -> Jet1 {
        for c in self.coeffs.iter_mut() {
            *c *= rhs;
        }
        self
    }
}

impl Div<f64> for Jet1 {
    type Output = Jet1;
    fn div(self, rhs: f64) -> Jet1 {
        self * (1.0 / rhs)
    }
}

impl Mul<Jet1> for f64 {
    type Output = Jet1;
    fn mul(self, rhs: Jet1) -> Jet1 {
        rhs * self
    }
}

impl Add<Jet1> for f64 {
    type Output = Jet1;
    fn add(self, rhs: Jet1) -> Jet1 {
        rhs + self
    }
}

impl Sub<Jet1> for f64 {
    type Output = Jet1;
    fn sub(self, rhs: Jet1) -> Jet1 {
        -rhs + self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_derivatives() {
        let s = Jet1::variable(2.0, 3).unwrap();
        let r = s.recip().unwrap();
        assert_eq!(r.derivs(), vec![0.5, -0.25, 0.25, -0.375]);
    }

    #[test]
    fn cbrt_derivatives_at_one() {
        let s = Jet1::variable(1.0, 2).unwrap();
        let c = s.signed_cbrt().unwrap().derivs();
        assert!((c[0] - 1.0).abs() < 1e-15);
        assert!((c[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((c[2] + 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn from_derivs_round_trips() {
        let j = Jet1::from_derivs(0.3, &[1.0, 2.0, 6.0, 24.0]).unwrap();
        assert_eq!(j.derivs(), vec![1.0, 2.0, 6.0, 24.0]);
        assert!(Jet1::from_derivs(0.0, &[0.0; 7]).is_err());
    }
}
