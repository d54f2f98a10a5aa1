use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::taylor::{factorial, Taylor};
use crate::error::{Error, Result};

/// Highest truncation order supported by [`Jet2`].
pub const MAX_ORDER: usize = 4;

const LEN: usize = (MAX_ORDER + 1) * (MAX_ORDER + 2) / 2;

#[inline]
const fn index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Truncated bivariate Taylor expansion of a scalar field.
///
/// Coefficient `(i, j)` multiplies `dx^i dy^j`, so the partial derivative
/// `∂x^i ∂y^j f` equals `coeff(i, j) · i! · j!`. All multi-indices with
/// `i + j <= order` are stored; higher ones are identically zero.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet2 {
    order: usize,
    center: (f64, f64),
    coeffs: [f64; LEN],
}

impl Jet2 {
    /// Coordinate jets of `x` and `y` expanded at `(x, y)`.
    pub fn seed(x: f64, y: f64, order: usize) -> Result<(Jet2, Jet2)> {
        check_order(order)?;
        let mut jx = Jet2::constant(x, (x, y), order)?;
        let mut jy = Jet2::constant(y, (x, y), order)?;
        if order >= 1 {
            jx.coeffs[index(1, 0)] = 1.0;
            jy.coeffs[index(0, 1)] = 1.0;
        }
        Ok((jx, jy))
    }

    pub fn constant(value: f64, center: (f64, f64), order: usize) -> Result<Jet2> {
        check_order(order)?;
        let mut coeffs = [0.0; LEN];
        coeffs[0] = value;
        Ok(Jet2 {
            order,
            center,
            coeffs,
        })
    }

    /// Builds a jet from Taylor coefficients listed as `((i, j), c)`;
    /// unlisted multi-indices are zero.
    pub fn from_coeffs(
        center: (f64, f64),
        order: usize,
        entries: &[((usize, usize), f64)],
    ) -> Result<Jet2> {
        let mut jet = Jet2::constant(0.0, center, order)?;
        for &((i, j), c) in entries {
            if i + j > order {
                return Err(Error::MultiIndex { i, j, order });
            }
            jet.coeffs[index(i, j)] = c;
        }
        Ok(jet)
    }

    pub fn center(&self) -> (f64, f64) {
        self.center
    }

    /// Taylor coefficient of `dx^i dy^j` (zero beyond the truncation order).
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.order {
            0.0
        } else {
            self.coeffs[index(i, j)]
        }
    }

    /// Partial derivative `∂x^i ∂y^j` at the expansion point.
    pub fn deriv(&self, i: usize, j: usize) -> Result<f64> {
        if i + j > self.order {
            return Err(Error::MultiIndex {
                i,
                j,
                order: self.order,
            });
        }
        Ok(self.coeffs[index(i, j)] * factorial(i) * factorial(j))
    }

    pub fn gradient(&self) -> Result<(f64, f64)> {
        Ok((self.deriv(1, 0)?, self.deriv(0, 1)?))
    }

    /// Lowers the truncation order.
    pub fn truncate(&self, order: usize) -> Jet2 {
        let order = order.min(self.order);
        let mut out = *self;
        out.order = order;
        for d in order + 1..=MAX_ORDER {
            for j in 0..=d {
                out.coeffs[index(d - j, j)] = 0.0;
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    fn zip(&self, rhs: &Jet2, f: impl Fn(f64, f64) -> f64) -> Jet2 {
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for k in 0..len(order) {
            out.coeffs[k] = f(self.coeffs[k], rhs.coeffs[k]);
        }
        out
    }
}

#[inline]
const fn len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::Order {
            requested: order,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

impl Taylor for Jet2 {
    fn value(&self) -> f64 {
        self.coeffs[0]
    }

    fn order(&self) -> usize {
        self.order
    }

    fn constant_like(&self, c: f64) -> Self {
        let mut coeffs = [0.0; LEN];
        coeffs[0] = c;
        Jet2 {
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

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let order = self.order.min(rhs.order);
        let mut out = self.constant_like(0.0);
        out.order = order;
        for d1 in 0..=order {
            for j1 in 0..=d1 {
                let a = self.coeffs[index(d1 - j1, j1)];
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=order - d1 {
                    for j2 in 0..=d2 {
                        out.coeffs[index(d1 - j1 + d2 - j2, j1 + j2)] +=
                            a * rhs.coeffs[index(d2 - j2, j2)];
                    }
                }
            }
        }
        out
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self * -1.0
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(mut self, rhs: f64) -> Jet2 {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(mut self, rhs: f64) -> Jet2 {
        self.coeffs[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(mut self, rhs: f64) -> Jet2 {
        for c in self.coeffs.iter_mut() {
            *c *= rhs;
        }
        self
    }
}

impl Div<f64> for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: f64) -> Jet2 {
        self * (1.0 / rhs)
    }
}

impl Add<Jet2> for f64 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        rhs + self
    }
}

impl Sub<Jet2> for f64 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        -rhs + self
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        rhs * self
    }
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for d in 0..=self.order {
            for j in 0..=d {
                m.entry(&(d - j, j), &self.coeffs[index(d - j, j)]);
            }
        }
        m.finish()
    }
}
