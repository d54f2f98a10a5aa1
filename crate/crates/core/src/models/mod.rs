//! Integrable models: a potential `U` together with the coefficient
//! functions of the higher integral.
//!
//! Cubic models carry `(J, K)` for `I₂ = ẋ³ + J ẋ + K ẏ`; quartic and wave
//! models carry `(P, Q, R)` for `I₂ = ẋ⁴ + P ẋ² + Q ẋẏ + R`.

mod build;
mod catalog;
mod descriptor;

use serde::{Deserialize, Serialize};

pub use build::{build_cubic, build_quartic, build_wave, MAX_WAVE_DEGREE};
pub use catalog::{catalog, CatalogEntry, CATALOG};
pub use descriptor::{ModelDescriptor, ParamBlock};

use crate::error::{Error, Result};
use crate::field::{Field, SingularSet};
use crate::jet::Taylor;
use crate::genfun::{GenFun, IntegralOrder};
use crate::quadrature::{self, MAX_INTERVALS};

/// Which integral a model carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Cubic,
    Quartic,
    /// Quartic integral from a solution of the wave equation; reducible.
    Wave,
}

impl ModelKind {
    pub fn integral_order(self) -> IntegralOrder {
        match self {
            ModelKind::Cubic => IntegralOrder::Cubic,
            ModelKind::Quartic | ModelKind::Wave => IntegralOrder::Quartic,
        }
    }
}

/// Which signs of the `(J, K)` building blocks satisfied the structure
/// equations when the cubic model was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `J = E_xx`, `K = −E_xy` for `E = f(u)`:
    /// `J = 6y p + 36x²y² p'`, `K = −6x p − 18xy(x²−y²) p'`.
    Derived,
    /// `J = −6y p + 36x²y² p'`, `K = 6x p − 18xy(x²−y²) p'`.
    Printed,
}

/// How `R` is evaluated.
#[derive(Clone, Debug)]
pub enum RFunction {
    Closed(Field),
    /// Line integral from the model's basepoint, see [`r_quadrature`].
    Quadrature,
}

/// Coefficient functions of the higher integral.
#[derive(Clone, Debug)]
pub enum Coefficients {
    Cubic { j: Field, k: Field },
    Quartic { p: Field, q: Field, r: RFunction },
}

/// An evaluable model. Immutable once built; every field is `Send + Sync`.
#[derive(Clone, Debug)]
pub struct ModelFunctions {
    pub id: String,
    pub kind: ModelKind,
    pub potential: Field,
    pub coeffs: Coefficients,
    pub genfun: Option<GenFun>,
    pub singular: SingularSet,
    /// Start of the quadrature path for `R`; also the gauge point
    /// `R(basepoint) = 0` for quadrature-defined `R`.
    pub basepoint: (f64, f64),
    /// The potential splits as `U₁(x) + U₂(y)`.
    pub separable: bool,
    /// The higher integral is a polynomial in lower ones.
    pub reducible: bool,
    pub sign_convention: Option<SignConvention>,
}

impl ModelFunctions {
    pub fn check_point(&self, x: f64, y: f64) -> Result<()> {
        if self.singular.contains(x, y) {
            Err(Error::Singular { x, y })
        } else {
            Ok(())
        }
    }

    pub fn u(&self, x: f64, y: f64) -> Result<f64> {
        self.check_point(x, y)?;
        self.potential.value(x, y)
    }

    pub fn grad_u(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        self.check_point(x, y)?;
        self.potential.gradient(x, y)
    }

    /// `R(x, y)`; quadrature-defined `R` vanishes at the basepoint.
    pub fn r(&self, x: f64, y: f64) -> Result<f64> {
        match &self.coeffs {
            Coefficients::Quartic { r: RFunction::Closed(f), .. } => {
                self.check_point(x, y)?;
                f.value(x, y)
            }
            Coefficients::Quartic { r: RFunction::Quadrature, .. } => r_quadrature(self, x, y),
            Coefficients::Cubic { .. } => Err(Error::InvalidParameter(
                "cubic models have no R coefficient".into(),
            )),
        }
    }

    /// A copy whose quadrature path starts at `basepoint`.
    pub fn with_basepoint(mut self, basepoint: (f64, f64)) -> Result<Self> {
        if self.singular.contains(basepoint.0, basepoint.1) {
            return Err(Error::Singular {
                x: basepoint.0,
                y: basepoint.1,
            });
        }
        self.basepoint = basepoint;
        Ok(self)
    }
}

/// `(v, u)` for cubic models, `(s, t)` for quartic ones.
pub fn invariant_vars(kind: IntegralOrder, x: f64, y: f64) -> (f64, f64) {
    match kind {
        IntegralOrder::Cubic => (x * x * x - 3.0 * x * y * y, 3.0 * x * x * y - y * y * y),
        IntegralOrder::Quartic => (x * y, 0.5 * (x * x - y * y)),
    }
}

/// Default absolute tolerance of [`r_quadrature`].
pub const R_TOLERANCE: f64 = 1e-10;

/// `R(x, y)` from the line integrals along the L-shaped path
/// `(x₀, y₀) → (x, y₀) → (x, y)`:
///
/// ```text
/// R = −∫_{y₀}^{y} (Q U_x)(x, ỹ) dỹ − ∫_{x₀}^{x} (Q U_y + 2P U_x + 2U Q_y)(x̃, y₀) dx̃
/// ```
pub fn r_quadrature(model: &ModelFunctions, x: f64, y: f64) -> Result<f64> {
    r_quadrature_tol(model, x, y, R_TOLERANCE)
}

pub fn r_quadrature_tol(model: &ModelFunctions, x: f64, y: f64, tol: f64) -> Result<f64> {
    let (p, q) = match &model.coeffs {
        Coefficients::Quartic { p, q, .. } => (p, q),
        Coefficients::Cubic { .. } => {
            return Err(Error::InvalidParameter(
                "R quadrature needs a quartic model".into(),
            ))
        }
    };
    let (x0, y0) = model.basepoint;
    let corner = (x, y0);
    if model.singular.segment_hits((x0, y0), corner) || model.singular.segment_hits(corner, (x, y))
    {
        return Err(Error::Path {
            from_x: x0,
            from_y: y0,
            to_x: x,
            to_y: y,
        });
    }
    let u = &model.potential;
    let vertical = quadrature::integrate(
        |t| {
            let ux = u.jet(x, t, 1)?.deriv(1, 0)?;
            Ok(q.value(x, t)? * ux)
        },
        y0,
        y,
        tol / 2.0,
        MAX_INTERVALS,
    )?;
    let horizontal = quadrature::integrate(
        |t| {
            let uj = u.jet(t, y0, 1)?;
            let qj = q.jet(t, y0, 1)?;
            let pv = p.value(t, y0)?;
            let (ux, uy) = uj.gradient()?;
            Ok(qj.value() * uy + 2.0 * pv * ux + 2.0 * uj.value() * qj.deriv(0, 1)?)
        },
        x0,
        x,
        tol / 2.0,
        MAX_INTERVALS,
    )?;
    Ok(-vertical - horizontal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_variable_examples() {
        assert_eq!(invariant_vars(IntegralOrder::Cubic, 1.0, 1.0), (-2.0, 2.0));
        assert_eq!(invariant_vars(IntegralOrder::Quartic, 2.0, 3.0), (6.0, -2.5));
        assert_eq!(invariant_vars(IntegralOrder::Cubic, 1.0, 0.0), (1.0, 0.0));
        let (v, u) = invariant_vars(IntegralOrder::Cubic, 0.5, 3f64.sqrt() / 2.0);
        assert!((v + 1.0).abs() < 1e-15 && u.abs() < 1e-15);
    }

    #[test]
    fn quadrature_vanishes_at_basepoint() {
        let m = catalog("quartic-ExQ", -12.0).unwrap();
        assert_eq!(r_quadrature(&m, 1.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn quadrature_offset_is_constant_for_exq() {
        let m = catalog("quartic-ExQ", -12.0).unwrap();
        let offset = |x: f64, y: f64| r_quadrature(&m, x, y).unwrap() - m.r(x, y).unwrap();
        let c = offset(1.0, 1.0);
        assert!((c - 28.0).abs() < 1e-12);
        for (x, y) in [(2.0, 1.0), (1.5, 1.7), (0.4, 2.2)] {
            assert!((offset(x, y) - c).abs() < 1e-8, "({x}, {y})");
        }
    }

    #[test]
    fn quadrature_path_must_avoid_axes() {
        let m = catalog("quartic-ExQ", -12.0).unwrap();
        assert!(matches!(r_quadrature(&m, -1.0, 1.0), Err(Error::Path { .. })));
    }

    #[test]
    fn wave_quadrature_matches_square() {
        let m = catalog("wave-aiz", 1.0).unwrap().with_basepoint((0.3, -0.2)).unwrap();
        let (p, q) = (0.3, -0.2);
        let qv = |x: f64, y: f64| match &m.coeffs {
            Coefficients::Quartic { q, .. } => q.value(x, y).unwrap(),
            _ => unreachable!(),
        };
        let c = -qv(p, q).powi(2) / 4.0;
        for (x, y) in [(1.0, 2.0), (-0.7, 0.4), (0.0, -1.5)] {
            let quad = r_quadrature(&m, x, y).unwrap();
            let closed = -qv(x, y).powi(2) / 4.0;
            assert!((quad - (closed - c)).abs() < 1e-9, "({x}, {y})");
        }
    }

    #[test]
    fn cubic_model_has_no_r() {
        let m = catalog("cubic-eps-plus", 1.0).unwrap();
        assert!(m.r(1.0, 2.0).is_err());
        assert!(r_quadrature(&m, 1.0, 2.0).is_err());
    }
}
