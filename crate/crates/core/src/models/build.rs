//! Models assembled from a prepotential `p` or from wave-equation parts.

use crate::error::{Error, Result};
use crate::field::{Field, SingularSet};
use crate::genfun::{invariant_jet, prepotential_loci, GenFun, IntegralOrder};
use crate::jet::{Jet2, Taylor};
use crate::prepotential::{p_derivs, Family, PrepotentialParams, Sign};
use crate::verify::{cubic_structure, residual_master_normalized};

use super::{Coefficients, ModelFunctions, ModelKind, RFunction, SignConvention};

/// Highest polynomial degree accepted by [`build_wave`].
pub const MAX_WAVE_DEGREE: usize = 8;

const PROBE_TOL: f64 = 1e-8;
const PROBE_COUNT: usize = 8;

/// `(p(w), p'(w))` on jets, where `w` is the invariant variable.
fn p_and_slope(params: &PrepotentialParams, w: &Jet2) -> Result<(Jet2, Jet2)> {
    let d = p_derivs(params, w.value(), w.order() + 1)?;
    Ok((w.compose(&d[..d.len() - 1])?, w.compose(&d[1..])?))
}

fn check_params(params: &PrepotentialParams) -> Result<()> {
    params.validate()?;
    if params.c != 0.0 {
        return Err(Error::NoSolutionFamily(params.c));
    }
    Ok(())
}

/// Deterministic probe points comfortably off the singular set.
fn probe_points(singular: &SingularSet) -> Vec<(f64, f64)> {
    let radii = [0.9, 1.3, 1.9, 2.8, 4.1, 6.0, 8.8, 12.9, 18.9, 27.7];
    let angles = [0.37, 1.21, 2.03, 2.77, 3.61, 4.49, 5.27, 5.93];
    let mut out = Vec::new();
    for r in radii {
        for (k, a) in angles.iter().enumerate() {
            let a = a + 0.05 * k as f64;
            let (x, y) = (r * f64::cos(a), r * f64::sin(a));
            if singular.margin(x, y) > 0.05 && !singular.contains(x, y) {
                out.push((x, y));
            }
        }
        if out.len() >= PROBE_COUNT {
            break;
        }
    }
    out.truncate(PROBE_COUNT);
    out
}

fn cubic_coeffs(params: PrepotentialParams, convention: SignConvention) -> (Field, Field) {
    // Derived: J = 6y p + 36x²y² p', K = −6x p − 18xy(x²−y²) p'
    // Printed: the p terms enter with the opposite sign
    let sign = match convention {
        SignConvention::Derived => 1.0,
        SignConvention::Printed => -1.0,
    };
    let j = Field::new(move |x, y| {
        let (p, dp) = p_and_slope(&params, &invariant_jet(IntegralOrder::Cubic, x, y))?;
        Ok(*y * p * (6.0 * sign) + *x * *x * *y * *y * dp * 36.0)
    });
    let k = Field::new(move |x, y| {
        let (p, dp) = p_and_slope(&params, &invariant_jet(IntegralOrder::Cubic, x, y))?;
        Ok(*x * p * (-6.0 * sign) - *x * *y * (*x * *x - *y * *y) * dp * 18.0)
    });
    (j, k)
}

fn worst_cubic_probe(u: &Field, j: &Field, k: &Field, probes: &[(f64, f64)]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(x, y) in probes {
        let r = cubic_structure(&u.jet(x, y, 1)?, &j.jet(x, y, 1)?, &k.jet(x, y, 1)?)?;
        worst = worst.max(r.normalized_max());
    }
    Ok(worst)
}

/// Cubic model from `E = f(u)`, `f' = p`, `u = 3x²y − y³`:
/// `U = −3(x²+y²)² p'(u)` and `(J, K)` under the first sign convention
/// for which the structure equations hold at probe points.
pub fn build_cubic(params: &PrepotentialParams, basepoint: Option<(f64, f64)>) -> Result<ModelFunctions> {
    check_params(params)?;
    let p = *params;
    let singular = SingularSet::new(prepotential_loci(IntegralOrder::Cubic, params));
    let basepoint = basepoint.unwrap_or((1.0, 1.0));
    if singular.contains(basepoint.0, basepoint.1) {
        return Err(Error::Singular {
            x: basepoint.0,
            y: basepoint.1,
        });
    }
    let potential = Field::new(move |x, y| {
        let (_, dp) = p_and_slope(&p, &invariant_jet(IntegralOrder::Cubic, x, y))?;
        let r2 = *x * *x + *y * *y;
        Ok(r2 * r2 * dp * -3.0)
    });
    let probes = probe_points(&singular);
    if probes.is_empty() {
        return Err(Error::Construction("no admissible probe points".into()));
    }
    let mut diagnostics = Vec::new();
    for convention in [SignConvention::Derived, SignConvention::Printed] {
        let (j, k) = cubic_coeffs(p, convention);
        let worst = worst_cubic_probe(&potential, &j, &k, &probes)?;
        if worst < PROBE_TOL {
            return Ok(ModelFunctions {
                id: format!("cubic:{}", describe(params)),
                kind: ModelKind::Cubic,
                potential,
                coeffs: Coefficients::Cubic { j, k },
                genfun: Some(GenFun::from_prepotential(IntegralOrder::Cubic, params)?),
                singular,
                basepoint,
                separable: false,
                reducible: false,
                sign_convention: Some(convention),
            });
        }
        diagnostics.push(format!("{convention:?}: max normalized residual {worst:.3e}"));
    }
    Err(Error::Construction(format!(
        "structure equations fail under both sign conventions ({})",
        diagnostics.join("; ")
    )))
}

/// Quartic model from `F = f(s)`, `f' = p`, `s = xy`:
/// `U = −(x²+y²) p'(s)/4`, `P = y² p'(s)`, `Q = −(p + s p')`, with `R` from
/// [`super::r_quadrature`] along paths starting at `basepoint`.
pub fn build_quartic(params: &PrepotentialParams, basepoint: (f64, f64)) -> Result<ModelFunctions> {
    check_params(params)?;
    let p = *params;
    let singular = SingularSet::new(prepotential_loci(IntegralOrder::Quartic, params));
    if singular.contains(basepoint.0, basepoint.1) {
        return Err(Error::Singular {
            x: basepoint.0,
            y: basepoint.1,
        });
    }
    let s_jet = |x: &Jet2, y: &Jet2| invariant_jet(IntegralOrder::Quartic, x, y);
    let potential = Field::new(move |x, y| {
        let (_, dp) = p_and_slope(&p, &s_jet(x, y))?;
        Ok((*x * *x + *y * *y) * dp * -0.25)
    });
    let pf = Field::new(move |x, y| {
        let (_, dp) = p_and_slope(&p, &s_jet(x, y))?;
        Ok(*y * *y * dp)
    });
    let qf = Field::new(move |x, y| {
        let s = s_jet(x, y);
        let (pv, dp) = p_and_slope(&p, &s)?;
        Ok(-(pv + s * dp))
    });
    let genfun = GenFun::from_prepotential(IntegralOrder::Quartic, params)?;

    let probes = probe_points(&singular);
    if probes.is_empty() {
        return Err(Error::Construction("no admissible probe points".into()));
    }
    let mut worst = 0.0f64;
    for &(x, y) in &probes {
        let (u, pj, qj) = (potential.jet(x, y, 1)?, pf.jet(x, y, 1)?, qf.jet(x, y, 1)?);
        let (ux, _) = u.gradient()?;
        let (px, py) = pj.gradient()?;
        let (qx, qy) = qj.gradient()?;
        let scale = [qx, py, px, qy, 4.0 * ux]
            .iter()
            .fold(1.0f64, |m, v| m.max(v.abs()));
        worst = worst
            .max((qx + py).abs() / scale)
            .max((px - qy + 4.0 * ux).abs() / scale)
            .max(residual_master_normalized(IntegralOrder::Quartic, &genfun.master_jet(x, y)?)?);
    }
    if !(worst < PROBE_TOL) {
        return Err(Error::Construction(format!(
            "quartic structure probe failed: max normalized residual {worst:.3e}"
        )));
    }
    let separable = params.family == Family::Beta0 && params.epsilon == Sign::Plus;
    Ok(ModelFunctions {
        id: format!("quartic:{}", describe(params)),
        kind: ModelKind::Quartic,
        potential,
        coeffs: Coefficients::Quartic {
            p: pf,
            q: qf,
            r: RFunction::Quadrature,
        },
        genfun: Some(genfun),
        singular,
        basepoint,
        separable,
        reducible: false,
        sign_convention: None,
    })
}

fn describe(p: &PrepotentialParams) -> String {
    let fam = match p.family {
        Family::Beta0 => "beta0",
        Family::BetaPm => "beta_pm",
    };
    format!(
        "{fam},lambda={},mu={},epsilon={},sigma={}",
        p.lambda,
        p.mu,
        i64::from(p.epsilon),
        i64::from(p.sigma)
    )
}

fn poly_jet(coeffs: &[f64], t: &Jet2) -> Jet2 {
    coeffs
        .iter()
        .rev()
        .fold(t.constant_like(0.0), |acc, c| acc * *t + *c)
}

fn poly_second_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(2)
        .map(|(k, c)| c * (k * (k - 1)) as f64)
        .collect()
}

/// Reducible model from `F = F₂(x−y) + F₄(x+y)`, a solution of the wave
/// equation. Coefficient lists are in ascending powers.
///
/// `U = −(F₂'' + F₄'')/2`, `Q = F₂'' − F₄''`, `P = −2U`, `R = −Q²/4`.
pub fn build_wave(f2: &[f64], f4: &[f64]) -> Result<ModelFunctions> {
    for (name, c) in [("F2", f2), ("F4", f4)] {
        if c.len() > MAX_WAVE_DEGREE + 1 {
            return Err(Error::InvalidParameter(format!(
                "{name} has degree {} > {MAX_WAVE_DEGREE}",
                c.len() - 1
            )));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} has non-finite coefficients")));
        }
    }
    let (a2, a4) = (poly_second_derivative(f2), poly_second_derivative(f4));
    let (b2, b4) = (a2.clone(), a4.clone());
    let (c2, c4) = (a2.clone(), a4.clone());
    let potential = Field::new(move |x, y| {
        Ok((poly_jet(&a2, &(*x - *y)) + poly_jet(&a4, &(*x + *y))) * -0.5)
    });
    let q = Field::new(move |x, y| Ok(poly_jet(&b2, &(*x - *y)) - poly_jet(&b4, &(*x + *y))));
    let p = Field::new(move |x, y| Ok(poly_jet(&c2, &(*x - *y)) + poly_jet(&c4, &(*x + *y))));
    let q2 = q.clone();
    let r = Field::new(move |x, y| {
        let v = q2.apply(x, y)?;
        Ok(v * v * -0.25)
    });
    let (g2, g4) = (f2.to_vec(), f4.to_vec());
    let genfun = GenFun::new(
        IntegralOrder::Quartic,
        Field::new(move |x, y| Ok(poly_jet(&g2, &(*x - *y)) + poly_jet(&g4, &(*x + *y)))),
        SingularSet::empty(),
        "F=F2(x-y)+F4(x+y)",
    );
    Ok(ModelFunctions {
        id: format!("wave:f2={f2:?},f4={f4:?}"),
        kind: ModelKind::Wave,
        potential,
        coeffs: Coefficients::Quartic {
            p,
            q,
            r: RFunction::Closed(r),
        },
        genfun: Some(genfun),
        singular: SingularSet::empty(),
        basepoint: (0.0, 0.0),
        separable: false,
        reducible: true,
        sign_convention: None,
    })
}
