//! Residuals of the structure equations and master equations, and
//! quasi-random grid reports built from them.
//!
//! Cubic structure equations (`I₂ = ẋ³ + J ẋ + K ẏ`):
//!
//! ```text
//! K_x + J_y = 0,   J_x − K_y + 3U_x = 0,   U_x J + U_y K + 2K_y U = 0
//! ```
//!
//! Quartic structure equations (`I₂ = ẋ⁴ + P ẋ² + Q ẋẏ + R`):
//!
//! ```text
//! Q_x + P_y = 0,   P_x − Q_y + 4U_x = 0,
//! R_y + U_x Q = 0, R_x + U_y Q + 2U_x P + 2Q_y U = 0
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genfun::{GenFun, IntegralOrder};
use crate::io::{json_num, json_str};
use crate::jet::{fd_deriv_richardson, Jet2, Taylor};
use crate::models::{r_quadrature_tol, Coefficients, ModelFunctions, RFunction};
use crate::prepotential::{p_jet, reduced_terms, PrepotentialParams};

/// Step used for finite-difference cross-checks.
pub const FD_STEP: f64 = 1e-3;

/// Quadrature tolerance when `R` feeds a finite difference.
const FD_R_TOLERANCE: f64 = 1e-12;

/// Residuals of one equation set at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Residuals {
    pub values: Vec<f64>,
    /// `max(1, largest |term|)` over every term of every equation.
    pub scale: f64,
}

impl Residuals {
    fn from_terms(equations: &[&[f64]]) -> Residuals {
        let values = equations.iter().map(|t| t.iter().sum()).collect();
        let scale = equations
            .iter()
            .flat_map(|t| t.iter())
            .fold(1.0f64, |m, v| m.max(v.abs()));
        Residuals { values, scale }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn normalized_max(&self) -> f64 {
        self.max_abs() / self.scale
    }
}

pub(crate) fn cubic_structure(u: &Jet2, j: &Jet2, k: &Jet2) -> Result<Residuals> {
    let (ux, uy) = u.gradient()?;
    let (jx, jy) = j.gradient()?;
    let (kx, ky) = k.gradient()?;
    let (uv, jv, kv) = (u.value(), j.value(), k.value());
    Ok(Residuals::from_terms(&[
        &[kx, jy],
        &[jx, -ky, 3.0 * ux],
        &[ux * jv, uy * kv, 2.0 * ky * uv],
    ]))
}

fn quartic_structure(
    u: (f64, f64, f64),
    p: (f64, f64, f64),
    q: (f64, f64, f64),
    r_grad: (f64, f64),
) -> Residuals {
    let (uv, ux, uy) = u;
    let (pv, px, py) = p;
    let (qv, qx, qy) = q;
    let (rx, ry) = r_grad;
    Residuals::from_terms(&[
        &[qx, py],
        &[px, -qy, 4.0 * ux],
        &[ry, ux * qv],
        &[rx, uy * qv, 2.0 * ux * pv, 2.0 * qy * uv],
    ])
}

fn value_and_gradient(j: &Jet2) -> Result<(f64, f64, f64)> {
    let (a, b) = j.gradient()?;
    Ok((j.value(), a, b))
}

/// Structure-equation residuals at `(x, y)` from jet derivatives. A
/// quadrature-defined `R` is differentiated by finite differences.
pub fn residual_structure(model: &ModelFunctions, x: f64, y: f64) -> Result<Residuals> {
    model.check_point(x, y)?;
    let u = model.potential.jet(x, y, 1)?;
    match &model.coeffs {
        Coefficients::Cubic { j, k } => cubic_structure(&u, &j.jet(x, y, 1)?, &k.jet(x, y, 1)?),
        Coefficients::Quartic { p, q, r } => {
            let r_grad = match r {
                RFunction::Closed(f) => f.jet(x, y, 1)?.gradient()?,
                RFunction::Quadrature => {
                    let f = |a: f64, b: f64| {
                        r_quadrature_tol(model, a, b, FD_R_TOLERANCE).unwrap_or(f64::NAN)
                    };
                    (
                        fd_deriv_richardson(f, x, y, 1, 0, FD_STEP)?,
                        fd_deriv_richardson(f, x, y, 0, 1, FD_STEP)?,
                    )
                }
            };
            Ok(quartic_structure(
                value_and_gradient(&u)?,
                value_and_gradient(&p.jet(x, y, 1)?)?,
                value_and_gradient(&q.jet(x, y, 1)?)?,
                r_grad,
            ))
        }
    }
}

/// Structure-equation residuals with every derivative taken by
/// Richardson-extrapolated central differences of step `h`.
pub fn residual_structure_fd(model: &ModelFunctions, x: f64, y: f64, h: f64) -> Result<Residuals> {
    model.check_point(x, y)?;
    let vg = |f: &dyn Fn(f64, f64) -> f64| -> Result<(f64, f64, f64)> {
        Ok((
            f(x, y),
            fd_deriv_richardson(f, x, y, 1, 0, h)?,
            fd_deriv_richardson(f, x, y, 0, 1, h)?,
        ))
    };
    let sample = |fld: &crate::field::Field| {
        let fld = fld.clone();
        move |a: f64, b: f64| fld.value(a, b).unwrap_or(f64::NAN)
    };
    let u = vg(&sample(&model.potential))?;
    match &model.coeffs {
        Coefficients::Cubic { j, k } => {
            let (jv, jx, jy) = vg(&sample(j))?;
            let (kv, kx, ky) = vg(&sample(k))?;
            let (uv, ux, uy) = u;
            Ok(Residuals::from_terms(&[
                &[kx, jy],
                &[jx, -ky, 3.0 * ux],
                &[ux * jv, uy * kv, 2.0 * ky * uv],
            ]))
        }
        Coefficients::Quartic { p, q, r } => {
            let r_fn = |a: f64, b: f64| {
                let v = match r {
                    RFunction::Closed(f) => f.value(a, b),
                    RFunction::Quadrature => r_quadrature_tol(model, a, b, FD_R_TOLERANCE),
                };
                v.unwrap_or(f64::NAN)
            };
            let (_, rx, ry) = vg(&r_fn)?;
            Ok(quartic_structure(u, vg(&sample(p))?, vg(&sample(q))?, (rx, ry)))
        }
    }
}

/// Expanded terms of the master equation; they sum to its left-hand side.
pub fn master_terms(order: IntegralOrder, jet: &Jet2) -> Result<Vec<f64>> {
    if jet.order() < order.master_order() {
        return Err(Error::Order {
            requested: order.master_order(),
            max: jet.order(),
        });
    }
    let d = |i, j| jet.deriv(i, j);
    Ok(match order {
        IntegralOrder::Cubic => {
            let (exx, exy, eyy) = (d(2, 0)?, d(1, 1)?, d(0, 2)?);
            let (exxx, exxy, exyy, eyyy) = (d(3, 0)?, d(2, 1)?, d(1, 2)?, d(0, 3)?);
            vec![
                exx * exxx,
                exx * exyy,
                -exy * exxy,
                -exy * eyyy,
                -2.0 * exyy * exx,
                -2.0 * exyy * eyy,
            ]
        }
        IntegralOrder::Quartic => {
            let (fxx, fxy, fyy) = (d(2, 0)?, d(1, 1)?, d(0, 2)?);
            let (fxxx, fxxy, fxyy, fyyy) = (d(3, 0)?, d(2, 1)?, d(1, 2)?, d(0, 3)?);
            let (fxxxx, fxxxy, fxyyy, fyyyy) = (d(4, 0)?, d(3, 1)?, d(1, 3)?, d(0, 4)?);
            vec![
                fxxxx * fxy,
                -fyyyy * fxy,
                3.0 * fxxx * fxxy,
                -3.0 * fyyy * fxyy,
                2.0 * fxx * fxxxy,
                -2.0 * fyy * fxyyy,
            ]
        }
    })
}

/// Left-hand side of the master equation for `E` (cubic) or `F` (quartic).
pub fn residual_master(order: IntegralOrder, jet: &Jet2) -> Result<f64> {
    Ok(master_terms(order, jet)?.iter().sum())
}

/// `|residual_master|` divided by the term scale of the point (at least 1).
pub fn residual_master_normalized(order: IntegralOrder, jet: &Jet2) -> Result<f64> {
    Ok(master_residuals(order, jet)?.normalized_max())
}

/// Largest derivative magnitude of total order `k`.
fn order_magnitude(jet: &Jet2, k: usize) -> Result<f64> {
    (0..=k).try_fold(0.0f64, |m, i| Ok(m.max(jet.deriv(k - i, i)?.abs())))
}

/// Residual of the master equation. The scale is the largest magnitude a
/// term could reach given the derivative sizes of each order, so a factor
/// that vanishes up to rounding does not shrink the normalization.
fn master_residuals(order: IntegralOrder, jet: &Jet2) -> Result<Residuals> {
    let t = master_terms(order, jet)?;
    let mut r = Residuals::from_terms(&[&t]);
    let m = |k| order_magnitude(jet, k);
    let bound = match order {
        IntegralOrder::Cubic => m(2)? * m(3)?,
        IntegralOrder::Quartic => (m(2)? * m(4)?).max(m(3)? * m(3)?),
    };
    r.scale = r.scale.max(bound);
    Ok(r)
}

/// Which equations a report checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquationSet {
    KJU,
    PQRU,
    ME,
    #[serde(rename = "me")]
    MeQuartic,
    ReducedODE,
}

impl EquationSet {
    pub fn name(self) -> &'static str {
        match self {
            EquationSet::KJU => "KJU",
            EquationSet::PQRU => "PQRU",
            EquationSet::ME => "ME",
            EquationSet::MeQuartic => "me",
            EquationSet::ReducedODE => "ReducedODE",
        }
    }
}

/// An axis-aligned sampling rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Region {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Region {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Region> {
        let r = Region {
            x_min,
            y_min,
            x_max,
            y_max,
        };
        let ok = [x_min, y_min, x_max, y_max].iter().all(|v| v.is_finite())
            && x_min < x_max
            && y_min < y_max;
        if ok {
            Ok(r)
        } else {
            Err(Error::InvalidParameter(format!(
                "degenerate region [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )))
        }
    }

    /// Parses `x_min,y_min,x_max,y_max`.
    pub fn parse(text: &str) -> Result<Region> {
        let parts: Vec<f64> = text
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Config(format!("malformed region `{text}`")))?;
        match parts.as_slice() {
            [a, b, c, d] => Region::new(*a, *b, *c, *d).map_err(|e| Error::Config(e.to_string())),
            _ => Err(Error::Config(format!(
                "region `{text}` must be x_min,y_min,x_max,y_max"
            ))),
        }
    }
}

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// `n` Halton (2, 3) points with a seeded Cranley–Patterson shift.
pub fn sample_points(region: &Region, n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (sx, sy): (f64, f64) = (rng.random(), rng.random());
    (1..=n as u64)
        .map(|i| {
            let a = (halton(i, 2) + sx).fract();
            let b = (halton(i, 3) + sy).fract();
            (
                region.x_min + a * (region.x_max - region.x_min),
                region.y_min + b * (region.y_max - region.y_min),
            )
        })
        .collect()
}

/// What a grid report checks.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    /// Structure equations of a model.
    Model(&'a ModelFunctions),
    /// Master equation of a generating function.
    GenFun(&'a GenFun),
}

/// Aggregated residuals over sampled points.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub model: String,
    pub equation_set: EquationSet,
    pub n_points: usize,
    pub n_evaluated: usize,
    pub n_skipped: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Largest raw residual.
    pub max_abs: f64,
    /// Mean over points of the largest raw residual at each point.
    pub mean_abs: f64,
    pub max_normalized: f64,
    /// Point with the largest normalized residual.
    pub worst_point: (f64, f64),
    /// Term scale used to normalize the residual at the worst point.
    pub normalization: f64,
    pub pass: bool,
}

impl VerificationReport {
    fn aggregate(
        model: String,
        equation_set: EquationSet,
        seed: u64,
        tolerance: f64,
        results: Vec<(f64, f64, Option<Residuals>)>,
    ) -> Result<VerificationReport> {
        let n_points = results.len();
        let mut n_evaluated = 0;
        let (mut max_abs, mut sum_abs, mut max_norm) = (0.0f64, 0.0, -1.0f64);
        let (mut worst_point, mut normalization) = ((f64::NAN, f64::NAN), f64::NAN);
        for (x, y, r) in results {
            let Some(r) = r else { continue };
            n_evaluated += 1;
            let (raw, norm) = (r.max_abs(), r.normalized_max());
            max_abs = if raw.is_nan() || max_abs.is_nan() {
                f64::NAN
            } else {
                max_abs.max(raw)
            };
            sum_abs += raw;
            // the first NaN residual is the worst point and stays so
            let worse = !max_norm.is_nan() && (norm.is_nan() || norm > max_norm);
            if worse {
                max_norm = norm;
                worst_point = (x, y);
                normalization = r.scale;
            }
        }
        if n_evaluated == 0 {
            return Err(Error::AllSingular);
        }
        Ok(VerificationReport {
            model,
            equation_set,
            n_points,
            n_evaluated,
            n_skipped: n_points - n_evaluated,
            seed,
            tolerance,
            max_abs,
            mean_abs: sum_abs / n_evaluated as f64,
            max_normalized: max_norm,
            worst_point,
            normalization,
            pass: max_norm < tolerance,
        })
    }

    /// JSON object with a fixed key order.
    pub fn to_json(&self) -> String {
        let fields = [
            ("model", json_str(&self.model)),
            ("equation_set", json_str(self.equation_set.name())),
            ("n_points", self.n_points.to_string()),
            ("n_evaluated", self.n_evaluated.to_string()),
            ("n_skipped", self.n_skipped.to_string()),
            ("seed", self.seed.to_string()),
            ("tolerance", json_num(self.tolerance)),
            ("max_abs", json_num(self.max_abs)),
            ("mean_abs", json_num(self.mean_abs)),
            ("max_normalized", json_num(self.max_normalized)),
            (
                "worst_point",
                format!(
                    "[{}, {}]",
                    json_num(self.worst_point.0),
                    json_num(self.worst_point.1)
                ),
            ),
            ("normalization", json_num(self.normalization)),
            ("pass", self.pass.to_string()),
        ];
        let body: Vec<String> = fields
            .iter()
            .map(|(k, v)| format!("  {}: {}", json_str(k), v))
            .collect();
        format!("{{\n{}\n}}\n", body.join(",\n"))
    }
}

/// Samples `n` quasi-random points of `region`, skips points on the
/// singular set (or where evaluation fails) and aggregates normalized
/// residuals. Points are evaluated in parallel and reduced in index order.
pub fn grid_report(
    target: Target<'_>,
    region: &Region,
    n: usize,
    tolerance: f64,
    seed: u64,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample count must be at least 1".into()));
    }
    let region = Region::new(region.x_min, region.y_min, region.x_max, region.y_max)?;
    let points = sample_points(&region, n, seed);
    let (name, set) = match target {
        Target::Model(m) => (
            m.id.clone(),
            match m.kind.integral_order() {
                IntegralOrder::Cubic => EquationSet::KJU,
                IntegralOrder::Quartic => EquationSet::PQRU,
            },
        ),
        Target::GenFun(g) => (
            g.label.clone(),
            match g.order {
                IntegralOrder::Cubic => EquationSet::ME,
                IntegralOrder::Quartic => EquationSet::MeQuartic,
            },
        ),
    };
    let results: Vec<(f64, f64, Option<Residuals>)> = points
        .par_iter()
        .map(|&(x, y)| {
            let r = match target {
                Target::Model(m) => residual_structure(m, x, y),
                Target::GenFun(g) => g
                    .master_jet(x, y)
                    .and_then(|j| master_residuals(g.order, &j)),
            };
            (x, y, r.ok())
        })
        .collect();
    VerificationReport::aggregate(name, set, seed, tolerance, results)
}

/// Reduced-equation residuals of `p` at `n` quasi-random `s` in
/// `[s_min, s_max]`.
pub fn reduced_report(
    params: &PrepotentialParams,
    s_min: f64,
    s_max: f64,
    n: usize,
    tolerance: f64,
    seed: u64,
) -> Result<VerificationReport> {
    if n == 0 || !(s_min < s_max) {
        return Err(Error::InvalidParameter(format!(
            "reduced report over [{s_min}, {s_max}] with {n} points"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: f64 = rng.random();
    let results = (1..=n as u64)
        .map(|i| {
            let s = s_min + (halton(i, 2) + shift).fract() * (s_max - s_min);
            let r = p_jet(params, s, 2).and_then(|j| {
                let t = reduced_terms(&j, s)?;
                Ok(Residuals::from_terms(&[&[t[0], t[1], t[2], -params.c]]))
            });
            (s, 0.0, r.ok())
        })
        .collect();
    VerificationReport::aggregate(
        format!("p:{params:?}"),
        EquationSet::ReducedODE,
        seed,
        tolerance,
        results,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::models::{catalog, ModelKind};
    use crate::prepotential::Sign;

    #[test]
    fn cubic_catalog_structure_at_one_two() {
        let m = catalog("cubic-eps-plus", 1.0).unwrap();
        let r = residual_structure(&m, 1.0, 2.0).unwrap();
        assert_eq!(r.values.len(), 3);
        assert!(r.max_abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn exq_structure_at_one_one() {
        let m = catalog("quartic-ExQ", -12.0).unwrap();
        let r = residual_structure(&m, 1.0, 1.0).unwrap();
        assert_eq!(r.values.len(), 4);
        assert!(r.max_abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn zero_model_has_exact_zero_residuals() {
        let m = ModelFunctions {
            id: "zero".into(),
            kind: ModelKind::Cubic,
            potential: Field::zero(),
            coeffs: Coefficients::Cubic {
                j: Field::zero(),
                k: Field::zero(),
            },
            genfun: None,
            singular: Default::default(),
            basepoint: (0.0, 0.0),
            separable: true,
            reducible: false,
            sign_convention: None,
        };
        assert_eq!(residual_structure(&m, 0.3, 0.4).unwrap().values, vec![0.0; 3]);
    }

    #[test]
    fn master_examples() {
        let e = GenFun::parse("E:y^5").unwrap();
        for (x, y) in [(0.0, 0.0), (1.0, -2.0)] {
            assert_eq!(residual_master(IntegralOrder::Cubic, &e.master_jet(x, y).unwrap()).unwrap(), 0.0);
        }
        let e = GenFun::parse("E:x^4").unwrap();
        let r = residual_master(IntegralOrder::Cubic, &e.master_jet(1.0, 0.0).unwrap()).unwrap();
        assert_eq!(r, 288.0);
        let f = GenFun::parse("F:x^4+y^4").unwrap();
        let r = residual_master(IntegralOrder::Quartic, &f.master_jet(0.7, -1.2).unwrap()).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn master_needs_order() {
        let j = Field::zero().jet(0.0, 0.0, 3).unwrap();
        assert!(residual_master(IntegralOrder::Quartic, &j).is_err());
    }

    #[test]
    fn grid_pass_and_fail() {
        let region = Region::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let m = crate::models::build_cubic(
            &PrepotentialParams::beta0(Sign::Plus, 1.0),
            None,
        )
        .unwrap();
        let r = grid_report(Target::Model(&m), &region, 100, 1e-8, 7).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.max_abs >= r.mean_abs && r.mean_abs >= 0.0);

        let e = GenFun::parse("E:x^4").unwrap();
        let r = grid_report(Target::GenFun(&e), &region, 20, 1e-8, 7).unwrap();
        assert!(!r.pass && r.max_abs > 0.0);
    }

    #[test]
    fn all_singular_is_error() {
        let m = catalog("quartic-ExQ", 1.0).unwrap();
        let mut m2 = m.clone();
        m2.singular.delta = 1e9;
        let region = Region::new(1.0, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(
            grid_report(Target::Model(&m2), &region, 5, 1e-8, 0),
            Err(Error::AllSingular)
        );
        assert!(grid_report(Target::Model(&m), &region, 0, 1e-8, 0).is_err());
    }

    #[test]
    fn region_parsing() {
        assert!(Region::parse("1,1,2,2").is_ok());
        assert!(matches!(Region::parse("1,1,2"), Err(Error::Config(_))));
        assert!(matches!(Region::parse("1,a,2,2"), Err(Error::Config(_))));
        assert!(matches!(Region::parse("2,1,1,2"), Err(Error::Config(_))));
    }

    #[test]
    fn halton_prefix() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(2, 3) - 2.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn reduced_report_passes_for_closed_family() {
        let p = PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 1.0);
        let r = reduced_report(&p, 0.1, 10.0, 50, 1e-8, 1).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
