//! Solutions `p(s)` of the reduced master equation
//! `p p'' + 3 s p' p'' + 4 p'^2 = C` at `C = 0`.
//!
//! Two families are provided. The `β = 0` branches are `λ/s` and `λ s^{1/3}`.
//! The `β² = ±1` family is the closed-form real root of
//!
//! ```text
//! 4 ε s p³ − 3 p² + 6 σ ε s p + s² − 4 σ = 0
//! ```
//!
//! rescaled as `p(s) = λ p₁(s/μ)`. Writing `w = s/μ`,
//! `A = 1 + 20σw² − 8w⁴` and `S = 8w (w² + σ)^{3/2}`, the root is
//! `p₁ = ε h(w) / (4w)` with `h = 1 + ∛(A+S) + ∛(A−S)`. Because
//! `(A+S)(A−S) = (1 − 8σw²)³`, the smaller cube root is recovered from the
//! larger one, which keeps the evaluation free of cancellation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet1, Taylor};

/// A sign `±1`, serialized as the integer `1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(v: f64) -> Sign {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = String;
    fn try_from(v: i64) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be +1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Which solution branch of the reduced equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `β = 0`: `λ/s` for `ε = +1`, `λ s^{1/3}` for `ε = −1`.
    Beta0,
    /// `β² = σ = ±1`, the closed-form cubic root.
    BetaPm,
}

/// Parameters selecting one prepotential `p(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrepotentialParams {
    pub family: Family,
    pub lambda: f64,
    #[serde(default = "unit")]
    pub mu: f64,
    #[serde(default)]
    pub epsilon: Sign,
    #[serde(default)]
    pub sigma: Sign,
    /// Integration constant of the reduced equation. Only `C = 0` has
    /// solution families.
    #[serde(default, rename = "C")]
    pub c: f64,
}

fn unit() -> f64 {
    1.0
}

impl PrepotentialParams {
    pub fn beta0(epsilon: Sign, lambda: f64) -> Self {
        PrepotentialParams {
            family: Family::Beta0,
            lambda,
            mu: 1.0,
            epsilon,
            sigma: Sign::Plus,
            c: 0.0,
        }
    }

    pub fn beta_pm(epsilon: Sign, sigma: Sign, lambda: f64, mu: f64) -> Self {
        PrepotentialParams {
            family: Family::BetaPm,
            lambda,
            mu,
            epsilon,
            sigma,
            c: 0.0,
        }
    }

    /// Checks the record invariants. A zero `λ` is accepted and yields the
    /// trivial solution `p ≡ 0`.
    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda = {}", self.lambda)));
        }
        if self.family == Family::BetaPm && !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mu = {} must be positive",
                self.mu
            )));
        }
        if !self.c.is_finite() {
            return Err(Error::InvalidParameter(format!("C = {}", self.c)));
        }
        Ok(())
    }

    /// Whether `p` is defined (and smooth) at `s`.
    pub fn admits(&self, s: f64) -> bool {
        if s == 0.0 || !s.is_finite() {
            return false;
        }
        !(self.family == Family::BetaPm && self.sigma == Sign::Minus && s.abs() < self.mu)
    }

    /// `β²` of this branch.
    pub fn beta2(&self) -> f64 {
        match self.family {
            Family::Beta0 => 0.0,
            Family::BetaPm => self.sigma.value(),
        }
    }
}

fn check_domain(params: &PrepotentialParams, s: f64) -> Result<()> {
    params.validate()?;
    if params.c != 0.0 {
        return Err(Error::NoSolutionFamily(params.c));
    }
    if !params.admits(s) {
        return Err(Error::Domain { op: "p", value: s });
    }
    Ok(())
}

/// `p(s)`.
pub fn p_eval(params: &PrepotentialParams, s: f64) -> Result<f64> {
    Ok(p_jet(params, s, 0)?.value())
}

/// Taylor jet of `p` at `s`, obtained by jet arithmetic on the closed form.
pub fn p_jet(params: &PrepotentialParams, s: f64, order: usize) -> Result<Jet1> {
    check_domain(params, s)?;
    let var = Jet1::variable(s, order)?;
    let lambda = params.lambda;
    match params.family {
        Family::Beta0 => match params.epsilon {
            Sign::Plus => Ok(var.recip()? * lambda),
            Sign::Minus => Ok(var.signed_cbrt()? * lambda),
        },
        Family::BetaPm => {
            let w = var / params.mu;
            Ok(unit_branch(&w, params.epsilon, params.sigma)? * lambda)
        }
    }
}

/// `p₁(w) = ε h(w) / (4w)` for `λ = μ = 1`.
fn unit_branch(w: &Jet1, eps: Sign, sigma: Sign) -> Result<Jet1> {
    let sg = sigma.value();
    let w2 = *w * *w;
    let a = 1.0 + w2 * (20.0 * sg) - w2 * w2 * 8.0;
    let root = (w2 + sg).pow_real(1.5)?;
    let s_term = *w * root * 8.0;
    let kappa = if a.value() * s_term.value() >= 0.0 { 1.0 } else { -1.0 };
    let big = a + s_term * kappa;
    let cb = big.signed_cbrt()?;
    let other = (1.0 - w2 * (8.0 * sg)).try_div(&cb)?;
    let h = 1.0 + cb + other;
    h.try_div(&(*w * 4.0)).map(|q| q * eps.value())
}

/// Derivatives `[p, p', ..., p^(n)]` at `s`.
pub fn p_derivs(params: &PrepotentialParams, s: f64, n: usize) -> Result<Vec<f64>> {
    Ok(p_jet(params, s, n)?.derivs())
}

/// Derivatives `[f, f', ..., f^(n)]` of the generating function `f` with
/// `f' = p`. The constant term is `λ ln|s|` and `(3λ/4) s^{4/3}` on the
/// `β = 0` branches; on the `β² = ±1` family `f` is fixed only up to an
/// additive constant and its value is reported as zero.
pub fn generating_derivs(params: &PrepotentialParams, s: f64, n: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n + 1);
    let f0 = match (params.family, params.epsilon) {
        (Family::Beta0, Sign::Plus) => params.lambda * s.abs().ln(),
        (Family::Beta0, Sign::Minus) => 0.75 * params.lambda * s * s.cbrt(),
        (Family::BetaPm, _) => 0.0,
    };
    out.push(f0);
    if n > 0 {
        out.extend(p_derivs(params, s, n - 1)?);
    } else {
        check_domain(params, s)?;
    }
    Ok(out)
}

/// The implicit relation `s = (p + 2ε√(p²+σ)) (p + √(p²+σ))^{−2ε}`,
/// evaluated literally for the given `ε`.
pub fn implicit_s(p: f64, epsilon: Sign, sigma: Sign) -> Result<f64> {
    let r2 = p * p + sigma.value();
    if !(r2 >= 0.0) {
        return Err(Error::Domain { op: "s_of_p", value: p });
    }
    let r = r2.sqrt();
    // p + r without cancellation for large negative p: (r + p)(r − p) = σ
    let base = if p >= 0.0 { p + r } else { sigma.value() / (r - p) };
    if base == 0.0 || !base.is_finite() {
        return Err(Error::Domain { op: "s_of_p", value: p });
    }
    let lead = p + 2.0 * epsilon.value() * r;
    Ok(match epsilon {
        Sign::Plus => lead / (base * base),
        Sign::Minus => lead * base * base,
    })
}

/// The `s` paired with `p` on the branch evaluated by [`p_eval`] with the
/// same `(ε, σ)` at `λ = μ = 1`, choosing the preimage with `ε s > 0`.
///
/// The closed-form root with sign `ε` follows the implicit relation with
/// `ε = +1` on the half-line `ε s > 0` (and the `ε = −1` relation on the
/// other half), so `s_of_p(p, ε, σ) = ε · implicit_s(p, +1, σ)`.
pub fn s_of_p(p: f64, epsilon: Sign, sigma: Sign) -> Result<f64> {
    Ok(epsilon.value() * implicit_s(p, Sign::Plus, sigma)?)
}

/// All real roots of `4εs p³ − 3p² + 6σεs p + s² − 4σ = 0`, ascending.
pub fn cubic_roots(s: f64, epsilon: Sign, sigma: Sign) -> Vec<f64> {
    let (e, sg) = (epsilon.value(), sigma.value());
    real_cubic_roots(4.0 * e * s, -3.0, 6.0 * sg * e * s, s * s - 4.0 * sg)
}

/// Real roots of `a x³ + b x² + c x + d`, ascending, each polished by
/// Newton steps. Degenerate leading coefficients fall back to the
/// quadratic or linear case.
pub fn real_cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    if ![a, b, c, d].iter().all(|v| v.is_finite()) {
        return Vec::new();
    }
    if a == 0.0 {
        return real_quadratic_roots(b, c, d);
    }
    let (bn, cn, dn) = (b / a, c / a, d / a);
    let shift = bn / 3.0;
    let p = cn - bn * shift;
    let q = 2.0 * shift * shift * shift - cn * shift + dn;
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let mut roots = if disc > 0.0 {
        let sq = disc.sqrt();
        // larger-magnitude cube root first; the partner follows from u v = −p/3
        let u = (-q / 2.0 - sq.copysign(q)).cbrt();
        let t = if u == 0.0 { 0.0 } else { u - p / (3.0 * u) };
        vec![t - shift]
    } else if p == 0.0 {
        vec![-shift; 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift)
            .collect()
    };
    for r in roots.iter_mut() {
        *r = polish(*r, a, b, c, d);
    }
    roots.sort_by(|x, y| x.total_cmp(y));
    roots
}

fn polish(mut x: f64, a: f64, b: f64, c: f64, d: f64) -> f64 {
    let f = |x: f64| ((a * x + b) * x + c) * x + d;
    for _ in 0..4 {
        let fx = f(x);
        let dfx = (3.0 * a * x + 2.0 * b) * x + c;
        if dfx == 0.0 || fx == 0.0 {
            break;
        }
        let next = x - fx / dfx;
        if f(next).abs() < fx.abs() {
            x = next;
        } else {
            break;
        }
    }
    x
}

fn real_quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + disc.sqrt().copysign(b));
    let mut roots = if q == 0.0 {
        vec![0.0, 0.0]
    } else {
        vec![q / a, c / q]
    };
    roots.sort_by(|x, y| x.total_cmp(y));
    roots
}

/// The three terms `p p''`, `3 s p' p''`, `4 p'²` of the reduced equation.
pub fn reduced_terms(pjet: &Jet1, s: f64) -> Result<[f64; 3]> {
    if pjet.order() < 2 {
        return Err(Error::Order {
            requested: 2,
            max: pjet.order(),
        });
    }
    let (p, p1, p2) = (pjet.deriv(0)?, pjet.deriv(1)?, pjet.deriv(2)?);
    Ok([p * p2, 3.0 * s * p1 * p2, 4.0 * p1 * p1])
}

/// `p p'' + 3 s p' p'' + 4 p'² − C`.
pub fn reduced_residual(pjet: &Jet1, s: f64, c: f64) -> Result<f64> {
    let t = reduced_terms(pjet, s)?;
    Ok(t[0] + t[1] + t[2] - c)
}

/// `|reduced_residual| / max(1, largest |term|)`.
pub fn normalized_reduced_residual(pjet: &Jet1, s: f64, c: f64) -> Result<f64> {
    let t = reduced_terms(pjet, s)?;
    let scale = t.iter().fold(c.abs(), |m, v| m.max(v.abs())).max(1.0);
    Ok((t[0] + t[1] + t[2] - c).abs() / scale)
}

/// `g(p) = −(p + 2ε√(p² + β²)) / 3`, the root selected by `ε` of
/// `(3g − p)(g + p) = 4β²/3`.
pub fn g_eval(p: f64, beta2: f64, epsilon: Sign) -> Result<f64> {
    let r2 = p * p + beta2;
    if !(r2 >= 0.0) {
        return Err(Error::Domain { op: "g", value: p });
    }
    Ok(-(p + 2.0 * epsilon.value() * r2.sqrt()) / 3.0)
}

/// How [`rescale_p`] transforms a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RescaleMode {
    /// `p̃(s) = k p(s/k)`, `C̃ = C`.
    Simultaneous,
    /// `p̃(s) = k p(s)`, `C̃ = k² C`.
    Amplitude,
}

/// Parameters of the transformed solution.
pub fn rescale_p(
    params: &PrepotentialParams,
    factor: f64,
    mode: RescaleMode,
) -> Result<PrepotentialParams> {
    params.validate()?;
    if factor == 0.0 || !factor.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "rescale factor {factor} must be finite and nonzero"
        )));
    }
    let mut out = *params;
    match mode {
        RescaleMode::Amplitude => {
            out.lambda *= factor;
            out.c *= factor * factor;
        }
        RescaleMode::Simultaneous => match (params.family, params.epsilon) {
            (Family::Beta0, Sign::Plus) => out.lambda *= factor * factor,
            (Family::Beta0, Sign::Minus) => out.lambda *= factor.cbrt() * factor.cbrt(),
            // p₁ is odd, so k λ p₁(s/(kμ)) = |k| λ p₁(s/(|k|μ))
            (Family::BetaPm, _) => {
                out.lambda *= factor.abs();
                out.mu *= factor.abs();
            }
        },
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn beta0_values() {
        let plus = PrepotentialParams::beta0(Sign::Plus, 2.0);
        assert!(close(p_eval(&plus, 4.0).unwrap(), 0.5, 1e-15));
        let minus = PrepotentialParams::beta0(Sign::Minus, 1.0);
        assert!(close(p_eval(&minus, 8.0).unwrap(), 2.0, 1e-15));
    }

    #[test]
    fn beta_pm_zero_at_two() {
        let pm = PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 1.0);
        assert!(p_eval(&pm, 2.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn beta0_jets() {
        let plus = PrepotentialParams::beta0(Sign::Plus, 1.0);
        let d = p_jet(&plus, 1.0, 2).unwrap().derivs();
        assert_eq!(d, vec![1.0, -1.0, 2.0]);
        let minus = PrepotentialParams::beta0(Sign::Minus, 1.0);
        let d = p_jet(&minus, 1.0, 2).unwrap().derivs();
        assert!(close(d[0], 1.0, 1e-15));
        assert!(close(d[1], 1.0 / 3.0, 1e-15));
        assert!(close(d[2], -2.0 / 9.0, 1e-15));
    }

    #[test]
    fn domain_errors() {
        let plus = PrepotentialParams::beta0(Sign::Plus, 1.0);
        assert!(matches!(p_eval(&plus, 0.0), Err(Error::Domain { .. })));
        let lower = PrepotentialParams::beta_pm(Sign::Plus, Sign::Minus, 1.0, 2.0);
        assert!(matches!(p_eval(&lower, 1.5), Err(Error::Domain { .. })));
        assert!(p_eval(&lower, 2.5).is_ok());
        // |s| = μ is on the boundary: the value exists, second derivatives do not
        assert!(p_eval(&lower, 2.0).is_ok());
        assert!(p_jet(&lower, 2.0, 2).is_err());
    }

    #[test]
    fn nonzero_c_has_no_family() {
        let mut p = PrepotentialParams::beta0(Sign::Plus, 1.0);
        p.c = 1.0;
        assert!(matches!(p_eval(&p, 1.0), Err(Error::NoSolutionFamily(_))));
    }

    #[test]
    fn invalid_mu_rejected() {
        let p = PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 0.0);
        assert!(matches!(p_eval(&p, 1.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn implicit_relation_at_zero() {
        assert!(close(s_of_p(0.0, Sign::Plus, Sign::Plus).unwrap(), 2.0, 1e-15));
        assert!(close(s_of_p(0.0, Sign::Minus, Sign::Plus).unwrap(), -2.0, 1e-15));
        assert!(close(implicit_s(0.0, Sign::Minus, Sign::Plus).unwrap(), -2.0, 1e-15));
    }

    #[test]
    fn round_trip_point_seven() {
        let pm = PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 1.0);
        let s = s_of_p(0.7, Sign::Plus, Sign::Plus).unwrap();
        assert!(close(p_eval(&pm, s).unwrap(), 0.7, 1e-9));
    }

    #[test]
    fn implicit_relation_domain() {
        assert!(implicit_s(0.5, Sign::Plus, Sign::Minus).is_err());
        assert!(implicit_s(-1.5, Sign::Plus, Sign::Minus).is_ok());
    }

    #[test]
    fn cubic_root_at_two() {
        let r = cubic_roots(2.0, Sign::Plus, Sign::Plus);
        assert_eq!(r.len(), 1);
        assert!(r[0].abs() < 1e-14);
    }

    #[test]
    fn cubic_sign_flip_symmetry() {
        let a = cubic_roots(2.0, Sign::Plus, Sign::Plus);
        let b = cubic_roots(-2.0, Sign::Minus, Sign::Plus);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!(close(*x, *y, 1e-14));
        }
    }

    #[test]
    fn lower_sign_has_three_roots_inside_unit_interval() {
        let r = cubic_roots(0.5, Sign::Plus, Sign::Minus);
        assert_eq!(r.len(), 3);
        let r = cubic_roots(1.5, Sign::Plus, Sign::Minus);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn degenerate_cubic_is_quadratic() {
        // s = 0: −3p² − 4σ = 0 has no real roots for σ = +1, two for σ = −1
        assert!(cubic_roots(0.0, Sign::Plus, Sign::Plus).is_empty());
        let r = cubic_roots(0.0, Sign::Plus, Sign::Minus);
        assert_eq!(r.len(), 2);
        assert!(close(r[1], (4.0f64 / 3.0).sqrt(), 1e-15));
    }

    #[test]
    fn general_cubic_solver() {
        // (x−1)(x−2)(x−3)
        let r = real_cubic_roots(1.0, -6.0, 11.0, -6.0);
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!(close(*x, e, 1e-12));
        }
        // x³ + 1
        let r = real_cubic_roots(1.0, 0.0, 0.0, 1.0);
        assert_eq!(r, vec![-1.0]);
        assert!(real_cubic_roots(f64::NAN, 1.0, 1.0, 1.0).is_empty());
    }

    #[test]
    fn branch_identities() {
        for s in [0.3, 1.0, 4.0, 25.0] {
            let plus = PrepotentialParams::beta0(Sign::Plus, 1.7);
            let r = reduced_residual(&p_jet(&plus, s, 2).unwrap(), s, 0.0).unwrap();
            assert!(r.abs() < 1e-12, "{r}");
            let minus = PrepotentialParams::beta0(Sign::Minus, 1.7);
            let r = reduced_residual(&p_jet(&minus, s, 2).unwrap(), s, 0.0).unwrap();
            assert!(r.abs() < 1e-12, "{r}");
        }
    }

    #[test]
    fn closed_form_residual_at_three() {
        let pm = PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 1.0);
        let r = reduced_residual(&p_jet(&pm, 3.0, 2).unwrap(), 3.0, 0.0).unwrap();
        assert!(r.abs() < 1e-8, "{r}");
    }

    #[test]
    fn residual_needs_second_order() {
        let pm = PrepotentialParams::beta0(Sign::Plus, 1.0);
        assert!(reduced_residual(&p_jet(&pm, 1.0, 1).unwrap(), 1.0, 0.0).is_err());
    }

    #[test]
    fn g_values() {
        assert!(close(g_eval(5.0, 0.0, Sign::Plus).unwrap(), -5.0, 1e-15));
        assert!(close(g_eval(5.0, 0.0, Sign::Minus).unwrap(), 5.0 / 3.0, 1e-15));
        let g = g_eval(0.0, 1.0, Sign::Plus).unwrap();
        assert!(close(g, -2.0 / 3.0, 1e-15));
        assert!(close((3.0 * g - 0.0) * (g + 0.0), 4.0 / 3.0, 1e-15));
        assert!(g_eval(0.5, -1.0, Sign::Plus).is_err());
    }

    #[test]
    fn simultaneous_rescale_of_reciprocal() {
        let p = PrepotentialParams::beta0(Sign::Plus, 1.5);
        let q = rescale_p(&p, 2.0, RescaleMode::Simultaneous).unwrap();
        assert!(close(q.lambda, 6.0, 1e-15));
    }

    #[test]
    fn amplitude_rescale_keeps_zero_c() {
        let p = PrepotentialParams::beta0(Sign::Minus, 1.0);
        let q = rescale_p(&p, 3.0, RescaleMode::Amplitude).unwrap();
        assert_eq!(q.c, 0.0);
        assert_eq!(q.lambda, 3.0);
        assert!(rescale_p(&p, 0.0, RescaleMode::Amplitude).is_err());
    }

    #[test]
    fn rescaled_params_realize_transformed_solution() {
        let base = [
            PrepotentialParams::beta0(Sign::Plus, 1.3),
            PrepotentialParams::beta0(Sign::Minus, 0.8),
            PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 1.0),
            PrepotentialParams::beta_pm(Sign::Minus, Sign::Plus, 0.5, 2.0),
        ];
        for p in base {
            for k in [0.5, 2.0, -3.0] {
                let q = rescale_p(&p, k, RescaleMode::Simultaneous).unwrap();
                for s in [0.7, 2.5] {
                    let want = k * p_eval(&p, s / k).unwrap();
                    let got = p_eval(&q, s).unwrap();
                    assert!(close(got, want, 1e-12 * want.abs().max(1.0)), "{p:?} {k} {s}");
                }
            }
        }
    }

    #[test]
    fn sign_serde() {
        assert_eq!(serde_json::to_string(&Sign::Minus).unwrap(), "-1");
        assert_eq!(serde_json::from_str::<Sign>("1").unwrap(), Sign::Plus);
        assert!(serde_json::from_str::<Sign>("2").is_err());
    }
}
