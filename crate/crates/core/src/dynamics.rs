//! Zero-energy motion `ẍ = U_x`, `ÿ = U_y` and the two integrals
//! `I₁ = ẋ² + ẏ² − 2U` and `I₂`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::csv_num;
use crate::models::{Coefficients, ModelFunctions, ModelKind};

/// A point of phase space at time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseState {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

impl PhaseState {
    pub fn new(x: f64, y: f64, vx: f64, vy: f64) -> PhaseState {
        PhaseState { t: 0.0, x, y, vx, vy }
    }

    pub fn is_finite(&self) -> bool {
        [self.t, self.x, self.y, self.vx, self.vy]
            .iter()
            .all(|v| v.is_finite())
    }

    fn as_array(&self) -> [f64; 4] {
        [self.x, self.y, self.vx, self.vy]
    }

    fn from_array(t: f64, a: [f64; 4]) -> PhaseState {
        PhaseState {
            t,
            x: a[0],
            y: a[1],
            vx: a[2],
            vy: a[3],
        }
    }

    /// The same point with both velocities reversed.
    pub fn reversed(&self) -> PhaseState {
        PhaseState {
            vx: -self.vx,
            vy: -self.vy,
            ..*self
        }
    }
}

/// `(ẋ, ẏ, U_x, U_y)`.
pub fn rhs(model: &ModelFunctions, state: &PhaseState) -> Result<[f64; 4]> {
    let (ux, uy) = model.grad_u(state.x, state.y)?;
    Ok([state.vx, state.vy, ux, uy])
}

/// Start at `(x, y)` on the zero-energy shell moving at angle `theta`:
/// `(ẋ, ẏ) = √(2U) (cos θ, sin θ)`.
pub fn zero_energy_state(model: &ModelFunctions, x: f64, y: f64, theta: f64) -> Result<PhaseState> {
    let u = model.u(x, y)?;
    if !(u > 0.0) {
        return Err(Error::NoZeroEnergyMotion { x, y, potential: u });
    }
    let speed = (2.0 * u).sqrt();
    Ok(PhaseState::new(x, y, speed * theta.cos(), speed * theta.sin()))
}

/// `I₁ = ẋ² + ẏ² − 2U`.
pub fn eval_i1(model: &ModelFunctions, state: &PhaseState) -> Result<f64> {
    let u = model.u(state.x, state.y)?;
    Ok(state.vx * state.vx + state.vy * state.vy - 2.0 * u)
}

/// `I₂`. Cubic: `ẋ³ + J ẋ + K ẏ`. Quartic: `ẋ⁴ + P ẋ² + Q ẋẏ + R`. Wave
/// models use the reducible form `−(ẋẏ − Q/2)²`, which differs from the
/// quartic form by `ẋ² I₁`.
pub fn eval_i2(model: &ModelFunctions, state: &PhaseState) -> Result<f64> {
    if model.kind == ModelKind::Wave {
        eval_i2_reducible(model, state)
    } else {
        eval_i2_polynomial(model, state)
    }
}

/// `I₂` in its polynomial form for every kind of model.
pub fn eval_i2_polynomial(model: &ModelFunctions, state: &PhaseState) -> Result<f64> {
    let PhaseState { x, y, vx, vy, .. } = *state;
    model.check_point(x, y)?;
    match &model.coeffs {
        Coefficients::Cubic { j, k } => {
            Ok(vx * vx * vx + j.value(x, y)? * vx + k.value(x, y)? * vy)
        }
        Coefficients::Quartic { p, q, .. } => Ok(vx.powi(4)
            + p.value(x, y)? * vx * vx
            + q.value(x, y)? * vx * vy
            + model.r(x, y)?),
    }
}

/// `−(ẋẏ − Q/2)²`, available for quartic-type models.
pub fn eval_i2_reducible(model: &ModelFunctions, state: &PhaseState) -> Result<f64> {
    let PhaseState { x, y, vx, vy, .. } = *state;
    model.check_point(x, y)?;
    match &model.coeffs {
        Coefficients::Quartic { q, .. } => {
            let w = vx * vy - 0.5 * q.value(x, y)?;
            Ok(-w * w)
        }
        Coefficients::Cubic { .. } => Err(Error::InvalidParameter(
            "the reducible form needs a quartic-type model".into(),
        )),
    }
}

/// Integration scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Classical fixed-step fourth-order Runge–Kutta.
    Rk4,
    /// Adaptive Dormand–Prince 5(4).
    Rk45,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "rk4" => Ok(Method::Rk4),
            "rk45" => Ok(Method::Rk45),
            other => Err(Error::Config(format!("unknown method `{other}`"))),
        }
    }
}

/// Integration settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrateOptions {
    /// Fixed step (rk4) or initial step (rk45).
    pub dt: f64,
    pub t_end: f64,
    pub method: Method,
    /// Local error tolerance of rk45.
    pub tol: f64,
    /// Record every `stride`-th step; the final state is always recorded.
    pub stride: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            dt: 1e-3,
            t_end: 1.0,
            method: Method::Rk4,
            tol: 1e-10,
            stride: 1,
        }
    }
}

/// Magnitude of `U` or `∇U` treated as a blow-up.
pub const BLOWUP: f64 = 1e12;

/// Why an integration stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Completed,
    SingularApproach,
    NonFinite,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::Completed => "completed",
            Termination::SingularApproach => "singular_approach",
            Termination::NonFinite => "non_finite",
        }
    }
}

/// One recorded trajectory row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub state: PhaseState,
    pub i1: f64,
    pub i2: f64,
}

/// Recorded rows and conservation diagnostics of one trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryReport {
    pub rows: Vec<Sample>,
    /// `max |I₁|` over every step, recorded or not.
    pub i1_max_abs: f64,
    /// `max |I₂(t) − I₂(0)| / max(1, |I₂(0)|)` over every step.
    pub i2_drift: f64,
    pub i2_initial: f64,
    /// The start was not on the zero-energy shell, so `I₂` drift is
    /// informational only.
    pub off_shell: bool,
    pub termination: Termination,
    pub steps: usize,
}

pub const CSV_HEADER: &str = "t,x,y,vx,vy,I1,I2";

/// Tolerance on `|I₁(0)|` (relative to the kinetic scale) for a start to
/// count as on-shell.
const SHELL_TOL: f64 = 1e-10;

impl TrajectoryReport {
    pub fn final_state(&self) -> Option<PhaseState> {
        self.rows.last().map(|r| r.state)
    }

    /// Rows as CSV with header `t,x,y,vx,vy,I1,I2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(128 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let s = r.state;
            let cells = [s.t, s.x, s.y, s.vx, s.vy, r.i1, r.i2].map(csv_num);
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `I1_max=… I2_drift=… termination=…`.
    pub fn summary_line(&self) -> String {
        format!(
            "I1_max={} I2_drift={} termination={}",
            csv_num(self.i1_max_abs),
            csv_num(self.i2_drift),
            self.termination.name()
        )
    }
}

enum Stop {
    Singular,
    NonFinite,
}

fn classify(e: &Error) -> Stop {
    match e {
        Error::NonFinite { .. } => Stop::NonFinite,
        _ => Stop::Singular,
    }
}

fn deriv(model: &ModelFunctions, t: f64, y: [f64; 4]) -> std::result::Result<[f64; 4], Stop> {
    let s = PhaseState::from_array(t, y);
    if !s.is_finite() {
        return Err(Stop::NonFinite);
    }
    rhs(model, &s).map_err(|e| classify(&e))
}

fn axpy(y: &[f64; 4], h: f64, terms: &[(f64, &[f64; 4])]) -> [f64; 4] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..4 {
            out[i] += h * c * k[i];
        }
    }
    out
}

fn rk4_step(model: &ModelFunctions, t: f64, y: [f64; 4], h: f64) -> std::result::Result<[f64; 4], Stop> {
    let k1 = deriv(model, t, y)?;
    let k2 = deriv(model, t + h / 2.0, axpy(&y, h, &[(0.5, &k1)]))?;
    let k3 = deriv(model, t + h / 2.0, axpy(&y, h, &[(0.5, &k2)]))?;
    let k4 = deriv(model, t + h, axpy(&y, h, &[(1.0, &k3)]))?;
    Ok(axpy(
        &y,
        h,
        &[(1.0 / 6.0, &k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)],
    ))
}

/// One Dormand–Prince step: the fifth-order solution and the error vector.
fn dopri_step(
    model: &ModelFunctions,
    t: f64,
    y: [f64; 4],
    h: f64,
) -> std::result::Result<([f64; 4], [f64; 4]), Stop> {
    let k1 = deriv(model, t, y)?;
    let k2 = deriv(model, t + h / 5.0, axpy(&y, h, &[(1.0 / 5.0, &k1)]))?;
    let k3 = deriv(
        model,
        t + 3.0 * h / 10.0,
        axpy(&y, h, &[(3.0 / 40.0, &k1), (9.0 / 40.0, &k2)]),
    )?;
    let k4 = deriv(
        model,
        t + 4.0 * h / 5.0,
        axpy(&y, h, &[(44.0 / 45.0, &k1), (-56.0 / 15.0, &k2), (32.0 / 9.0, &k3)]),
    )?;
    let k5 = deriv(
        model,
        t + 8.0 * h / 9.0,
        axpy(
            &y,
            h,
            &[
                (19372.0 / 6561.0, &k1),
                (-25360.0 / 2187.0, &k2),
                (64448.0 / 6561.0, &k3),
                (-212.0 / 729.0, &k4),
            ],
        ),
    )?;
    let k6 = deriv(
        model,
        t + h,
        axpy(
            &y,
            h,
            &[
                (9017.0 / 3168.0, &k1),
                (-355.0 / 33.0, &k2),
                (46732.0 / 5247.0, &k3),
                (49.0 / 176.0, &k4),
                (-5103.0 / 18656.0, &k5),
            ],
        ),
    )?;
    let y5 = axpy(
        &y,
        h,
        &[
            (35.0 / 384.0, &k1),
            (500.0 / 1113.0, &k3),
            (125.0 / 192.0, &k4),
            (-2187.0 / 6784.0, &k5),
            (11.0 / 84.0, &k6),
        ],
    );
    let k7 = deriv(model, t + h, y5)?;
    let e = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
    let ks = [k1, k2, k3, k4, k5, k6, k7];
    let mut err = [0.0; 4];
    for (c, k) in e.iter().zip(&ks) {
        for i in 0..4 {
            err[i] += h * c * k[i];
        }
    }
    Ok((y5, err))
}

struct Monitor<'a> {
    model: &'a ModelFunctions,
    report: TrajectoryReport,
    stride: usize,
    last: Option<PhaseState>,
    pending: Option<Sample>,
}

impl Monitor<'_> {
    /// Checks the new state, updates the drifts and records it when due.
    fn accept(&mut self, s: PhaseState, step: usize, is_last: bool) -> std::result::Result<(), Stop> {
        if !s.is_finite() {
            return Err(Stop::NonFinite);
        }
        if let Some(p) = self.last {
            if self.model.singular.step_crosses((p.x, p.y), (s.x, s.y)) {
                return Err(Stop::Singular);
            }
        }
        let sample = self.sample(s)?;
        self.report.i1_max_abs = self.report.i1_max_abs.max(sample.i1.abs());
        let i2_0 = self.report.i2_initial;
        let drift = (sample.i2 - i2_0).abs() / i2_0.abs().max(1.0);
        self.report.i2_drift = self.report.i2_drift.max(drift);
        self.report.steps = step;
        self.last = Some(s);
        if step.is_multiple_of(self.stride) || is_last {
            self.report.rows.push(sample);
            self.pending = None;
        } else {
            self.pending = Some(sample);
        }
        Ok(())
    }

    fn sample(&self, s: PhaseState) -> std::result::Result<Sample, Stop> {
        let m = self.model;
        let u = m.u(s.x, s.y).map_err(|e| classify(&e))?;
        let (ux, uy) = m.grad_u(s.x, s.y).map_err(|e| classify(&e))?;
        if u.abs() > BLOWUP || ux.hypot(uy) > BLOWUP {
            return Err(Stop::Singular);
        }
        let i1 = s.vx * s.vx + s.vy * s.vy - 2.0 * u;
        let i2 = eval_i2(m, &s).map_err(|e| classify(&e))?;
        if !i1.is_finite() || !i2.is_finite() {
            return Err(Stop::NonFinite);
        }
        Ok(Sample { state: s, i1, i2 })
    }

    fn finish(mut self, termination: Termination) -> TrajectoryReport {
        if let Some(p) = self.pending.take() {
            self.report.rows.push(p);
        }
        self.report.termination = termination;
        self.report
    }
}

/// Integrates from `state0` to `state0.t + t_end`, monitoring `I₁` and `I₂`
/// after every step. Stops early with `singular_approach` when `|U|` or
/// `|∇U|` exceeds [`BLOWUP`] or the path meets the singular set, and with
/// `non_finite` when the state stops being finite.
pub fn integrate(
    model: &ModelFunctions,
    state0: &PhaseState,
    opts: &IntegrateOptions,
) -> Result<TrajectoryReport> {
    let IntegrateOptions {
        dt,
        t_end,
        method,
        tol,
        stride,
    } = *opts;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("step dt = {dt} must be positive")));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!("duration T = {t_end} must be non-negative")));
    }
    if method == Method::Rk45 && !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    if stride == 0 {
        return Err(Error::InvalidParameter("stride must be at least 1".into()));
    }
    if !state0.is_finite() {
        return Err(Error::NonFinite {
            x: state0.x,
            y: state0.y,
        });
    }
    model.check_point(state0.x, state0.y)?;
    let u0 = model.u(state0.x, state0.y)?;
    let i1_0 = state0.vx * state0.vx + state0.vy * state0.vy - 2.0 * u0;
    let kinetic = (state0.vx * state0.vx + state0.vy * state0.vy).max(2.0 * u0.abs());
    let mut mon = Monitor {
        model,
        report: TrajectoryReport {
            rows: Vec::new(),
            i1_max_abs: 0.0,
            i2_drift: 0.0,
            i2_initial: eval_i2(model, state0)?,
            off_shell: i1_0.abs() > SHELL_TOL * kinetic.max(1.0),
            termination: Termination::Completed,
            steps: 0,
        },
        stride,
        last: None,
        pending: None,
    };
    if let Err(stop) = mon.accept(*state0, 0, t_end == 0.0) {
        return Ok(mon.finish(match stop {
            Stop::Singular => Termination::SingularApproach,
            Stop::NonFinite => Termination::NonFinite,
        }));
    }
    let t0 = state0.t;
    let outcome = match method {
        Method::Rk4 => run_rk4(&mut mon, state0, t0, t_end, dt),
        Method::Rk45 => run_rk45(&mut mon, state0, t0, t_end, dt, tol),
    };
    Ok(mon.finish(match outcome {
        Ok(()) => Termination::Completed,
        Err(Stop::Singular) => Termination::SingularApproach,
        Err(Stop::NonFinite) => Termination::NonFinite,
    }))
}

fn run_rk4(
    mon: &mut Monitor<'_>,
    state0: &PhaseState,
    t0: f64,
    t_end: f64,
    dt: f64,
) -> std::result::Result<(), Stop> {
    if t_end == 0.0 {
        return Ok(());
    }
    let n = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    let h = t_end / n as f64;
    let mut y = state0.as_array();
    for i in 1..=n {
        let t = t0 + (i - 1) as f64 * h;
        y = rk4_step(mon.model, t, y, h)?;
        let step_t = if i == n { t0 + t_end } else { t0 + i as f64 * h };
        mon.accept(PhaseState::from_array(step_t, y), i, i == n)?;
    }
    Ok(())
}

fn run_rk45(
    mon: &mut Monitor<'_>,
    state0: &PhaseState,
    t0: f64,
    t_end: f64,
    dt: f64,
    tol: f64,
) -> std::result::Result<(), Stop> {
    let t_stop = t0 + t_end;
    let mut t = t0;
    let mut y = state0.as_array();
    let mut h = dt.min(t_end);
    let mut step = 0;
    while t < t_stop {
        let last = t + h >= t_stop;
        if last {
            h = t_stop - t;
        }
        let (y5, err) = match dopri_step(mon.model, t, y, h) {
            Ok(v) => v,
            // a stage landed on the singular set: retry smaller
            Err(Stop::Singular) if h > 1e-12 * t_end.max(1.0) => {
                h /= 4.0;
                continue;
            }
            Err(e) => return Err(e),
        };
        let norm = err
            .iter()
            .zip(&y5)
            .map(|(e, v)| e.abs() / (tol * (1.0 + v.abs())))
            .fold(0.0, f64::max);
        if !norm.is_finite() {
            return Err(Stop::NonFinite);
        }
        if norm <= 1.0 {
            t = if last { t_stop } else { t + h };
            y = y5;
            step += 1;
            mon.accept(PhaseState::from_array(t, y), step, last)?;
        }
        let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < 1e-14 * t_end.max(1.0) {
            return Err(Stop::Singular);
        }
    }
    Ok(())
}
