//! Conservation and convergence checks on trajectories that stay clear of
//! the singular set.

use std::f64::consts::PI;

use integrable::dynamics::{
    integrate, zero_energy_state, IntegrateOptions, Method, PhaseState, Termination, TrajectoryReport,
};
use integrable::models::{catalog, ModelFunctions};

fn run(m: &ModelFunctions, theta: f64, dt: f64, method: Method) -> TrajectoryReport {
    let s0 = zero_energy_state(m, 1.0, 1.0, theta).unwrap();
    let opts = IntegrateOptions { dt, t_end: 1.0, method, stride: 1 << 20, ..Default::default() };
    integrate(m, &s0, &opts).unwrap()
}

fn fourth_order(name: &str, lambda: f64, theta: f64) {
    let m = catalog(name, lambda).unwrap();
    let a = run(&m, theta, 1e-2, Method::Rk4);
    let b = run(&m, theta, 5e-3, Method::Rk4);
    let ratio = a.i2_drift / b.i2_drift;
    println!("{name} theta={theta}: drift {:.3e} -> {:.3e}, ratio {ratio:.2}", a.i2_drift, b.i2_drift);
    assert!(ratio >= 12.0, "{ratio}");
}

#[test]
fn cubic_drift_halves_at_fourth_order() {
    fourth_order("cubic-eps-plus", 1.0, 0.0);
}

#[test]
fn quartic_drift_halves_at_fourth_order() {
    fourth_order("quartic-ExQ", -12.0, 0.7);
}

#[test]
fn fine_step_conserves_both_integrals() {
    for (name, lambda, theta) in [("cubic-eps-plus", 1.0, 0.0), ("quartic-ExQ", -12.0, 0.7)] {
        let r = run(&catalog(name, lambda).unwrap(), theta, 1e-4, Method::Rk4);
        assert_eq!(r.termination, Termination::Completed);
        assert!(r.i1_max_abs < 1e-8 && r.i2_drift < 1e-8, "{name}: {}", r.summary_line());
    }
}

#[test]
fn adaptive_run_conserves_both_integrals() {
    let r = run(&catalog("quartic-ExQ", -12.0).unwrap(), 0.7, 1e-2, Method::Rk45);
    assert_eq!(r.termination, Termination::Completed);
    assert!(r.i1_max_abs < 1e-8 && r.i2_drift < 1e-8, "{}", r.summary_line());
}

#[test]
fn collision_course_stops_at_the_singular_line() {
    // from (1, 1) at 60° the orbit falls onto 3x²y − y³ = 0
    let r = run(&catalog("cubic-eps-plus", 1.0).unwrap(), PI / 3.0, 1e-4, Method::Rk4);
    assert_eq!(r.termination, Termination::SingularApproach);
    let t = r.final_state().unwrap().t;
    assert!((0.16..0.17).contains(&t), "{t}");
}

#[test]
fn time_reversal_returns_to_start() {
    let m = catalog("quartic-ExQ", -12.0).unwrap();
    let s0 = zero_energy_state(&m, 1.0, 1.0, 0.7).unwrap();
    let opts = IntegrateOptions { dt: 1e-3, t_end: 0.5, stride: 1 << 20, ..Default::default() };
    let fwd = integrate(&m, &s0, &opts).unwrap().final_state().unwrap();
    let back = integrate(&m, &PhaseState { t: 0.0, ..fwd.reversed() }, &opts)
        .unwrap()
        .final_state()
        .unwrap()
        .reversed();
    for (a, b) in [(back.x, s0.x), (back.y, s0.y), (back.vx, s0.vx), (back.vy, s0.vy)] {
        assert!((a - b).abs() < 1e-9, "{a} {b}");
    }
}

#[test]
fn wave_model_conserves_under_both_methods() {
    let m = catalog("wave-aiz", 1.0).unwrap();
    let s0 = zero_energy_state(&m, 0.0, -2.0, 0.3).unwrap();
    for method in [Method::Rk4, Method::Rk45] {
        let opts = IntegrateOptions { dt: 1e-3, method, stride: 1 << 20, ..Default::default() };
        let r = integrate(&m, &s0, &opts).unwrap();
        assert_eq!(r.termination, Termination::Completed);
        assert!(r.i2_drift < 1e-8, "{method:?}: {}", r.summary_line());
    }
}
