//! How well RK4 and Dormand-Prince keep both integrals, and the fourth-order
//! decay of the drift as the step halves.

use integrable::dynamics::{integrate, zero_energy_state, IntegrateOptions, Method};
use integrable::models::catalog;

fn main() -> integrable::error::Result<()> {
    let m = catalog("quartic-ExQ", -12.0)?;
    let s0 = zero_energy_state(&m, 1.0, 1.0, 0.7)?;
    let mut prev = f64::NAN;
    println!("{:>8} {:>12} {:>12} {:>7}", "dt", "I1_max", "I2_drift", "ratio");
    for dt in [4e-2, 2e-2, 1e-2, 5e-3, 2.5e-3] {
        let opts = IntegrateOptions { dt, stride: usize::MAX, ..Default::default() };
        let r = integrate(&m, &s0, &opts)?;
        println!("{dt:>8.1e} {:>12.3e} {:>12.3e} {:>7.2}", r.i1_max_abs, r.i2_drift, prev / r.i2_drift);
        prev = r.i2_drift;
    }

    let opts = IntegrateOptions { dt: 1e-2, method: Method::Rk45, tol: 1e-11, stride: usize::MAX, ..Default::default() };
    let r = integrate(&m, &s0, &opts)?;
    println!("rk45: {} in {} steps", r.summary_line(), r.steps);

    // this orbit falls onto the singular line 3x²y - y³ = 0
    let cubic = catalog("cubic-eps-plus", 1.0)?;
    let s0 = zero_energy_state(&cubic, 1.0, 1.0, std::f64::consts::FRAC_PI_3)?;
    let r = integrate(&cubic, &s0, &IntegrateOptions { dt: 1e-4, stride: usize::MAX, ..Default::default() })?;
    println!("cubic-eps-plus at 60 degrees: {} at t={:.4}", r.termination.name(), r.final_state().unwrap().t);
    Ok(())
}
