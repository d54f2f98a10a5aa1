//! Models from solutions of the wave equation carry a quartic integral that
//! is minus the square of a quadratic one.

use integrable::dynamics::{eval_i1, eval_i2_polynomial, eval_i2_reducible, integrate, zero_energy_state, IntegrateOptions};
use integrable::models::{build_wave, catalog};

fn main() -> integrable::error::Result<()> {
    let m = catalog("wave-aiz", 1.0)?;
    let s0 = zero_energy_state(&m, 0.0, -2.0, 0.3)?;
    let opts = IntegrateOptions { stride: 250, ..Default::default() };
    let traj = integrate(&m, &s0, &opts)?;
    println!("{:>6} {:>22} {:>22} {:>10}", "t", "I2 (polynomial)", "-(xdot ydot - Q/2)^2", "I1");
    for row in &traj.rows {
        let s = row.state;
        println!(
            "{:>6.3} {:>22.15e} {:>22.15e} {:>10.1e}",
            s.t,
            eval_i2_polynomial(&m, &s)?,
            eval_i2_reducible(&m, &s)?,
            eval_i1(&m, &s)?
        );
    }
    println!("{}", traj.summary_line());

    // any pair of polynomials works: F = (x-y)^4 + (x+y)^6/30
    let custom = build_wave(&[0.0, 0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0 / 30.0])?;
    println!("\n{}: U(0.5, -0.2) = {}", custom.id, custom.u(0.5, -0.2)?);
    Ok(())
}
