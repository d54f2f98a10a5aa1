//! Cubic-integral models: the catalog closed forms against models built
//! from the prepotential, with structure-equation residuals.

use integrable::dynamics::{eval_i2, PhaseState};
use integrable::models::{build_cubic, catalog, CATALOG};
use integrable::prepotential::{PrepotentialParams, Sign};
use integrable::verify::residual_structure;

fn main() -> integrable::error::Result<()> {
    for entry in CATALOG.iter().filter(|c| c.name.starts_with("cubic")) {
        println!("{:<16} {}", entry.name, entry.description);
    }

    let pairs = [
        ("cubic-eps-plus", PrepotentialParams::beta0(Sign::Plus, 1.0)),
        ("cubic-eps-minus", PrepotentialParams::beta0(Sign::Minus, 1.0)),
    ];
    for (name, params) in pairs {
        let closed = catalog(name, 1.0)?;
        let built = build_cubic(&params, None)?;
        println!("\n{name}: built as {} ({:?} signs)", built.id, built.sign_convention.unwrap());
        for (x, y) in [(1.0, 1.0), (1.3, 0.4), (0.8, 1.9)] {
            let du = (closed.u(x, y)? - built.u(x, y)?).abs();
            let r = residual_structure(&built, x, y)?;
            println!("  ({x}, {y})  U={:>12.6}  |dU|={du:.1e}  residual={:.1e}", built.u(x, y)?, r.normalized_max());
        }
    }

    let m = catalog("cubic-eps-plus", 1.0)?;
    let v = 6f64.sqrt();
    let i2 = eval_i2(&m, &PhaseState::new(1.0, 1.0, 0.0, v))?;
    println!("\nI2 at (1,1) moving straight up on the shell: {i2:.12} (-3*sqrt(6) = {:.12})", -3.0 * v);
    println!("on the singular line: {}", m.u(1.0, 0.0).unwrap_err());
    Ok(())
}
