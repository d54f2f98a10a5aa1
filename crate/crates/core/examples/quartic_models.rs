//! Quartic-integral models. `R` comes either in closed form or as a line
//! integral from the basepoint; the two differ by a gauge constant.

use integrable::models::{build_quartic, catalog, r_quadrature, RFunction, Coefficients};
use integrable::prepotential::{PrepotentialParams, Sign};
use integrable::verify::residual_structure;

fn main() -> integrable::error::Result<()> {
    let exq = catalog("quartic-ExQ", -12.0)?;
    println!("quartic-ExQ at lambda=-12, basepoint {:?}", exq.basepoint);
    for (x, y) in [(1.0, 1.0), (2.0, 1.0), (1.5, 1.7), (0.4, 2.2)] {
        let closed = exq.r(x, y)?;
        let quad = r_quadrature(&exq, x, y)?;
        println!("  ({x}, {y})  R={closed:>14.9}  quadrature={quad:>14.9}  offset={:.9}", quad - closed);
    }
    println!("crossing an axis: {}", r_quadrature(&exq, -1.0, 1.0).unwrap_err());

    let params = PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 1.0);
    let built = build_quartic(&params, (1.0, 1.0))?;
    let kind = match &built.coeffs {
        Coefficients::Quartic { r: RFunction::Quadrature, .. } => "quadrature",
        _ => "closed form",
    };
    println!("\n{} (R by {kind}), separable={}", built.id, built.separable);
    for (x, y) in [(1.2, 0.9), (0.7, 1.6)] {
        let r = residual_structure(&built, x, y)?;
        println!("  ({x}, {y})  U={:>12.6}  residuals={:?}", built.u(x, y)?, r.values);
    }
    Ok(())
}
