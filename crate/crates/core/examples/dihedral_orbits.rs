//! Dihedral images and rescalings of generating functions. Images of a
//! solution stay solutions; the orbit routine counts which ones coincide.

use integrable::genfun::{GenFun, IntegralOrder};
use integrable::prepotential::{PrepotentialParams, Sign};
use integrable::symmetry::{check_invariant_vars, orbit_multiplicities, rescale_genfun, transform_genfun, DihedralElement, Group};
use integrable::verify::residual_master_normalized;

fn main() -> integrable::error::Result<()> {
    let r8 = DihedralElement::new(Group::D8, 1, false)?;
    let c = check_invariant_vars(&r8, 2.0, 3.0);
    println!("D8 generator at (2,3): (s,t) {:?} -> {:?}", c.before, c.after);

    let cases = [
        (IntegralOrder::Cubic, PrepotentialParams::beta0(Sign::Plus, 1.0)),
        (IntegralOrder::Cubic, PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 1.0)),
        (IntegralOrder::Quartic, PrepotentialParams::beta0(Sign::Minus, 1.0)),
        (IntegralOrder::Quartic, PrepotentialParams::beta_pm(Sign::Minus, Sign::Plus, 1.0, 1.0)),
    ];
    for (order, params) in cases {
        let g = GenFun::from_prepotential(order, &params)?;
        let group = Group::for_order(order);
        let worst = group
            .elements()
            .iter()
            .filter_map(|e| {
                let img = transform_genfun(e, &g);
                let jet = img.master_jet(1.1, 0.35).ok()?;
                residual_master_normalized(order, &jet).ok()
            })
            .fold(0.0f64, f64::max);
        let orbit = orbit_multiplicities(&g, 1e-9)?;
        println!(
            "{} {:?} {:?}/{:?}: worst image residual {worst:.1e}, {} distinct images, multiplicities {:?}",
            g.label, params.family, params.epsilon, params.sigma, orbit.len(), orbit.multiplicities()
        );
    }

    let g = GenFun::parse("E:(sqrt(3)*x+y)^5")?;
    let scaled = rescale_genfun(&g, 2.0, 0.5)?;
    let jet = scaled.master_jet(0.3, 0.8)?;
    println!("\n{}: residual {:.1e}", scaled.label, residual_master_normalized(IntegralOrder::Cubic, &jet)?);
    Ok(())
}
