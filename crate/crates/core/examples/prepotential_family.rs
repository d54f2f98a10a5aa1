//! The closed-form prepotentials: values, reduced-equation residuals, the
//! cubic they solve and the implicit relation `s(p)`.

use integrable::prepotential::{
    cubic_roots, normalized_reduced_residual, p_eval, p_jet, s_of_p, PrepotentialParams, Sign,
};

fn main() -> integrable::error::Result<()> {
    let families = [
        ("beta0 eps=+1", PrepotentialParams::beta0(Sign::Plus, 1.0)),
        ("beta0 eps=-1", PrepotentialParams::beta0(Sign::Minus, 1.0)),
        ("beta_pm eps=+1 sigma=+1", PrepotentialParams::beta_pm(Sign::Plus, Sign::Plus, 1.0, 1.0)),
        ("beta_pm eps=-1 sigma=+1", PrepotentialParams::beta_pm(Sign::Minus, Sign::Plus, 1.0, 1.0)),
        ("beta_pm eps=+1 sigma=-1", PrepotentialParams::beta_pm(Sign::Plus, Sign::Minus, 1.0, 1.0)),
    ];
    for (name, params) in families {
        println!("{name}");
        for s in [1.5, 2.0, 5.0] {
            let p = p_eval(&params, s)?;
            let res = normalized_reduced_residual(&p_jet(&params, s, 2)?, s, 0.0)?;
            println!("  s={s:<4} p={p:>20.15} residual={res:.1e}");
        }
    }

    let (eps, sigma) = (Sign::Plus, Sign::Plus);
    let params = PrepotentialParams::beta_pm(eps, sigma, 1.0, 1.0);
    let s = 2.0;
    let p = p_eval(&params, s)?;
    println!("\nroots of the cubic at s={s}: {:?}", cubic_roots(s, eps, sigma));
    println!("p_eval({s}) = {p}, s_of_p(p) = {}", s_of_p(p, eps, sigma)?);

    // the lower sign only exists for |s| >= mu
    let lower = PrepotentialParams::beta_pm(eps, Sign::Minus, 1.0, 1.0);
    println!("sigma=-1 at s=0.5: {}", p_eval(&lower, 0.5).unwrap_err());
    Ok(())
}
