//! Quasi-random grid reports for structure equations and master equations.

use integrable::genfun::GenFun;
use integrable::models::catalog;
use integrable::verify::{grid_report, Region, Target};

fn main() -> integrable::error::Result<()> {
    let region = Region::parse("1,1,2,2")?;
    for (name, lambda) in [("cubic-eps-plus", 1.0), ("cubic-eps-minus", 1.0), ("quartic-ExQ", -12.0), ("wave-aiz", 1.0)] {
        let m = catalog(name, lambda)?;
        let r = grid_report(Target::Model(&m), &region, 200, 1e-9, 0)?;
        println!("{name:<16} {:<5} max normalized {:.2e} pass={}", r.equation_set.name(), r.max_normalized, r.pass);
    }

    // a solution, a trivial solution and the negative control
    for spec in ["F:x^4+y^4", "E:y^5", "E:x^4"] {
        let g = GenFun::parse(spec)?;
        let r = grid_report(Target::GenFun(&g), &Region::parse("-1,-1,1,1")?, 100, 1e-8, 1)?;
        println!("{spec:<10} max normalized {:.2e} pass={}", r.max_normalized, r.pass);
    }

    let m = catalog("quartic-ExQ", -12.0)?;
    println!("\n{}", grid_report(Target::Model(&m), &region, 50, 1e-9, 7)?.to_json());
    Ok(())
}
