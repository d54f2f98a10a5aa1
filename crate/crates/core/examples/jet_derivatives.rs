//! Exact higher derivatives of a composite through 2D jets, checked
//! against Richardson-extrapolated finite differences.

use integrable::jet::{fd_deriv_richardson, Jet2, Taylor};

fn main() -> integrable::error::Result<()> {
    let (x0, y0) = (0.7, -0.4);
    // f = exp(x y) / (1 + x²)
    let f = |x: &Jet2, y: &Jet2| -> integrable::error::Result<Jet2> {
        let num = (*x * *y).exp()?;
        num.try_div(&(*x * *x + 1.0))
    };
    let (jx, jy) = Jet2::seed(x0, y0, 4)?;
    let jet = f(&jx, &jy)?;
    let scalar = |x: f64, y: f64| {
        let (a, b) = Jet2::seed(x, y, 0).unwrap();
        f(&a, &b).unwrap().value()
    };
    println!("{:>6} {:>22} {:>22} {:>10}", "(i,j)", "jet", "finite diff", "gap");
    for total in 1..=4 {
        for i in (0..=total).rev() {
            let j = total - i;
            let exact = jet.deriv(i, j)?;
            let fd = fd_deriv_richardson(scalar, x0, y0, i, j, 1e-2)?;
            println!("({i},{j})  {exact:>22.15e} {fd:>22.15e} {:>10.2e}", (exact - fd).abs());
        }
    }
    Ok(())
}
