//! Central finite differences, used as an independent oracle for the jets.

use crate::error::{Error, Result};

/// Default step for first and second derivatives of O(1)-scaled fields.
pub const DEFAULT_STEP: f64 = 1e-4;

// Second-order central stencils: (offset in units of h, weight).
const STENCILS: [&[(i32, f64)]; 5] = [
    &[(0, 1.0)],
    &[(-1, -0.5), (1, 0.5)],
    &[(-1, 1.0), (0, -2.0), (1, 1.0)],
    &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
    &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
];

/// Estimates `∂x^i ∂y^j f` at `(x, y)` as the tensor product of
/// one-dimensional central stencils. The error is O(h²).
pub fn fd_deriv<F>(f: F, x: f64, y: f64, i: usize, j: usize, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("step h = {h} must be positive")));
    }
    if i + j > 4 {
        return Err(Error::MultiIndex { i, j, order: 4 });
    }
    let mut acc = 0.0;
    for &(a, wa) in STENCILS[i] {
        for &(b, wb) in STENCILS[j] {
            let px = x + a as f64 * h;
            let py = y + b as f64 * h;
            let v = f(px, py);
            if !v.is_finite() {
                return Err(Error::NonFinite { x: px, y: py });
            }
            acc += wa * wb * v;
        }
    }
    Ok(acc / h.powi((i + j) as i32))
}

/// One Richardson step on [`fd_deriv`]: combines steps `h` and `h/2` to
/// cancel the leading O(h²) term.
pub fn fd_deriv_richardson<F>(f: F, x: f64, y: f64, i: usize, j: usize, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let coarse = fd_deriv(&f, x, y, i, j, h)?;
    let fine = fd_deriv(&f, x, y, i, j, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
