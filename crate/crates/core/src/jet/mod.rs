//! Truncated Taylor (jet) arithmetic in one and two variables, plus a
//! finite-difference oracle.

mod fd;
mod jet1;
mod jet2;
mod taylor;

pub use fd::{fd_deriv, fd_deriv_richardson, DEFAULT_STEP};
pub use jet1::{Jet1, MAX_ORDER1};
pub use jet2::{Jet2, MAX_ORDER};
pub use taylor::Taylor;

use crate::error::Result;

/// Elementary operations accepted by [`jet_arith`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Div,
    PowReal,
    Sqrt,
    SignedCbrt,
}

/// Second operand of a binary jet operation.
#[derive(Clone, Copy, Debug)]
pub enum Operand {
    Jet(Jet2),
    Real(f64),
}

/// Applies `op` to `a` (and `b` for binary ops). `PowReal` takes its
/// exponent from `b`; the unary ops ignore `b`.
pub fn jet_arith(op: JetOp, a: &Jet2, b: Operand) -> Result<Jet2> {
    let rhs = match b {
        Operand::Jet(j) => j,
        Operand::Real(r) => a.constant_like(r),
    };
    match op {
        JetOp::Add => Ok(*a + rhs),
        JetOp::Sub => Ok(*a - rhs),
        JetOp::Mul => Ok(*a * rhs),
        JetOp::Div => a.try_div(&rhs),
        JetOp::PowReal => a.pow_real(rhs.value()),
        JetOp::Sqrt => a.sqrt(),
        JetOp::SignedCbrt => a.signed_cbrt(),
    }
}

/// Jets of `(x, y)` seeded at a point; shorthand for [`Jet2::seed`].
pub fn seed(x: f64, y: f64, order: usize) -> Result<(Jet2, Jet2)> {
    Jet2::seed(x, y, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arith_dispatch() {
        let (x, y) = seed(1.0, 2.0, 2).unwrap();
        let m = jet_arith(JetOp::Mul, &x, Operand::Jet(y)).unwrap();
        assert_eq!(m.deriv(1, 1).unwrap(), 1.0);
        let c = jet_arith(JetOp::SignedCbrt, &x.constant_like(-8.0), Operand::Real(0.0)).unwrap();
        assert_eq!(c.value(), -2.0);
        let p = jet_arith(JetOp::PowReal, &y, Operand::Real(0.5)).unwrap();
        assert!((p.value() - 2f64.sqrt()).abs() < 1e-15);
        assert!(jet_arith(JetOp::Div, &x, Operand::Real(0.0)).is_err());
    }
}
