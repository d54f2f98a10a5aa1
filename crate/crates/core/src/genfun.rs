//! Generating functions `E` (cubic integrals) and `F` (quartic integrals).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::field::{Field, Locus, SingularSet};
use crate::jet::{Jet2, Taylor};
use crate::prepotential::{generating_derivs, Family, PrepotentialParams, Sign};

/// Degree of the higher integral in the velocities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegralOrder {
    Cubic,
    Quartic,
}

impl IntegralOrder {
    /// Jet order the master equation needs.
    pub fn master_order(self) -> usize {
        match self {
            IntegralOrder::Cubic => 3,
            IntegralOrder::Quartic => 4,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            IntegralOrder::Cubic => 'E',
            IntegralOrder::Quartic => 'F',
        }
    }
}

/// The invariant variable on jets: `u = 3x²y − y³` (cubic) or `s = xy`
/// (quartic).
pub fn invariant_jet(order: IntegralOrder, x: &Jet2, y: &Jet2) -> Jet2 {
    match order {
        IntegralOrder::Cubic => *x * *x * *y * 3.0 - *y * *y * *y,
        IntegralOrder::Quartic => *x * *y,
    }
}

pub(crate) fn invariant_value(order: IntegralOrder, x: f64, y: f64) -> f64 {
    match order {
        IntegralOrder::Cubic => 3.0 * x * x * y - y * y * y,
        IntegralOrder::Quartic => x * y,
    }
}

/// Loci where `p` evaluated at the invariant variable is undefined.
pub(crate) fn prepotential_loci(order: IntegralOrder, params: &PrepotentialParams) -> Vec<Locus> {
    let name = match order {
        IntegralOrder::Cubic => "3x^2y-y^3",
        IntegralOrder::Quartic => "xy",
    };
    let mut loci = vec![Locus::zero(name, move |x, y| invariant_value(order, x, y))];
    if params.family == Family::BetaPm && params.sigma == Sign::Minus {
        let mu = params.mu;
        loci.push(Locus::positive("|w|-mu", move |x, y| {
            invariant_value(order, x, y).abs() - mu
        }));
    }
    loci
}

/// `f(w(x, y))` on jets, given `f` and its derivatives at `w`.
pub(crate) fn compose_at(w: &Jet2, derivs: &[f64]) -> Result<Jet2> {
    w.compose(derivs)
}

/// A generating function with the loci where it is undefined.
#[derive(Clone, Debug)]
pub struct GenFun {
    pub order: IntegralOrder,
    pub field: Field,
    pub singular: SingularSet,
    pub label: String,
}

impl GenFun {
    pub fn new(order: IntegralOrder, field: Field, singular: SingularSet, label: &str) -> GenFun {
        GenFun {
            order,
            field,
            singular,
            label: label.to_string(),
        }
    }

    /// `E = f(u)` or `F = f(s)` with `f' = p`. On the `β² = ±1` family `f`
    /// is known only up to a constant, which the master equation ignores.
    pub fn from_prepotential(order: IntegralOrder, params: &PrepotentialParams) -> Result<GenFun> {
        params.validate()?;
        if params.c != 0.0 {
            return Err(Error::NoSolutionFamily(params.c));
        }
        let p = *params;
        let field = Field::new(move |x, y| {
            let w = invariant_jet(order, x, y);
            let d = generating_derivs(&p, w.value(), w.order())?;
            compose_at(&w, &d)
        });
        let label = format!("{}=f({})", order.symbol(), match order {
            IntegralOrder::Cubic => 'u',
            IntegralOrder::Quartic => 's',
        });
        Ok(GenFun::new(
            order,
            field,
            SingularSet::new(prepotential_loci(order, params)),
            &label,
        ))
    }

    /// Parses `E:<expr>` or `F:<expr>`; a bare expression is taken as `E`.
    pub fn parse(spec: &str) -> Result<GenFun> {
        let (order, body) = match spec.split_once(':') {
            Some(("E", rest)) => (IntegralOrder::Cubic, rest),
            Some(("F", rest)) => (IntegralOrder::Quartic, rest),
            Some((tag, _)) => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("generating function tag must be E or F, got `{tag}`"),
                })
            }
            None => (IntegralOrder::Cubic, spec),
        };
        let expr = Expr::parse(body)?;
        Ok(GenFun::new(
            order,
            expr.into_field(),
            SingularSet::empty(),
            &format!("{}:{}", order.symbol(), body.trim()),
        ))
    }

    /// Jet at the order required by the master equation.
    pub fn master_jet(&self, x: f64, y: f64) -> Result<Jet2> {
        if self.singular.contains(x, y) {
            return Err(Error::Singular { x, y });
        }
        self.field.jet(x, y, self.order.master_order())
    }
}
