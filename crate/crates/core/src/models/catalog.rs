//! Hard-coded closed-form models. They are written out independently of
//! the builders so that the two can be compared.

use crate::error::{Error, Result};
use crate::field::{Field, Locus, SingularSet};
use crate::genfun::{GenFun, IntegralOrder};
use crate::jet::{Jet2, Taylor};

use super::{Coefficients, ModelFunctions, ModelKind, RFunction};

/// A catalog listing entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: ModelKind,
    pub description: &'static str,
}

pub const CATALOG: [CatalogEntry; 6] = [
    CatalogEntry {
        name: "cubic-eps-plus",
        kind: ModelKind::Cubic,
        description: "U = 3λ(x²+y²)²/(3x²y−y³)², cubic integral; from p = λ/u",
    },
    CatalogEntry {
        name: "cubic-eps-minus",
        kind: ModelKind::Cubic,
        description: "U = −λ(x²+y²)²/(3x²y−y³)^{2/3}, cubic integral; from p = λu^{1/3}",
    },
    CatalogEntry {
        name: "quartic-ExQ",
        kind: ModelKind::Quartic,
        description: "U = −(λ/12)(x²+y²)(xy)^{−2/3}, quartic integral with closed-form R",
    },
    CatalogEntry {
        name: "wave-aiz",
        kind: ModelKind::Wave,
        description: "U = −λ[(x²+y²)/2 + x²y + y³/3], reducible quartic integral −(ẋẏ − Q/2)²",
    },
    CatalogEntry {
        name: "trivial-E1y",
        kind: ModelKind::Cubic,
        description: "E = λy⁵: U = −(20/3)λy³ with J = K = 0",
    },
    CatalogEntry {
        name: "trivial-F-sum",
        kind: ModelKind::Quartic,
        description: "F = λ(x⁴+y⁴): separable U = −3λ(x²+y²)",
    },
];

fn r2(x: &Jet2, y: &Jet2) -> Jet2 {
    *x * *x + *y * *y
}

fn u_cubic(x: &Jet2, y: &Jet2) -> Jet2 {
    *x * *x * *y * 3.0 - *y * *y * *y
}

fn cubic_u_locus() -> Locus {
    Locus::zero("3x^2y-y^3", |x, y| 3.0 * x * x * y - y * y * y)
}

fn xy_locus() -> Locus {
    Locus::zero("xy", |x, y| x * y)
}

/// The catalog model `name` at amplitude `lambda`.
pub fn catalog(name: &str, lambda: f64) -> Result<ModelFunctions> {
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda = {lambda}")));
    }
    let l = lambda;
    let m = match name {
        "cubic-eps-plus" => {
            let singular = SingularSet::new(vec![
                cubic_u_locus(),
                Locus::zero("3x^2-y^2", |x, y| 3.0 * x * x - y * y),
            ]);
            let d2 = |x: &Jet2, y: &Jet2| {
                let d = *x * *x * 3.0 - *y * *y;
                d * d
            };
            ModelFunctions {
                id: name.into(),
                kind: ModelKind::Cubic,
                potential: Field::new(move |x, y| {
                    let u = u_cubic(x, y);
                    let r = r2(x, y);
                    (r * r * (3.0 * l)).try_div(&(u * u))
                }),
                coeffs: Coefficients::Cubic {
                    j: Field::new(move |x, y| {
                        ((*x * *x * 3.0 + *y * *y) * (-6.0 * l)).try_div(&d2(x, y))
                    }),
                    k: Field::new(move |x, y| (*x * *y * (-12.0 * l)).try_div(&d2(x, y))),
                },
                genfun: Some(GenFun::new(
                    IntegralOrder::Cubic,
                    Field::new(move |x, y| Ok(u_cubic(x, y).ln_abs()? * l)),
                    singular.clone(),
                    "E=λln|u|",
                )),
                singular,
                basepoint: (1.0, 1.0),
                separable: false,
                reducible: false,
                sign_convention: None,
            }
        }
        "cubic-eps-minus" => {
            let singular = SingularSet::new(vec![cubic_u_locus()]);
            let c2 = |x: &Jet2, y: &Jet2| -> Result<Jet2> {
                let c = u_cubic(x, y).signed_cbrt()?;
                Ok(c * c)
            };
            ModelFunctions {
                id: name.into(),
                kind: ModelKind::Cubic,
                potential: Field::new(move |x, y| {
                    let r = r2(x, y);
                    (r * r * -l).try_div(&c2(x, y)?)
                }),
                coeffs: Coefficients::Cubic {
                    j: Field::new(move |x, y| {
                        (*y * *y * (*x * *x * 5.0 - *y * *y) * (6.0 * l)).try_div(&c2(x, y)?)
                    }),
                    k: Field::new(move |x, y| {
                        (*x * *y * (*x * *x * 2.0 - *y * *y) * (-12.0 * l)).try_div(&c2(x, y)?)
                    }),
                },
                genfun: Some(GenFun::new(
                    IntegralOrder::Cubic,
                    Field::new(move |x, y| {
                        let u = u_cubic(x, y);
                        Ok(u * u.signed_cbrt()? * (0.75 * l))
                    }),
                    singular.clone(),
                    "E=(3λ/4)u^{4/3}",
                )),
                singular,
                basepoint: (1.0, 1.0),
                separable: false,
                reducible: false,
                sign_convention: None,
            }
        }
        "quartic-ExQ" => {
            let singular = SingularSet::new(vec![xy_locus()]);
            ModelFunctions {
                id: name.into(),
                kind: ModelKind::Quartic,
                potential: Field::new(move |x, y| {
                    let c = (*x * *y).signed_cbrt()?;
                    (r2(x, y) * (-l / 12.0)).try_div(&(c * c))
                }),
                coeffs: Coefficients::Quartic {
                    p: Field::new(move |x, y| {
                        let c = (*x * *y).signed_cbrt()?;
                        (c * *y * (l / 3.0)).try_div(x)
                    }),
                    q: Field::new(move |x, y| Ok((*x * *y).signed_cbrt()? * (-4.0 * l / 3.0))),
                    r: RFunction::Closed(Field::new(move |x, y| {
                        let c = (*x * *y).signed_cbrt()?;
                        let ratio = (*y * *y).try_div(&(*x * *x))?;
                        Ok(c * c * (8.0 - ratio) * (-l * l / 36.0))
                    })),
                },
                genfun: Some(GenFun::new(
                    IntegralOrder::Quartic,
                    Field::new(move |x, y| {
                        let s = *x * *y;
                        Ok(s * s.signed_cbrt()? * (0.75 * l))
                    }),
                    singular.clone(),
                    "F=(3λ/4)s^{4/3}",
                )),
                singular,
                basepoint: (1.0, 1.0),
                separable: false,
                reducible: false,
                sign_convention: None,
            }
        }
        "wave-aiz" => {
            let u0 = move |x: &Jet2, y: &Jet2| {
                (r2(x, y) * 0.5 + *x * *x * *y + *y * *y * *y * (1.0 / 3.0)) * -l
            };
            let q0 = move |x: &Jet2, y: &Jet2| {
                (*x * *y + *x * *x * *x * (1.0 / 3.0) + *x * *y * *y) * (-2.0 * l)
            };
            ModelFunctions {
                id: name.into(),
                kind: ModelKind::Wave,
                potential: Field::new(move |x, y| Ok(u0(x, y))),
                coeffs: Coefficients::Quartic {
                    p: Field::new(move |x, y| Ok(u0(x, y) * -2.0)),
                    q: Field::new(move |x, y| Ok(q0(x, y))),
                    r: RFunction::Closed(Field::new(move |x, y| {
                        let q = q0(x, y);
                        Ok(q * q * -0.25)
                    })),
                },
                genfun: Some(GenFun::new(
                    IntegralOrder::Quartic,
                    Field::new(move |x, y| {
                        let a = *x - *y;
                        let b = *x + *y;
                        let f2 = a.powi(4)? * (1.0 / 24.0) - a.powi(5)? * (1.0 / 60.0);
                        let f4 = b.powi(4)? * (1.0 / 24.0) + b.powi(5)? * (1.0 / 60.0);
                        Ok((f2 + f4) * l)
                    }),
                    SingularSet::empty(),
                    "F=F2(x-y)+F4(x+y)",
                )),
                singular: SingularSet::empty(),
                basepoint: (0.0, 0.0),
                separable: false,
                reducible: true,
                sign_convention: None,
            }
        }
        "trivial-E1y" => ModelFunctions {
            id: name.into(),
            kind: ModelKind::Cubic,
            potential: Field::new(move |_, y| Ok(y.powi(3)? * (-20.0 * l / 3.0))),
            coeffs: Coefficients::Cubic {
                j: Field::zero(),
                k: Field::zero(),
            },
            genfun: Some(GenFun::new(
                IntegralOrder::Cubic,
                Field::new(move |_, y| Ok(y.powi(5)? * l)),
                SingularSet::empty(),
                "E=λy^5",
            )),
            singular: SingularSet::empty(),
            basepoint: (0.0, 0.0),
            separable: true,
            reducible: false,
            sign_convention: None,
        },
        "trivial-F-sum" => ModelFunctions {
            id: name.into(),
            kind: ModelKind::Quartic,
            potential: Field::new(move |x, y| Ok(r2(x, y) * (-3.0 * l))),
            coeffs: Coefficients::Quartic {
                p: Field::new(move |x, _| Ok(*x * *x * (12.0 * l))),
                q: Field::zero(),
                r: RFunction::Closed(Field::new(move |x, _| Ok(x.powi(4)? * (36.0 * l * l)))),
            },
            genfun: Some(GenFun::new(
                IntegralOrder::Quartic,
                Field::new(move |x, y| Ok((x.powi(4)? + y.powi(4)?) * l)),
                SingularSet::empty(),
                "F=λ(x^4+y^4)",
            )),
            singular: SingularSet::empty(),
            basepoint: (0.0, 0.0),
            separable: true,
            reducible: false,
            sign_convention: None,
        },
        other => return Err(Error::UnknownModel(other.to_string())),
    };
    Ok(m)
}
