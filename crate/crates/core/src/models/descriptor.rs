use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genfun::IntegralOrder;
use crate::prepotential::{Family, PrepotentialParams, Sign};

use super::{build_cubic, build_quartic, build_wave, catalog, ModelFunctions};

/// Prepotential parameters as written in a descriptor file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamBlock {
    pub lambda: f64,
    #[serde(default = "one")]
    pub mu: f64,
    #[serde(default)]
    pub epsilon: Sign,
    #[serde(default)]
    pub sigma: Sign,
}

fn one() -> f64 {
    1.0
}

fn default_basepoint() -> [f64; 2] {
    [1.0, 1.0]
}

/// A serializable recipe for a model.
///
/// ```json
/// {"kind": "quartic", "family": "beta0",
///  "params": {"lambda": -12, "epsilon": -1}, "basepoint": [1, 1]}
/// {"kind": "wave", "f2": [0, 0, 0, 0, 0.041666666666666664], "f4": []}
/// {"kind": "catalog", "name": "quartic-ExQ", "lambda": -12}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelDescriptor {
    Cubic {
        family: Family,
        params: ParamBlock,
        #[serde(default = "default_basepoint")]
        basepoint: [f64; 2],
    },
    Quartic {
        family: Family,
        params: ParamBlock,
        #[serde(default = "default_basepoint")]
        basepoint: [f64; 2],
    },
    Wave {
        #[serde(default)]
        f2: Vec<f64>,
        #[serde(default)]
        f4: Vec<f64>,
    },
    Catalog {
        name: String,
        #[serde(default = "one")]
        lambda: f64,
    },
}

impl ModelDescriptor {
    pub fn from_json(text: &str) -> Result<ModelDescriptor> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("model descriptor: {e}")))
    }

    pub fn load(path: &Path) -> Result<ModelDescriptor> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        ModelDescriptor::from_json(&text)
    }

    /// The prepotential parameters, for the kinds that have them.
    pub fn prepotential(&self) -> Option<PrepotentialParams> {
        match self {
            ModelDescriptor::Cubic { family, params, .. }
            | ModelDescriptor::Quartic { family, params, .. } => Some(PrepotentialParams {
                family: *family,
                lambda: params.lambda,
                mu: params.mu,
                epsilon: params.epsilon,
                sigma: params.sigma,
                c: 0.0,
            }),
            _ => None,
        }
    }

    /// Replaces the prepotential parameters (or the catalog amplitude).
    pub fn with_params(&self, lambda: f64, mu: f64, epsilon: Sign, sigma: Sign) -> ModelDescriptor {
        let block = ParamBlock {
            lambda,
            mu,
            epsilon,
            sigma,
        };
        match self {
            ModelDescriptor::Cubic { family, basepoint, .. } => ModelDescriptor::Cubic {
                family: *family,
                params: block,
                basepoint: *basepoint,
            },
            ModelDescriptor::Quartic { family, basepoint, .. } => ModelDescriptor::Quartic {
                family: *family,
                params: block,
                basepoint: *basepoint,
            },
            ModelDescriptor::Catalog { name, .. } => ModelDescriptor::Catalog {
                name: name.clone(),
                lambda,
            },
            wave => wave.clone(),
        }
    }

    /// Replaces only the amplitude `λ`; wave descriptors are returned as is.
    pub fn with_lambda(&self, lambda: f64) -> ModelDescriptor {
        match self.prepotential() {
            Some(p) => self.with_params(lambda, p.mu, p.epsilon, p.sigma),
            None => self.with_params(lambda, 1.0, Sign::Plus, Sign::Plus),
        }
    }

    /// The integral order of prepotential-built descriptors.
    pub fn order(&self) -> Option<IntegralOrder> {
        match self {
            ModelDescriptor::Cubic { .. } => Some(IntegralOrder::Cubic),
            ModelDescriptor::Quartic { .. } => Some(IntegralOrder::Quartic),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<ModelFunctions> {
        match self {
            ModelDescriptor::Cubic { basepoint, .. } => {
                let p = self.prepotential().expect("cubic descriptor has parameters");
                build_cubic(&p, Some((basepoint[0], basepoint[1])))
            }
            ModelDescriptor::Quartic { basepoint, .. } => {
                let p = self.prepotential().expect("quartic descriptor has parameters");
                build_quartic(&p, (basepoint[0], basepoint[1]))
            }
            ModelDescriptor::Wave { f2, f4 } => build_wave(f2, f4),
            ModelDescriptor::Catalog { name, lambda } => catalog(name, *lambda),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_prepotential_descriptor() {
        let d = ModelDescriptor::from_json(
            r#"{"kind":"quartic","family":"beta0","params":{"lambda":-12,"epsilon":-1},"basepoint":[1,1]}"#,
        )
        .unwrap();
        let m = d.build().unwrap();
        assert!((m.u(1.0, 1.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn parses_catalog_and_wave() {
        let d = ModelDescriptor::from_json(r#"{"kind":"catalog","name":"wave-aiz"}"#).unwrap();
        assert_eq!(d.build().unwrap().id, "wave-aiz");
        let d = ModelDescriptor::from_json(r#"{"kind":"wave","f2":[],"f4":[0,0,1]}"#).unwrap();
        assert_eq!(d.build().unwrap().u(0.0, 0.0).unwrap(), -1.0);
    }

    #[test]
    fn rejects_mixed_fields() {
        let r = ModelDescriptor::from_json(r#"{"kind":"catalog","name":"wave-aiz","f2":[1]}"#);
        assert!(matches!(r, Err(Error::Config(_))));
        let r = ModelDescriptor::from_json(r#"{"kind":"cubic","family":"beta0"}"#);
        assert!(r.is_err());
        let r = ModelDescriptor::from_json(
            r#"{"kind":"cubic","family":"beta0","params":{"lambda":1,"epsilon":2}}"#,
        );
        assert!(r.is_err());
    }

    #[test]
    fn round_trips_through_json() {
        let d = ModelDescriptor::Cubic {
            family: Family::BetaPm,
            params: ParamBlock {
                lambda: 1.0,
                mu: 2.0,
                epsilon: Sign::Minus,
                sigma: Sign::Plus,
            },
            basepoint: [1.0, 1.0],
        };
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(ModelDescriptor::from_json(&text).unwrap(), d);
    }
}
