//! JSON spec files for the constructors.
//!
//! One flat object, discriminated by `variant`:
//!
//! ```json
//! { "variant": "centroaffine_dplus",
//!   "alpha": ["t", "-1"], "gamma2": ["1", "t", "0", "0"], "domain": [-1, 1] }
//!
//! { "variant": "sphere_dminus",
//!   "alpha": ["1", "t"], "beta": ["cos(t)", "sin(t)"], "A": "0",
//!   "E": 0.25, "lambda_sign": 1, "domain": [-1, 1] }
//! ```
//!
//! `domain` defaults to `[-1, 1]` and `lambda_sign` to `1`.

use serde::{Deserialize, Serialize};

use crate::constructors::{
    build_centroaffine, build_sphere, CentroAffineSpec, ConstructionError, ImmersionOracle,
    SphereSpec, Variant,
};
use crate::curve::CurveSpec;
use crate::expr::ParseError;

fn default_domain() -> [f64; 2] {
    [-1.0, 1.0]
}

fn default_lambda_sign() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentroFields {
    pub alpha: Vec<String>,
    pub gamma2: Vec<String>,
    #[serde(default = "default_domain")]
    pub domain: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereFields {
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(default = "default_lambda_sign")]
    pub lambda_sign: f64,
    #[serde(default = "default_domain")]
    pub domain: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SpecFile {
    CentroaffineDplus(CentroFields),
    CentroaffineDminus(CentroFields),
    SphereDplus(SphereFields),
    SphereDminus(SphereFields),
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("spec file is not valid: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}[{index}]: {source}")]
    Expression {
        field: &'static str,
        index: usize,
        #[source]
        source: ParseError,
    },
}

/// Parsed spec, ready to build.
#[derive(Debug, Clone, PartialEq)]
pub enum Spec {
    CentroAffine(CentroAffineSpec),
    Sphere(SphereSpec),
}

fn curve(field: &'static str, sources: &[String]) -> Result<CurveSpec, SpecError> {
    CurveSpec::parse(sources).map_err(|(index, source)| SpecError::Expression {
        field,
        index,
        source,
    })
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<SpecFile, SpecError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_spec(&self) -> Result<Spec, SpecError> {
        let centro = |variant, c: &CentroFields| -> Result<Spec, SpecError> {
            Ok(Spec::CentroAffine(CentroAffineSpec {
                variant,
                alpha: curve("alpha", &c.alpha)?,
                gamma2: curve("gamma2", &c.gamma2)?,
                domain: (c.domain[0], c.domain[1]),
            }))
        };
        let sphere = |variant, s: &SphereFields| -> Result<Spec, SpecError> {
            Ok(Spec::Sphere(SphereSpec {
                variant,
                alpha: curve("alpha", &s.alpha)?,
                beta: curve("beta", &s.beta)?,
                a: curve("A", std::slice::from_ref(&s.a))?,
                e: s.e,
                lambda_sign: s.lambda_sign,
                domain: (s.domain[0], s.domain[1]),
            }))
        };
        match self {
            SpecFile::CentroaffineDplus(c) => centro(Variant::Dplus, c),
            SpecFile::CentroaffineDminus(c) => centro(Variant::Dminus, c),
            SpecFile::SphereDplus(s) => sphere(Variant::Dplus, s),
            SpecFile::SphereDminus(s) => sphere(Variant::Dminus, s),
        }
    }
}

impl Spec {
    pub fn build(self) -> Result<ImmersionOracle, ConstructionError> {
        match self {
            Spec::CentroAffine(s) => build_centroaffine(s),
            Spec::Sphere(s) => build_sphere(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_spec_with_defaults() {
        let f = SpecFile::from_json(
            r#"{"variant":"sphere_dplus","alpha":["1","t"],"beta":["cos(t)","sin(t)"],"A":"0","E":0.25}"#,
        )
        .unwrap();
        match f.to_spec().unwrap() {
            Spec::Sphere(s) => {
                assert_eq!(s.lambda_sign, 1.0);
                assert_eq!(s.domain, (-1.0, 1.0));
                assert_eq!(s.variant, Variant::Dplus);
            }
            Spec::CentroAffine(_) => panic!("wrong variant"),
        }
    }

    #[test]
    fn expression_errors_name_the_component() {
        let f = SpecFile::from_json(
            r#"{"variant":"centroaffine_dminus","alpha":["t","sin(t"],"gamma2":["1","t","0","0"]}"#,
        )
        .unwrap();
        let err = f.to_spec().unwrap_err();
        assert!(err.to_string().starts_with("alpha[1]:"), "{err}");
    }

    #[test]
    fn unknown_fields_and_variants_are_rejected() {
        assert!(SpecFile::from_json(r#"{"variant":"torus","alpha":["t","1"]}"#).is_err());
        assert!(SpecFile::from_json(
            r#"{"variant":"centroaffine_dplus","alpha":["t","1"],"gamma2":["1","t","0","0"],"beta":[]}"#
        )
        .is_err());
    }
}
