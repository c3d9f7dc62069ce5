//! Worked examples with closed-form reference values.
//!
//! | name      | generator          | `g(x, y)`                                              |
//! |-----------|--------------------|--------------------------------------------------------|
//! | `ex41`    | centro-affine `D+` | `(xy + 1, −x + y, xy, −x)`                             |
//! | `ex42`    | centro-affine `D−` | `(xy + 1, x − y, −xy, y)`                              |
//! | `ex43`    | centro-affine `D−` | `(x + y/2 − xy + 1/4, x + y/2 + xy − 1/4, …)`          |
//! | `ex53_f1` | hypersphere `D+`   | `(x + cos y, yx + sin y + 1/4, x − cos y, yx − sin y + 1/4)` |
//! | `ex53_f2` | hypersphere `D−`   | `(y + cos x, xy + sin x + 1/4, −y + cos x, −xy + sin x − 1/4)` |
//!
//! All use `C = −f`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};

use super::{
    build_centroaffine, build_sphere, CentroAffineSpec, ImmersionOracle, SphereSpec, Variant,
};
use crate::curve::CurveSpec;

/// Parameter interval of every gallery curve.
pub const GALLERY_DOMAIN: (f64, f64) = (-10.0, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GalleryName {
    Ex41,
    Ex42,
    Ex43,
    Ex53F1,
    Ex53F2,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown example `{0}` (expected one of ex41, ex42, ex43, ex53_f1, ex53_f2)")]
pub struct UnknownExample(pub String);

impl GalleryName {
    pub const ALL: [GalleryName; 5] = [
        GalleryName::Ex41,
        GalleryName::Ex42,
        GalleryName::Ex43,
        GalleryName::Ex53F1,
        GalleryName::Ex53F2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GalleryName::Ex41 => "ex41",
            GalleryName::Ex42 => "ex42",
            GalleryName::Ex43 => "ex43",
            GalleryName::Ex53F1 => "ex53_f1",
            GalleryName::Ex53F2 => "ex53_f2",
        }
    }

    /// Reference `h` in the coordinate frame at `(x, y, z)`.
    pub fn expected_h(self, p: [f64; 3]) -> Matrix3<f64> {
        let [x, y, _] = p;
        match self {
            GalleryName::Ex41 => {
                let q = 1.0 / (y * y + 1.0);
                let b = (2.0 * x + y) * q;
                Matrix3::new(0.0, -q, 0.0, -q, 0.0, b, 0.0, b, -1.0)
            }
            GalleryName::Ex42 => {
                let q = 1.0 / (x * x + 1.0);
                let b = -(x + 2.0 * y) * q;
                Matrix3::new(0.0, -q, b, -q, 0.0, 0.0, b, 0.0, -1.0)
            }
            GalleryName::Ex43 => {
                Matrix3::new(0.0, -2.0, -4.0 * y, -2.0, 0.0, 0.0, -4.0 * y, 0.0, -1.0)
            }
            GalleryName::Ex53F1 => {
                Matrix3::new(0.0, -2.0, 0.0, -2.0, 0.5, 4.0 * x, 0.0, 4.0 * x, -1.0)
            }
            GalleryName::Ex53F2 => {
                Matrix3::new(0.5, -2.0, -4.0 * y, -2.0, 0.0, 0.0, -4.0 * y, 0.0, -1.0)
            }
        }
    }

    /// Reference `Θ(∂_x, ∂_y, ∂_z)`.
    pub fn expected_theta(self, p: [f64; 3]) -> f64 {
        match self {
            GalleryName::Ex41 => p[1] * p[1] + 1.0,
            GalleryName::Ex42 => p[0] * p[0] + 1.0,
            _ => 2.0,
        }
    }

    /// Reference `ω_h(∂_x, ∂_y, ∂_z)`.
    pub fn expected_omega_h(self, p: [f64; 3]) -> f64 {
        match self {
            GalleryName::Ex41 => 1.0 / (p[1] * p[1] + 1.0),
            GalleryName::Ex42 => 1.0 / (p[0] * p[0] + 1.0),
            _ => 2.0,
        }
    }

    pub fn expected_verdicts(self) -> ExpectedVerdicts {
        let (null_dplus, null_dminus, hypersphere, hyperquadric) = match self {
            GalleryName::Ex41 => (true, false, false, false),
            GalleryName::Ex42 => (false, true, false, false),
            GalleryName::Ex43 => (true, true, true, true),
            GalleryName::Ex53F1 => (true, false, true, false),
            GalleryName::Ex53F2 => (false, true, true, false),
        };
        ExpectedVerdicts {
            centroaffine: true,
            null_dplus,
            null_dminus,
            hypersphere,
            hyperquadric,
        }
    }

    /// Explicit eigenvector field of `φ` with its reference `h(v, v)`.
    pub fn eigen_field(self, p: [f64; 3]) -> Option<EigenField> {
        let [x, y, _] = p;
        let quarter_x = Vector3::new(0.25, y * y, -y);
        match self {
            GalleryName::Ex43 => Some(EigenField {
                label: "X = 1/4 d/dx + y^2 d/dy - y d/dz",
                variant: Variant::Dplus,
                v: quarter_x,
                h_value: 0.0,
            }),
            GalleryName::Ex53F1 => Some(EigenField {
                label: "Y = x^2 d/dx + 1/4 d/dy + x d/dz",
                variant: Variant::Dminus,
                v: Vector3::new(x * x, 0.25, x),
                h_value: 1.0 / 32.0,
            }),
            GalleryName::Ex53F2 => Some(EigenField {
                label: "X = 1/4 d/dx + y^2 d/dy - y d/dz",
                variant: Variant::Dplus,
                v: quarter_x,
                h_value: 1.0 / 32.0,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for GalleryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GalleryName {
    type Err = UnknownExample;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GalleryName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| UnknownExample(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedVerdicts {
    pub centroaffine: bool,
    pub null_dplus: bool,
    pub null_dminus: bool,
    pub hypersphere: bool,
    pub hyperquadric: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenField {
    pub label: &'static str,
    /// Eigendistribution the field lies in.
    pub variant: Variant,
    pub v: Vector3<f64>,
    pub h_value: f64,
}

fn curve(s: &[&str]) -> CurveSpec {
    CurveSpec::parse(s).expect("gallery curves are valid")
}

fn centro(variant: Variant, alpha: &[&str], gamma2: &[&str]) -> ImmersionOracle {
    build_centroaffine(CentroAffineSpec {
        variant,
        alpha: curve(alpha),
        gamma2: curve(gamma2),
        domain: GALLERY_DOMAIN,
    })
    .expect("gallery curve data is nondegenerate")
}

fn sphere(variant: Variant) -> ImmersionOracle {
    build_sphere(SphereSpec {
        variant,
        alpha: curve(&["1", "t"]),
        beta: curve(&["cos(t)", "sin(t)"]),
        a: curve(&["0"]),
        e: 0.25,
        lambda_sign: 1.0,
        domain: GALLERY_DOMAIN,
    })
    .expect("gallery curve data is nondegenerate")
}

/// Oracle for a gallery example, with `C = −f`.
pub fn gallery(name: GalleryName) -> ImmersionOracle {
    let oracle = match name {
        GalleryName::Ex41 => centro(Variant::Dplus, &["t", "-1"], &["1", "t", "0", "0"]),
        GalleryName::Ex42 => centro(Variant::Dminus, &["t", "-1"], &["1", "t", "0", "0"]),
        GalleryName::Ex43 => centro(
            Variant::Dminus,
            &["0.5 - t", "0.5 + t"],
            &["t + 0.25", "t - 0.25", "t + 0.75", "t - 0.75"],
        ),
        GalleryName::Ex53F1 => sphere(Variant::Dplus),
        GalleryName::Ex53F2 => sphere(Variant::Dminus),
    };
    oracle.with_provenance(format!("gallery {name}"))
}
