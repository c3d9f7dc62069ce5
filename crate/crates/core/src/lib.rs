//! Construction and numerical certification of J-tangent centro-affine
//! hypersurfaces and affine hyperspheres in `R^4`.
//!
//! Immersions have the shape `f(x, y, z) = J g(x, y) cosh z - g(x, y) sinh z`
//! where `J(a, b, c, d) = (c, d, a, b)`. The pipeline is:
//!
//! 1. curves are written in a small expression language ([`expr`], [`curve`]);
//! 2. [`constructors`] turn curve data into order-3 jets of `f` and of the
//!    transversal field `C` ([`jets`]);
//! 3. [`affine`] solves the Gauss and Weingarten formulas for `h`, `Γ`, `S`,
//!    `τ` and their first derivatives;
//! 4. [`paracontact`] induces `(φ, ξ, η)` and the eigendirections `D±`;
//! 5. [`classify`] aggregates everything over a grid into a report.

#![allow(
    clippy::needless_range_loop,
    clippy::suspicious_arithmetic_impl,
    clippy::redundant_guards
)]
pub mod affine;
pub mod classify;
pub mod cli;
pub mod constructors;
pub mod curve;
pub mod error;
pub mod expr;
pub mod jets;
pub mod linalg;
pub mod paracomplex;
pub mod paracontact;
pub mod specfile;
pub mod verify;

pub use affine::{AffineData, DerivedTensors, StructureJets};
pub use classify::{classify, ClassificationReport, Tolerances};
pub use constructors::{ImmersionOracle, Variant};
pub use curve::CurveSpec;
pub use error::GeometryError;
pub use expr::Expr;
pub use jets::{Dual3, Jet3, Jet3Vec4};
pub use paracomplex::Vec4;
pub use paracontact::ParacontactData;
