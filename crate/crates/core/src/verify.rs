//! Comparison of a gallery example against its closed-form reference data.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, evaluate_point, ClassificationReport, ClassifyError, Tolerances};
use crate::constructors::{gallery, GalleryName, Variant};

/// Tolerance for reference values of `h`, `Θ`, `ω_h`, `det h`, `h(v, v)`.
pub const REFERENCE_TOLERANCE: f64 = 1e-9;
/// Tolerance for `h(X, X) = 0` on the second null direction of `ex43`.
pub const NULL_FIELD_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Reference value at the worst point.
    pub expected: f64,
    /// Computed value at the worst point.
    pub actual: f64,
    /// Worst error over the grid.
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub point: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub schema_version: u32,
    pub example: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("evaluation failed at {point:?}: {error}")]
    Point { point: [f64; 3], error: String },
}

/// Worst-case comparison accumulated over grid points.
struct Worst {
    name: String,
    tolerance: f64,
    relative: bool,
    check: Option<Check>,
}

impl Worst {
    fn new(name: impl Into<String>, tolerance: f64, relative: bool) -> Self {
        Worst {
            name: name.into(),
            tolerance,
            relative,
            check: None,
        }
    }

    fn push(&mut self, p: [f64; 3], expected: f64, actual: f64) {
        let mut error = (actual - expected).abs();
        if self.relative {
            error /= expected.abs().max(f64::MIN_POSITIVE);
        }
        if self
            .check
            .as_ref()
            .is_none_or(|c| error > c.error || error.is_nan())
        {
            self.check = Some(Check {
                name: self.name.clone(),
                expected,
                actual,
                error,
                tolerance: self.tolerance,
                pass: false,
                point: Some(p),
            });
        }
    }

    fn finish(self) -> Option<Check> {
        self.check.map(|mut c| {
            c.pass = c.error <= c.tolerance;
            c
        })
    }
}

fn verdict_check(name: &str, expected: bool, actual: bool) -> Check {
    let b = |v: bool| if v { 1.0 } else { 0.0 };
    Check {
        name: format!("verdict {name}"),
        expected: b(expected),
        actual: b(actual),
        error: (b(expected) - b(actual)).abs(),
        tolerance: 0.0,
        pass: expected == actual,
        point: None,
    }
}

/// Classify a gallery example on `points` and compare every reference value.
pub fn verify_example(
    name: GalleryName,
    points: &[[f64; 3]],
    tol: &Tolerances,
) -> Result<Verification, VerifyError> {
    let oracle = gallery(name);
    let report = classify(&oracle, points, tol)?;

    let variant = oracle.variant();
    let coordinate_axis = variant.linear_axis();
    let axis_name = ["d/dx", "d/dy", "d/dz"][coordinate_axis];
    let mut h = Worst::new("h entries", REFERENCE_TOLERANCE, false);
    let mut theta = Worst::new("theta (relative)", REFERENCE_TOLERANCE, true);
    let mut omega = Worst::new("omega_h (relative)", REFERENCE_TOLERANCE, true);
    let mut det_h = Worst::new("det h (relative)", REFERENCE_TOLERANCE, true);
    let mut generator = Worst::new(
        format!("{variant} generator = {axis_name}"),
        REFERENCE_TOLERANCE,
        false,
    );
    let field = name.eigen_field([0.0; 3]);
    let mut field_h = field.as_ref().map(|f| {
        let label = f.label.split(" =").next().unwrap_or(f.label);
        let tol = if f.h_value == 0.0 {
            NULL_FIELD_TOLERANCE
        } else {
            REFERENCE_TOLERANCE
        };
        Worst::new(format!("h({label},{label})"), tol, false)
    });
    let mut field_eigen = field.as_ref().map(|f| {
        Worst::new(
            format!("{} lies in {}", f.label, f.variant),
            REFERENCE_TOLERANCE,
            false,
        )
    });

    for &p in points {
        let e = evaluate_point(&oracle, p, tol).map_err(|err| VerifyError::Point {
            point: p,
            error: err.to_string(),
        })?;
        let pc = e.paracontact.as_ref().map_err(|err| VerifyError::Point {
            point: p,
            error: err.to_string(),
        })?;
        let d = e.affine();
        let expected_h = name.expected_h(p);
        let (i, j) = (d.h - expected_h).iamax_full();
        h.push(p, expected_h[(i, j)], d.h[(i, j)]);
        theta.push(p, name.expected_theta(p), e.derived.theta);
        omega.push(p, name.expected_omega_h(p), e.derived.omega_h);
        if matches!(name, GalleryName::Ex53F1 | GalleryName::Ex53F2) {
            det_h.push(p, 4.0, d.h.determinant());
        }
        let gen = match variant {
            Variant::Dplus => pc.data.dplus,
            Variant::Dminus => pc.data.dminus,
        };
        let unit = Vector3::from_fn(|k, _| if k == coordinate_axis { 1.0 } else { 0.0 });
        let (k, _) = (gen - unit).iamax_full();
        generator.push(p, unit[k], gen[k]);

        if let (Some(f), Some(fh), Some(fe)) =
            (name.eigen_field(p), field_h.as_mut(), field_eigen.as_mut())
        {
            fh.push(p, f.h_value, f.v.dot(&(d.h * f.v)));
            let s = match f.variant {
                Variant::Dplus => 1.0,
                Variant::Dminus => -1.0,
            };
            let defect = (pc.data.phi * f.v - f.v * s)
                .amax()
                .max(pc.data.eta.dot(&f.v).abs());
            fe.push(p, 0.0, defect / f.v.amax());
        }
    }

    let mut checks: Vec<Check> = [
        Some(h),
        Some(theta),
        Some(omega),
        Some(det_h),
        Some(generator),
        field_h,
        field_eigen,
    ]
    .into_iter()
    .flatten()
    .filter_map(Worst::finish)
    .collect();
    let ev = name.expected_verdicts();
    let v = &report.verdicts;
    checks.push(verdict_check(
        "is_centroaffine",
        ev.centroaffine,
        v.is_centroaffine,
    ));
    checks.push(verdict_check("is_J_tangent", true, v.is_J_tangent));
    checks.push(verdict_check("is_nondegenerate", true, v.is_nondegenerate));
    checks.push(verdict_check("null_Dplus", ev.null_dplus, v.null_Dplus));
    checks.push(verdict_check("null_Dminus", ev.null_dminus, v.null_Dminus));
    checks.push(verdict_check(
        "is_hypersphere",
        ev.hypersphere,
        v.is_hypersphere,
    ));
    checks.push(verdict_check(
        "is_hyperquadric",
        ev.hyperquadric,
        v.is_hyperquadric,
    ));

    Ok(Verification {
        schema_version: crate::classify::SCHEMA_VERSION,
        example: name.to_string(),
        passed: checks.iter().all(|c| c.pass),
        checks,
        report,
    })
}
