//! Grid classification: run the pointwise pipeline everywhere on a lattice
//! and reduce to verdicts and worst-case residuals.
//!
//! Verdict definitions (all residuals relative as documented on
//! [`Residuals`]):
//!
//! - `is_centroaffine`: `C = −f` at every point, hence `S = I`, `τ = 0`;
//! - `is_equiaffine`: `τ = 0`;
//! - `is_blaschke`: equiaffine and `|Θ| = ω_h`;
//! - `is_hypersphere`: Blaschke and `S = λ I` with one `λ` for the grid;
//! - `is_affine_hypersphere`: `τ = 0`, `S = λ I` with constant `λ`, and
//!   `|Θ| / ω_h` constant, i.e. a constant rescaling of `C` is a Blaschke
//!   field making the immersion a hypersphere;
//! - `is_hyperquadric`: `∇h = 0`;
//! - `null_dplus`, `null_dminus`: `h` vanishes on `D±` at every point.
//!
//! When both `D+` and `D−` are null for a centro-affine run, the immersion
//! must be an affine hypersphere and a hyperquadric. A report violating that
//! is returned as [`ClassifyError::BothNullGate`].

use nalgebra::{Matrix3, Matrix4x3};
use serde::{Deserialize, Serialize};

use crate::affine::{analyze, AffineData, DerivedTensors, FundamentalResiduals, StructureJets};
use crate::constructors::ImmersionOracle;
use crate::error::GeometryError;
use crate::linalg::DualFrame;
use crate::paracontact::{
    axiom_residuals, induce_jets, null_verdict, structure_residuals, NullDirectionVerdict,
    ParacontactData, StructureResiduals,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Largest accepted 1-norm condition number of `[f_x, f_y, f_z, C]`.
    pub frame_condition: f64,
    /// Relative tolerance for every identity and verdict residual.
    pub identity: f64,
    /// `|h(v, v)| < null_direction · max|h|` marks a null direction.
    pub null_direction: f64,
    /// Largest C-coordinate of `J C`, relative to its tangent part.
    pub j_tangency: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            frame_condition: 1e12,
            identity: 1e-8,
            null_direction: 1e-8,
            j_tangency: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error(
    "unknown tolerance `{0}` (expected frame_condition, identity, null_direction or j_tangency)"
)]
pub struct UnknownTolerance(pub String);

impl Tolerances {
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), UnknownTolerance> {
        let slot = match key {
            "frame_condition" => &mut self.frame_condition,
            "identity" => &mut self.identity,
            "null_direction" => &mut self.null_direction,
            "j_tangency" => &mut self.j_tangency,
            _ => return Err(UnknownTolerance(key.to_string())),
        };
        *slot = value;
        Ok(())
    }
}

/// Uniform lattice over a box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub counts: [usize; 3],
    pub bounds: [(f64, f64); 3],
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            counts: [5; 3],
            bounds: [(-1.0, 1.0); 3],
        }
    }
}

impl Grid {
    /// The box intersected with the oracle's parameter domain along the
    /// curve-parameter axis. `None` when the intersection is empty.
    pub fn restricted_to(&self, oracle: &ImmersionOracle) -> Option<Grid> {
        let axis = oracle.variant().parameter_axis();
        let (lo, hi) = oracle.domain();
        let mut out = self.clone();
        let b = &mut out.bounds[axis];
        b.0 = b.0.max(lo);
        b.1 = b.1.min(hi);
        (b.0 <= b.1).then_some(out)
    }

    pub fn points(&self) -> Vec<[f64; 3]> {
        let axis = |k: usize| -> Vec<f64> {
            let (lo, hi) = self.bounds[k];
            let n = self.counts[k];
            match n {
                0 => vec![],
                1 => vec![0.5 * (lo + hi)],
                _ => (0..n)
                    .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                    .collect(),
            }
        };
        let (xs, ys, zs) = (axis(0), axis(1), axis(2));
        let mut out = Vec::with_capacity(xs.len() * ys.len() * zs.len());
        for &x in &xs {
            for &y in &ys {
                for &z in &zs {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }
}

/// Everything computed at one grid point.
#[derive(Debug, Clone)]
pub struct PointEvaluation {
    pub point: [f64; 3],
    pub structure: StructureJets,
    pub derived: DerivedTensors,
    pub fundamental: FundamentalResiduals,
    /// `σ_min / σ_max` of `[f_x, f_y, f_z]`.
    pub immersion_ratio: f64,
    /// `max|C − (−f)|` relative to `max(1, |f|)`.
    pub centroaffine_defect: f64,
    pub paracontact: Result<ParacontactPoint, GeometryError>,
}

#[derive(Debug, Clone)]
pub struct ParacontactPoint {
    pub data: ParacontactData,
    pub null: NullDirectionVerdict,
    pub identities: StructureResiduals,
    pub axioms: [f64; 3],
}

impl PointEvaluation {
    pub fn affine(&self) -> &AffineData {
        &self.structure.data
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PointError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Eval(#[from] crate::expr::EvalError),
}

/// Run the pointwise pipeline at `p`.
pub fn evaluate_point(
    oracle: &ImmersionOracle,
    p: [f64; 3],
    tol: &Tolerances,
) -> Result<PointEvaluation, PointError> {
    let (f, c) = oracle.jets(p)?;
    let tangent = Matrix4x3::from_columns(&[f.d(&[0]), f.d(&[1]), f.d(&[2])]);
    let sv = tangent.singular_values();
    let immersion_ratio = if sv.max() > 0.0 {
        sv.min() / sv.max()
    } else {
        0.0
    };
    let structure = analyze(&f, &c, tol.frame_condition)?;
    let derived = structure.derived();
    let fundamental = crate::affine::fundamental_residuals(&structure.data, &derived);
    let fv = f.value();
    let centroaffine_defect = (c.value() + fv).amax() / fv.amax().max(1.0);
    let frame = DualFrame::from_jets(&f, &c);
    let paracontact = induce_jets(&frame, tol.frame_condition, tol.j_tangency).map(|pj| {
        let null = null_verdict(&pj.data, &structure.data.h, tol.null_direction);
        let identities = structure_residuals(&structure, &pj);
        let axioms = axiom_residuals(&pj.data);
        ParacontactPoint {
            data: pj.data,
            null,
            identities,
            axioms,
        }
    });
    Ok(PointEvaluation {
        point: p,
        structure,
        derived,
        fundamental,
        immersion_ratio,
        centroaffine_defect,
        paracontact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct Verdicts {
    pub is_immersion: bool,
    pub is_transversal: bool,
    pub is_J_tangent: bool,
    pub is_nondegenerate: bool,
    pub is_centroaffine: bool,
    pub is_equiaffine: bool,
    pub is_blaschke: bool,
    pub is_hypersphere: bool,
    pub is_affine_hypersphere: bool,
    pub is_hyperquadric: bool,
    pub null_Dplus: bool,
    pub null_Dminus: bool,
}

/// Worst values over the grid. Entries marked *relative* are divided by
/// `max(1, size of the compared terms)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub h_asymmetry: f64,
    pub gamma_asymmetry: f64,
    pub reconstruction: f64,
    pub frame_condition: f64,
    pub min_immersion_ratio: f64,
    pub j_tangency_defect: f64,
    /// `min |det h| / max|h|³`.
    pub min_relative_det_h: f64,
    pub gauss: f64,
    pub codazzi_h: f64,
    pub codazzi_s: f64,
    pub ricci: f64,
    pub eta_of_connection: f64,
    pub phi_of_connection: f64,
    pub eta_of_bracket: f64,
    pub phi_of_bracket: f64,
    pub eta_of_nabla_xi: f64,
    pub eta_of_shape: f64,
    /// `max|φ² − I + ξ⊗η|`.
    pub paracontact_square: f64,
    /// `max|η(ξ) − 1|`.
    pub paracontact_normalization: f64,
    /// Eigen and kernel conditions on the `D±` generators.
    pub paracontact_eigen: f64,
    /// Relative `max|C + f|`.
    pub centroaffine: f64,
    pub tau: f64,
    /// Relative `max|S − λ_p I|` with `λ_p = tr S / 3` at each point.
    pub shape_scalar: f64,
    /// Relative `max ||Θ| − ω_h| / ω_h`.
    pub blaschke_volume: f64,
    /// Relative spread of `|Θ| / ω_h` over the grid.
    pub volume_ratio_spread: f64,
    /// `max|∇h| / max(1, max|h|)`.
    pub nabla_h: f64,
    /// `max |h(v+, v+)| / max|h|` for the normalized `D+` generator.
    pub h_dplus: f64,
    pub h_dminus: f64,
    pub theta_range: (f64, f64),
    pub omega_h_range: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaFit {
    /// Mean of `tr S / 3` over the grid.
    pub mean: f64,
    /// `max − min` of `tr S / 3`.
    pub spread: f64,
    /// `λ` declared by the construction.
    pub declared: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFailure {
    pub point: [f64; 3],
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub provenance: String,
    pub variant: String,
    pub tolerances: Tolerances,
    pub verdicts: Verdicts,
    pub lambda: LambdaFit,
    pub residuals: Residuals,
    pub failures: Vec<PointFailure>,
    pub grid: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("sample grid is empty")]
    EmptyGrid,
    #[error(
        "D+ and D- are both null for a centro-affine immersion, but it is not both an affine hypersphere and a hyperquadric"
    )]
    BothNullGate { report: Box<ClassificationReport> },
}

#[derive(Default)]
struct Range {
    lo: f64,
    hi: f64,
    seen: bool,
}

impl Range {
    fn push(&mut self, v: f64) {
        if !self.seen {
            *self = Range {
                lo: v,
                hi: v,
                seen: true,
            };
        } else {
            self.lo = self.lo.min(v);
            self.hi = self.hi.max(v);
        }
    }

    fn pair(&self) -> (f64, f64) {
        if self.seen {
            (self.lo, self.hi)
        } else {
            (f64::NAN, f64::NAN)
        }
    }

    fn spread(&self) -> f64 {
        if self.seen {
            self.hi - self.lo
        } else {
            0.0
        }
    }
}

fn max_tensor3(t: &[[[f64; 3]; 3]; 3]) -> f64 {
    t.iter()
        .flatten()
        .flatten()
        .fold(0.0, |m, v| m.max(v.abs()))
}

/// Classify `oracle` on the given points.
pub fn classify(
    oracle: &ImmersionOracle,
    points: &[[f64; 3]],
    tol: &Tolerances,
) -> Result<ClassificationReport, ClassifyError> {
    if points.is_empty() {
        return Err(ClassifyError::EmptyGrid);
    }
    let mut failures = Vec::new();
    let mut evals = Vec::with_capacity(points.len());
    for &p in points {
        match evaluate_point(oracle, p, tol) {
            Ok(e) => evals.push(e),
            Err(err) => failures.push(PointFailure {
                point: p,
                error: err.to_string(),
            }),
        }
    }
    let report = aggregate(oracle, points, tol, &evals, failures);
    let v = &report.verdicts;
    if v.null_Dplus
        && v.null_Dminus
        && v.is_centroaffine
        && !(v.is_affine_hypersphere && v.is_hyperquadric)
    {
        return Err(ClassifyError::BothNullGate {
            report: Box::new(report),
        });
    }
    Ok(report)
}

fn aggregate(
    oracle: &ImmersionOracle,
    points: &[[f64; 3]],
    tol: &Tolerances,
    evals: &[PointEvaluation],
    mut failures: Vec<PointFailure>,
) -> ClassificationReport {
    let geometric_failure = !failures.is_empty();
    let mut r = Residuals {
        h_asymmetry: 0.0,
        gamma_asymmetry: 0.0,
        reconstruction: 0.0,
        frame_condition: 0.0,
        min_immersion_ratio: f64::INFINITY,
        j_tangency_defect: 0.0,
        min_relative_det_h: f64::INFINITY,
        gauss: 0.0,
        codazzi_h: 0.0,
        codazzi_s: 0.0,
        ricci: 0.0,
        eta_of_connection: 0.0,
        phi_of_connection: 0.0,
        eta_of_bracket: 0.0,
        phi_of_bracket: 0.0,
        eta_of_nabla_xi: 0.0,
        eta_of_shape: 0.0,
        paracontact_square: 0.0,
        paracontact_normalization: 0.0,
        paracontact_eigen: 0.0,
        centroaffine: 0.0,
        tau: 0.0,
        shape_scalar: 0.0,
        blaschke_volume: 0.0,
        volume_ratio_spread: 0.0,
        nabla_h: 0.0,
        h_dplus: 0.0,
        h_dminus: 0.0,
        theta_range: (f64::NAN, f64::NAN),
        omega_h_range: (f64::NAN, f64::NAN),
    };
    let mut lambda = Range::default();
    let mut lambda_sum = 0.0;
    let mut theta = Range::default();
    let mut omega = Range::default();
    let mut ratio = Range::default();
    let mut j_tangent = !geometric_failure;
    let mut null_plus = !geometric_failure;
    let mut null_minus = !geometric_failure;

    for e in evals {
        let d = e.affine();
        let t = &e.derived;
        let h_scale = d.h.amax();
        r.h_asymmetry = r.h_asymmetry.max(d.h_asymmetry);
        r.gamma_asymmetry = r.gamma_asymmetry.max(d.gamma_asymmetry);
        r.reconstruction = r.reconstruction.max(d.reconstruction_residual);
        r.frame_condition = r.frame_condition.max(d.cond);
        r.min_immersion_ratio = r.min_immersion_ratio.min(e.immersion_ratio);
        let rel_det = if h_scale > 0.0 {
            d.h.determinant().abs() / h_scale.powi(3)
        } else {
            0.0
        };
        r.min_relative_det_h = r.min_relative_det_h.min(rel_det);
        r.gauss = r.gauss.max(e.fundamental.gauss);
        r.codazzi_h = r.codazzi_h.max(e.fundamental.codazzi_h);
        r.codazzi_s = r.codazzi_s.max(e.fundamental.codazzi_s);
        r.ricci = r.ricci.max(e.fundamental.ricci);
        r.centroaffine = r.centroaffine.max(e.centroaffine_defect);
        r.tau = r.tau.max(d.tau.amax());

        let lp = d.s.trace() / 3.0;
        lambda.push(lp);
        lambda_sum += lp;
        let scalar = (d.s - Matrix3::identity() * lp).amax() / lp.abs().max(1.0);
        r.shape_scalar = r.shape_scalar.max(scalar);

        theta.push(t.theta);
        omega.push(t.omega_h);
        let volume = if t.omega_h > 0.0 {
            (t.theta.abs() - t.omega_h).abs() / t.omega_h
        } else {
            f64::INFINITY
        };
        r.blaschke_volume = r.blaschke_volume.max(volume);
        ratio.push(t.theta.abs() / t.omega_h);
        r.nabla_h = r.nabla_h.max(max_tensor3(&t.nabla_h) / h_scale.max(1.0));

        match &e.paracontact {
            Ok(pc) => {
                let ids = &pc.identities;
                r.j_tangency_defect = r.j_tangency_defect.max(pc.data.j_tangency_defect);
                r.eta_of_connection = r.eta_of_connection.max(ids.eta_of_connection);
                r.phi_of_connection = r.phi_of_connection.max(ids.phi_of_connection);
                r.eta_of_bracket = r.eta_of_bracket.max(ids.eta_of_bracket);
                r.phi_of_bracket = r.phi_of_bracket.max(ids.phi_of_bracket);
                r.eta_of_nabla_xi = r.eta_of_nabla_xi.max(ids.eta_of_nabla_xi);
                r.eta_of_shape = r.eta_of_shape.max(ids.eta_of_shape);
                r.paracontact_square = r.paracontact_square.max(pc.axioms[0]);
                r.paracontact_normalization = r.paracontact_normalization.max(pc.axioms[1]);
                r.paracontact_eigen = r.paracontact_eigen.max(pc.axioms[2]);
                let scale = h_scale.max(f64::MIN_POSITIVE);
                r.h_dplus = r.h_dplus.max(pc.null.h_dplus.abs() / scale);
                r.h_dminus = r.h_dminus.max(pc.null.h_dminus.abs() / scale);
                null_plus &= pc.null.dplus_null;
                null_minus &= pc.null.dminus_null;
            }
            Err(err) => {
                if let GeometryError::NotJTangent { defect } = err {
                    r.j_tangency_defect = r.j_tangency_defect.max(*defect);
                }
                j_tangent = false;
                null_plus = false;
                null_minus = false;
                failures.push(PointFailure {
                    point: e.point,
                    error: err.to_string(),
                });
            }
        }
    }
    r.theta_range = theta.pair();
    r.omega_h_range = omega.pair();
    let mean_ratio = if evals.is_empty() {
        f64::NAN
    } else {
        evals
            .iter()
            .map(|e| e.derived.theta.abs() / e.derived.omega_h)
            .sum::<f64>()
            / evals.len() as f64
    };
    r.volume_ratio_spread = ratio.spread() / mean_ratio.abs().max(1.0);
    let lambda_mean = if evals.is_empty() {
        f64::NAN
    } else {
        lambda_sum / evals.len() as f64
    };
    let lambda_scale = lambda_mean.abs().max(1.0);

    let tol_id = tol.identity;
    let ok = !geometric_failure;
    let is_immersion = ok && r.min_immersion_ratio >= 1.0 / tol.frame_condition;
    let is_transversal = ok && is_immersion && r.frame_condition <= tol.frame_condition;
    let is_nondegenerate = ok && r.min_relative_det_h > tol_id;
    let is_equiaffine = ok && r.tau <= tol_id;
    let shape_scalar = r.shape_scalar <= tol_id && lambda.spread() <= tol_id * lambda_scale;
    let is_centroaffine = ok
        && r.centroaffine <= tol_id
        && is_equiaffine
        && (lambda_mean - 1.0).abs() <= tol_id
        && shape_scalar;
    let is_blaschke = is_equiaffine && is_nondegenerate && r.blaschke_volume <= tol_id;
    let is_hypersphere = is_blaschke && shape_scalar;
    let is_affine_hypersphere =
        is_equiaffine && is_nondegenerate && shape_scalar && r.volume_ratio_spread <= tol_id;
    let is_hyperquadric = ok && r.nabla_h <= tol_id;

    ClassificationReport {
        schema_version: SCHEMA_VERSION,
        provenance: oracle.provenance().to_string(),
        variant: oracle.variant().to_string(),
        tolerances: *tol,
        verdicts: Verdicts {
            is_immersion,
            is_transversal,
            is_J_tangent: j_tangent,
            is_nondegenerate,
            is_centroaffine,
            is_equiaffine,
            is_blaschke,
            is_hypersphere,
            is_affine_hypersphere,
            is_hyperquadric,
            null_Dplus: null_plus,
            null_Dminus: null_minus,
        },
        lambda: LambdaFit {
            mean: lambda_mean,
            spread: lambda.spread(),
            declared: oracle.lambda(),
        },
        residuals: r,
        failures,
        grid: points.to_vec(),
    }
}
