//! Immersions built from curve data.
//!
//! Every immersion has the form `f = J g cosh z − g sinh z` with
//! `g = g(x, y)` assembled from curves in one parameter `t`. For the `D+`
//! variants `t = y` and the linear variable is `x`; for `D−` the roles swap.
//!
//! - centro-affine: `g = s γ1(t) + γ2(t)` with `γ1 = (α, ±α)`, `C = −f`;
//! - hypersphere: `g = (s + A(t)) (α, ±α) + B(t) (α′, ±α′) + (β, ∓β)` with
//!   `B = E / √|det[α, α′] det[β, β′]|` and `C = −λ f`,
//!   `|λ| = 4^(−4/5) |E|^(−4/5)`.

pub mod gallery;
pub mod random;

use std::fmt;

use crate::curve::{lift_curve, CurveSpec};
use crate::expr::EvalError;
use crate::jets::{Jet3, Jet3Vec4};
use crate::paracomplex::{apply_j, det2, det4, eigen_embed, Eigen, Vec4};

pub use gallery::{gallery, GalleryName};

/// Number of parameter samples used to validate curve data.
pub const DEFAULT_VALIDATION_SAMPLES: usize = 64;

/// Which eigendistribution of `φ` is the declared null direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Dplus,
    Dminus,
}

impl Variant {
    /// Axis of the curve parameter `t`.
    pub fn parameter_axis(self) -> usize {
        match self {
            Variant::Dplus => 1,
            Variant::Dminus => 0,
        }
    }

    /// Axis of the variable entering `g` linearly.
    pub fn linear_axis(self) -> usize {
        1 - self.parameter_axis()
    }

    /// Eigenspace containing `γ1`.
    pub fn eigen(self) -> Eigen {
        match self {
            Variant::Dplus => Eigen::Plus,
            Variant::Dminus => Eigen::Minus,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Dplus => "D+",
            Variant::Dminus => "D-",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentroAffineSpec {
    pub variant: Variant,
    /// Planar curve generating `γ1 = (α, ±α)`.
    pub alpha: CurveSpec,
    /// Curve in `R^4`.
    pub gamma2: CurveSpec,
    pub domain: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereSpec {
    pub variant: Variant,
    pub alpha: CurveSpec,
    pub beta: CurveSpec,
    /// Scalar curve `A`.
    pub a: CurveSpec,
    pub e: f64,
    /// `+1` or `−1`.
    pub lambda_sign: f64,
    pub domain: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("curve data degenerate at t = {t}: determinant {det:e} below threshold")]
    DegenerateCurveData { t: f64, det: f64 },
    #[error("E must be nonzero")]
    ZeroE,
    #[error("lambda_sign must be +1 or -1, got {0}")]
    BadLambdaSign(f64),
    #[error("curve `{name}` has {found} components, expected {expected}")]
    Dimension {
        name: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("invalid parameter domain [{0}, {1}]")]
    Domain(f64, f64),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq)]
enum Generator {
    Centro(CentroAffineSpec),
    Sphere(SphereSpec),
}

/// Jets of `f` and of its transversal field `C = c_scale · f`, together with
/// construction metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmersionOracle {
    generator: Generator,
    provenance: String,
    lambda: f64,
    c_scale: f64,
}

/// Hadamard bound `|v1| |v2| |v3| |v4|` on `|det[v1, v2, v3, v4]|`.
fn det_scale(v: [&Vec4; 4]) -> f64 {
    v.iter().map(|x| x.norm()).product()
}

fn sample_params(domain: (f64, f64), samples: usize) -> impl Iterator<Item = f64> {
    let n = samples.max(2);
    (0..n).map(move |k| domain.0 + (domain.1 - domain.0) * k as f64 / (n - 1) as f64)
}

fn check_domain(domain: (f64, f64)) -> Result<(), ConstructionError> {
    if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 < domain.1) {
        return Err(ConstructionError::Domain(domain.0, domain.1));
    }
    Ok(())
}

fn check_dim(
    curve: &CurveSpec,
    name: &'static str,
    expected: usize,
) -> Result<(), ConstructionError> {
    if curve.dim() != expected {
        return Err(ConstructionError::Dimension {
            name,
            found: curve.dim(),
            expected,
        });
    }
    Ok(())
}

fn planar(curve: &CurveSpec, order: usize, t: f64) -> Result<[f64; 2], EvalError> {
    let v = curve.eval(order, t)?;
    Ok([v[0], v[1]])
}

fn vec4(v: &[f64]) -> Vec4 {
    Vec4::from_fn(|i, _| v.get(i).copied().unwrap_or(0.0))
}

/// Planar curve lifted to `(c, sign·c)` along `axis`, derivatives
/// `offset..offset + 3` of `c`.
fn lift_embedded(
    curve: &CurveSpec,
    axis: usize,
    offset: usize,
    sign: Eigen,
    t: f64,
) -> Result<Jet3Vec4, EvalError> {
    let c = curve.lift_components(axis, offset, t)?;
    let s = sign.sign();
    Ok(Jet3Vec4([c[0], c[1], c[0].scale(s), c[1].scale(s)]))
}

/// `det[c, c′]` as a jet in `t`.
fn planar_wronskian(curve: &CurveSpec, axis: usize, t: f64) -> Result<Jet3, EvalError> {
    let c = curve.lift_components(axis, 0, t)?;
    let d = curve.lift_components(axis, 1, t)?;
    Ok(c[0] * d[1] - c[1] * d[0])
}

/// `F(z) = J v cosh z − v sinh z`, the solution of `F′ = −J F` with
/// `F(0) = J v`.
pub fn hyperbolic_solution(v: &Vec4, z: f64) -> Vec4 {
    apply_j(v) * z.cosh() - v * z.sinh()
}

/// `f = J g cosh z − g sinh z` as a jet.
pub fn immersion_from_g(g: &Jet3Vec4, z: f64) -> Jet3Vec4 {
    let zj = Jet3::variable(2, z);
    g.apply_j().scale(&zj.cosh()) - g.scale(&zj.sinh())
}

/// `|λ|` determined by the constant `E`.
pub fn lambda_magnitude(e: f64) -> f64 {
    1.0 / (4.0f64.powf(0.8) * e.abs().powf(0.8))
}

impl CentroAffineSpec {
    /// `det[γ1, γ2′, γ2, J γ2]` at `t`, and its natural scale.
    pub fn determinant(&self, t: f64) -> Result<(f64, f64), EvalError> {
        let g1 = eigen_embed(planar(&self.alpha, 0, t)?, self.variant.eigen());
        let g2 = vec4(&self.gamma2.eval(0, t)?);
        let dg2 = vec4(&self.gamma2.eval(1, t)?);
        let jg2 = apply_j(&g2);
        let cols = [&g1, &dg2, &g2, &jg2];
        Ok((det4(cols[0], cols[1], cols[2], cols[3]), det_scale(cols)))
    }

    pub fn validate(&self, samples: usize) -> Result<(), ConstructionError> {
        check_domain(self.domain)?;
        check_dim(&self.alpha, "alpha", 2)?;
        check_dim(&self.gamma2, "gamma2", 4)?;
        for t in sample_params(self.domain, samples) {
            let (det, scale) = self.determinant(t)?;
            if det.abs() <= 1e-10 * scale.max(f64::MIN_POSITIVE) {
                return Err(ConstructionError::DegenerateCurveData { t, det });
            }
        }
        Ok(())
    }

    /// Smallest `|det[γ1, γ2′, γ2, J γ2]|` over the sample grid.
    pub fn min_determinant(&self, samples: usize) -> Result<f64, EvalError> {
        sample_params(self.domain, samples).try_fold(f64::INFINITY, |m, t| {
            Ok(m.min(self.determinant(t)?.0.abs()))
        })
    }
}

impl SphereSpec {
    /// `det[α, α′] · det[β, β′]` at `t`.
    pub fn determinant(&self, t: f64) -> Result<f64, EvalError> {
        let a = det2(planar(&self.alpha, 0, t)?, planar(&self.alpha, 1, t)?);
        let b = det2(planar(&self.beta, 0, t)?, planar(&self.beta, 1, t)?);
        Ok(a * b)
    }

    fn determinant_scale(&self, t: f64) -> Result<f64, EvalError> {
        let n = |c: &CurveSpec, k| -> Result<f64, EvalError> {
            let v = c.eval(k, t)?;
            Ok(v.iter().map(|x| x * x).sum::<f64>().sqrt())
        };
        Ok(n(&self.alpha, 0)? * n(&self.alpha, 1)? * n(&self.beta, 0)? * n(&self.beta, 1)?)
    }

    pub fn validate(&self, samples: usize) -> Result<(), ConstructionError> {
        check_domain(self.domain)?;
        check_dim(&self.alpha, "alpha", 2)?;
        check_dim(&self.beta, "beta", 2)?;
        check_dim(&self.a, "A", 1)?;
        if self.e == 0.0 || !self.e.is_finite() {
            return Err(ConstructionError::ZeroE);
        }
        if self.lambda_sign != 1.0 && self.lambda_sign != -1.0 {
            return Err(ConstructionError::BadLambdaSign(self.lambda_sign));
        }
        for t in sample_params(self.domain, samples) {
            let det = self.determinant(t)?;
            if det.abs() <= 1e-10 * self.determinant_scale(t)?.max(f64::MIN_POSITIVE) {
                return Err(ConstructionError::DegenerateCurveData { t, det });
            }
        }
        Ok(())
    }

    /// `B(t) = E / √|det[α, α′] det[β, β′]|`.
    pub fn b(&self, t: f64) -> Result<f64, EvalError> {
        Ok(self.e / self.determinant(t)?.abs().sqrt())
    }

    /// `B` as a jet along `axis`; needs derivatives of `α`, `β` to order 4.
    fn b_jet(&self, axis: usize, t: f64) -> Result<Jet3, EvalError> {
        let d = planar_wronskian(&self.alpha, axis, t)? * planar_wronskian(&self.beta, axis, t)?;
        let magnitude = if d.value() < 0.0 { -d } else { d };
        Ok(magnitude.powf(-0.5).scale(self.e))
    }

    pub fn lambda(&self) -> f64 {
        self.lambda_sign * lambda_magnitude(self.e)
    }

    /// `(min B, max B, min |det[α, α′] det[β, β′]|)` over the sample grid.
    pub fn summary(&self, samples: usize) -> Result<(f64, f64, f64), EvalError> {
        let mut out = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY);
        for t in sample_params(self.domain, samples) {
            let b = self.b(t)?;
            out.0 = out.0.min(b);
            out.1 = out.1.max(b);
            out.2 = out.2.min(self.determinant(t)?.abs());
        }
        Ok(out)
    }
}

/// Centro-affine immersion with `C = −f`.
pub fn build_centroaffine(spec: CentroAffineSpec) -> Result<ImmersionOracle, ConstructionError> {
    build_centroaffine_with(spec, DEFAULT_VALIDATION_SAMPLES)
}

pub fn build_centroaffine_with(
    spec: CentroAffineSpec,
    samples: usize,
) -> Result<ImmersionOracle, ConstructionError> {
    spec.validate(samples)?;
    let provenance = format!("centro-affine {} generator", spec.variant);
    Ok(ImmersionOracle {
        generator: Generator::Centro(spec),
        provenance,
        lambda: 1.0,
        c_scale: -1.0,
    })
}

/// Affine hypersphere with `C = −λ f`.
pub fn build_sphere(spec: SphereSpec) -> Result<ImmersionOracle, ConstructionError> {
    build_sphere_with(spec, DEFAULT_VALIDATION_SAMPLES)
}

pub fn build_sphere_with(
    spec: SphereSpec,
    samples: usize,
) -> Result<ImmersionOracle, ConstructionError> {
    spec.validate(samples)?;
    let lambda = spec.lambda();
    let provenance = format!(
        "affine hypersphere {} generator, E = {}",
        spec.variant, spec.e
    );
    Ok(ImmersionOracle {
        generator: Generator::Sphere(spec),
        provenance,
        lambda,
        c_scale: -lambda,
    })
}

impl ImmersionOracle {
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub(crate) fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// `λ` of the designated field `C = −λ f`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Factor `k` in `C = k f`.
    pub fn transversal_scale(&self) -> f64 {
        self.c_scale
    }

    /// Same immersion with `C = k f`.
    pub fn with_transversal_scale(mut self, k: f64) -> Self {
        self.c_scale = k;
        self.lambda = -k;
        self
    }

    pub fn variant(&self) -> Variant {
        match &self.generator {
            Generator::Centro(s) => s.variant,
            Generator::Sphere(s) => s.variant,
        }
    }

    pub fn is_sphere_construction(&self) -> bool {
        matches!(self.generator, Generator::Sphere(_))
    }

    /// Interval of the curve parameter.
    pub fn domain(&self) -> (f64, f64) {
        match &self.generator {
            Generator::Centro(s) => s.domain,
            Generator::Sphere(s) => s.domain,
        }
    }

    pub fn centroaffine_spec(&self) -> Option<&CentroAffineSpec> {
        match &self.generator {
            Generator::Centro(s) => Some(s),
            Generator::Sphere(_) => None,
        }
    }

    pub fn sphere_spec(&self) -> Option<&SphereSpec> {
        match &self.generator {
            Generator::Sphere(s) => Some(s),
            Generator::Centro(_) => None,
        }
    }

    /// Jet of `g` at `(x, y)`.
    pub fn g_jet(&self, x: f64, y: f64) -> Result<Jet3Vec4, EvalError> {
        let variant = self.variant();
        let (pa, la) = (variant.parameter_axis(), variant.linear_axis());
        let p = [x, y];
        let t = p[pa];
        let s = Jet3::variable(la, p[la]);
        let sign = variant.eigen();
        match &self.generator {
            Generator::Centro(spec) => {
                let g1 = lift_embedded(&spec.alpha, pa, 0, sign, t)?;
                let g2 = lift_curve(&spec.gamma2, pa, t)?;
                Ok(g1.scale(&s) + g2)
            }
            Generator::Sphere(spec) => {
                let a = spec.a.lift_components(pa, 0, t)?[0];
                let g1 = lift_embedded(&spec.alpha, pa, 0, sign, t)?;
                let dg1 = lift_embedded(&spec.alpha, pa, 1, sign, t)?;
                let beta = lift_embedded(&spec.beta, pa, 0, sign.opposite(), t)?;
                let b = spec.b_jet(pa, t)?;
                Ok(g1.scale(&(s + a)) + dg1.scale(&b) + beta)
            }
        }
    }

    /// Jet of `f` at `(x, y, z)`.
    pub fn f_jet(&self, p: [f64; 3]) -> Result<Jet3Vec4, EvalError> {
        Ok(immersion_from_g(&self.g_jet(p[0], p[1])?, p[2]))
    }

    /// Jets of `f` and `C` at `(x, y, z)`.
    pub fn jets(&self, p: [f64; 3]) -> Result<(Jet3Vec4, Jet3Vec4), EvalError> {
        let f = self.f_jet(p)?;
        let c = f.scale_f64(self.c_scale);
        Ok((f, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &[&str]) -> CurveSpec {
        CurveSpec::parse(s).unwrap()
    }

    #[test]
    fn hyperbolic_solution_at_zero_is_jv() {
        let v = Vec4::new(1.0, -2.0, 0.5, 3.0);
        assert_eq!(hyperbolic_solution(&v, 0.0), apply_j(&v));
    }

    #[test]
    fn hyperbolic_solution_on_fixed_vector_decays() {
        let v = Vec4::new(0.7, -1.1, 0.7, -1.1);
        let z: f64 = 0.8;
        let expected = v * (-z).exp();
        assert!((hyperbolic_solution(&v, z) - expected).amax() < 1e-14);
    }

    #[test]
    fn lambda_from_quarter_is_one() {
        assert!((lambda_magnitude(0.25) - 1.0).abs() < 1e-15);
        assert!((lambda_magnitude(-0.25) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn centroaffine_g_matches_closed_form() {
        let spec = CentroAffineSpec {
            variant: Variant::Dplus,
            alpha: curve(&["t", "-1"]),
            gamma2: curve(&["1", "t", "0", "0"]),
            domain: (-1.0, 1.0),
        };
        let oracle = build_centroaffine(spec).unwrap();
        let (x, y) = (0.3, -0.6);
        let g = oracle.g_jet(x, y).unwrap().value();
        let expected = Vec4::new(x * y + 1.0, -x + y, x * y, -x);
        assert!((g - expected).amax() < 1e-15);
    }

    #[test]
    fn sphere_g_matches_closed_form() {
        let spec = SphereSpec {
            variant: Variant::Dplus,
            alpha: curve(&["1", "t"]),
            beta: curve(&["cos(t)", "sin(t)"]),
            a: curve(&["0"]),
            e: 0.25,
            lambda_sign: 1.0,
            domain: (-1.0, 1.0),
        };
        let oracle = build_sphere(spec).unwrap();
        assert!((oracle.lambda() - 1.0).abs() < 1e-15);
        let (x, y) = (0.4, 0.9);
        let g = oracle.g_jet(x, y).unwrap();
        let expected = Vec4::new(
            x + y.cos(),
            y * x + y.sin() + 0.25,
            x - y.cos(),
            y * x - y.sin() + 0.25,
        );
        assert!((g.value() - expected).amax() < 1e-15);
        // B is constant here, so ∂_y g is exact.
        let dy = Vec4::new(-y.sin(), x + y.cos(), y.sin(), x - y.cos());
        assert!((g.d(&[1]) - dy).amax() < 1e-14);
    }

    #[test]
    fn dependent_curve_data_is_degenerate() {
        // γ2 constant: γ2′ = 0, so the determinant vanishes identically.
        let spec = CentroAffineSpec {
            variant: Variant::Dplus,
            alpha: curve(&["1", "0"]),
            gamma2: curve(&["1", "0", "1", "0"]),
            domain: (-1.0, 1.0),
        };
        let err = build_centroaffine(spec).unwrap_err();
        assert!(matches!(err, ConstructionError::DegenerateCurveData { t, .. } if t == -1.0));
    }

    #[test]
    fn zero_e_is_rejected() {
        let spec = SphereSpec {
            variant: Variant::Dminus,
            alpha: curve(&["1", "t"]),
            beta: curve(&["cos(t)", "sin(t)"]),
            a: curve(&["0"]),
            e: 0.0,
            lambda_sign: 1.0,
            domain: (-1.0, 1.0),
        };
        assert_eq!(build_sphere(spec).unwrap_err(), ConstructionError::ZeroE);
    }

    #[test]
    fn wrong_dimension_is_reported() {
        let spec = CentroAffineSpec {
            variant: Variant::Dplus,
            alpha: curve(&["1", "t", "0"]),
            gamma2: curve(&["1", "t", "0", "0"]),
            domain: (-1.0, 1.0),
        };
        assert!(matches!(
            build_centroaffine(spec),
            Err(ConstructionError::Dimension { name: "alpha", .. })
        ));
    }
}
