//! Induced affine structure from the Gauss and Weingarten formulas
//!
//! ```text
//! f_ij  = Σ_m Γ^m_ij f_m + h_ij C
//! ∂_i C = −Σ_m S^m_i f_m + τ_i C
//! ```
//!
//! Both are linear systems against the frame `[f_x, f_y, f_z, C]`. The solves
//! are carried out in first-order jet arithmetic, so every structure tensor
//! comes with its exact partial derivatives and the covariant quantities
//! (`∇h`, `R`, `∇S`, `dτ`) need no finite differencing.
//!
//! Index conventions: `gamma[m][i][j] = Γ^m_ij`, `s[(m, i)] = S^m_i` (the
//! `m`-th coordinate of `S ∂_i`), `r[i][j][k][m]` is the `m`-th coordinate of
//! `R(∂_i, ∂_j) ∂_k`, and `dτ(∂_i, ∂_j) = ½(∂_i τ_j − ∂_j τ_i)`.

use nalgebra::{Matrix3, Vector3};

use crate::error::GeometryError;
use crate::jets::{Dual3, Jet3, Jet3Vec4};
use crate::linalg::{condition_1norm, DualFrame, DualVec4, FrameLu};
use crate::paracomplex::{det4, Vec4};

pub type Tensor3 = [[[f64; 3]; 3]; 3];
pub type Tensor4 = [[[[f64; 3]; 3]; 3]; 3];

/// Pointwise induced structure.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineData {
    pub h: Matrix3<f64>,
    pub s: Matrix3<f64>,
    pub tau: Vector3<f64>,
    pub gamma: Tensor3,
    /// Columns `f_x, f_y, f_z, C`.
    pub frame: [Vec4; 4],
    pub cond: f64,
    /// `max|h − hᵀ| / max|h|` before symmetrization.
    pub h_asymmetry: f64,
    /// `max|Γ^m_ij − Γ^m_ji| / max|Γ|`.
    pub gamma_asymmetry: f64,
    /// Largest relative residual of the Gauss-formula reconstruction.
    pub reconstruction_residual: f64,
}

/// [`AffineData`] together with first-order jets of every solved quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureJets {
    pub data: AffineData,
    pub h: [[Dual3; 3]; 3],
    pub gamma: [[[Dual3; 3]; 3]; 3],
    pub s: [[Dual3; 3]; 3],
    pub tau: [Dual3; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedTensors {
    /// `nabla_h[i][j][k] = (∇_i h)_jk`.
    pub nabla_h: Tensor3,
    pub r: Tensor4,
    /// `nabla_s[i][j][m]`: the `m`-th coordinate of `(∇_i S) ∂_j`.
    pub nabla_s: Tensor3,
    pub dtau: [[f64; 3]; 3],
    pub theta: f64,
    pub omega_h: f64,
}

/// Relative max-norm residuals of the four fundamental equations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FundamentalResiduals {
    pub gauss: f64,
    pub codazzi_h: f64,
    pub codazzi_s: f64,
    pub ricci: f64,
}

impl FundamentalResiduals {
    pub fn max(&self) -> f64 {
        self.gauss
            .max(self.codazzi_h)
            .max(self.codazzi_s)
            .max(self.ricci)
    }
}

/// Tracks `max|lhs − rhs|` against `max(1, |lhs|, |rhs|)`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Residual {
    diff: f64,
    scale: f64,
}

impl Residual {
    pub(crate) fn push(&mut self, lhs: f64, rhs: f64) {
        self.diff = self.diff.max((lhs - rhs).abs());
        self.scale = self.scale.max(lhs.abs()).max(rhs.abs());
    }

    pub(crate) fn value(&self) -> f64 {
        self.diff / self.scale.max(1.0)
    }
}

fn max_abs<'a>(it: impl IntoIterator<Item = &'a f64>) -> f64 {
    it.into_iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Solve the Gauss and Weingarten systems with derivative propagation.
pub fn analyze(f: &Jet3Vec4, c: &Jet3Vec4, max_cond: f64) -> Result<StructureJets, GeometryError> {
    let frame = DualFrame::from_jets(f, c);
    let lu = FrameLu::new(&frame.value, max_cond)?;

    let mut h = [[Dual3::default(); 3]; 3];
    let mut gamma = [[[Dual3::default(); 3]; 3]; 3];
    let mut reconstruction = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let rhs = DualVec4::from_jet(f, &[i, j]);
            let u = lu.solve_dual(&frame, &rhs);
            for (m, g) in gamma.iter_mut().enumerate() {
                g[i][j] = u.component(m);
            }
            h[i][j] = u.component(3);
            let resid = (rhs.value - frame.value * u.value).amax();
            let scale = rhs.value.amax() + frame.value.amax() * u.value.amax();
            if scale > 0.0 {
                reconstruction = reconstruction.max(resid / scale);
            }
        }
    }

    let mut s = [[Dual3::default(); 3]; 3];
    let mut tau = [Dual3::default(); 3];
    for i in 0..3 {
        let u = lu.solve_dual(&frame, &DualVec4::from_jet(c, &[i]));
        for (m, row) in s.iter_mut().enumerate() {
            row[i] = -u.component(m);
        }
        tau[i] = u.component(3);
    }

    let h_scale = max_abs(h.iter().flatten().map(|d| &d.v)).max(f64::MIN_POSITIVE);
    let mut h_asym = 0.0f64;
    for i in 0..3 {
        for j in i + 1..3 {
            h_asym = h_asym.max((h[i][j].v - h[j][i].v).abs());
            let avg = (h[i][j] + h[j][i]) * 0.5;
            h[i][j] = avg;
            h[j][i] = avg;
        }
    }
    let g_scale = max_abs(gamma.iter().flatten().flatten().map(|d| &d.v)).max(f64::MIN_POSITIVE);
    let mut g_asym = 0.0f64;
    for g in &gamma {
        for i in 0..3 {
            for j in i + 1..3 {
                g_asym = g_asym.max((g[i][j].v - g[j][i].v).abs());
            }
        }
    }

    let data = AffineData {
        h: Matrix3::from_fn(|i, j| h[i][j].v),
        s: Matrix3::from_fn(|m, i| s[m][i].v),
        tau: Vector3::from_fn(|i, _| tau[i].v),
        gamma: gamma.map(|g| g.map(|row| row.map(|d| d.v))),
        frame: std::array::from_fn(|k| frame.value.column(k).into_owned()),
        cond: lu.cond(),
        h_asymmetry: h_asym / h_scale,
        gamma_asymmetry: g_asym / g_scale,
        reconstruction_residual: reconstruction,
    };
    Ok(StructureJets {
        data,
        h,
        gamma,
        s,
        tau,
    })
}

/// Pointwise `(h, S, τ, Γ)` for the transversal field `C`.
pub fn decompose(f: &Jet3Vec4, c: &Jet3Vec4, max_cond: f64) -> Result<AffineData, GeometryError> {
    analyze(f, c, max_cond).map(|sj| sj.data)
}

impl StructureJets {
    pub fn derived(&self) -> DerivedTensors {
        let d = &self.data;
        let g = &d.gamma;
        let h = &d.h;
        let mut nabla_h = [[[0.0; 3]; 3]; 3];
        let mut r = [[[[0.0; 3]; 3]; 3]; 3];
        let mut nabla_s = [[[0.0; 3]; 3]; 3];
        let mut dtau = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut v = self.h[j][k].g[i];
                    for l in 0..3 {
                        v -= g[l][i][j] * h[(l, k)] + g[l][i][k] * h[(j, l)];
                    }
                    nabla_h[i][j][k] = v;
                    for m in 0..3 {
                        let mut v = self.gamma[m][j][k].g[i] - self.gamma[m][i][k].g[j];
                        for l in 0..3 {
                            v += g[l][j][k] * g[m][i][l] - g[l][i][k] * g[m][j][l];
                        }
                        r[i][j][k][m] = v;
                    }
                }
                for m in 0..3 {
                    let mut v = self.s[m][j].g[i];
                    for l in 0..3 {
                        v += g[m][i][l] * d.s[(l, j)] - d.s[(m, l)] * g[l][i][j];
                    }
                    nabla_s[i][j][m] = v;
                }
                dtau[i][j] = 0.5 * (self.tau[j].g[i] - self.tau[i].g[j]);
            }
        }
        let f = &d.frame;
        DerivedTensors {
            nabla_h,
            r,
            nabla_s,
            dtau,
            theta: det4(&f[0], &f[1], &f[2], &f[3]),
            omega_h: h.determinant().abs().sqrt(),
        }
    }
}

/// `∇h`, `R`, `∇S`, `dτ`, `Θ` and `ω_h` at a point.
pub fn derived(f: &Jet3Vec4, c: &Jet3Vec4, max_cond: f64) -> Result<DerivedTensors, GeometryError> {
    analyze(f, c, max_cond).map(|sj| sj.derived())
}

/// Residuals of the equations of Gauss, Codazzi (for `h` and `S`) and Ricci.
pub fn fundamental_residuals(d: &AffineData, t: &DerivedTensors) -> FundamentalResiduals {
    let (h, s, tau) = (&d.h, &d.s, &d.tau);
    let mut gauss = Residual::default();
    let mut codazzi_h = Residual::default();
    let mut codazzi_s = Residual::default();
    let mut ricci = Residual::default();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for m in 0..3 {
                    gauss.push(
                        t.r[i][j][k][m],
                        h[(j, k)] * s[(m, i)] - h[(i, k)] * s[(m, j)],
                    );
                }
                codazzi_h.push(
                    t.nabla_h[i][j][k] + tau[i] * h[(j, k)],
                    t.nabla_h[j][i][k] + tau[j] * h[(i, k)],
                );
                codazzi_s.push(
                    t.nabla_s[i][j][k] - tau[i] * s[(k, j)],
                    t.nabla_s[j][i][k] - tau[j] * s[(k, i)],
                );
            }
            let hs: f64 = (0..3).map(|m| h[(i, m)] * s[(m, j)]).sum();
            let sh: f64 = (0..3).map(|m| s[(m, i)] * h[(m, j)]).sum();
            ricci.push(hs - sh, 2.0 * t.dtau[i][j]);
        }
    }
    FundamentalResiduals {
        gauss: gauss.value(),
        codazzi_h: codazzi_h.value(),
        codazzi_s: codazzi_s.value(),
        ricci: ricci.value(),
    }
}

/// Induced structure for `C̄ = Φ C + f_* Z`, obtained from the structure of
/// `C` by the transversal-change formulas
///
/// ```text
/// h̄ = h / Φ
/// Γ̄^m_ij = Γ^m_ij − h_ij Z^m / Φ
/// τ̄_i = τ_i + h(Z, ∂_i) / Φ + ∂_i Φ / Φ
/// S̄ ∂_i = Φ S ∂_i − ∇_i Z + τ̄_i Z
/// ```
///
/// `phi` and `z` carry their first derivatives, which enter `τ̄` and `∇Z`.
pub fn change_transversal(
    sj: &StructureJets,
    phi: Dual3,
    z: [Dual3; 3],
) -> Result<AffineData, GeometryError> {
    if phi.v == 0.0 {
        return Err(GeometryError::ZeroScale);
    }
    let d = &sj.data;
    let p = phi.v;
    let zv = z.map(|c| c.v);
    let h = d.h / p;
    let mut gamma = d.gamma;
    for (m, gm) in gamma.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                gm[i][j] -= d.h[(i, j)] * zv[m] / p;
            }
        }
    }
    let tau = Vector3::from_fn(|i, _| {
        let hz: f64 = (0..3).map(|l| d.h[(l, i)] * zv[l]).sum();
        d.tau[i] + hz / p + phi.g[i] / p
    });
    let s = Matrix3::from_fn(|m, i| {
        let nabla_z = z[m].g[i] + (0..3).map(|l| d.gamma[m][i][l] * zv[l]).sum::<f64>();
        p * d.s[(m, i)] - nabla_z + tau[i] * zv[m]
    });
    let mut frame = d.frame;
    frame[3] = d.frame[3] * p + (0..3).map(|l| d.frame[l] * zv[l]).sum::<Vec4>();
    let m = nalgebra::Matrix4::from_columns(&frame);
    Ok(AffineData {
        h,
        s,
        tau,
        gamma,
        frame,
        cond: condition_1norm(&m),
        h_asymmetry: d.h_asymmetry,
        gamma_asymmetry: d.gamma_asymmetry,
        reconstruction_residual: d.reconstruction_residual,
    })
}

/// Jet of `Φ C + Σ_l Z^l f_l`. Only orders 0 through 2 of the result are
/// meaningful, which is all [`analyze`] reads from a transversal field.
pub fn transversal_combination(f: &Jet3Vec4, c: &Jet3Vec4, phi: &Jet3, z: &[Jet3; 3]) -> Jet3Vec4 {
    let mut out = c.scale(phi);
    for (l, zl) in z.iter().enumerate() {
        out = out + f.partial(l).scale(zl);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::Jet3;
    use crate::paracomplex::apply_j;

    /// `f = J g cosh z − g sinh z`, built without the constructors module.
    fn immersion(g: impl Fn(&Jet3, &Jet3) -> Jet3Vec4, p: [f64; 3]) -> Jet3Vec4 {
        let x = Jet3::variable(0, p[0]);
        let y = Jet3::variable(1, p[1]);
        let z = Jet3::variable(2, p[2]);
        let gj = g(&x, &y);
        gj.apply_j().scale(&z.cosh()) - gj.scale(&z.sinh())
    }

    fn hyperquadric_g(x: &Jet3, y: &Jet3) -> Jet3Vec4 {
        // y·(α, −α)(x) + γ2(x) with α = (½ − t, ½ + t) and γ2 linear.
        let one = Jet3::one();
        let a1 = one * 0.5 - *x;
        let a2 = one * 0.5 + *x;
        Jet3Vec4([
            *y * a1 + *x + one * 0.25,
            *y * a2 + *x - one * 0.25,
            -(*y * a1) + *x + one * 0.75,
            -(*y * a2) + *x - one * 0.75,
        ])
    }

    #[test]
    fn centroaffine_normal_gives_identity_shape_operator() {
        let f = immersion(hyperquadric_g, [0.0, 0.0, 0.0]);
        let d = decompose(&f, &(-f), 1e12).unwrap();
        assert!((d.s - Matrix3::identity()).amax() < 1e-12);
        assert!(d.tau.amax() < 1e-12);
        let expected = Matrix3::new(0.0, -2.0, 0.0, -2.0, 0.0, 0.0, 0.0, 0.0, -1.0);
        assert!((d.h - expected).amax() < 1e-12, "{}", d.h);
        assert!(d.reconstruction_residual < 1e-12);
    }

    #[test]
    fn hyperquadric_has_parallel_h() {
        let f = immersion(hyperquadric_g, [0.3, -0.7, 0.4]);
        let sj = analyze(&f, &(-f), 1e12).unwrap();
        let t = sj.derived();
        let nh = t
            .nabla_h
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(nh < 1e-10, "{nh}");
        assert!((t.theta - 2.0).abs() < 1e-10);
        assert!((t.omega_h - 2.0).abs() < 1e-10);
        assert!(fundamental_residuals(&sj.data, &t).max() < 1e-10);
    }

    #[test]
    fn corrupted_h_breaks_gauss_equation() {
        let f = immersion(hyperquadric_g, [0.2, 0.5, -0.3]);
        let sj = analyze(&f, &(-f), 1e12).unwrap();
        let t = sj.derived();
        let mut d = sj.data.clone();
        d.h[(0, 1)] += 1e-3;
        assert!(fundamental_residuals(&d, &t).gauss > 1e-4);
    }

    #[test]
    fn non_transversal_field_is_singular() {
        let f = immersion(hyperquadric_g, [0.1, 0.1, 0.1]);
        let fx = f.partial(0);
        let err = decompose(&f, &fx, 1e12).unwrap_err();
        assert!(matches!(err, GeometryError::SingularFrame { .. }));
    }

    #[test]
    fn trivial_transversal_change_is_identity() {
        let f = immersion(hyperquadric_g, [0.4, 0.1, 0.2]);
        let sj = analyze(&f, &(-f), 1e12).unwrap();
        let zero = Dual3::constant(0.0);
        let d = change_transversal(&sj, Dual3::constant(1.0), [zero; 3]).unwrap();
        assert!((d.h - sj.data.h).amax() < 1e-15);
        assert!((d.s - sj.data.s).amax() < 1e-15);
        assert!(change_transversal(&sj, zero, [zero; 3]).is_err());
    }

    #[test]
    fn scaling_the_transversal_field_scales_h() {
        let f = immersion(hyperquadric_g, [0.4, 0.1, 0.2]);
        let sj = analyze(&f, &(-f), 1e12).unwrap();
        let zero = Dual3::constant(0.0);
        let d = change_transversal(&sj, Dual3::constant(-2.5), [zero; 3]).unwrap();
        assert!((d.h - sj.data.h / -2.5).amax() < 1e-15);
    }

    #[test]
    fn frame_columns_match_jet() {
        let f = immersion(hyperquadric_g, [0.4, 0.1, 0.2]);
        let c = -f;
        let d = decompose(&f, &c, 1e12).unwrap();
        assert_eq!(d.frame[0], f.d(&[0]));
        assert_eq!(d.frame[3], c.value());
        // J C is tangent for this family: it lies in the span of f_x, f_y, f_z.
        let jc = apply_j(&c.value());
        let m = nalgebra::Matrix4::from_columns(&d.frame);
        let coords = m.lu().solve(&jc).unwrap();
        assert!(coords[3].abs() < 1e-12);
    }
}
