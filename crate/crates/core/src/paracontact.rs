//! The almost paracontact structure `(φ, ξ, η)` induced by a J-tangent
//! transversal field.
//!
//! Write every vector of `R^4` in the frame `[f_x, f_y, f_z, C]`. Then
//!
//! - `ξ` is the tangent part of `J C`, and the C-part of `J C` is the
//!   J-tangency defect;
//! - `c(v)`, the C-part of `J f_* v`, is a covector whose kernel is `D`;
//! - `η = c / c(ξ)`;
//! - `φ v` is the tangent part of `J f_*(v − η(v) ξ)`.
//!
//! `D+` and `D−` are the images of the rank-one projectors
//! `½((I − ξ⊗η) ± φ)`.

use nalgebra::{Matrix3, Vector3};

use crate::affine::{Residual, StructureJets};
use crate::error::GeometryError;
use crate::jets::Dual3;
use crate::linalg::{DualFrame, DualVec4, FrameLu};
use crate::paracomplex::{apply_j, Vec4};

#[derive(Debug, Clone, PartialEq)]
pub struct ParacontactData {
    pub xi: Vector3<f64>,
    /// Row covector: `η(v) = eta · v`.
    pub eta: Vector3<f64>,
    /// `phi[(m, i)]`: the `m`-th coordinate of `φ ∂_i`.
    pub phi: Matrix3<f64>,
    pub dplus: Vector3<f64>,
    pub dminus: Vector3<f64>,
    pub j_tangency_defect: f64,
}

/// [`ParacontactData`] with first-order jets of `ξ`, `η`, `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParacontactJets {
    pub data: ParacontactData,
    pub xi: [Dual3; 3],
    pub eta: [Dual3; 3],
    pub phi: [[Dual3; 3]; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullDirectionVerdict {
    pub dplus_null: bool,
    pub dminus_null: bool,
    pub h_dplus: f64,
    pub h_dminus: f64,
}

/// Relative residuals of the six structure identities, evaluated on every
/// pair of coordinate fields.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StructureResiduals {
    /// `η(∇_X Y) = h(X, φY) + X(η(Y)) + η(Y) τ(X)`
    pub eta_of_connection: f64,
    /// `φ(∇_X Y) = ∇_X φY − η(Y) SX − h(X, Y) ξ`
    pub phi_of_connection: f64,
    /// `η([X, Y]) = h(X, φY) − h(Y, φX) + X(η(Y)) − Y(η(X)) + η(Y)τ(X) − η(X)τ(Y)`
    pub eta_of_bracket: f64,
    /// `φ([X, Y]) = ∇_X φY − ∇_Y φX + η(X) SY − η(Y) SX`
    pub phi_of_bracket: f64,
    /// `η(∇_X ξ) = τ(X)`
    pub eta_of_nabla_xi: f64,
    /// `η(SX) = −h(X, ξ)`
    pub eta_of_shape: f64,
}

impl StructureResiduals {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.eta_of_connection,
            self.phi_of_connection,
            self.eta_of_bracket,
            self.phi_of_bracket,
            self.eta_of_nabla_xi,
            self.eta_of_shape,
        ]
    }

    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, f64::max)
    }
}

/// Scale `v` so its largest-magnitude coordinate is `+1`; the smallest index
/// wins ties.
pub fn normalize_direction(v: &Vector3<f64>) -> Vector3<f64> {
    let mut best = 0;
    for i in 1..3 {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    v / v[best]
}

fn rank_one_image(p: &Matrix3<f64>, scale: f64) -> Result<Vector3<f64>, GeometryError> {
    let col = (0..3)
        .map(|j| p.column(j).into_owned())
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("three columns");
    if col.norm() <= 1e-12 * scale {
        return Err(GeometryError::DegenerateD {
            reason: "eigenprojector of φ vanishes",
        });
    }
    Ok(normalize_direction(&col))
}

/// Induce `(φ, ξ, η)` with derivatives from a frame carrying its gradient.
pub fn induce_jets(
    frame: &DualFrame,
    max_cond: f64,
    j_tangency_tol: f64,
) -> Result<ParacontactJets, GeometryError> {
    let lu = FrameLu::new(&frame.value, max_cond)?;
    let jc = lu.solve_dual(frame, &frame.column(3).map(apply_j));
    let w: [DualVec4; 3] =
        std::array::from_fn(|i| lu.solve_dual(frame, &frame.column(i).map(apply_j)));

    let xi: [Dual3; 3] = std::array::from_fn(|m| jc.component(m));
    let defect = jc.value[3].abs();
    let tangent_norm = jc.value.fixed_rows::<3>(0).norm();
    if defect > j_tangency_tol * (1.0 + tangent_norm) {
        return Err(GeometryError::NotJTangent { defect });
    }

    let c: [Dual3; 3] = std::array::from_fn(|i| w[i].component(3));
    let c_xi: Dual3 = (0..3).map(|l| c[l] * xi[l]).sum();
    let c_norm = c.iter().map(|d| d.v * d.v).sum::<f64>().sqrt();
    if c_norm < 1e-12 || c_xi.v.abs() < 1e-12 * c_norm * (1.0 + tangent_norm) {
        return Err(GeometryError::DegenerateD {
            reason: "the functional defining D does not separate ξ",
        });
    }
    let eta: [Dual3; 3] = c.map(|ci| ci / c_xi);

    // φ^m_i = Σ_l W^m_l (δ_li − ξ^l η_i) with W^m_l the m-th tangent
    // coordinate of J f_l.
    let phi: [[Dual3; 3]; 3] = std::array::from_fn(|m| {
        std::array::from_fn(|i| {
            (0..3)
                .map(|l| {
                    let delta = Dual3::constant(if l == i { 1.0 } else { 0.0 });
                    w[l].component(m) * (delta - xi[l] * eta[i])
                })
                .sum()
        })
    });

    let xi_v = Vector3::from_fn(|m, _| xi[m].v);
    let eta_v = Vector3::from_fn(|i, _| eta[i].v);
    let phi_v = Matrix3::from_fn(|m, i| phi[m][i].v);
    let horizontal = Matrix3::identity() - xi_v * eta_v.transpose();
    let scale = 1.0 + phi_v.amax();
    let dplus = rank_one_image(&((horizontal + phi_v) * 0.5), scale)?;
    let dminus = rank_one_image(&((horizontal - phi_v) * 0.5), scale)?;

    Ok(ParacontactJets {
        data: ParacontactData {
            xi: xi_v,
            eta: eta_v,
            phi: phi_v,
            dplus,
            dminus,
            j_tangency_defect: defect,
        },
        xi,
        eta,
        phi,
    })
}

/// Induce `(φ, ξ, η)` at a point from the frame `[f_x, f_y, f_z, C]`.
pub fn induce(
    frame: &[Vec4; 4],
    max_cond: f64,
    j_tangency_tol: f64,
) -> Result<ParacontactData, GeometryError> {
    let value = nalgebra::Matrix4::from_columns(frame);
    let dual = DualFrame {
        value,
        grad: [nalgebra::Matrix4::zeros(); 3],
    };
    induce_jets(&dual, max_cond, j_tangency_tol).map(|p| p.data)
}

/// Evaluate `h` on the normalized `D±` generators. A direction is null when
/// `|h(v, v)| < tol · max|h|`.
pub fn null_verdict(p: &ParacontactData, h: &Matrix3<f64>, tol: f64) -> NullDirectionVerdict {
    let scale = h.amax();
    let h_dplus = p.dplus.dot(&(h * p.dplus));
    let h_dminus = p.dminus.dot(&(h * p.dminus));
    NullDirectionVerdict {
        dplus_null: h_dplus.abs() < tol * scale,
        dminus_null: h_dminus.abs() < tol * scale,
        h_dplus,
        h_dminus,
    }
}

/// The almost paracontact axioms: `max|φ² − (I − ξ⊗η)|`, `|η(ξ) − 1|`, and
/// the eigen/kernel conditions on `D±`.
pub fn axiom_residuals(p: &ParacontactData) -> [f64; 3] {
    let id_minus = Matrix3::identity() - p.xi * p.eta.transpose();
    let square = (p.phi * p.phi - id_minus).amax();
    let normal = (p.eta.dot(&p.xi) - 1.0).abs();
    let eigen = (p.phi * p.dplus - p.dplus)
        .amax()
        .max((p.phi * p.dminus + p.dminus).amax())
        .max(p.eta.dot(&p.dplus).abs())
        .max(p.eta.dot(&p.dminus).abs());
    [square, normal, eigen]
}

/// Residuals of the six structure identities relating `(φ, ξ, η)` to the
/// induced affine structure.
pub fn structure_residuals(sj: &StructureJets, pj: &ParacontactJets) -> StructureResiduals {
    let d = &sj.data;
    let p = &pj.data;
    let g = &d.gamma;
    let (h, s, tau) = (&d.h, &d.s, &d.tau);
    let (xi, eta, phi) = (&p.xi, &p.eta, &p.phi);
    let d_eta = |a: usize, b: usize| pj.eta[b].g[a];
    // (∇_a φ∂_b)^m = ∂_a φ^m_b + Σ_l Γ^m_al φ^l_b
    let nabla_phi = |a: usize, b: usize, m: usize| {
        pj.phi[m][b].g[a] + (0..3).map(|l| g[m][a][l] * phi[(l, b)]).sum::<f64>()
    };
    let h_phi = |a: usize, b: usize| (0..3).map(|m| h[(a, m)] * phi[(m, b)]).sum::<f64>();

    let mut r = [Residual::default(); 6];
    for a in 0..3 {
        for b in 0..3 {
            let eta_gamma: f64 = (0..3).map(|m| eta[m] * g[m][a][b]).sum();
            r[0].push(eta_gamma, h_phi(a, b) + d_eta(a, b) + eta[b] * tau[a]);
            for m in 0..3 {
                let phi_gamma: f64 = (0..3).map(|l| phi[(m, l)] * g[l][a][b]).sum();
                r[1].push(
                    phi_gamma,
                    nabla_phi(a, b, m) - eta[b] * s[(m, a)] - h[(a, b)] * xi[m],
                );
                r[3].push(
                    0.0,
                    nabla_phi(a, b, m) - nabla_phi(b, a, m) + eta[a] * s[(m, b)]
                        - eta[b] * s[(m, a)],
                );
            }
            r[2].push(
                0.0,
                h_phi(a, b) - h_phi(b, a) + d_eta(a, b) - d_eta(b, a) + eta[b] * tau[a]
                    - eta[a] * tau[b],
            );
        }
        let eta_nabla_xi: f64 = (0..3)
            .map(|m| eta[m] * (pj.xi[m].g[a] + (0..3).map(|l| g[m][a][l] * xi[l]).sum::<f64>()))
            .sum();
        r[4].push(eta_nabla_xi, tau[a]);
        let eta_s: f64 = (0..3).map(|m| eta[m] * s[(m, a)]).sum();
        let h_xi: f64 = (0..3).map(|m| h[(a, m)] * xi[m]).sum();
        r[5].push(eta_s, -h_xi);
    }
    StructureResiduals {
        eta_of_connection: r[0].value(),
        phi_of_connection: r[1].value(),
        eta_of_bracket: r[2].value(),
        phi_of_bracket: r[3].value(),
        eta_of_nabla_xi: r[4].value(),
        eta_of_shape: r[5].value(),
    }
}

/// Structure induced by `a C + f_* Z` for `Z ∈ D`, computed from the
/// structure of `C`:
/// `ξ̄ = a ξ + φZ`, `η̄ = η / a`, `φ̄ = φ − η(·) Z / a`.
/// `D+` and `D−` do not change.
pub fn transform_structure(
    p: &ParacontactData,
    scale: f64,
    z: &Vector3<f64>,
) -> Result<ParacontactData, GeometryError> {
    if scale == 0.0 {
        return Err(GeometryError::ZeroScale);
    }
    let eta_z = p.eta.dot(z);
    if eta_z.abs() > 1e-10 * z.norm().max(1.0) {
        return Err(GeometryError::ZNotInD { eta_z });
    }
    Ok(ParacontactData {
        xi: p.xi * scale + p.phi * z,
        eta: p.eta / scale,
        phi: p.phi - z * p.eta.transpose() / scale,
        dplus: p.dplus,
        dminus: p.dminus,
        j_tangency_defect: p.j_tangency_defect,
    })
}
