//! Seeded random curve data for round-trip tests.
//!
//! Curve components are quadratic polynomials plus one harmonic. Draws that
//! come close to the degenerate set are rejected and counted, so a test that
//! consumes these specs can report how many candidates it discarded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    build_centroaffine, build_sphere, sample_params, CentroAffineSpec, ImmersionOracle, SphereSpec,
    Variant, DEFAULT_VALIDATION_SAMPLES,
};
use crate::affine::decompose;
use crate::curve::CurveSpec;

/// Smallest admissible `|det|` of the curve conditions on the sample grid.
pub const MIN_CURVE_DETERMINANT: f64 = 0.05;
/// Largest admissible frame condition number on the check grid.
pub const MAX_FRAME_CONDITION: f64 = 1e8;
/// Smallest admissible `|det h| / max|h|³` on the check grid.
pub const MIN_RELATIVE_DET_H: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct RandomSpecs<T> {
    pub accepted: Vec<(T, ImmersionOracle)>,
    pub rejected: usize,
}

fn coeff(rng: &mut impl Rng, range: f64) -> f64 {
    (rng.gen_range(-range..range) * 1000.0).round() / 1000.0
}

fn signed(c: f64) -> String {
    if c < 0.0 {
        format!(" - {}", -c)
    } else {
        format!(" + {c}")
    }
}

/// `c0 + c1 t + c2 t^2 + a sin(w t + p)` with random coefficients.
pub fn random_component(rng: &mut impl Rng) -> String {
    let c0 = coeff(rng, 1.5);
    let c1 = coeff(rng, 1.5);
    let c2 = coeff(rng, 0.5);
    let a = coeff(rng, 0.5);
    let w = (rng.gen_range(0.5..2.0f64) * 1000.0).round() / 1000.0;
    let p = coeff(rng, 3.0);
    format!(
        "{c0}{}*t{}*t^2{}*sin({w}*t{})",
        signed(c1),
        signed(c2),
        signed(a),
        signed(p)
    )
}

fn random_curve(rng: &mut impl Rng, dim: usize) -> CurveSpec {
    let comps: Vec<String> = (0..dim).map(|_| random_component(rng)).collect();
    CurveSpec::parse(&comps).expect("generated components parse")
}

fn random_variant(rng: &mut impl Rng) -> Variant {
    if rng.gen_bool(0.5) {
        Variant::Dplus
    } else {
        Variant::Dminus
    }
}

/// Check grid: 5×5×5 lattice on `[-1, 1]³`.
pub fn check_grid() -> Vec<[f64; 3]> {
    let axis: Vec<f64> = (0..5).map(|k| -1.0 + 0.5 * k as f64).collect();
    let mut out = Vec::with_capacity(125);
    for &x in &axis {
        for &y in &axis {
            for &z in &axis {
                out.push([x, y, z]);
            }
        }
    }
    out
}

/// True when every check-grid point yields a well-conditioned frame and a
/// nondegenerate `h`.
pub fn well_conditioned(oracle: &ImmersionOracle, grid: &[[f64; 3]]) -> bool {
    grid.iter().all(|&p| {
        let Ok((f, c)) = oracle.jets(p) else {
            return false;
        };
        match decompose(&f, &c, MAX_FRAME_CONDITION) {
            Ok(d) => {
                let scale = d.h.amax();
                scale > 0.0 && d.h.determinant().abs() >= MIN_RELATIVE_DET_H * scale.powi(3)
            }
            Err(_) => false,
        }
    })
}

/// `count` centro-affine specs on the parameter domain `[-1, 1]`.
pub fn random_centroaffine_specs(seed: u64, count: usize) -> RandomSpecs<CentroAffineSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = check_grid();
    let mut out = RandomSpecs {
        accepted: Vec::with_capacity(count),
        rejected: 0,
    };
    while out.accepted.len() < count {
        let spec = CentroAffineSpec {
            variant: random_variant(&mut rng),
            alpha: random_curve(&mut rng, 2),
            gamma2: random_curve(&mut rng, 4),
            domain: (-1.0, 1.0),
        };
        let far_from_degenerate = spec
            .min_determinant(DEFAULT_VALIDATION_SAMPLES)
            .map(|d| d >= MIN_CURVE_DETERMINANT)
            .unwrap_or(false);
        let oracle = far_from_degenerate
            .then(|| build_centroaffine(spec.clone()).ok())
            .flatten()
            .filter(|o| well_conditioned(o, &grid));
        match oracle {
            Some(o) => out.accepted.push((spec, o)),
            None => out.rejected += 1,
        }
    }
    out
}

/// `count` hypersphere specs on the parameter domain `[-1, 1]`.
pub fn random_sphere_specs(seed: u64, count: usize) -> RandomSpecs<SphereSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = check_grid();
    let mut out = RandomSpecs {
        accepted: Vec::with_capacity(count),
        rejected: 0,
    };
    while out.accepted.len() < count {
        let e_mag = rng.gen_range(0.1..2.0f64);
        let spec = SphereSpec {
            variant: random_variant(&mut rng),
            alpha: random_curve(&mut rng, 2),
            beta: random_curve(&mut rng, 2),
            a: random_curve(&mut rng, 1),
            e: if rng.gen_bool(0.5) { e_mag } else { -e_mag },
            lambda_sign: if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
            domain: (-1.0, 1.0),
        };
        let far_from_degenerate = sample_params(spec.domain, DEFAULT_VALIDATION_SAMPLES).all(|t| {
            let planar_det = |c: &CurveSpec| -> Option<f64> {
                let v = c.eval(0, t).ok()?;
                let d = c.eval(1, t).ok()?;
                Some((v[0] * d[1] - v[1] * d[0]).abs())
            };
            matches!(
                (planar_det(&spec.alpha), planar_det(&spec.beta)),
                (Some(a), Some(b)) if a >= MIN_CURVE_DETERMINANT && b >= MIN_CURVE_DETERMINANT
            )
        });
        let oracle = far_from_degenerate
            .then(|| build_sphere(spec.clone()).ok())
            .flatten()
            .filter(|o| well_conditioned(o, &grid));
        match oracle {
            Some(o) => out.accepted.push((spec, o)),
            None => out.rejected += 1,
        }
    }
    out
}
