//! The canonical para-complex structure on `R^4` and 4×4 determinants.
//!
//! Coordinates are ordered `(x1, x2, y1, y2)`; the structure swaps the two
//! pairs. Every embedding of a planar vector into an eigenspace goes through
//! [`eigen_embed`], so this ordering is fixed in one place.

use nalgebra::Vector4;

pub type Vec4 = Vector4<f64>;

/// Eigenvalue of the para-complex structure: `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eigen {
    Plus,
    Minus,
}

impl Eigen {
    pub fn sign(self) -> f64 {
        match self {
            Eigen::Plus => 1.0,
            Eigen::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Eigen {
        match self {
            Eigen::Plus => Eigen::Minus,
            Eigen::Minus => Eigen::Plus,
        }
    }
}

/// `(a, b, c, d) -> (c, d, a, b)`.
pub fn apply_j(v: &Vec4) -> Vec4 {
    Vec4::new(v[2], v[3], v[0], v[1])
}

/// `(p, p)` for [`Eigen::Plus`], `(p, -p)` for [`Eigen::Minus`].
pub fn eigen_embed(p: [f64; 2], sign: Eigen) -> Vec4 {
    let s = sign.sign();
    Vec4::new(p[0], p[1], s * p[0], s * p[1])
}

/// `det[v1, v2, v3, v4]` with the vectors as columns, by cofactor expansion
/// along the first column.
pub fn det4(v1: &Vec4, v2: &Vec4, v3: &Vec4, v4: &Vec4) -> f64 {
    let m = [
        [v1[0], v2[0], v3[0], v4[0]],
        [v1[1], v2[1], v3[1], v4[1]],
        [v1[2], v2[2], v3[2], v4[2]],
        [v1[3], v2[3], v3[3], v4[3]],
    ];
    let minor = |skip: usize| -> f64 {
        let rows: Vec<usize> = (0..4).filter(|&r| r != skip).collect();
        let a = |r: usize, c: usize| m[rows[r]][c];
        a(0, 1) * (a(1, 2) * a(2, 3) - a(1, 3) * a(2, 2))
            - a(0, 2) * (a(1, 1) * a(2, 3) - a(1, 3) * a(2, 1))
            + a(0, 3) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
    };
    m[0][0] * minor(0) - m[1][0] * minor(1) + m[2][0] * minor(2) - m[3][0] * minor(3)
}

pub fn det2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut impl Rng) -> Vec4 {
        Vec4::from_fn(|_, _| rng.gen_range(-2.0..2.0))
    }

    #[test]
    fn j_swaps_pairs() {
        assert_eq!(
            apply_j(&Vec4::new(1.0, 2.0, 3.0, 4.0)),
            Vec4::new(3.0, 4.0, 1.0, 2.0)
        );
    }

    #[test]
    fn j_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let v = random_vec(&mut rng);
            assert_eq!(apply_j(&apply_j(&v)), v);
        }
    }

    #[test]
    fn fixed_vectors_are_diagonal_pairs() {
        let v = Vec4::new(0.3, -1.2, 0.3, -1.2);
        assert_eq!(apply_j(&v), v);
        let w = Vec4::new(0.3, -1.2, 0.4, -1.2);
        assert_ne!(apply_j(&w), w);
    }

    #[test]
    fn eigen_embeddings() {
        let p = eigen_embed([1.0, 0.0], Eigen::Plus);
        assert_eq!(p, Vec4::new(1.0, 0.0, 1.0, 0.0));
        assert_eq!(apply_j(&p), p);
        let m = eigen_embed([0.0, 1.0], Eigen::Minus);
        assert_eq!(m, Vec4::new(0.0, 1.0, 0.0, -1.0));
        assert_eq!(apply_j(&m), -m);
    }

    #[test]
    fn embedding_splits_sphere_example_generator() {
        // g(x, y) with alpha = (1, y), beta = (cos y, sin y): the x-linear
        // part lives in the +1 eigenspace, the beta part in the -1 eigenspace.
        let (x, y) = (0.4, 1.1);
        let g = x * eigen_embed([1.0, y], Eigen::Plus)
            + 0.25 * eigen_embed([0.0, 1.0], Eigen::Plus)
            + eigen_embed([f64::cos(y), f64::sin(y)], Eigen::Minus);
        assert!((g[0] - (x + y.cos())).abs() < 1e-15);
        assert!((g[1] - (y * x + y.sin() + 0.25)).abs() < 1e-15);
        assert!((g[2] - (x - y.cos())).abs() < 1e-15);
        assert!((g[3] - (y * x - y.sin() + 0.25)).abs() < 1e-15);
    }

    #[test]
    fn determinant_basics() {
        let e = |i: usize| Vec4::from_fn(|r, _| if r == i { 1.0 } else { 0.0 });
        assert_eq!(det4(&e(0), &e(1), &e(2), &e(3)), 1.0);
        assert_eq!(det4(&e(1), &e(0), &e(2), &e(3)), -1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (a, b, c) = (
            random_vec(&mut rng),
            random_vec(&mut rng),
            random_vec(&mut rng),
        );
        assert_eq!(det4(&a, &b, &a, &c), 0.0);
    }

    #[test]
    fn determinant_matches_lu() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let cols: Vec<Vec4> = (0..4).map(|_| random_vec(&mut rng)).collect();
            let m = nalgebra::Matrix4::from_columns(&cols);
            let d = det4(&cols[0], &cols[1], &cols[2], &cols[3]);
            assert!((d - m.determinant()).abs() < 1e-12 * (1.0 + d.abs()));
        }
    }

    #[test]
    fn eigen_split_determinant() {
        // det[γ1, γ1', γ2, γ2'] = 4 det[α, α'] det[β, β'] for γ1 = (α, α),
        // γ2 = (β, -β).
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a: [f64; 2] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let da: [f64; 2] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let b: [f64; 2] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let db: [f64; 2] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let lhs = det4(
                &eigen_embed(a, Eigen::Plus),
                &eigen_embed(da, Eigen::Plus),
                &eigen_embed(b, Eigen::Minus),
                &eigen_embed(db, Eigen::Minus),
            );
            let rhs = 4.0 * det2(a, da) * det2(b, db);
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn antisymmetry_of_j_in_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..1000 {
            let (v1, v2, v3) = (
                random_vec(&mut rng),
                random_vec(&mut rng),
                random_vec(&mut rng),
            );
            let lhs = det4(&apply_j(&v1), &v2, &v3, &apply_j(&v3));
            let rhs = -det4(&v1, &apply_j(&v2), &v3, &apply_j(&v3));
            let scale = v1.norm() * v2.norm() * v3.norm().powi(2);
            assert!((lhs - rhs).abs() < 1e-10 * scale);
        }
    }
}
