//! Solves against the frame `[f_x, f_y, f_z, C]`, with first-order jet
//! propagation.
//!
//! Differentiating `F u = b` gives `∂_k u = F⁻¹ (∂_k b − ∂_k F · u)`, so one
//! LU factorization of the frame values serves the value solve and all three
//! derivative solves.

use nalgebra::{Matrix4, LU, U4};

use crate::jets::{Dual3, Jet3Vec4};
use crate::paracomplex::Vec4;

/// Frame columns with their first derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFrame {
    pub value: Matrix4<f64>,
    pub grad: [Matrix4<f64>; 3],
}

/// `R^4` vector with first derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct DualVec4 {
    pub value: Vec4,
    pub grad: [Vec4; 3],
}

impl DualVec4 {
    /// The partial `∂_prefix` of a jet together with its gradient.
    pub fn from_jet(jet: &Jet3Vec4, prefix: &[usize]) -> Self {
        let mut axes = prefix.to_vec();
        let value = jet.d(&axes);
        let grad = std::array::from_fn(|k| {
            axes.push(k);
            let g = jet.d(&axes);
            axes.pop();
            g
        });
        DualVec4 { value, grad }
    }

    pub fn map(&self, f: impl Fn(&Vec4) -> Vec4) -> Self {
        DualVec4 {
            value: f(&self.value),
            grad: std::array::from_fn(|k| f(&self.grad[k])),
        }
    }

    pub fn component(&self, i: usize) -> Dual3 {
        Dual3::new(self.value[i], std::array::from_fn(|k| self.grad[k][i]))
    }
}

impl DualFrame {
    /// Columns `∂_x f, ∂_y f, ∂_z f, C`.
    pub fn from_jets(f: &Jet3Vec4, c: &Jet3Vec4) -> Self {
        let cols = [
            DualVec4::from_jet(f, &[0]),
            DualVec4::from_jet(f, &[1]),
            DualVec4::from_jet(f, &[2]),
            DualVec4::from_jet(c, &[]),
        ];
        Self::from_columns(&cols)
    }

    pub fn from_columns(cols: &[DualVec4; 4]) -> Self {
        DualFrame {
            value: Matrix4::from_columns(&cols.each_ref().map(|c| c.value)),
            grad: std::array::from_fn(|k| {
                Matrix4::from_columns(&cols.each_ref().map(|c| c.grad[k]))
            }),
        }
    }

    pub fn column(&self, i: usize) -> DualVec4 {
        DualVec4 {
            value: self.value.column(i).into_owned(),
            grad: std::array::from_fn(|k| self.grad[k].column(i).into_owned()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("frame is singular or ill-conditioned (condition estimate {cond:e})")]
pub struct SingularFrame {
    pub cond: f64,
}

/// Partial-pivot LU of a frame, with its 1-norm condition number.
#[derive(Debug, Clone)]
pub struct FrameLu {
    lu: LU<f64, U4, U4>,
    cond: f64,
}

impl FrameLu {
    pub fn new(frame: &Matrix4<f64>, max_cond: f64) -> Result<Self, SingularFrame> {
        let cond = condition_1norm(frame);
        if !cond.is_finite() || cond > max_cond {
            return Err(SingularFrame { cond });
        }
        Ok(FrameLu {
            lu: frame.lu(),
            cond,
        })
    }

    pub fn cond(&self) -> f64 {
        self.cond
    }

    pub fn solve(&self, rhs: &Vec4) -> Vec4 {
        self.lu
            .solve(rhs)
            .expect("factorization was checked to be nonsingular")
    }

    pub fn solve_dual(&self, frame: &DualFrame, rhs: &DualVec4) -> DualVec4 {
        let value = self.solve(&rhs.value);
        let grad = std::array::from_fn(|k| self.solve(&(rhs.grad[k] - frame.grad[k] * value)));
        DualVec4 { value, grad }
    }
}

/// `‖A‖₁ ‖A⁻¹‖₁`, infinite for a singular matrix.
pub fn condition_1norm(m: &Matrix4<f64>) -> f64 {
    let norm1 = |a: &Matrix4<f64>| {
        a.column_iter()
            .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    match m.try_inverse() {
        Some(inv) => norm1(m) * norm1(&inv),
        None => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_dual_frame(rng: &mut impl Rng) -> DualFrame {
        let mut r = || Matrix4::from_fn(|_, _| rng.gen_range(-1.0..1.0));
        let value = Matrix4::identity() * 3.0 + r();
        DualFrame {
            value,
            grad: [r(), r(), r()],
        }
    }

    #[test]
    fn singular_frame_is_rejected() {
        let mut m = Matrix4::identity();
        m.set_column(3, &Vec4::new(1.0, 0.0, 0.0, 0.0));
        assert!(FrameLu::new(&m, 1e12).is_err());
        assert!(FrameLu::new(&Matrix4::identity(), 1e12).is_ok());
    }

    #[test]
    fn dual_solve_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let frame = random_dual_frame(&mut rng);
            let rhs = DualVec4 {
                value: Vec4::from_fn(|_, _| rng.gen_range(-1.0..1.0)),
                grad: std::array::from_fn(|_| Vec4::from_fn(|_, _| rng.gen_range(-1.0..1.0))),
            };
            let lu = FrameLu::new(&frame.value, 1e12).unwrap();
            let u = lu.solve_dual(&frame, &rhs);
            let step = 1e-6;
            for k in 0..3 {
                let solve_at = |s: f64| {
                    let m = frame.value + frame.grad[k] * s;
                    m.lu().solve(&(rhs.value + rhs.grad[k] * s)).unwrap()
                };
                let fd = (solve_at(step) - solve_at(-step)) / (2.0 * step);
                assert!((fd - u.grad[k]).amax() < 1e-7);
            }
        }
    }
}
