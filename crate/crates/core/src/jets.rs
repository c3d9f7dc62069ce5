//! Truncated Taylor jets in three variables `(x, y, z)`.
//!
//! A [`Jet3`] stores every partial derivative `∂^a_x ∂^b_y ∂^c_z` with
//! `a + b + c <= 3` as a raw derivative value, i.e. *not* divided by
//! `a! b! c!`. The Gauss-formula solves consume `f_ij`, `f_ijk` directly, so
//! raw storage avoids factorial bookkeeping there.
//!
//! Slots are laid out by total order, then lexicographically:
//!
//! ```text
//! 0        : 1
//! 1..=3    : x y z
//! 4..=9    : xx xy xz yy yz zz
//! 10..=19  : xxx xxy xxz xyy xyz xzz yyy yyz yzz zzz
//! ```
//!
//! [`Dual3`] is the first-order counterpart (value plus gradient) used to carry
//! derivatives of solved quantities such as `h` and `Γ`.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::paracomplex::Vec4;

pub const SLOTS: usize = 20;
pub const MAX_ORDER: usize = 3;

/// Multi-index of each slot.
const MULTI: [[u8; 3]; SLOTS] = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [2, 0, 0],
    [1, 1, 0],
    [1, 0, 1],
    [0, 2, 0],
    [0, 1, 1],
    [0, 0, 2],
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Slot of the multi-index `(a, b, c)`; `None` when the total order exceeds 3.
pub fn slot(a: usize, b: usize, c: usize) -> Option<usize> {
    if a + b + c > MAX_ORDER {
        return None;
    }
    MULTI
        .iter()
        .position(|m| m[0] as usize == a && m[1] as usize == b && m[2] as usize == c)
}

/// Slot reached by differentiating along each axis of `axes` in turn.
///
/// # Panics
/// If more than three axes are given or an axis is not 0, 1 or 2.
pub fn slot_of_axes(axes: &[usize]) -> usize {
    let mut m = [0usize; 3];
    for &a in axes {
        m[a] += 1;
    }
    slot(m[0], m[1], m[2]).expect("derivative order above 3")
}

pub fn multi_index(slot: usize) -> [usize; 3] {
    let m = MULTI[slot];
    [m[0] as usize, m[1] as usize, m[2] as usize]
}

fn axes_of(slot: usize) -> Vec<usize> {
    let m = MULTI[slot];
    let mut axes = Vec::with_capacity(3);
    for (axis, &count) in m.iter().enumerate() {
        axes.extend(std::iter::repeat_n(axis, count as usize));
    }
    axes
}

/// Per-slot Leibniz pairs `(slot_a, slot_b)`: one pair for every subset of
/// the slot's ordered axis list.
fn leibniz_table() -> &'static [Vec<(usize, usize)>; SLOTS] {
    static TABLE: OnceLock<[Vec<(usize, usize)>; SLOTS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|s| {
            let axes = axes_of(s);
            let n = axes.len();
            (0..(1usize << n))
                .map(|mask| {
                    let (mut left, mut right) = (Vec::new(), Vec::new());
                    for (bit, &axis) in axes.iter().enumerate() {
                        if mask & (1 << bit) != 0 {
                            left.push(axis);
                        } else {
                            right.push(axis);
                        }
                    }
                    (slot_of_axes(&left), slot_of_axes(&right))
                })
                .collect()
        })
    })
}

/// Scalar jet of total order 3 in `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    c: [f64; SLOTS],
}

impl Default for Jet3 {
    fn default() -> Self {
        Jet3::zero()
    }
}

impl Jet3 {
    pub const fn zero() -> Self {
        Jet3 { c: [0.0; SLOTS] }
    }

    pub fn constant(v: f64) -> Self {
        let mut j = Jet3::zero();
        j.c[0] = v;
        j
    }

    pub fn one() -> Self {
        Jet3::constant(1.0)
    }

    /// The coordinate function `axis` evaluated at `value`.
    pub fn variable(axis: usize, value: f64) -> Self {
        let mut j = Jet3::constant(value);
        j.c[1 + axis] = 1.0;
        j
    }

    pub fn from_coeffs(c: [f64; SLOTS]) -> Self {
        Jet3 { c }
    }

    pub fn coeffs(&self) -> &[f64; SLOTS] {
        &self.c
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Raw partial `∂^a_x ∂^b_y ∂^c_z`.
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> f64 {
        self.c[slot(a, b, c).expect("derivative order above 3")]
    }

    /// Partial derivative along the listed axes, e.g. `d(&[0, 1])` is `∂_x∂_y`.
    pub fn d(&self, axes: &[usize]) -> f64 {
        self.c[slot_of_axes(axes)]
    }

    /// Jet of a function of one parameter: `derivs[k]` is the `k`-th
    /// derivative along `axis`, every mixed partial is zero.
    pub fn univariate(axis: usize, derivs: [f64; 4]) -> Self {
        let mut j = Jet3::zero();
        for (k, v) in derivs.iter().enumerate() {
            let mut m = [0usize; 3];
            m[axis] = k;
            j.c[slot(m[0], m[1], m[2]).unwrap()] = *v;
        }
        j
    }

    /// `∂_axis` of this jet. Only order 2 is recoverable, so the order-3
    /// slots of the result are NaN; any later use of them is visible.
    pub fn partial(&self, axis: usize) -> Jet3 {
        let mut out = [f64::NAN; SLOTS];
        for (s, slot_value) in out.iter_mut().enumerate() {
            let mut axes = axes_of(s);
            if axes.len() == MAX_ORDER {
                continue;
            }
            axes.push(axis);
            *slot_value = self.d(&axes);
        }
        Jet3 { c: out }
    }

    /// First-order jet of the partial `∂_prefix` of this function: value
    /// `∂_prefix`, gradient `∂_k ∂_prefix`.
    pub fn dual_of(&self, prefix: &[usize]) -> Dual3 {
        assert!(
            prefix.len() < MAX_ORDER,
            "prefix too long for a first-order jet"
        );
        let mut axes = prefix.to_vec();
        let v = self.d(&axes);
        let mut g = [0.0; 3];
        for (k, gk) in g.iter_mut().enumerate() {
            axes.push(k);
            *gk = self.d(&axes);
            axes.pop();
        }
        Dual3 { v, g }
    }

    /// Composition `F ∘ self` where `outer = [F, F', F'', F''']` is evaluated
    /// at `self.value()` (Faà di Bruno through order 3).
    pub fn compose(&self, outer: [f64; 4]) -> Jet3 {
        let mut out = [0.0; SLOTS];
        out[0] = outer[0];
        for (s, o) in out.iter_mut().enumerate().skip(1) {
            let axes = axes_of(s);
            *o = match axes.as_slice() {
                [i] => outer[1] * self.d(&[*i]),
                [i, j] => outer[2] * self.d(&[*i]) * self.d(&[*j]) + outer[1] * self.d(&[*i, *j]),
                [i, j, k] => {
                    let (ai, aj, ak) = (self.d(&[*i]), self.d(&[*j]), self.d(&[*k]));
                    outer[3] * ai * aj * ak
                        + outer[2]
                            * (self.d(&[*i, *j]) * ak
                                + self.d(&[*i, *k]) * aj
                                + self.d(&[*j, *k]) * ai)
                        + outer[1] * self.d(&[*i, *j, *k])
                }
                _ => unreachable!(),
            };
        }
        Jet3 { c: out }
    }

    pub fn cosh(&self) -> Jet3 {
        let (c, s) = (self.value().cosh(), self.value().sinh());
        self.compose([c, s, c, s])
    }

    pub fn sinh(&self) -> Jet3 {
        let (c, s) = (self.value().cosh(), self.value().sinh());
        self.compose([s, c, s, c])
    }

    pub fn recip(&self) -> Jet3 {
        let v = self.value();
        let r = 1.0 / v;
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    /// `self^p` for real `p`; requires a positive value.
    pub fn powf(&self, p: f64) -> Jet3 {
        let v = self.value();
        self.compose([
            v.powf(p),
            p * v.powf(p - 1.0),
            p * (p - 1.0) * v.powf(p - 2.0),
            p * (p - 1.0) * (p - 2.0) * v.powf(p - 3.0),
        ])
    }

    pub fn scale(&self, k: f64) -> Jet3 {
        Jet3 {
            c: self.c.map(|v| v * k),
        }
    }

    pub fn max_abs_diff(&self, other: &Jet3) -> f64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, rhs: Jet3) -> Jet3 {
        Jet3 {
            c: std::array::from_fn(|i| self.c[i] + rhs.c[i]),
        }
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, rhs: Jet3) -> Jet3 {
        Jet3 {
            c: std::array::from_fn(|i| self.c[i] - rhs.c[i]),
        }
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        self.scale(-1.0)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, rhs: Jet3) -> Jet3 {
        let table = leibniz_table();
        Jet3 {
            c: std::array::from_fn(|s| table[s].iter().map(|&(a, b)| self.c[a] * rhs.c[b]).sum()),
        }
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;
    fn mul(self, rhs: f64) -> Jet3 {
        self.scale(rhs)
    }
}

impl Div for Jet3 {
    type Output = Jet3;
    fn div(self, rhs: Jet3) -> Jet3 {
        self * rhs.recip()
    }
}

pub fn jet_mul(a: &Jet3, b: &Jet3) -> Jet3 {
    *a * *b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyperbolic {
    Cosh,
    Sinh,
}

pub fn jet_hyperbolic(a: &Jet3, kind: Hyperbolic) -> Jet3 {
    match kind {
        Hyperbolic::Cosh => a.cosh(),
        Hyperbolic::Sinh => a.sinh(),
    }
}

/// Jet of an `R^4`-valued map.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet3Vec4(pub [Jet3; 4]);

impl Jet3Vec4 {
    pub fn zero() -> Self {
        Jet3Vec4([Jet3::zero(); 4])
    }

    pub fn constant(v: &Vec4) -> Self {
        Jet3Vec4(std::array::from_fn(|i| Jet3::constant(v[i])))
    }

    pub fn value(&self) -> Vec4 {
        self.d(&[])
    }

    pub fn d(&self, axes: &[usize]) -> Vec4 {
        Vec4::from_fn(|i, _| self.0[i].d(axes))
    }

    pub fn component(&self, i: usize) -> &Jet3 {
        &self.0[i]
    }

    /// The para-complex structure applied componentwise:
    /// `(a, b, c, d) -> (c, d, a, b)`.
    pub fn apply_j(&self) -> Jet3Vec4 {
        let [a, b, c, d] = self.0;
        Jet3Vec4([c, d, a, b])
    }

    pub fn scale(&self, s: &Jet3) -> Jet3Vec4 {
        Jet3Vec4(self.0.map(|c| c * *s))
    }

    pub fn scale_f64(&self, s: f64) -> Jet3Vec4 {
        Jet3Vec4(self.0.map(|c| c.scale(s)))
    }

    pub fn partial(&self, axis: usize) -> Jet3Vec4 {
        Jet3Vec4(self.0.map(|c| c.partial(axis)))
    }
}

impl Add for Jet3Vec4 {
    type Output = Jet3Vec4;
    fn add(self, rhs: Jet3Vec4) -> Jet3Vec4 {
        Jet3Vec4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Jet3Vec4 {
    type Output = Jet3Vec4;
    fn sub(self, rhs: Jet3Vec4) -> Jet3Vec4 {
        Jet3Vec4(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Jet3Vec4 {
    type Output = Jet3Vec4;
    fn neg(self) -> Jet3Vec4 {
        self.scale_f64(-1.0)
    }
}

/// Value and gradient with respect to `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual3 {
    pub v: f64,
    pub g: [f64; 3],
}

impl Dual3 {
    pub fn new(v: f64, g: [f64; 3]) -> Self {
        Dual3 { v, g }
    }

    pub fn constant(v: f64) -> Self {
        Dual3 { v, g: [0.0; 3] }
    }

    pub fn variable(axis: usize, v: f64) -> Self {
        let mut g = [0.0; 3];
        g[axis] = 1.0;
        Dual3 { v, g }
    }
}

impl Add for Dual3 {
    type Output = Dual3;
    fn add(self, r: Dual3) -> Dual3 {
        Dual3::new(self.v + r.v, std::array::from_fn(|k| self.g[k] + r.g[k]))
    }
}

impl Sub for Dual3 {
    type Output = Dual3;
    fn sub(self, r: Dual3) -> Dual3 {
        Dual3::new(self.v - r.v, std::array::from_fn(|k| self.g[k] - r.g[k]))
    }
}

impl Mul for Dual3 {
    type Output = Dual3;
    fn mul(self, r: Dual3) -> Dual3 {
        Dual3::new(
            self.v * r.v,
            std::array::from_fn(|k| self.g[k] * r.v + self.v * r.g[k]),
        )
    }
}

impl Mul<f64> for Dual3 {
    type Output = Dual3;
    fn mul(self, r: f64) -> Dual3 {
        Dual3::new(self.v * r, self.g.map(|g| g * r))
    }
}

impl Div for Dual3 {
    type Output = Dual3;
    fn div(self, r: Dual3) -> Dual3 {
        let q = self.v / r.v;
        Dual3::new(q, std::array::from_fn(|k| (self.g[k] - q * r.g[k]) / r.v))
    }
}

impl Neg for Dual3 {
    type Output = Dual3;
    fn neg(self) -> Dual3 {
        self * -1.0
    }
}

impl std::iter::Sum for Dual3 {
    fn sum<I: Iterator<Item = Dual3>>(iter: I) -> Dual3 {
        iter.fold(Dual3::constant(0.0), |a, b| a + b)
    }
}
