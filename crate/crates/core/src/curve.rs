//! Parametrized curves whose components are [`Expr`]s in `t`.

use crate::expr::{EvalError, Expr, ParseError};
use crate::jets::{Jet3, Jet3Vec4};

/// Highest derivative order kept for every curve component.
pub const CURVE_ORDER: usize = 5;

/// Curve with symbolic components and their derivatives up to
/// [`CURVE_ORDER`], computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    /// `derivatives[k][i]` is the `k`-th derivative of component `i`.
    derivatives: Vec<Vec<Expr>>,
}

impl CurveSpec {
    pub fn new(components: Vec<Expr>) -> Self {
        let mut derivatives = Vec::with_capacity(CURVE_ORDER + 1);
        derivatives.push(components);
        for k in 1..=CURVE_ORDER {
            let next = derivatives[k - 1].iter().map(Expr::differentiate).collect();
            derivatives.push(next);
        }
        CurveSpec { derivatives }
    }

    pub fn parse<S: AsRef<str>>(sources: &[S]) -> Result<Self, (usize, ParseError)> {
        let components = sources
            .iter()
            .enumerate()
            .map(|(i, s)| Expr::parse(s.as_ref()).map_err(|e| (i, e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CurveSpec::new(components))
    }

    pub fn dim(&self) -> usize {
        self.derivatives[0].len()
    }

    pub fn components(&self) -> &[Expr] {
        &self.derivatives[0]
    }

    pub fn derivative_exprs(&self, order: usize) -> &[Expr] {
        &self.derivatives[order]
    }

    /// Values of the `order`-th derivative at `t`.
    pub fn eval(&self, order: usize, t: f64) -> Result<Vec<f64>, EvalError> {
        self.derivatives[order].iter().map(|e| e.eval(t)).collect()
    }

    /// Derivative values `[offset, offset + 3]` for every component, laid out
    /// as `out[i][k] = c_i^(offset + k)(t)`.
    pub fn eval_window(&self, offset: usize, t: f64) -> Result<Vec<[f64; 4]>, EvalError> {
        let mut out = vec![[0.0; 4]; self.dim()];
        for k in 0..4 {
            for (i, e) in self.derivatives[offset + k].iter().enumerate() {
                out[i][k] = e.eval(t)?;
            }
        }
        Ok(out)
    }

    /// Component jets of `t -> c^(offset)(t)` placed along `axis`.
    pub fn lift_components(
        &self,
        axis: usize,
        offset: usize,
        t: f64,
    ) -> Result<Vec<Jet3>, EvalError> {
        Ok(self
            .eval_window(offset, t)?
            .into_iter()
            .map(|d| Jet3::univariate(axis, d))
            .collect())
    }
}

/// Lift a curve of at most four components to an `R^4` jet along the chosen
/// parameter axis. Missing components are zero.
pub fn lift_curve(curve: &CurveSpec, axis: usize, t: f64) -> Result<Jet3Vec4, EvalError> {
    assert!(curve.dim() <= 4, "curve has more than four components");
    let comps = curve.lift_components(axis, 0, t)?;
    let mut out = Jet3Vec4::zero();
    for (i, c) in comps.into_iter().enumerate() {
        out.0[i] = c;
    }
    Ok(out)
}
