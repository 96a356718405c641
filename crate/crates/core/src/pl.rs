//! Continuous piecewise-linear functions on `[0, 1]` with rational breakpoints.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Q;

/// Linear interpolation between `(breakpoints[i], values[i])`; the first
/// breakpoint is 0 and the last is 1. Collinear neighbours are always merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseLinear {
    breakpoints: Vec<Q>,
    values: Vec<Q>,
}

impl PiecewiseLinear {
    pub fn new(breakpoints: Vec<Q>, values: Vec<Q>) -> Result<Self> {
        if breakpoints.len() < 2 || breakpoints.len() != values.len() {
            return Err(Error::Shape(format!(
                "{} breakpoints and {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if !breakpoints[0].is_zero() || !breakpoints.last().unwrap().is_one() {
            return Err(Error::Shape("breakpoints must run from 0 to 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Shape("breakpoints must be strictly increasing".into()));
        }
        let mut f = PiecewiseLinear { breakpoints, values };
        f.merge_collinear();
        Ok(f)
    }

    /// `t -> a + b t`.
    pub fn linear(a: Q, b: Q) -> Self {
        let v1 = &a + &b;
        PiecewiseLinear { breakpoints: vec![Q::zero(), Q::one()], values: vec![a, v1] }
    }

    fn merge_collinear(&mut self) {
        let mut bp = vec![self.breakpoints[0].clone()];
        let mut vs = vec![self.values[0].clone()];
        for k in 1..self.breakpoints.len() {
            let (t, v) = (&self.breakpoints[k], &self.values[k]);
            if bp.len() >= 2 {
                let m = bp.len();
                let s1 = (&vs[m - 1] - &vs[m - 2]) / (&bp[m - 1] - &bp[m - 2]);
                let s2 = (v - &vs[m - 1]) / (t - &bp[m - 1]);
                if s1 == s2 {
                    bp.pop();
                    vs.pop();
                }
            }
            bp.push(t.clone());
            vs.push(v.clone());
        }
        self.breakpoints = bp;
        self.values = vs;
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// Interior breakpoints, i.e. the points where the slope changes.
    pub fn kinks(&self) -> &[Q] {
        &self.breakpoints[1..self.breakpoints.len() - 1]
    }

    pub fn is_linear(&self) -> bool {
        self.breakpoints.len() == 2
    }

    /// Value at `t`, which must lie in `[0, 1]`.
    pub fn eval(&self, t: &Q) -> Q {
        assert!(!(t < &Q::zero() || t > &Q::one()), "t = {t} outside [0, 1]");
        let k = match self.breakpoints.binary_search(t) {
            Ok(k) => return self.values[k].clone(),
            Err(k) => k,
        };
        let (t0, t1) = (&self.breakpoints[k - 1], &self.breakpoints[k]);
        let (v0, v1) = (&self.values[k - 1], &self.values[k]);
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    pub fn value_at_zero(&self) -> Q {
        self.values[0].clone()
    }

    pub fn value_at_one(&self) -> Q {
        self.values.last().unwrap().clone()
    }

    /// Right derivative at 0.
    pub fn slope_at_zero(&self) -> Q {
        (&self.values[1] - &self.values[0]) / &self.breakpoints[1]
    }

    /// `(start, end, slope, intercept)` for each linear piece.
    pub fn pieces(&self) -> Vec<(Q, Q, Q, Q)> {
        self.breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(t, v)| {
                let slope = (&v[1] - &v[0]) / (&t[1] - &t[0]);
                let intercept = &v[0] - &slope * &t[0];
                (t[0].clone(), t[1].clone(), slope, intercept)
            })
            .collect()
    }

    /// Pointwise combination; `f` must be affine in each argument.
    pub fn combine(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        let mut ts: Vec<Q> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        ts.sort();
        ts.dedup();
        let vs = ts.iter().map(|t| f(&self.eval(t), &other.eval(t))).collect();
        PiecewiseLinear::new(ts, vs).expect("merged breakpoints are valid")
    }

    /// `t -> a * self(t) + b + c t`.
    pub fn affine(&self, a: &Q, b: &Q, c: &Q) -> Self {
        let vs = self
            .breakpoints
            .iter()
            .zip(&self.values)
            .map(|(t, v)| a * v + b + c * t)
            .collect();
        PiecewiseLinear::new(self.breakpoints.clone(), vs).expect("same breakpoints")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pieces()
            .into_iter()
            .map(|(t0, t1, s, b)| format!("[{t0}, {t1}]: {s}*t + {b}"))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}
