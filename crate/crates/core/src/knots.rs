//! Built-in equivariant complexes of a few knots.

use std::collections::BTreeMap;

use crate::chain::{GradedFreeComplex, PolyMatrix};
use crate::error::Result;
use crate::poly::{Poly, RingCtx};

/// `n x^(n-1) + sum_i i a_i x^(i-1)`, the derivative of the potential.
pub fn dw1(ctx: &RingCtx) -> Result<Poly> {
    let n = ctx.n();
    let mut s = format!("{n}*x^{}", n - 1);
    for i in 1..n {
        s.push_str(&format!(" + {i}*a{i}*x^{}", i - 1));
    }
    ctx.parse(&s)
}

/// `n (n-1) x^(n-2) + sum_{i >= 2} i (i-1) a_i x^(i-2)`, the second derivative.
pub fn dw2(ctx: &RingCtx) -> Result<Poly> {
    let n = ctx.n();
    let mut s = format!("{}*x^{}", n * (n - 1), n - 2);
    for i in 2..n {
        s.push_str(&format!(" + {}*a{i}*x^{}", i * (i - 1), i - 2));
    }
    ctx.parse(&s)
}

fn column(rows: Vec<Poly>) -> PolyMatrix {
    PolyMatrix::from_rows(rows.into_iter().map(|p| vec![p]).collect(), 1).expect("one column")
}

/// The Euler characteristic one summand of the pretzel knot `P(2, -3, 7)`:
/// `q^-2 R` in degree -1 mapping to `q^-2n R + q^(2-2n) R` by the first and
/// second derivatives of the potential.
pub fn pretzel_2_m3_7(n: usize) -> Result<GradedFreeComplex> {
    let ctx = RingCtx::equivariant(n)?;
    let n = n as i64;
    let modules = BTreeMap::from([(-1, vec![-2]), (0, vec![-2 * n, 2 - 2 * n])]);
    let d = column(vec![dw1(&ctx)?, dw2(&ctx)?]);
    GradedFreeComplex::new(ctx, modules, BTreeMap::from([(-1, d)]))
}

/// The sl(3) summand of `P(7, -5, 4)`: `q^4 R` in degree -1 mapping to
/// `(q^0 R)^2` by `a2^2 - 3 a1` and the derivative of the potential.
pub fn s3_p7_m5_4() -> Result<GradedFreeComplex> {
    let ctx = RingCtx::equivariant(3)?;
    let d = column(vec![ctx.parse("a2^2 - 3*a1")?, dw1(&ctx)?]);
    GradedFreeComplex::new(ctx, BTreeMap::from([(-1, vec![4]), (0, vec![0, 0])]), BTreeMap::from([(-1, d)]))
}

/// The sl(3) summand of `P(-9, 7, -6)`: `q^0 R + q^-2 R` in degree 0 mapping
/// to `q^-6 R` by `(3x + a2)^3` and the derivative of the potential.
pub fn s3_m9_7_m6() -> Result<GradedFreeComplex> {
    let ctx = RingCtx::equivariant(3)?;
    let d = PolyMatrix::from_rows(vec![vec![ctx.parse("(3*x + a2)^3")?, dw1(&ctx)?]], 2)?;
    GradedFreeComplex::new(ctx, BTreeMap::from([(0, vec![0, -2]), (1, vec![-6])]), BTreeMap::from([(0, d)]))
}
