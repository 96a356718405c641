//! Exact checks of the inequalities satisfied by the ℷ function.
//!
//! All functions are piecewise linear, so every inequality is checked at the
//! union of the breakpoints involved.

use num_traits::{Signed, Zero};

use crate::pl::PiecewiseLinear;
use crate::poly::Q;

pub use crate::filtration::genus_bound;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub name: String,
    pub holds: bool,
    /// Where the slack is smallest.
    pub worst_t: Q,
    /// Smallest margin by which the inequality holds; negative when violated.
    pub slack: Q,
}

impl PropertyVerdict {
    fn from_slacks(name: &str, slacks: impl IntoIterator<Item = (Q, Q)>) -> Self {
        let (worst_t, slack) = slacks
            .into_iter()
            .min_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)))
            .expect("at least one sample point");
        PropertyVerdict { name: name.to_string(), holds: !slack.is_negative(), worst_t, slack }
    }

    fn all(name: &str, parts: &[PropertyVerdict]) -> Self {
        Self::from_slacks(name, parts.iter().map(|p| (p.worst_t.clone(), p.slack.clone())))
    }
}

fn merged_breakpoints(fs: &[&PiecewiseLinear]) -> Vec<Q> {
    let mut ts: Vec<Q> = fs.iter().flat_map(|f| f.breakpoints().iter().cloned()).collect();
    ts.sort();
    ts.dedup();
    ts
}

/// `t ℷ(1) <= ℷ(t) <= t ℷ'(0)`.
pub fn check_cone(f: &PiecewiseLinear) -> PropertyVerdict {
    let (v1, s0) = (f.value_at_one(), f.slope_at_zero());
    PropertyVerdict::from_slacks(
        "cone",
        f.breakpoints().iter().zip(f.values()).map(|(t, v)| {
            let lower = v - t * &v1;
            let upper = t * &s0 - v;
            (t.clone(), lower.min(upper))
        }),
    )
}

/// `ℷ'(0) - 1 <= ℷ(1) <= ℷ'(0)`.
pub fn check_gap(f: &PiecewiseLinear) -> PropertyVerdict {
    let (v1, s0) = (f.value_at_one(), f.slope_at_zero());
    let lower = &v1 - &s0 + Q::from_integer(1.into());
    let upper = &s0 - &v1;
    PropertyVerdict::from_slacks("gap", [(Q::from_integer(1.into()), lower.min(upper))])
}

/// The three connected-sum checks, in order: `|ℷ_AB - ℷ_A - ℷ_B| <= 2t`,
/// additivity of the slope at 0, and `ℷ_AB(1) >= ℷ_A(1) + ℷ_B(1)`.
pub fn quasi_parts(a: &PiecewiseLinear, b: &PiecewiseLinear, ab: &PiecewiseLinear) -> [PropertyVerdict; 3] {
    let ts = merged_breakpoints(&[a, b, ab]);
    let additivity = PropertyVerdict::from_slacks(
        "quasi-additivity",
        ts.iter().map(|t| {
            let defect = (ab.eval(t) - a.eval(t) - b.eval(t)).abs();
            (t.clone(), Q::from_integer(2.into()) * t - defect)
        }),
    );
    let slope = PropertyVerdict::from_slacks(
        "slope additivity",
        [(Q::zero(), -(ab.slope_at_zero() - a.slope_at_zero() - b.slope_at_zero()).abs())],
    );
    let superadditive = PropertyVerdict::from_slacks(
        "superadditivity at 1",
        [(Q::from_integer(1.into()), ab.value_at_one() - a.value_at_one() - b.value_at_one())],
    );
    [additivity, slope, superadditive]
}

/// All of [`quasi_parts`] folded into one verdict.
pub fn check_quasi(a: &PiecewiseLinear, b: &PiecewiseLinear, ab: &PiecewiseLinear) -> PropertyVerdict {
    PropertyVerdict::all("quasi", &quasi_parts(a, b, ab))
}

/// Linearity; the slack is minus the largest distance from the chord.
pub fn check_linear(f: &PiecewiseLinear) -> PropertyVerdict {
    let (v0, v1) = (f.value_at_zero(), f.value_at_one());
    PropertyVerdict::from_slacks(
        "linear",
        f.breakpoints().iter().zip(f.values()).map(|(t, v)| {
            let chord = &v0 + t * (&v1 - &v0);
            (t.clone(), -(v - chord).abs())
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn pretzel(n: i64) -> PiecewiseLinear {
        PiecewiseLinear::new(
            vec![rat(0), ratio(1, 2), rat(1)],
            vec![rat(0), ratio(-n, 2 * (n - 1)), ratio(-n - 1, n - 1)],
        )
        .unwrap()
    }

    fn sum_example() -> PiecewiseLinear {
        PiecewiseLinear::new(vec![rat(0), ratio(1, 3), rat(1)], vec![rat(0), rat(0), ratio(-1, 2)]).unwrap()
    }

    fn zero() -> PiecewiseLinear {
        PiecewiseLinear::linear(rat(0), rat(0))
    }

    #[test]
    fn cone() {
        assert!(check_cone(&pretzel(5)).holds);
        let u = check_cone(&zero());
        assert!(u.holds);
        assert_eq!(u.slack, rat(0));
        let bad = PiecewiseLinear::new(vec![rat(0), ratio(1, 2), rat(1)], vec![rat(0), rat(-2), ratio(-3, 2)]).unwrap();
        let v = check_cone(&bad);
        assert!(!v.holds);
        // the lowered midpoint steepens the initial slope, so t = 1 is worst
        assert_eq!(v.worst_t, rat(1));
        assert_eq!(v.slack, ratio(-5, 2));
    }

    #[test]
    fn gap() {
        assert!(check_gap(&sum_example()).holds);
        assert!(check_gap(&zero()).holds);
        for n in 3..=8 {
            assert!(check_gap(&pretzel(n)).holds);
        }
        let steep = PiecewiseLinear::new(vec![rat(0), ratio(1, 10), rat(1)], vec![rat(0), rat(-1), rat(-1)]).unwrap();
        assert!(!check_gap(&steep).holds);
    }

    #[test]
    fn quasi() {
        let p = pretzel(4);
        let parts = quasi_parts(&zero(), &p, &p);
        assert!(parts.iter().all(|v| v.holds && v.slack >= rat(0)));
        assert_eq!(parts[0].slack, rat(0));
        let far = PiecewiseLinear::linear(rat(0), rat(-3));
        let parts = quasi_parts(&zero(), &zero(), &far);
        assert!(!parts[0].holds);
        assert_eq!(parts[0].worst_t, rat(1));
        assert!(!check_quasi(&zero(), &zero(), &far).holds);
    }

    #[test]
    fn linear() {
        assert!(check_linear(&zero()).holds);
        assert!(check_linear(&PiecewiseLinear::linear(rat(0), rat(-1))).holds);
        let v = check_linear(&pretzel(3));
        assert!(!v.holds);
        assert_eq!(v.worst_t, ratio(1, 2));
    }

    #[test]
    fn genus() {
        assert_eq!(genus_bound(&pretzel(5)), ratio(3, 2));
        assert_eq!(genus_bound(&sum_example()), ratio(1, 2));
        assert_eq!(genus_bound(&zero()), rat(0));
    }
}
