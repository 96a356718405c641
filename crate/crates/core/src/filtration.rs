//! The piecewise-linear invariant engine.
//!
//! A specialized complex is expanded over `Q` in the monomial basis `x^a g`. Each
//! basis vector carries its quantum degree `j` and `x`-exponent `k`; the blended
//! filtration level at `t` is `t (j + k) - k`, and the level-`l` part of the
//! blended filtration is the span of the monomials of value at most `l`. Whether
//! the Gornik class has a representative in that span is one linear solve.

use std::collections::BTreeSet;

use log::{debug, warn};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::chain::GradedFreeComplex;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::pl::PiecewiseLinear;
use crate::poly::{rat, Poly, Potential, RingCtx, Q};
use crate::reduce::{self, expand_matrix, TrackedCochain};

/// Position of a monomial `x^k g` in the bifiltration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialTag {
    pub generator: usize,
    pub exponent: u32,
    /// Absolute quantum degree `j`.
    pub quantum: i64,
}

impl MonomialTag {
    pub fn j(&self) -> i64 {
        self.quantum
    }

    pub fn k(&self) -> i64 {
        self.exponent as i64
    }

    /// `t (j + k) - k`.
    pub fn value_at(&self, t: &Q) -> Q {
        t * rat(self.j() + self.k()) - rat(self.k())
    }
}

/// The degree `-1, 0, 1` part of a specialized complex, expanded over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarComplex {
    n: usize,
    potential: Potential,
    /// Bases of degrees -1, 0, 1.
    basis: [Vec<MonomialTag>; 3],
    d_minus: QMatrix,
    d_zero: QMatrix,
}

/// Everything the engine computes for one complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GimelReport {
    pub n: usize,
    pub gimel: PiecewiseLinear,
    pub gamma: PiecewiseLinear,
    /// Reduced quantum degree.
    pub r: Q,
    /// `gamma(1)`.
    pub u: Q,
    pub slope0: Q,
    pub value1: Q,
    pub s_invariant: Q,
    pub genus_bound: Q,
    pub genus_bound_ceil: BigInt,
}

impl ScalarComplex {
    /// Expands degrees -1, 0, 1 of a specialized complex.
    pub fn expand(c: &GradedFreeComplex) -> Result<Self> {
        let pot = c
            .ctx()
            .potential()
            .ok_or_else(|| Error::ContextMismatch("expansion needs a specialized complex".into()))?
            .clone();
        let n = c.n();
        let tags = |i: i32| -> Vec<MonomialTag> {
            let mut out = Vec::new();
            for (g, &s) in c.labels(i).iter().enumerate() {
                for a in 0..n as u32 {
                    out.push(MonomialTag { generator: g, exponent: a, quantum: c.abs_degree(s) + 2 * a as i64 });
                }
            }
            out
        };
        let basis = [tags(-1), tags(0), tags(1)];
        let d_minus = expand_matrix(c.ctx(), &c.diff(-1));
        let d_zero = expand_matrix(c.ctx(), &c.diff(0));
        let s = ScalarComplex { n, potential: pot, basis, d_minus, d_zero };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        if !self.d_zero.mul(&self.d_minus).is_zero() {
            return Err(Error::Validation("d^0 d^-1 is nonzero after expansion".into()));
        }
        for (m, src, tgt, name) in [
            (&self.d_minus, &self.basis[0], &self.basis[1], "d^-1"),
            (&self.d_zero, &self.basis[1], &self.basis[2], "d^0"),
        ] {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m.get(r, c).is_zero() && tgt[r].j() > src[c].j() {
                        return Err(Error::Validation(format!(
                            "{name} raises the quantum filtration: {:?} -> {:?}",
                            src[c], tgt[r]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    /// Basis of degree `i` in `{-1, 0, 1}`.
    pub fn basis(&self, i: i32) -> &[MonomialTag] {
        &self.basis[(i + 1) as usize]
    }

    pub fn d_minus(&self) -> &QMatrix {
        &self.d_minus
    }

    pub fn d_zero(&self) -> &QMatrix {
        &self.d_zero
    }

    fn require_standard(&self) -> Result<()> {
        if self.potential.is_standard() {
            Ok(())
        } else {
            Err(Error::PotentialShape(format!("got {}", self.potential)))
        }
    }

    /// Coefficient vector in degree 0 of a cochain given by ring elements.
    pub fn scalar_cochain(&self, coeffs: &[Poly]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.basis[1].len()];
        for (g, p) in coeffs.iter().enumerate() {
            for (e, c) in p.terms() {
                v[g * self.n + e[0] as usize] = c.clone();
            }
        }
        v
    }

    pub fn is_cocycle(&self, psi: &[Q]) -> bool {
        self.d_zero.mul_vec(psi).iter().all(Zero::is_zero)
    }

    pub fn is_coboundary(&self, psi: &[Q]) -> bool {
        self.d_minus.in_column_span(psi)
    }

    /// Checks that `psi` is a cocycle representing a nonzero class.
    pub fn check_class(&self, psi: &[Q]) -> Result<()> {
        if psi.len() != self.basis[1].len() {
            return Err(Error::Shape(format!("cochain of length {} for a degree-0 basis of {}", psi.len(), self.basis[1].len())));
        }
        if !self.is_cocycle(psi) {
            return Err(Error::Nondegeneracy("class representative is not a cocycle".into()));
        }
        if self.is_coboundary(psi) {
            return Err(Error::Nondegeneracy("class representative is a coboundary".into()));
        }
        Ok(())
    }

    /// The generator of degree-0 cohomology of the subcomplex spanned by the
    /// `x^(n-1)` monomials, required to be one-dimensional and nonzero in the
    /// cohomology of the whole complex.
    pub fn gornik_class_fixture(&self) -> Result<Vec<Q>> {
        self.require_standard()?;
        let top = self.n as u32 - 1;
        let pick = |i: i32| -> Vec<usize> {
            (0..self.basis(i).len()).filter(|&k| self.basis(i)[k].exponent == top).collect()
        };
        let (rm, r0, r1) = (pick(-1), pick(0), pick(1));
        let dm = self.d_minus.select(&r0, &rm);
        let d0 = self.d_zero.select(&r1, &r0);
        let kernel = d0.kernel_basis();
        let dim = kernel.len() - dm.rank();
        if dim != 1 {
            return Err(Error::Nondegeneracy(format!(
                "degree-0 cohomology of the x^{top} subcomplex has dimension {dim}, expected 1"
            )));
        }
        let local = kernel
            .into_iter()
            .find(|v| !dm.in_column_span(v))
            .ok_or_else(|| Error::Internal("no kernel vector outside the image".into()))?;
        let mut psi = vec![Q::zero(); self.basis[1].len()];
        for (v, &k) in local.iter().zip(&r0) {
            psi[k] = v.clone();
        }
        normalize_sign(&mut psi);
        if self.is_coboundary(&psi) {
            return Err(Error::Nondegeneracy("the Gornik class is null-cohomologous".into()));
        }
        Ok(psi)
    }

    /// Whether `psi` is cohomologous to a cochain supported on `admissible`
    /// (indices into the degree-0 basis).
    pub fn feasible(&self, psi: &[Q], admissible: &[usize]) -> bool {
        let mut mask = vec![false; self.basis[1].len()];
        for &k in admissible {
            mask[k] = true;
        }
        self.feasible_mask(psi, &mask)
    }

    /// `psi - d b` vanishes off the mask for some `b`. Cocycle-ness is inherited.
    fn feasible_mask(&self, psi: &[Q], mask: &[bool]) -> bool {
        let rows: Vec<usize> = (0..mask.len()).filter(|&k| !mask[k]).collect();
        if rows.iter().all(|&k| psi[k].is_zero()) {
            return true;
        }
        let cols: Vec<usize> = (0..self.d_minus.cols()).collect();
        let sub = self.d_minus.select(&rows, &cols);
        let rhs: Vec<Q> = rows.iter().map(|&k| psi[k].clone()).collect();
        sub.in_column_span(&rhs)
    }

    /// Smallest `l` among `values` (sorted ascending, distinct) whose prefix mask
    /// `key(tag) <= l` is feasible. The full set must be feasible.
    fn min_feasible<K: Ord + Clone>(&self, psi: &[Q], keys: &[K]) -> K {
        let mut values: Vec<K> = keys.to_vec();
        values.sort();
        values.dedup();
        let (mut lo, mut hi) = (0usize, values.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let mask: Vec<bool> = keys.iter().map(|k| *k <= values[mid]).collect();
            if self.feasible_mask(psi, &mask) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        values[lo].clone()
    }

    /// `gamma(t)`: the least blended level containing a representative of `psi`.
    pub fn gamma_at(&self, psi: &[Q], t: &Q) -> Q {
        let keys: Vec<Q> = self.basis[1].iter().map(|m| m.value_at(t)).collect();
        self.min_feasible(psi, &keys)
    }

    /// The tag `(j, k)` attaining `gamma` on a neighbourhood of `t` where the
    /// order of the monomial values is strict between distinct tags.
    fn top_tag_at(&self, psi: &[Q], t: &Q) -> (i64, i64) {
        let level = self.gamma_at(psi, t);
        let tag = self.basis[1]
            .iter()
            .find(|m| m.value_at(t) == level)
            .expect("gamma is attained by a monomial");
        (tag.j(), tag.k())
    }

    /// Exact `gamma` on `[0, 1]`.
    ///
    /// Between consecutive crossing points of the lines `t (j + k) - k` the order
    /// of monomial values is fixed, so `gamma` follows a single line there.
    pub fn gamma_sweep(&self, psi: &[Q]) -> Result<PiecewiseLinear> {
        let tags: BTreeSet<(i64, i64)> = self.basis[1].iter().map(|m| (m.j(), m.k())).collect();
        let tags: Vec<(i64, i64)> = tags.into_iter().collect();
        let mut cuts: BTreeSet<Q> = BTreeSet::from([Q::zero(), Q::one()]);
        for (a, &(j1, k1)) in tags.iter().enumerate() {
            for &(j2, k2) in &tags[a + 1..] {
                let den = (j1 + k1) - (j2 + k2);
                if den != 0 {
                    let t = Q::new(BigInt::from(k1 - k2), BigInt::from(den));
                    if t > Q::zero() && t < Q::one() {
                        cuts.insert(t);
                    }
                }
            }
        }
        let cuts: Vec<Q> = cuts.into_iter().collect();
        debug!("gamma_sweep: {} tags, {} candidate breakpoints", tags.len(), cuts.len());
        let at_cuts: Vec<Q> = cuts.par_iter().map(|t| self.gamma_at(psi, t)).collect();
        let lines: Vec<(i64, i64)> = cuts
            .par_windows(2)
            .map(|w| self.top_tag_at(psi, &((&w[0] + &w[1]) / rat(2))))
            .collect();
        for (k, &(j, kk)) in lines.iter().enumerate() {
            let line = |t: &Q| t * rat(j + kk) - rat(kk);
            for end in [k, k + 1] {
                if line(&cuts[end]) != at_cuts[end] {
                    return Err(Error::Internal(format!(
                        "gamma is discontinuous at t = {}: line gives {}, pointwise value {}",
                        cuts[end],
                        line(&cuts[end]),
                        at_cuts[end]
                    )));
                }
            }
        }
        PiecewiseLinear::new(cuts, at_cuts)
    }

    /// Least quantum degree `j` such that `psi` has a representative on the
    /// `x^(n-1)` monomials of quantum degree at most `j`.
    pub fn reduced_quantum_degree(&self, psi: &[Q]) -> Q {
        let top = self.n as i64 - 1;
        // Monomials outside x^(n-1) get a key above everything else.
        let cap = self.basis[1].iter().map(MonomialTag::j).max().unwrap_or(0) + 1;
        let keys: Vec<i64> = self.basis[1].iter().map(|m| if m.k() == top { m.j() } else { cap }).collect();
        let r = self.min_feasible(psi, &keys);
        assert!(r < cap, "the Gornik class lives on x^(n-1) monomials");
        rat(r)
    }

    /// Least quantum degree `j` with a representative of `psi` in `F^j`.
    pub fn quantum_grading(&self, psi: &[Q]) -> Q {
        let keys: Vec<i64> = self.basis[1].iter().map(MonomialTag::j).collect();
        rat(self.min_feasible(psi, &keys))
    }

    /// All invariants for a class representative `psi`.
    pub fn invariants_report(&self, psi: &[Q]) -> Result<GimelReport> {
        self.require_standard()?;
        self.check_class(psi)?;
        let gamma = self.gamma_sweep(psi)?;
        let gimel = gimel_from_gamma(&gamma, self.n);
        let r = self.reduced_quantum_degree(psi);
        let u = gamma.value_at_one();
        let nn = rat(self.n as i64 - 1);
        let s_invariant = (&u - &nn) / (rat(2) * &nn);
        let genus_bound = genus_bound(&gimel);
        let genus_bound_ceil = ceil(&genus_bound);
        Ok(GimelReport {
            n: self.n,
            slope0: gimel.slope_at_zero(),
            value1: gimel.value_at_one(),
            gimel,
            gamma,
            r,
            u,
            s_invariant,
            genus_bound,
            genus_bound_ceil,
        })
    }

    /// `s` for a simple rational root `alpha` of the potential: the class is
    /// taken from the image of multiplication by `p(x) / (x - alpha)`.
    pub fn s_general(&self, alpha: &Q) -> Result<Q> {
        let psi = self.root_class(alpha)?;
        let gr = self.quantum_grading(&psi);
        let nn = rat(self.n as i64 - 1);
        Ok((gr - &nn) / (rat(2) * nn))
    }

    /// A representative of the one-dimensional degree-0 cohomology of the
    /// image of multiplication by `p(x) / (x - alpha)`.
    pub fn root_class(&self, alpha: &Q) -> Result<Vec<Q>> {
        let m = self.potential.root_multiplicity(alpha);
        if m != 1 {
            return Err(Error::InvalidRoot(format!("{alpha} has multiplicity {m} in {}", self.potential)));
        }
        let (quot, _) = self.potential.divide_by_linear(alpha);
        let ctx = RingCtx::specialized(self.potential.clone());
        let mut p = Poly::zero();
        for (a, c) in quot.into_iter().enumerate() {
            p = ctx.add(&p, &ctx.monomial(vec![a as u32], c));
        }
        let mult = |gens: usize| -> QMatrix {
            let block = reduce::expand_matrix(
                &ctx,
                &crate::chain::PolyMatrix::from_rows(vec![vec![p.clone()]], 1).unwrap(),
            );
            let mut out = QMatrix::zeros(gens * self.n, gens * self.n);
            for g in 0..gens {
                for r in 0..self.n {
                    for c in 0..self.n {
                        out.set(g * self.n + r, g * self.n + c, block.get(r, c).clone());
                    }
                }
            }
            out
        };
        let p_minus = mult(self.basis[0].len() / self.n);
        let p_zero = mult(self.basis[1].len() / self.n);
        // cocycles of the image: P0 y with d0 P0 y = 0
        let cocycles: Vec<Vec<Q>> = self
            .d_zero
            .mul(&p_zero)
            .kernel_basis()
            .iter()
            .map(|y| p_zero.mul_vec(y))
            .collect();
        let boundaries = self.d_minus.mul(&p_minus);
        let z = QMatrix::from_rows(cocycles.clone(), self.basis[1].len()).transpose();
        let dim = z.rank() - boundaries.rank();
        if dim != 1 {
            return Err(Error::Nondegeneracy(format!(
                "degree-0 cohomology of the alpha = {alpha} image has dimension {dim}, expected 1"
            )));
        }
        let mut psi = cocycles
            .into_iter()
            .find(|v| !boundaries.in_column_span(v))
            .ok_or_else(|| Error::Internal("no image cocycle outside the image boundaries".into()))?;
        normalize_sign(&mut psi);
        if self.is_coboundary(&psi) {
            return Err(Error::Nondegeneracy(format!("the alpha = {alpha} class is null-cohomologous")));
        }
        Ok(psi)
    }
}

fn normalize_sign(v: &mut [Q]) {
    if let Some(first) = v.iter().find(|c| !c.is_zero()).cloned() {
        for c in v.iter_mut() {
            *c /= &first;
        }
    }
}

/// `(gamma(t) - (n - 1)(2t - 1)) / (2 (n - 1))`.
pub fn gimel_from_gamma(gamma: &PiecewiseLinear, n: usize) -> PiecewiseLinear {
    let nn = rat(n as i64 - 1);
    gamma.affine(&(Q::one() / (rat(2) * nn)), &Q::new(1.into(), 2.into()), &-Q::one())
}

/// `max |f(t) / t|` over the breakpoints `t > 0`, which is the supremum over
/// `(0, 1]` because `f(0) = 0` makes `f(t)/t` monotone on each piece.
pub fn genus_bound(f: &PiecewiseLinear) -> Q {
    f.breakpoints()
        .iter()
        .zip(f.values())
        .filter(|(t, _)| t.is_positive())
        .map(|(t, v)| (v / t).abs())
        .max()
        .unwrap_or_else(Q::zero)
}

pub fn ceil(q: &Q) -> BigInt {
    let (d, m) = q.numer().div_mod_floor(q.denom());
    if m.is_zero() {
        d
    } else {
        d + 1
    }
}

/// Full pipeline for a complex: simplify, pick the Euler characteristic one
/// summand, evaluate at `x^n - x^(n-1)`, locate the class and sweep.
pub fn compute_report(c: &GradedFreeComplex) -> Result<GimelReport> {
    c.check_valid()?;
    let spec = match c.ctx().potential() {
        None => sn_summand(c).evaluate(&Potential::standard(c.n()))?,
        Some(p) if p.is_standard() => sn_summand(c),
        Some(p) => return Err(Error::PotentialShape(format!("got {p}"))),
    };
    let s = ScalarComplex::expand(&spec)?;
    let psi = s.gornik_class_fixture()?;
    s.invariants_report(&psi)
}

/// The Euler characteristic one summand after simplification, or the whole
/// simplified complex when the splitting heuristic does not isolate it.
pub fn sn_summand(c: &GradedFreeComplex) -> GradedFreeComplex {
    let (simplified, dec) = reduce::decompose(c);
    match reduce::extract_sn(&dec) {
        Ok(s) => s,
        Err(e) => {
            warn!("{e}; continuing with the whole simplified complex");
            simplified
        }
    }
}

/// Report for a complex with a known degree-0 class representative, given as
/// ring coefficients on its degree-0 generators. The complex is simplified
/// first and the representative carried along.
pub fn compute_report_with_class(c: &GradedFreeComplex, class: Vec<Poly>) -> Result<GimelReport> {
    let mut tracked = TrackedCochain { degree: 0, coeffs: class };
    let (simplified, _) = reduce::gauss_simplify_tracked(c, Some(&mut tracked));
    let s = ScalarComplex::expand(&simplified)?;
    let psi = s.scalar_cochain(&tracked.coeffs);
    s.invariants_report(&psi)
}
