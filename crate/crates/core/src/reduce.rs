//! Simplification of complexes by cancelling invertible differential entries,
//! splitting into non-interacting summands, and extraction of the summand with
//! Euler characteristic one.

use std::collections::{BTreeMap, BTreeSet};

use log::debug;

use crate::chain::{GradedFreeComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{Poly, Potential, RingCtx, Q};

/// A complex split into summands with no differential between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<GradedFreeComplex>,
    /// For each summand, the indices (per degree) of the generators it keeps.
    pub provenance: Vec<BTreeMap<i32, Vec<usize>>>,
}

/// A cochain tracked through simplification: coefficients on the generators
/// of one homological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedCochain {
    pub degree: i32,
    pub coeffs: Vec<Poly>,
}

struct Work<'a> {
    ctx: &'a RingCtx,
    labels: BTreeMap<i32, Vec<i64>>,
    alive: BTreeMap<i32, Vec<bool>>,
    // cols[i][s]: target row -> entry of d^i
    cols: BTreeMap<i32, Vec<BTreeMap<usize, Poly>>>,
    // rows[i][t]: source columns with a nonzero entry of d^i
    rows: BTreeMap<i32, Vec<BTreeSet<usize>>>,
}

impl<'a> Work<'a> {
    fn new(c: &'a GradedFreeComplex) -> Self {
        let labels = c.modules().clone();
        let alive = labels.iter().map(|(&i, v)| (i, vec![true; v.len()])).collect();
        let mut cols = BTreeMap::new();
        let mut rows = BTreeMap::new();
        for (&i, d) in c.differentials() {
            let mut cm = vec![BTreeMap::new(); d.cols()];
            let mut rm = vec![BTreeSet::new(); d.rows()];
            for (r, col, p) in d.iter() {
                cm[col].insert(r, p.clone());
                rm[r].insert(col);
            }
            cols.insert(i, cm);
            rows.insert(i, rm);
        }
        Work { ctx: c.ctx(), labels, alive, cols, rows }
    }

    fn is_pivot(&self, i: i32, t: usize, s: usize, p: &Poly) -> bool {
        if p.as_unit().is_none() {
            return false;
        }
        // A filtered cancellation needs a degree-preserving isomorphism.
        self.ctx.is_equivariant() || self.labels[&i][s] == self.labels[&(i + 1)][t]
    }

    fn find_pivot(&self) -> Option<(i32, usize, usize)> {
        let mut best: Option<(usize, (i32, usize, usize))> = None;
        for (&i, cm) in &self.cols {
            let rm = &self.rows[&i];
            for (s, col) in cm.iter().enumerate() {
                for (&t, p) in col {
                    if !self.is_pivot(i, t, s, p) {
                        continue;
                    }
                    let cost = (rm[t].len() - 1) * (col.len() - 1);
                    let key = (cost, (i, t, s));
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
            }
        }
        best.map(|(_, k)| k)
    }

    fn remove_source(&mut self, i: i32, s: usize) {
        if let Some(cm) = self.cols.get_mut(&i) {
            let col = std::mem::take(&mut cm[s]);
            let rm = self.rows.get_mut(&i).unwrap();
            for t in col.keys() {
                rm[*t].remove(&s);
            }
        }
    }

    fn remove_target(&mut self, i: i32, t: usize) {
        if let Some(rm) = self.rows.get_mut(&i) {
            let row = std::mem::take(&mut rm[t]);
            let cm = self.cols.get_mut(&i).unwrap();
            for s in row {
                cm[s].remove(&t);
            }
        }
    }

    /// Cancels the unit entry `d^i(t, s)`.
    fn eliminate(&mut self, i: i32, t: usize, s: usize, tracked: Option<&mut TrackedCochain>) {
        let ctx = self.ctx;
        let u_inv = self.cols[&i][s][&t].as_unit().unwrap().recip();
        let col_s: Vec<(usize, Poly)> = self.cols[&i][s]
            .iter()
            .filter(|(&r, _)| r != t)
            .map(|(&r, p)| (r, p.clone()))
            .collect();
        let row_t: Vec<(usize, Poly)> = self.rows[&i][t]
            .iter()
            .filter(|&&c| c != s)
            .map(|&c| (c, self.cols[&i][c][&t].clone()))
            .collect();

        if let Some(tr) = tracked {
            if tr.degree == i + 1 {
                let pt = std::mem::take(&mut tr.coeffs[t]);
                if !pt.is_zero() {
                    let f = ctx.scale(&pt, &u_inv);
                    for (r, gamma) in &col_s {
                        let delta = ctx.mul(gamma, &f);
                        tr.coeffs[*r] = ctx.sub(&tr.coeffs[*r], &delta);
                    }
                }
            } else if tr.degree == i {
                tr.coeffs[s] = Poly::zero();
            }
        }

        for (r, gamma) in &col_s {
            let g = ctx.scale(gamma, &u_inv);
            for (c, delta) in &row_t {
                let upd = ctx.mul(&g, delta);
                let cm = self.cols.get_mut(&i).unwrap();
                let old = cm[*c].remove(r).unwrap_or_default();
                let new = ctx.sub(&old, &upd);
                let rm = self.rows.get_mut(&i).unwrap();
                if new.is_zero() {
                    rm[*r].remove(c);
                } else {
                    cm[*c].insert(*r, new);
                    rm[*r].insert(*c);
                }
            }
        }
        // s leaves C^i: its column in d^i and its row in d^{i-1}.
        self.remove_source(i, s);
        self.remove_target(i - 1, s);
        // t leaves C^{i+1}: its row in d^i and its column in d^{i+1}.
        self.remove_target(i, t);
        self.remove_source(i + 1, t);
        self.alive.get_mut(&i).unwrap()[s] = false;
        self.alive.get_mut(&(i + 1)).unwrap()[t] = false;
    }

    fn finish(self, tracked: Option<&mut TrackedCochain>) -> Result<(GradedFreeComplex, BTreeMap<i32, Vec<usize>>)> {
        let kept: BTreeMap<i32, Vec<usize>> = self
            .alive
            .iter()
            .map(|(&i, a)| (i, (0..a.len()).filter(|&k| a[k]).collect()))
            .collect();
        let modules = kept
            .iter()
            .map(|(&i, idx)| (i, idx.iter().map(|&k| self.labels[&i][k]).collect()))
            .collect();
        let mut diffs = BTreeMap::new();
        for (&i, cm) in &self.cols {
            let src = &kept[&i];
            let tgt = kept.get(&(i + 1)).cloned().unwrap_or_default();
            let tpos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(j, &k)| (k, j)).collect();
            let mut d = PolyMatrix::zeros(tgt.len(), src.len());
            for (j, &s) in src.iter().enumerate() {
                for (t, p) in &cm[s] {
                    d.set(tpos[t], j, p.clone());
                }
            }
            diffs.insert(i, d);
        }
        if let Some(tr) = tracked {
            let idx = kept.get(&tr.degree).cloned().unwrap_or_default();
            tr.coeffs = idx.iter().map(|&k| tr.coeffs[k].clone()).collect();
        }
        let out = GradedFreeComplex::new(self.ctx.clone(), modules, diffs)?;
        Ok((out, kept))
    }
}

/// Cancels invertible constant entries until none remain.
///
/// Over a specialized ring only entries between generators of equal label are
/// cancelled, so the result is filtered homotopy equivalent to the input.
pub fn gauss_simplify(c: &GradedFreeComplex) -> GradedFreeComplex {
    gauss_simplify_tracked(c, None).0
}

/// [`gauss_simplify`] that also reports the surviving generator indices and
/// carries a cochain along the homotopy equivalence.
pub fn gauss_simplify_tracked(
    c: &GradedFreeComplex,
    mut tracked: Option<&mut TrackedCochain>,
) -> (GradedFreeComplex, BTreeMap<i32, Vec<usize>>) {
    let mut w = Work::new(c);
    let mut steps = 0usize;
    while let Some((i, t, s)) = w.find_pivot() {
        w.eliminate(i, t, s, tracked.as_deref_mut());
        steps += 1;
    }
    debug!("gauss_simplify: {steps} cancellations, rank {} -> {}", c.total_rank(), c.total_rank() - 2 * steps);
    w.finish(tracked).expect("elimination preserves matrix shapes")
}

/// Connected components of the graph on generators whose edges are the nonzero
/// differential entries. Components are ordered by their first generator.
pub fn split_components(c: &GradedFreeComplex) -> Decomposition {
    let mut index: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    let mut nodes = Vec::new();
    for (&i, v) in c.modules() {
        for k in 0..v.len() {
            index.insert((i, k), nodes.len());
            nodes.push((i, k));
        }
    }
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (&i, d) in c.differentials() {
        for (r, col, _) in d.iter() {
            let a = find(&mut parent, index[&(i, col)]);
            let b = find(&mut parent, index[&(i + 1, r)]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeMap<i32, Vec<usize>>> = BTreeMap::new();
    for (idx, &(i, k)) in nodes.iter().enumerate() {
        let root = find(&mut parent, idx);
        groups.entry(root).or_default().entry(i).or_default().push(k);
    }
    let mut summands = Vec::new();
    let mut provenance = Vec::new();
    for (_, part) in groups {
        summands.push(restrict(c, &part));
        provenance.push(part);
    }
    Decomposition { summands, provenance }
}

/// The subcomplex on the given generators (which must be closed under the differential).
fn restrict(c: &GradedFreeComplex, part: &BTreeMap<i32, Vec<usize>>) -> GradedFreeComplex {
    let modules = part
        .iter()
        .map(|(&i, idx)| (i, idx.iter().map(|&k| c.labels(i)[k]).collect()))
        .collect();
    let empty = Vec::new();
    let diffs = c
        .differentials()
        .iter()
        .filter(|(i, _)| part.contains_key(i))
        .map(|(&i, d)| (i, d.select(part.get(&(i + 1)).unwrap_or(&empty), &part[&i])))
        .collect();
    GradedFreeComplex::new(c.ctx().clone(), modules, diffs).expect("restriction preserves shapes")
}

/// The unique summand of odd Euler characteristic, which must be 1, all other
/// summands having characteristic 0.
pub fn extract_sn(dec: &Decomposition) -> Result<GradedFreeComplex> {
    let chis: Vec<i64> = dec.summands.iter().map(GradedFreeComplex::euler).collect();
    let odd: Vec<usize> = (0..chis.len()).filter(|&k| chis[k].rem_euclid(2) == 1).collect();
    if odd.len() != 1 {
        return Err(Error::Decomposition(format!(
            "expected exactly one summand of odd Euler characteristic, found {} (characteristics {chis:?})",
            odd.len()
        )));
    }
    let k = odd[0];
    if chis[k] != 1 {
        return Err(Error::Decomposition(format!("odd summand has Euler characteristic {}", chis[k])));
    }
    if let Some(j) = (0..chis.len()).find(|&j| j != k && chis[j] != 0) {
        return Err(Error::Decomposition(format!(
            "summand {j} has Euler characteristic {}, expected 0",
            chis[j]
        )));
    }
    Ok(dec.summands[k].clone())
}

/// The image of multiplication by `p(x)/(x - alpha)` on the specialized complex.
///
/// Since `alpha` is a simple root this image is free over `Q[x]/(x - alpha)`, so
/// the result is returned over that ring, with entries evaluated at `alpha`.
/// Labels are kept as they are.
pub fn reduced_complex(s: &GradedFreeComplex, pot: &Potential, alpha: &Q) -> Result<GradedFreeComplex> {
    let m = pot.root_multiplicity(alpha);
    if m != 1 {
        return Err(Error::InvalidRoot(format!("{alpha} is a root of multiplicity {m} of {pot}")));
    }
    let spec = if s.ctx().is_equivariant() {
        s.evaluate(pot)?
    } else {
        if s.ctx().potential() != Some(pot) {
            return Err(Error::ContextMismatch(format!("complex is not specialized at {pot}")));
        }
        s.clone()
    };
    let target = RingCtx::specialized(Potential::new(vec![-alpha.clone()])?);
    let diffs = spec
        .differentials()
        .iter()
        .map(|(&i, d)| Ok((i, d.map(|p| Ok(target.constant(spec.ctx().eval_at(p, alpha)?)))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    GradedFreeComplex::new(target, spec.modules().clone(), diffs)
}

/// Rational matrix of a specialized differential in the monomial basis
/// (generator `g`, power `x^a`) at index `g * n + a`.
pub fn expand_matrix(ctx: &RingCtx, d: &PolyMatrix) -> QMatrix {
    let n = ctx.n();
    let mut m = QMatrix::zeros(d.rows() * n, d.cols() * n);
    for (r, c, p) in d.iter() {
        for a in 0..n {
            let img = ctx.mul(p, &ctx.x_pow(a as u32));
            for (e, v) in img.terms() {
                m.set(r * n + e[0] as usize, c * n + a, v.clone());
            }
        }
    }
    m
}

/// Dimensions over `Q` of the cohomology of a specialized complex.
pub fn cohomology_dims(c: &GradedFreeComplex) -> Result<BTreeMap<i32, usize>> {
    if c.ctx().is_equivariant() {
        return Err(Error::ContextMismatch("cohomology over Q needs a specialized complex".into()));
    }
    let n = c.n();
    let rank_of = |i: i32| -> usize {
        c.differentials().get(&i).map_or(0, |d| expand_matrix(c.ctx(), d).rank())
    };
    Ok(c
        .modules()
        .iter()
        .map(|(&i, v)| (i, v.len() * n - rank_of(i) - rank_of(i - 1)))
        .collect())
}

/// Runs simplification, splitting and extraction in sequence.
pub fn decompose(c: &GradedFreeComplex) -> (GradedFreeComplex, Decomposition) {
    let simplified = gauss_simplify(c);
    let dec = split_components(&simplified);
    (simplified, dec)
}

/// Sum of the Euler characteristics of the summands (equals that of the input).
pub fn total_euler(dec: &Decomposition) -> i64 {
    dec.summands.iter().map(GradedFreeComplex::euler).sum()
}
