//! Cochain complexes of graded free modules over a [`RingCtx`].
//!
//! A generator written `q^s R` carries the label `s`; its absolute quantum degree
//! is `s + 1 - n`, so `x^a` times it sits at `s + 1 - n + 2a`. Differentials go
//! from degree `i` to `i + 1` and are stored with one column per source generator.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Potential, RingCtx, RingKind, Q};

/// Sparse matrix of ring elements; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: BTreeMap::new() }
    }

    /// Builds from dense rows (row = target, column = source).
    pub fn from_rows(rows: Vec<Vec<Poly>>, cols: usize) -> Result<Self> {
        let mut m = PolyMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, p) in row.into_iter().enumerate() {
                m.set(r, c, p);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Poly> {
        self.entries.get(&(r, c))
    }

    pub fn entry(&self, r: usize, c: usize) -> Poly {
        self.get(r, c).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of bounds");
        if p.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), p);
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), p)| ((c, r), p.clone())).collect(),
        }
    }

    /// `self * other` over `ctx`.
    pub fn mul(&self, ctx: &RingCtx, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Poly)>> = BTreeMap::new();
        for (&(k, j), p) in &other.entries {
            by_row.entry(k).or_default().push((j, p));
        }
        let mut acc: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let prod = ctx.mul(a, b);
                    let slot = acc.entry((i, j)).or_default();
                    *slot = ctx.add(slot, &prod);
                }
            }
        }
        acc.retain(|_, p| !p.is_zero());
        PolyMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<PolyMatrix> {
        let mut out = PolyMatrix::zeros(self.rows, self.cols);
        for (&(r, c), p) in &self.entries {
            out.set(r, c, f(p)?);
        }
        Ok(out)
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let rmap: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let cmap: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = PolyMatrix::zeros(rows.len(), cols.len());
        for (&(r, c), p) in &self.entries {
            if let (Some(&nr), Some(&nc)) = (rmap.get(&r), cmap.get(&c)) {
                out.entries.insert((nr, nc), p.clone());
            }
        }
        out
    }
}

/// Result of [`GradedFreeComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    pub ranks: BTreeMap<i32, usize>,
    pub euler: i64,
    pub ok: bool,
    /// Description of the first failing check.
    pub failure: Option<String>,
}

/// A bounded complex of graded free modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedFreeComplex {
    ctx: RingCtx,
    modules: BTreeMap<i32, Vec<i64>>,
    diffs: BTreeMap<i32, PolyMatrix>,
}

impl GradedFreeComplex {
    /// Assembles a complex, checking matrix shapes. Empty modules and zero
    /// differentials are dropped.
    pub fn new(
        ctx: RingCtx,
        modules: BTreeMap<i32, Vec<i64>>,
        diffs: BTreeMap<i32, PolyMatrix>,
    ) -> Result<Self> {
        let modules: BTreeMap<i32, Vec<i64>> =
            modules.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let rank = |i: i32| modules.get(&i).map_or(0, Vec::len);
        let mut kept = BTreeMap::new();
        for (i, d) in diffs {
            if d.rows() != rank(i + 1) || d.cols() != rank(i) {
                return Err(Error::Shape(format!(
                    "differential in degree {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    rank(i + 1),
                    rank(i)
                )));
            }
            for (_, _, p) in d.iter() {
                ctx.check(p)?;
            }
            if !d.is_zero() {
                kept.insert(i, d);
            }
        }
        Ok(GradedFreeComplex { ctx, modules, diffs: kept })
    }

    pub fn zero(ctx: RingCtx) -> Self {
        GradedFreeComplex { ctx, modules: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// A single generator `q^0 R` in degree 0: the unknot.
    pub fn trivial(ctx: RingCtx) -> Self {
        GradedFreeComplex {
            ctx,
            modules: BTreeMap::from([(0, vec![0])]),
            diffs: BTreeMap::new(),
        }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn modules(&self) -> &BTreeMap<i32, Vec<i64>> {
        &self.modules
    }

    pub fn differentials(&self) -> &BTreeMap<i32, PolyMatrix> {
        &self.diffs
    }

    pub fn labels(&self, i: i32) -> &[i64] {
        self.modules.get(&i).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, i: i32) -> usize {
        self.labels(i).len()
    }

    pub fn total_rank(&self) -> usize {
        self.modules.values().map(Vec::len).sum()
    }

    /// Degrees with nonzero modules, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        self.modules.keys().copied().collect()
    }

    /// The differential out of degree `i` (zero matrix if absent).
    pub fn diff(&self, i: i32) -> PolyMatrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(self.rank(i + 1), self.rank(i)))
    }

    /// Absolute quantum degree of a generator with label `s`.
    pub fn abs_degree(&self, s: i64) -> i64 {
        s + 1 - self.n() as i64
    }

    pub fn euler(&self) -> i64 {
        self.modules
            .iter()
            .map(|(&i, v)| if i.rem_euclid(2) == 0 { v.len() as i64 } else { -(v.len() as i64) })
            .sum()
    }

    pub fn validate(&self) -> ComplexReport {
        let ranks = self.modules.iter().map(|(&i, v)| (i, v.len())).collect();
        let failure = self.first_failure();
        ComplexReport { ranks, euler: self.euler(), ok: failure.is_none(), failure }
    }

    /// Like [`validate`](Self::validate) but as a `Result`.
    pub fn check_valid(&self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(msg) => Err(Error::Validation(msg)),
        }
    }

    fn first_failure(&self) -> Option<String> {
        for (&i, d) in &self.diffs {
            if d.rows() != self.rank(i + 1) || d.cols() != self.rank(i) {
                return Some(format!("differential in degree {i} has the wrong shape"));
            }
            let src = self.labels(i);
            let tgt = self.labels(i + 1);
            for (r, c, p) in d.iter() {
                if let Err(e) = self.ctx.check(p) {
                    return Some(format!("entry ({r}, {c}) of d^{i}: {e}"));
                }
                let allowed = src[c] - tgt[r];
                match self.ctx.kind() {
                    RingKind::Equivariant => {
                        if let Some((e, _)) =
                            p.terms().find(|(e, _)| self.ctx.monomial_degree(e) != allowed)
                        {
                            return Some(format!(
                                "entry ({r}, {c}) of d^{i} = {p} has a term of degree {} but the \
                                 generators require degree {allowed}",
                                self.ctx.monomial_degree(e)
                            ));
                        }
                    }
                    RingKind::Specialized(_) => {
                        let level = 2 * p.x_degree().unwrap_or(0) as i64;
                        if level > allowed {
                            return Some(format!(
                                "entry ({r}, {c}) of d^{i} = {p} has filtration level {level} \
                                 above the allowed {allowed}"
                            ));
                        }
                    }
                }
            }
        }
        for (&i, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i + 1)) {
                let prod = next.mul(&self.ctx, d);
                let first = prod.iter().next().map(|(r, c, p)| format!("({r}, {c}) = {p}"));
                if let Some(entry) = first {
                    return Some(format!("d^{} d^{i} is nonzero: entry {entry}", i + 1));
                }
            }
        }
        None
    }

    /// Shifts homological degrees by `dt` and all labels by `dq`.
    pub fn shift(&self, dt: i32, dq: i64) -> Self {
        GradedFreeComplex {
            ctx: self.ctx.clone(),
            modules: self
                .modules
                .iter()
                .map(|(&i, v)| (i + dt, v.iter().map(|s| s + dq).collect()))
                .collect(),
            diffs: self.diffs.iter().map(|(&i, d)| (i + dt, d.clone())).collect(),
        }
    }

    /// Tensor product with Koszul signs `d(g h) = dg h + (-1)^|g| g dh`.
    ///
    /// Labels add. In total degree `k` generators are ordered by the degree of the
    /// left factor, then by left generator, then by right generator.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("tensor of complexes over different rings".into()));
        }
        let ctx = &self.ctx;
        // (k, i1) -> offset of the block C1^{i1} (x) C2^{k-i1} inside degree k
        let mut offsets: BTreeMap<(i32, i32), usize> = BTreeMap::new();
        let mut modules: BTreeMap<i32, Vec<i64>> = BTreeMap::new();
        let mut totals: BTreeSet<i32> = BTreeSet::new();
        for &i1 in self.modules.keys() {
            for &i2 in other.modules.keys() {
                totals.insert(i1 + i2);
            }
        }
        for &k in &totals {
            let labels = modules.entry(k).or_default();
            for (&i1, l1) in &self.modules {
                let l2 = other.labels(k - i1);
                if l2.is_empty() {
                    continue;
                }
                offsets.insert((k, i1), labels.len());
                for a in l1 {
                    for b in l2 {
                        labels.push(a + b);
                    }
                }
            }
        }
        let rank = |k: i32| modules.get(&k).map_or(0, Vec::len);
        let mut diffs = BTreeMap::new();
        for &k in &totals {
            let mut d = PolyMatrix::zeros(rank(k + 1), rank(k));
            for (&i1, _) in &self.modules {
                let i2 = k - i1;
                let Some(&src_off) = offsets.get(&(k, i1)) else {
                    continue;
                };
                let r2 = other.rank(i2);
                // d1 (x) id
                if let (Some(d1), Some(&tgt_off)) =
                    (self.diffs.get(&i1), offsets.get(&(k + 1, i1 + 1)))
                {
                    for (r, c, p) in d1.iter() {
                        for h in 0..r2 {
                            d.set(tgt_off + r * r2 + h, src_off + c * r2 + h, p.clone());
                        }
                    }
                }
                // (-1)^{i1} id (x) d2
                if let (Some(d2), Some(&tgt_off)) = (other.diffs.get(&i2), offsets.get(&(k + 1, i1)))
                {
                    let r2t = other.rank(i2 + 1);
                    for g in 0..self.rank(i1) {
                        for (r, c, p) in d2.iter() {
                            let v = if i1.rem_euclid(2) == 0 { p.clone() } else { ctx.neg(p) };
                            d.set(tgt_off + g * r2t + r, src_off + g * r2 + c, v);
                        }
                    }
                }
            }
            diffs.insert(k, d);
        }
        GradedFreeComplex::new(ctx.clone(), modules, diffs)
    }

    /// The product of a cochain `a` in degree `i` of `self` and a cochain `b`
    /// in degree `j` of `other`, laid out as degree `i + j` of [`Self::tensor`].
    pub fn tensor_cochain(&self, other: &Self, i: i32, a: &[Poly], j: i32, b: &[Poly]) -> Vec<Poly> {
        let k = i + j;
        let block = |i1: i32| self.rank(i1) * other.rank(k - i1);
        let offset: usize = self.modules.keys().filter(|&&i1| i1 < i).map(|&i1| block(i1)).sum();
        let total: usize = self.modules.keys().map(|&i1| block(i1)).sum();
        let mut out = vec![Poly::zero(); total];
        for (g, pa) in a.iter().enumerate() {
            for (h, pb) in b.iter().enumerate() {
                out[offset + g * b.len() + h] = self.ctx.mul(pa, pb);
            }
        }
        out
    }

    /// The dual complex: degree `i` becomes `-i`, labels are negated and each
    /// differential is transposed.
    pub fn dual(&self) -> Self {
        GradedFreeComplex {
            ctx: self.ctx.clone(),
            modules: self
                .modules
                .iter()
                .map(|(&i, v)| (-i, v.iter().map(|s| -s).collect()))
                .collect(),
            diffs: self.diffs.iter().map(|(&i, d)| (-i - 1, d.transpose())).collect(),
        }
    }

    /// Entrywise evaluation at a monic potential.
    pub fn evaluate(&self, pot: &Potential) -> Result<Self> {
        let target = RingCtx::specialized(pot.clone());
        let diffs = self
            .diffs
            .iter()
            .map(|(&i, d)| Ok((i, d.map(|p| self.ctx.evaluate(p, pot))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        GradedFreeComplex::new(target, self.modules.clone(), diffs)
    }

    /// Block direct sum; generators of `other` come after those of `self`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("direct sum over different rings".into()));
        }
        let mut modules = self.modules.clone();
        for (&i, v) in &other.modules {
            modules.entry(i).or_default().extend(v.iter().copied());
        }
        let rank = |i: i32| modules.get(&i).map_or(0, Vec::len);
        let mut diffs = BTreeMap::new();
        let degs: BTreeSet<i32> = self.diffs.keys().chain(other.diffs.keys()).copied().collect();
        for i in degs {
            let mut d = PolyMatrix::zeros(rank(i + 1), rank(i));
            if let Some(a) = self.diffs.get(&i) {
                for (r, c, p) in a.iter() {
                    d.set(r, c, p.clone());
                }
            }
            if let Some(b) = other.diffs.get(&i) {
                let (ro, co) = (self.rank(i + 1), self.rank(i));
                for (r, c, p) in b.iter() {
                    d.set(ro + r, co + c, p.clone());
                }
            }
            diffs.insert(i, d);
        }
        GradedFreeComplex::new(self.ctx.clone(), modules, diffs)
    }

    /// Change of basis `g'_j = u_j g_{perm[j]}` in every degree. Missing degrees
    /// keep the identity order and scale 1.
    pub fn rebase(
        &self,
        perms: &BTreeMap<i32, Vec<usize>>,
        scales: &BTreeMap<i32, Vec<Q>>,
    ) -> Result<Self> {
        let mut inverse: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (&i, v) in &self.modules {
            let perm = perms.get(&i).cloned().unwrap_or_else(|| (0..v.len()).collect());
            let mut seen = vec![false; v.len()];
            if perm.len() != v.len() || perm.iter().any(|&p| p >= v.len() || std::mem::replace(&mut seen[p], true)) {
                return Err(Error::Shape(format!("degree {i}: not a permutation")));
            }
            let mut inv = vec![0; v.len()];
            for (j, &p) in perm.iter().enumerate() {
                inv[p] = j;
            }
            inverse.insert(i, inv);
        }
        let scale = |i: i32, j: usize| -> Q {
            scales.get(&i).and_then(|s| s.get(j).cloned()).unwrap_or_else(Q::one)
        };
        for (i, s) in scales {
            if s.iter().any(Zero::is_zero) {
                return Err(Error::Shape(format!("degree {i}: zero scale factor")));
            }
        }
        let modules = self
            .modules
            .iter()
            .map(|(&i, v)| {
                let inv = &inverse[&i];
                let mut out = vec![0; v.len()];
                for (old, &new) in inv.iter().enumerate() {
                    out[new] = v[old];
                }
                (i, out)
            })
            .collect();
        let mut diffs = BTreeMap::new();
        for (&i, d) in &self.diffs {
            let mut nd = PolyMatrix::zeros(d.rows(), d.cols());
            for (r, c, p) in d.iter() {
                let nr = inverse[&(i + 1)][r];
                let nc = inverse[&i][c];
                // d(u_c g_c) = u_c p g_r = (u_c / u_r) p g'_r
                let f = scale(i, nc) / scale(i + 1, nr);
                nd.set(nr, nc, self.ctx.scale(p, &f));
            }
            diffs.insert(i, nd);
        }
        GradedFreeComplex::new(self.ctx.clone(), modules, diffs)
    }

    /// Whether `other` arises from `self` by permuting generators within each
    /// degree (keeping labels) and rescaling them by nonzero rationals.
    pub fn equivalent_up_to_unit_scaling(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        let degs = self.degrees();
        if degs != other.degrees() || degs.iter().any(|&i| self.rank(i) != other.rank(i)) {
            return false;
        }
        let candidates: Vec<Vec<Vec<usize>>> = degs
            .iter()
            .map(|&i| label_preserving_perms(self.labels(i), other.labels(i)))
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return false;
        }
        let mut choice = vec![0; degs.len()];
        loop {
            let perms: BTreeMap<i32, Vec<usize>> =
                degs.iter().zip(&choice).zip(&candidates).map(|((&i, &k), c)| (i, c[k].clone())).collect();
            if self.scaling_matches(other, &perms) {
                return true;
            }
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return false;
                }
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    /// With `other`'s generator `j` in degree `i` matched to `self`'s generator
    /// `perms[i][j]`, decides whether scale factors exist.
    fn scaling_matches(&self, other: &Self, perms: &BTreeMap<i32, Vec<usize>>) -> bool {
        // other[r', c'] = (u_c' / u_r') * self[perm r', perm c'] for every entry.
        let mut edges: Vec<((i32, usize), (i32, usize), Q)> = Vec::new();
        for &i in perms.keys() {
            let a = self.diff(i);
            let b = other.diff(i);
            let (pi, pt) = (&perms[&i], perms.get(&(i + 1)));
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    let pb = b.entry(r, c);
                    let pa = a.entry(pt.unwrap()[r], pi[c]);
                    match (pa.is_zero(), pb.is_zero()) {
                        (true, true) => continue,
                        (false, false) => {}
                        _ => return false,
                    }
                    let Some(f) = proportional(&pa, &pb) else {
                        return false;
                    };
                    edges.push(((i, c), (i + 1, r), f));
                }
            }
        }
        // Solve u_src / u_tgt = f by propagation from arbitrary roots.
        let mut adj: BTreeMap<(i32, usize), Vec<((i32, usize), Q)>> = BTreeMap::new();
        for (s, t, f) in &edges {
            adj.entry(*s).or_default().push((*t, f.recip()));
            adj.entry(*t).or_default().push((*s, f.clone()));
        }
        let mut value: BTreeMap<(i32, usize), Q> = BTreeMap::new();
        for &start in adj.keys() {
            if value.contains_key(&start) {
                continue;
            }
            value.insert(start, Q::one());
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let uv = value[&v].clone();
                for (w, f) in &adj[&v] {
                    // edge stored so that u_w = u_v * f
                    let want = &uv * f;
                    match value.get(w) {
                        Some(have) if *have != want => return false,
                        Some(_) => {}
                        None => {
                            value.insert(*w, want);
                            stack.push(*w);
                        }
                    }
                }
            }
        }
        true
    }
}

/// `f` with `b = f * a`, if it exists.
fn proportional(a: &Poly, b: &Poly) -> Option<Q> {
    if a.len() != b.len() {
        return None;
    }
    let mut f: Option<Q> = None;
    for (e, ca) in a.terms() {
        let cb = b.coeff(e)?;
        let r = cb / ca;
        match &f {
            Some(prev) if *prev != r => return None,
            _ => f = Some(r),
        }
    }
    f
}

fn label_preserving_perms(a: &[i64], b: &[i64]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; a.len()];
    fn rec(a: &[i64], b: &[i64], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if out.len() >= 50_000 {
            return;
        }
        let j = cur.len();
        if j == b.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..a.len() {
            if !used[k] && a[k] == b[j] {
                used[k] = true;
                cur.push(k);
                rec(a, b, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(a, b, &mut cur, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn eq(n: usize) -> RingCtx {
        RingCtx::equivariant(n).unwrap()
    }

    fn cx(ctx: &RingCtx, modules: &[(i32, &[i64])], diffs: &[(i32, &[&[&str]])]) -> GradedFreeComplex {
        let modules: BTreeMap<i32, Vec<i64>> = modules.iter().map(|(i, v)| (*i, v.to_vec())).collect();
        let diffs = diffs
            .iter()
            .map(|(i, rows)| {
                let cols = rows.first().map_or(0, |r| r.len());
                let rows = rows.iter().map(|r| r.iter().map(|s| ctx.parse(s).unwrap()).collect()).collect();
                (*i, PolyMatrix::from_rows(rows, cols).unwrap())
            })
            .collect();
        GradedFreeComplex::new(ctx.clone(), modules, diffs).unwrap()
    }

    fn identity_pair(ctx: &RingCtx) -> GradedFreeComplex {
        cx(ctx, &[(0, &[3]), (1, &[3])], &[(0, &[&["1"]])])
    }

    #[test]
    fn trivial_and_zero() {
        let c = GradedFreeComplex::trivial(eq(3));
        let rep = c.validate();
        assert!(rep.ok);
        assert_eq!(rep.euler, 1);
        assert_eq!(GradedFreeComplex::zero(eq(3)).euler(), 0);
        assert!(GradedFreeComplex::zero(eq(3)).validate().ok);
    }

    #[test]
    fn homogeneity_is_checked() {
        let r = eq(3);
        let good = cx(&r, &[(-1, &[-2]), (0, &[-6])], &[(-1, &[&["3*x^2 + 2*a2*x + a1"]])]);
        assert!(good.validate().ok);
        let bad = cx(&r, &[(-1, &[-2]), (0, &[-4])], &[(-1, &[&["3*x^2 + 2*a2*x + a1"]])]);
        let rep = bad.validate();
        assert!(!rep.ok);
        assert!(rep.failure.unwrap().contains("degree"));
        let s = RingCtx::standard(3);
        let filtered = cx(&s, &[(0, &[0]), (1, &[-2])], &[(0, &[&["x + 1"]])]);
        assert!(filtered.validate().ok);
        let unfiltered = cx(&s, &[(0, &[0]), (1, &[-2])], &[(0, &[&["x^2"]])]);
        assert!(!unfiltered.validate().ok);
    }

    #[test]
    fn d_squared_is_checked() {
        let r = eq(2);
        let c = cx(&r, &[(0, &[0]), (1, &[0]), (2, &[0])], &[(0, &[&["1"]]), (1, &[&["1"]])]);
        let rep = c.validate();
        assert!(!rep.ok);
        assert!(rep.failure.unwrap().contains("nonzero"));
    }

    #[test]
    fn shape_errors() {
        let r = eq(2);
        let modules = BTreeMap::from([(0, vec![0]), (1, vec![0, 0])]);
        let diffs = BTreeMap::from([(0, PolyMatrix::zeros(1, 1))]);
        assert!(matches!(GradedFreeComplex::new(r, modules, diffs), Err(Error::Shape(_))));
    }

    #[test]
    fn shift_and_euler() {
        let r = eq(2);
        let c = cx(&r, &[(0, &[0]), (1, &[-2, -2])], &[(0, &[&["x + a1"], &["x"]])]);
        assert!(c.validate().ok);
        assert_eq!(c.shift(0, 0), c);
        assert_eq!(c.shift(1, 2).shift(-1, -2), c);
        assert_eq!(c.shift(1, 0).euler(), -c.euler());
    }

    #[test]
    fn tensor_basics() {
        let r = eq(2);
        let c = cx(&r, &[(0, &[0]), (1, &[-2, -2])], &[(0, &[&["x + a1"], &["x"]])]);
        let t = c.tensor(&GradedFreeComplex::trivial(r.clone())).unwrap();
        assert_eq!(t, c);
        let t = GradedFreeComplex::trivial(r.clone()).tensor(&c).unwrap();
        assert_eq!(t, c);
        let cc = c.tensor(&c).unwrap();
        assert!(cc.validate().ok);
        assert_eq!(cc.euler(), c.euler() * c.euler());
        assert_eq!(cc.rank(1), 4);
        let other = GradedFreeComplex::trivial(eq(3));
        assert!(matches!(c.tensor(&other), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn dual_is_an_involution() {
        let r = eq(2);
        let c = cx(&r, &[(0, &[0]), (1, &[-2, -2])], &[(0, &[&["x + a1"], &["x"]])]);
        let d = c.dual();
        assert!(d.validate().ok);
        assert_eq!(d.dual(), c);
        assert_eq!(d.labels(-1), &[2, 2]);
    }

    #[test]
    fn evaluation_and_sums() {
        let r = eq(2);
        let c = cx(&r, &[(0, &[0]), (1, &[-2])], &[(0, &[&["2*x + a1"]])]);
        let e = c.evaluate(&Potential::standard(2)).unwrap();
        assert!(e.validate().ok);
        assert_eq!(e.diff(0).entry(0, 0), e.ctx().parse("2*x - 1").unwrap());
        assert!(c.evaluate(&Potential::standard(3)).is_err());
        let t = GradedFreeComplex::trivial(r.clone());
        assert_eq!(t.evaluate(&Potential::standard(2)).unwrap(), GradedFreeComplex::trivial(RingCtx::standard(2)));
        let s = c.direct_sum(&identity_pair(&r)).unwrap();
        assert!(s.validate().ok);
        assert_eq!(s.rank(0), 2);
        assert_eq!(s.euler(), 0);
    }

    #[test]
    fn rebasing_is_detected_as_equivalent() {
        let r = eq(2);
        let c = cx(&r, &[(0, &[2, 0]), (1, &[0, 0, -2])], &[(0, &[&["x + a1", "1"], &["x", "0"], &["0", "x"]])]);
        assert!(c.validate().ok);
        let perms = BTreeMap::from([(0, vec![1, 0]), (1, vec![2, 0, 1])]);
        let scales = BTreeMap::from([(0, vec![rat(3), rat(-1)]), (1, vec![rat(2), rat(5), rat(7)])]);
        let d = c.rebase(&perms, &scales).unwrap();
        assert!(d.validate().ok);
        assert_ne!(c, d);
        assert!(c.equivalent_up_to_unit_scaling(&d));
        assert!(d.equivalent_up_to_unit_scaling(&c));
        let mut tweaked = d.diff(0);
        tweaked.set(1, 0, Poly::zero());
        let e = GradedFreeComplex::new(r.clone(), d.modules().clone(), BTreeMap::from([(0, tweaked)])).unwrap();
        assert!(!c.equivalent_up_to_unit_scaling(&e));
    }
}
