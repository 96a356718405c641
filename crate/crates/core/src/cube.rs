//! Planar diagrams and the equivariant sl(2) cube of resolutions.
//!
//! A crossing `X[i, j, k, l]` lists its edges counterclockwise starting from
//! the incoming under-strand `i`, so the under-strand runs `i -> k`. The crossing
//! is positive when the over-strand runs `j -> l`, which for consecutively
//! labelled diagrams means `l = j + 1 (mod 2c)`, and negative when `j = l + 1`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use log::debug;
use rayon::prelude::*;

use crate::chain::{GradedFreeComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::filtration::GimelReport;
use crate::poly::{Poly, Potential, RingCtx};
use crate::reduce::{gauss_simplify_tracked, TrackedCochain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub labels: [usize; 4],
    pub sign: Sign,
}

/// An oriented knot diagram with a basepoint edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    basepoint: usize,
}

/// The circles of one vertex of the cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionState {
    pub vertex: u64,
    /// Each circle as its sorted edge labels; circles sorted by smallest label.
    pub circles: Vec<Vec<usize>>,
    pub basepoint_circle: usize,
}

/// Largest supported crossing number.
pub const MAX_CROSSINGS: usize = 16;

impl Diagram {
    /// Builds a diagram from crossing quadruples; signs are derived.
    pub fn new(quads: Vec<[usize; 4]>, basepoint: Option<usize>) -> Result<Self> {
        let c = quads.len();
        let m = 2 * c;
        if c > MAX_CROSSINGS {
            return Err(Error::Unsupported(format!("{c} crossings, at most {MAX_CROSSINGS} are supported")));
        }
        let basepoint = basepoint.unwrap_or(1);
        if c == 0 {
            if basepoint != 1 {
                return Err(Error::InvalidDiagram("the crossingless unknot has only edge 1".into()));
            }
            return Ok(Diagram { crossings: Vec::new(), basepoint });
        }
        let mut count = vec![0usize; m + 1];
        for q in &quads {
            for &e in q {
                if e == 0 || e > m {
                    return Err(Error::InvalidDiagram(format!("edge label {e} outside 1..={m}")));
                }
                count[e] += 1;
            }
        }
        if let Some(e) = (1..=m).find(|&e| count[e] != 2) {
            return Err(Error::InvalidDiagram(format!("edge {e} appears {} times, expected 2", count[e])));
        }
        if basepoint == 0 || basepoint > m {
            return Err(Error::InvalidDiagram(format!("basepoint {basepoint} is not an edge")));
        }
        let crossings = quads
            .into_iter()
            .map(|q| Ok(Crossing { labels: q, sign: crossing_sign(q, m)? }))
            .collect::<Result<Vec<_>>>()?;
        let d = Diagram { crossings, basepoint };
        d.check_single_component()?;
        Ok(d)
    }

    fn check_single_component(&self) -> Result<()> {
        let m = self.edge_count();
        let mut next = vec![0usize; m + 1];
        let mut set = |from: usize, to: usize| -> Result<()> {
            if next[from] != 0 {
                return Err(Error::InvalidDiagram(format!("edge {from} enters two crossings")));
            }
            next[from] = to;
            Ok(())
        };
        for x in &self.crossings {
            let [i, j, k, l] = x.labels;
            set(i, k)?;
            match x.sign {
                Sign::Positive => set(j, l)?,
                Sign::Negative => set(l, j)?,
            }
        }
        let mut seen = 1;
        let mut e = next[1];
        while e != 1 {
            seen += 1;
            e = next[e];
            if seen > m {
                return Err(Error::InvalidDiagram("orientation does not close up".into()));
            }
        }
        if seen != m {
            return Err(Error::Unsupported(format!(
                "diagram has several components (the one through edge 1 has {seen} of {m} edges)"
            )));
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.len() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// The vertex whose smoothing follows the orientation: 1 at negative crossings.
    pub fn oriented_vertex(&self) -> u64 {
        self.crossings
            .iter()
            .enumerate()
            .filter(|(_, x)| x.sign == Sign::Negative)
            .fold(0, |v, (c, _)| v | (1 << c))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x.labels[0], x.labels[1], x.labels[2], x.labels[3]))
            .collect();
        write!(f, "PD[{}]", xs.join(","))?;
        if self.basepoint != 1 {
            write!(f, " basepoint={}", self.basepoint)?;
        }
        Ok(())
    }
}

fn crossing_sign(q: [usize; 4], m: usize) -> Result<Sign> {
    let [i, j, k, l] = q;
    // A loop closing at the crossing fixes the orientation of the over-strand.
    if j == i || l == k {
        return Ok(Sign::Negative);
    }
    if l == i || j == k {
        return Ok(Sign::Positive);
    }
    let succ = |e: usize| e % m + 1;
    match (l == succ(j), j == succ(l)) {
        (true, false) => Ok(Sign::Positive),
        (false, true) => Ok(Sign::Negative),
        _ => Err(Error::InvalidDiagram(format!(
            "cannot orient the over-strand of X[{i},{j},{k},{l}]"
        ))),
    }
}

/// Reads `PD[X[a,b,c,d], ...]`, optionally followed by `basepoint=e`.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let err = |pos: usize, msg: &str| Error::Parse { input: text.to_string(), pos, msg: msg.to_string() };
    let compact: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let s: String = compact.iter().map(|(_, c)| *c).collect();
    let pos_of = |k: usize| compact.get(k).map_or(text.len(), |(p, _)| *p);
    if !s.starts_with("PD[") {
        return Err(err(0, "expected 'PD['"));
    }
    let bytes = s.as_bytes();
    let mut k = 3;
    let mut quads = Vec::new();
    loop {
        if bytes.get(k) == Some(&b']') {
            k += 1;
            break;
        }
        if !s[k..].starts_with("X[") {
            return Err(err(pos_of(k), "expected 'X['"));
        }
        k += 2;
        let mut q = [0usize; 4];
        for (slot, item) in q.iter_mut().enumerate() {
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            *item = s[start..k].parse().map_err(|_| err(pos_of(start), "expected an edge label"))?;
            let want = if slot == 3 { b']' } else { b',' };
            if bytes.get(k) != Some(&want) {
                return Err(err(pos_of(k), &format!("expected '{}'", want as char)));
            }
            k += 1;
        }
        quads.push(q);
        match bytes.get(k) {
            Some(b',') => k += 1,
            Some(b']') => {}
            _ => return Err(err(pos_of(k), "expected ',' or ']'")),
        }
    }
    let rest = s[k..].trim_start_matches([',', ';']);
    let basepoint = if rest.is_empty() {
        None
    } else if let Some(v) = rest.strip_prefix("basepoint=") {
        Some(v.parse().map_err(|_| err(pos_of(k), "bad basepoint"))?)
    } else {
        return Err(err(pos_of(k), "trailing input"));
    };
    Diagram::new(quads, basepoint)
}

/// The mirror image: every crossing changes sign.
pub fn mirror(d: &Diagram) -> Diagram {
    let crossings = d
        .crossings
        .iter()
        .map(|x| {
            let [i, j, k, l] = x.labels;
            match x.sign {
                Sign::Positive => Crossing { labels: [j, k, l, i], sign: Sign::Negative },
                Sign::Negative => Crossing { labels: [l, i, j, k], sign: Sign::Positive },
            }
        })
        .collect();
    Diagram { crossings, basepoint: d.basepoint }
}

/// Circles of the smoothing at `vertex` (bit `c` set = 1-smoothing at crossing `c`).
pub fn resolve(d: &Diagram, vertex: u64) -> ResolutionState {
    let m = d.edge_count();
    if m == 0 {
        return ResolutionState { vertex, circles: vec![Vec::new()], basepoint_circle: 0 };
    }
    let mut parent: Vec<usize> = (0..=m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for (c, x) in d.crossings.iter().enumerate() {
        let [i, j, k, l] = x.labels;
        if vertex >> c & 1 == 0 {
            union(i, l);
            union(j, k);
        } else {
            union(i, j);
            union(k, l);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 1..=m {
        let r = find(&mut parent, e);
        groups.entry(r).or_default().push(e);
    }
    let mut circles: Vec<Vec<usize>> = groups.into_values().collect();
    circles.sort();
    let basepoint_circle = circles.iter().position(|c| c.contains(&d.basepoint)).unwrap();
    ResolutionState { vertex, circles, basepoint_circle }
}

impl ResolutionState {
    pub fn circle_of(&self, edge: usize) -> usize {
        self.circles.iter().position(|c| c.contains(&edge)).unwrap_or(0)
    }

    /// Circles other than the basepoint circle, in order; these index the mask
    /// bits of the generators at this vertex.
    pub fn free_circles(&self) -> Vec<usize> {
        (0..self.circles.len()).filter(|&c| c != self.basepoint_circle).collect()
    }
}

struct Cube {
    ctx: RingCtx,
    states: Vec<ResolutionState>,
    n_minus: i64,
    /// generator offset of each vertex inside its homological degree
    offset: Vec<usize>,
    modules: BTreeMap<i32, Vec<i64>>,
}

impl Cube {
    fn new(d: &Diagram) -> Result<Self> {
        let ctx = RingCtx::equivariant(2)?;
        let c = d.crossing_count();
        let states: Vec<ResolutionState> = (0..1u64 << c).into_par_iter().map(|v| resolve(d, v)).collect();
        let (n_plus, n_minus) = (d.n_plus() as i64, d.n_minus() as i64);
        let mut order: Vec<u64> = (0..1u64 << c).collect();
        order.sort_by_key(|&v| (v.count_ones(), v));
        let mut offset = vec![0; 1 << c];
        let mut modules: BTreeMap<i32, Vec<i64>> = BTreeMap::new();
        for v in order {
            let st = &states[v as usize];
            let w = v.count_ones() as i64;
            let h = (w - n_minus) as i32;
            let labels = modules.entry(h).or_default();
            offset[v as usize] = labels.len();
            let free = st.free_circles().len();
            let circles = st.circles.len() as i64;
            for mask in 0..1u64 << free {
                let abs = 2 * mask.count_ones() as i64 - circles - w - n_plus + 2 * n_minus;
                labels.push(abs + 1);
            }
        }
        Ok(Cube { ctx, states, n_minus, offset, modules })
    }

    fn degree(&self, v: u64) -> i32 {
        (v.count_ones() as i64 - self.n_minus) as i32
    }

    /// Image of generator `mask` at `v` under the edge map to `v | 1 << c`, as
    /// (generator mask at the target, coefficient).
    fn edge_map(&self, d: &Diagram, v: u64, c: usize, mask: u64) -> Vec<(u64, Poly)> {
        let ctx = &self.ctx;
        let src = &self.states[v as usize];
        let tgt = &self.states[(v | 1 << c) as usize];
        let a1 = ctx.a(1).unwrap();
        let a0 = ctx.parse("a0").unwrap();
        let free_src = src.free_circles();
        let mut labels = vec![false; src.circles.len()];
        for (b, &circ) in free_src.iter().enumerate() {
            labels[circ] = mask >> b & 1 == 1;
        }
        let [i, j, k, _] = d.crossings[c].labels;
        let ci = src.circle_of(i);
        let cj = src.circle_of(j);
        // Target labels for circles untouched by the crossing.
        let mut base = vec![false; tgt.circles.len()];
        for (circ, edges) in src.circles.iter().enumerate() {
            if circ != ci && circ != cj {
                base[tgt.circle_of(edges[0])] = labels[circ];
            }
        }
        let one = ctx.one();
        let mut terms: Vec<(Vec<bool>, Poly)> = Vec::new();
        if ci != cj {
            let t = tgt.circle_of(i);
            let mut put = |lab: bool, coef: Poly| {
                let mut l = base.clone();
                l[t] = lab;
                terms.push((l, coef));
            };
            match (labels[ci], labels[cj]) {
                (false, false) => put(false, one.clone()),
                (true, false) | (false, true) => put(true, one.clone()),
                (true, true) => {
                    put(true, ctx.neg(&a1));
                    put(false, ctx.neg(&a0));
                }
            }
        } else {
            let (t1, t2) = (tgt.circle_of(i), tgt.circle_of(k));
            let mut put = |l1: bool, l2: bool, coef: Poly| {
                let mut l = base.clone();
                l[t1] = l1;
                l[t2] = l2;
                terms.push((l, coef));
            };
            if labels[ci] {
                put(true, true, one.clone());
                put(false, false, ctx.neg(&a0));
            } else {
                put(false, true, one.clone());
                put(true, false, one.clone());
                put(false, false, a1.clone());
            }
        }
        let free_tgt = tgt.free_circles();
        let x = ctx.x();
        terms
            .into_iter()
            .map(|(l, coef)| {
                let m = free_tgt.iter().enumerate().fold(0u64, |m, (b, &circ)| if l[circ] { m | 1 << b } else { m });
                let coef = if l[tgt.basepoint_circle] { ctx.mul(&coef, &x) } else { coef };
                (m, coef)
            })
            .collect()
    }

    fn complex(&self, d: &Diagram) -> Result<GradedFreeComplex> {
        let c = d.crossing_count();
        let rank = |h: i32| self.modules.get(&h).map_or(0, Vec::len);
        let mut diffs: BTreeMap<i32, PolyMatrix> = BTreeMap::new();
        for v in 0..1u64 << c {
            let h = self.degree(v);
            let free = self.states[v as usize].free_circles().len();
            for bit in 0..c {
                if v >> bit & 1 == 1 {
                    continue;
                }
                let w = v | 1 << bit;
                let negate = (v & ((1 << bit) - 1)).count_ones() % 2 == 1;
                let dm = diffs.entry(h).or_insert_with(|| PolyMatrix::zeros(rank(h + 1), rank(h)));
                for mask in 0..1u64 << free {
                    let col = self.offset[v as usize] + mask as usize;
                    for (tm, coef) in self.edge_map(d, v, bit, mask) {
                        let row = self.offset[w as usize] + tm as usize;
                        let coef = if negate { self.ctx.neg(&coef) } else { coef };
                        let sum = self.ctx.add(&dm.entry(row, col), &coef);
                        dm.set(row, col, sum);
                    }
                }
            }
        }
        GradedFreeComplex::new(self.ctx.clone(), self.modules.clone(), diffs)
    }
}

/// The equivariant sl(2) complex of a knot diagram over `Q[x, a1]`.
pub fn build_equivariant_sl2(d: &Diagram) -> Result<GradedFreeComplex> {
    let cube = Cube::new(d)?;
    let c = cube.complex(d)?;
    debug!("sl2 cube: {} crossings, ranks {:?}", d.crossing_count(), c.validate().ranks);
    Ok(c)
}

/// Colours the oriented resolution's circles so that the two circles at each
/// crossing differ; the basepoint circle gets colour `true`.
fn seifert_colouring(d: &Diagram, st: &ResolutionState) -> Result<Vec<bool>> {
    let mut adj = vec![Vec::new(); st.circles.len()];
    for x in &d.crossings {
        let [i, j, k, _] = x.labels;
        let other = if x.sign == Sign::Positive { j } else { k };
        let (a, b) = (st.circle_of(i), st.circle_of(other));
        if a == b {
            return Err(Error::Internal(format!("crossing {:?} touches one Seifert circle twice", x.labels)));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colour: Vec<Option<bool>> = vec![None; st.circles.len()];
    let mut starts = vec![st.basepoint_circle];
    starts.extend(0..st.circles.len());
    for s in starts {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(true);
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            let ca = colour[a].unwrap();
            for &b in &adj[a] {
                match colour[b] {
                    None => {
                        colour[b] = Some(!ca);
                        queue.push_back(b);
                    }
                    Some(cb) if cb == ca => {
                        return Err(Error::Internal("Seifert graph is not bipartite".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(colour.into_iter().map(Option::unwrap).collect())
}

/// The Gornik cocycle for `x^2 - x` at the root 1, as equivariant coefficients
/// on the degree-0 generators of [`build_equivariant_sl2`].
///
/// On the oriented resolution, circles of the basepoint's colour carry the
/// idempotent `X` (the basepoint circle contributes the scalar `x`) and the
/// others carry `1 - X`.
pub fn gornik_cocycle_sl2(d: &Diagram) -> Result<Vec<Poly>> {
    let cube = Cube::new(d)?;
    let ctx = &cube.ctx;
    let o = d.oriented_vertex();
    let st = &cube.states[o as usize];
    let colour = seifert_colouring(d, st)?;
    let free = st.free_circles();
    let mut coeffs = vec![Poly::zero(); cube.modules.get(&0).map_or(0, Vec::len)];
    let x = ctx.x();
    'masks: for mask in 0..1u64 << free.len() {
        let mut negative = false;
        for (b, &circ) in free.iter().enumerate() {
            let bit = mask >> b & 1 == 1;
            if colour[circ] {
                if !bit {
                    continue 'masks;
                }
            } else if bit {
                negative = !negative;
            }
        }
        coeffs[cube.offset[o as usize] + mask as usize] = if negative { ctx.neg(&x) } else { x.clone() };
    }
    Ok(coeffs)
}

/// The Gauss-simplified equivariant complex of `d`, with the Gornik cocycle
/// carried along to its degree-0 generators.
pub fn simplified_sl2(d: &Diagram) -> Result<(GradedFreeComplex, Vec<Poly>)> {
    let c = build_equivariant_sl2(d)?;
    c.check_valid().map_err(|e| Error::Internal(format!("cube complex: {e}")))?;
    let mut tracked = TrackedCochain { degree: 0, coeffs: gornik_cocycle_sl2(d)? };
    let (simplified, _) = gauss_simplify_tracked(&c, Some(&mut tracked));
    Ok((simplified, tracked.coeffs))
}

/// Report of an equivariant complex whose Gornik class is given by
/// equivariant coefficients on its degree-0 generators.
pub fn report_with_equivariant_class(c: &GradedFreeComplex, class: &[Poly]) -> Result<GimelReport> {
    let pot = Potential::standard(c.n());
    let spec = c.evaluate(&pot)?;
    let coeffs = class.iter().map(|p| c.ctx().evaluate(p, &pot)).collect::<Result<Vec<_>>>()?;
    crate::filtration::compute_report_with_class(&spec, coeffs).map_err(|e| match e {
        Error::Nondegeneracy(m) => Error::Internal(format!("Gornik cocycle check failed: {m}")),
        e => e,
    })
}

/// End-to-end invariants of a knot diagram for `n = 2`.
pub fn compute_pd_report(d: &Diagram) -> Result<GimelReport> {
    let (c, class) = simplified_sl2(d)?;
    report_with_equivariant_class(&c, &class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::ScalarComplex;

    use crate::pl::PiecewiseLinear;
    use crate::poly::rat;

    const TREFOIL: &str = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
    const FIGURE_EIGHT: &str = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";
    const CINQUEFOIL: &str = "PD[X[1,6,2,7],X[3,8,4,9],X[5,10,6,1],X[7,2,8,3],X[9,4,10,5]]";

    #[test]
    fn parses_and_signs() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.writhe(), 3);
        assert_eq!(parse_pd("PD[]").unwrap().crossing_count(), 0);
        assert_eq!(parse_pd("PD[X[1,1,2,2]]").unwrap().writhe(), -1);
        assert_eq!(parse_pd("PD[X[1,2,2,1]]").unwrap().writhe(), 1);
        let b = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]] basepoint=4").unwrap();
        assert_eq!(b.basepoint(), 4);
        assert_eq!(b.to_string(), "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]] basepoint=4");
    }

    #[test]
    fn rejects_bad_diagrams() {
        assert!(matches!(parse_pd("PD[X[1,4,2,5]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pd("PD[X[1,2,3,4]]"), Err(Error::InvalidDiagram(_))));
        assert!(matches!(parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,7]]"), Err(Error::InvalidDiagram(_))));
        assert!(matches!(parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]] basepoint=9"), Err(Error::InvalidDiagram(_))));
        // Hopf link
        assert!(matches!(parse_pd("PD[X[4,1,3,2],X[2,3,1,4]]"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn mirror_flips_signs() {
        let t = parse_pd(TREFOIL).unwrap();
        let m = mirror(&t);
        assert_eq!(m.writhe(), -3);
        assert_eq!(mirror(&m), t);
        // The mirrored quadruples read back with the same signs.
        assert_eq!(parse_pd(&m.to_string()).unwrap(), m);
        let u = parse_pd("PD[]").unwrap();
        assert_eq!(mirror(&u), u);
    }

    #[test]
    fn resolutions() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(resolve(&t, t.oriented_vertex()).circles.len(), 2);
        assert_eq!(resolve(&t, 0b111).circles.len(), 3);
        assert_eq!(resolve(&parse_pd("PD[]").unwrap(), 0).circles.len(), 1);
    }

    #[test]
    fn trefoil_complex() {
        let t = parse_pd(TREFOIL).unwrap();
        let c = build_equivariant_sl2(&t).unwrap();
        let rep = c.validate();
        assert!(rep.ok, "{:?}", rep.failure);
        assert_eq!(rep.ranks, BTreeMap::from([(0, 2), (1, 3), (2, 6), (3, 4)]));
        assert_eq!(rep.euler, 2 - 3 + 6 - 4);
        let m = build_equivariant_sl2(&mirror(&t)).unwrap();
        assert!(m.validate().ok);
    }

    #[test]
    fn unknot_complex() {
        let c = build_equivariant_sl2(&parse_pd("PD[]").unwrap()).unwrap();
        assert_eq!(c, GradedFreeComplex::trivial(RingCtx::equivariant(2).unwrap()));
        let psi = gornik_cocycle_sl2(&parse_pd("PD[]").unwrap()).unwrap();
        assert_eq!(psi, vec![RingCtx::equivariant(2).unwrap().x()]);
    }

    #[test]
    fn trefoil_cocycle() {
        let t = parse_pd(TREFOIL).unwrap();
        let c = build_equivariant_sl2(&t).unwrap();
        let pot = Potential::standard(2);
        let spec = c.evaluate(&pot).unwrap();
        let s = ScalarComplex::expand(&spec).unwrap();
        let psi: Vec<Poly> =
            gornik_cocycle_sl2(&t).unwrap().iter().map(|p| c.ctx().evaluate(p, &pot).unwrap()).collect();
        let v = s.scalar_cochain(&psi);
        s.check_class(&v).unwrap();
        // x psi = psi after evaluation
        let xv = s.scalar_cochain(&psi.iter().map(|p| spec.ctx().mul(p, &spec.ctx().x())).collect::<Vec<_>>());
        assert_eq!(xv, v);
    }

    fn gimel(pd: &str) -> PiecewiseLinear {
        compute_pd_report(&parse_pd(pd).unwrap()).unwrap().gimel
    }

    #[test]
    fn corpus_gimel() {
        let t = PiecewiseLinear::linear(rat(0), rat(-1));
        assert_eq!(gimel(TREFOIL), t);
        assert_eq!(gimel(&mirror(&parse_pd(TREFOIL).unwrap()).to_string()), t.affine(&rat(-1), &rat(0), &rat(0)));
        assert_eq!(gimel(FIGURE_EIGHT), PiecewiseLinear::linear(rat(0), rat(0)));
        assert_eq!(gimel("PD[]"), PiecewiseLinear::linear(rat(0), rat(0)));
        assert_eq!(gimel("PD[X[1,1,2,2]]"), PiecewiseLinear::linear(rat(0), rat(0)));
        // positive torus knot T(2,5): slice genus 2
        assert_eq!(gimel(CINQUEFOIL), PiecewiseLinear::linear(rat(0), rat(-2)));
    }

    #[test]
    fn connected_sum_of_trefoils() {
        let (c, psi) = simplified_sl2(&parse_pd(TREFOIL).unwrap()).unwrap();
        let sum = c.tensor(&c).unwrap();
        let class = c.tensor_cochain(&c, 0, &psi, 0, &psi);
        let rep = report_with_equivariant_class(&sum, &class).unwrap();
        assert_eq!(rep.gimel, PiecewiseLinear::linear(rat(0), rat(-2)));
    }

    #[test]
    fn basepoint_independent() {
        let r1 = compute_pd_report(&parse_pd(TREFOIL).unwrap()).unwrap();
        for b in 2..=6 {
            let d = parse_pd(&format!("{TREFOIL} basepoint={b}")).unwrap();
            assert_eq!(compute_pd_report(&d).unwrap().gimel, r1.gimel, "basepoint {b}");
        }
    }
}
