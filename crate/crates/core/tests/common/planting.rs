//! Padding complexes with acyclic pairs for decomposition tests.

use std::collections::BTreeMap;

use gimel_core::chain::{GradedFreeComplex, PolyMatrix};
use gimel_core::poly::{Poly, Q};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn nonzero(rng: &mut ChaCha8Rng) -> Q {
    let num = *[-3i64, -2, -1, 1, 2, 3, 5].choose(rng).unwrap();
    Q::new(num.into(), rng.gen_range(1i64..=4).into())
}

/// Appends an acyclic pair `u -> c v` in degrees `i, i + 1` and entangles it
/// with the existing generators by the changes of basis `v' = v + p w` and
/// `u' = u + q o`, which leave the complex isomorphic to the original direct
/// sum with the pair.
pub fn plant_pair(c: &GradedFreeComplex, rng: &mut ChaCha8Rng) -> GradedFreeComplex {
    let ctx = c.ctx().clone();
    let degrees = c.degrees();
    let i = rng.gen_range(degrees[0] - 1..=*degrees.last().unwrap());
    let mut modules = c.modules().clone();
    // Pick w in degree i + 1 and a pair label at or above it, in steps of 2.
    let w = (c.rank(i + 1) > 0).then(|| rng.gen_range(0..c.rank(i + 1)));
    let label = match w {
        Some(w) => c.labels(i + 1)[w] + 2 * rng.gen_range(0..=1),
        None => 2 * rng.gen_range(-3..=3),
    };
    let u = c.rank(i);
    let v = c.rank(i + 1);
    modules.entry(i).or_default().push(label);
    modules.entry(i + 1).or_default().push(label);
    let rank = |k: i32| modules.get(&k).map_or(0, Vec::len);
    let mut diffs: BTreeMap<i32, PolyMatrix> = BTreeMap::new();
    for k in [i - 1, i, i + 1] {
        let mut d = PolyMatrix::zeros(rank(k + 1), rank(k));
        for (r, s, p) in c.diff(k).iter() {
            d.set(r, s, p.clone());
        }
        diffs.insert(k, d);
    }
    for (&k, d) in c.differentials() {
        diffs.entry(k).or_insert_with(|| d.clone());
    }
    let unit = nonzero(rng);
    let x_pow = |deg: i64| ctx.x_pow((deg / 2) as u32);
    let mut du = BTreeMap::from([(v, ctx.constant(unit.clone()))]);
    if let Some(w) = w {
        // v = v' - p w: column u picks up -c p at w, and d(v') = p d(w).
        let p = ctx.scale(&x_pow(label - c.labels(i + 1)[w]), &nonzero(rng));
        du.insert(w, ctx.neg(&ctx.scale(&p, &unit)));
        let next = diffs.get_mut(&(i + 1)).unwrap();
        for (r, s, e) in c.diff(i + 1).iter() {
            if s == w {
                next.set(r, v, ctx.mul(&p, e));
            }
        }
    }
    let candidates: Vec<usize> =
        (0..c.rank(i)).filter(|&o| c.labels(i)[o] <= label && (label - c.labels(i)[o]) % 2 == 0).collect();
    if let Some(&o) = candidates.choose(rng) {
        // u' = u + q o: d(u') gains q d(o).
        let q = ctx.scale(&x_pow(label - c.labels(i)[o]), &nonzero(rng));
        for (r, s, e) in c.diff(i).iter() {
            if s == o {
                let cur = du.remove(&r).unwrap_or_else(Poly::zero);
                du.insert(r, ctx.add(&cur, &ctx.mul(&q, e)));
            }
        }
    }
    let d = diffs.get_mut(&i).unwrap();
    for (r, e) in du {
        d.set(r, u, e);
    }
    GradedFreeComplex::new(ctx, modules, diffs).unwrap()
}

pub fn shuffle(c: &GradedFreeComplex, rng: &mut ChaCha8Rng) -> GradedFreeComplex {
    let mut perms = BTreeMap::new();
    let mut scales = BTreeMap::new();
    for i in c.degrees() {
        let mut p: Vec<usize> = (0..c.rank(i)).collect();
        p.shuffle(rng);
        perms.insert(i, p);
        scales.insert(i, (0..c.rank(i)).map(|_| nonzero(rng)).collect());
    }
    c.rebase(&perms, &scales).unwrap()
}
