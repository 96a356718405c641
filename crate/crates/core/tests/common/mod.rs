#![allow(dead_code)]

pub mod planting;

use gimel_core::chain::GradedFreeComplex;
use gimel_core::cube::{build_equivariant_sl2, gornik_cocycle_sl2, parse_pd};
use gimel_core::linalg::QMatrix;
use gimel_core::poly::{Poly, Potential, Q};
use gimel_core::reduce::expand_matrix;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const CORPUS: &[(&str, &str)] = &[
    ("unknot", "PD[]"),
    ("kink", "PD[X[1,1,2,2]]"),
    ("3_1", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"),
    ("4_1", "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"),
    ("5_1", "PD[X[1,6,2,7],X[3,8,4,9],X[5,10,6,1],X[7,2,8,3],X[9,4,10,5]]"),
    ("5_2", "PD[X[1,4,2,5],X[3,8,4,9],X[5,10,6,1],X[9,6,10,7],X[7,2,8,3]]"),
    ("6_1", "PD[X[1,4,2,5],X[7,10,8,11],X[3,9,4,8],X[9,3,10,2],X[5,12,6,1],X[11,6,12,7]]"),
];

/// A degree-0 class problem written out over Q: `(j, k)` per basis vector,
/// the expanded `d^-1`, and the cochain.
pub struct Expanded {
    pub tags: Vec<(i64, i64)>,
    pub d_minus: QMatrix,
    pub psi: Vec<Q>,
}

/// Expands a specialized complex and a class directly from labels, without the
/// engine's expansion code.
pub fn expand(c: &GradedFreeComplex, class: &[Poly]) -> Expanded {
    let n = c.n();
    let mut tags = Vec::new();
    let mut psi = Vec::new();
    for (g, &s) in c.labels(0).iter().enumerate() {
        for a in 0..n {
            tags.push((s + 1 - n as i64 + 2 * a as i64, a as i64));
            psi.push(class[g].coeff(&[a as u32]).cloned().unwrap_or_else(Q::zero));
        }
    }
    Expanded { tags, d_minus: expand_matrix(c.ctx(), &c.diff(-1)), psi }
}

/// The raw (unsimplified) cube of a PD code at `x^2 - x`, with its Gornik cocycle.
pub fn raw_pd(pd: &str) -> Expanded {
    let d = parse_pd(pd).unwrap();
    let c = build_equivariant_sl2(&d).unwrap();
    let pot = Potential::standard(2);
    let class: Vec<Poly> =
        gornik_cocycle_sl2(&d).unwrap().iter().map(|p| c.ctx().evaluate(p, &pot).unwrap()).collect();
    expand(&c.evaluate(&pot).unwrap(), &class)
}

/// `psi + im(d^-1)` meets the span of `admissible`: one rank comparison.
fn reachable(e: &Expanded, admissible: &[bool]) -> bool {
    let rows = e.psi.len();
    let mut cols: Vec<Vec<Q>> = (0..e.d_minus.cols()).map(|c| e.d_minus.column(c)).collect();
    for (k, &ok) in admissible.iter().enumerate() {
        if ok {
            let mut u = vec![Q::zero(); rows];
            u[k] = Q::from_integer(1.into());
            cols.push(u);
        }
    }
    let matrix = |cols: &[Vec<Q>]| {
        let data = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        QMatrix::from_rows(data, cols.len())
    };
    let base = matrix(&cols).rank();
    cols.push(e.psi.clone());
    matrix(&cols).rank() == base
}

/// The least level `t (j + k) - k` admitting a representative, by scanning the
/// levels in increasing order.
pub fn oracle_gamma(e: &Expanded, t: &Q) -> Q {
    let values: Vec<Q> = e.tags.iter().map(|&(j, k)| t * Q::from_integer((j + k).into()) - Q::from_integer(k.into())).collect();
    let mut levels = values.clone();
    levels.sort();
    levels.dedup();
    for l in levels {
        let admissible: Vec<bool> = values.iter().map(|v| *v <= l).collect();
        if reachable(e, &admissible) {
            return l;
        }
    }
    panic!("class has no representative at all");
}

pub fn random_t(rng: &mut ChaCha8Rng) -> Q {
    let den: i64 = rng.gen_range(1..=997);
    let num: i64 = rng.gen_range(0..=den);
    Q::new(num.into(), den.into())
}
