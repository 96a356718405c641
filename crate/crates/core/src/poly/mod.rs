//! Polynomials over the equivariant ring `Q[x, a1, ..., a{n-1}]` and its
//! specializations `Q[x]/(p)` for a monic polynomial `p`.
//!
//! In the equivariant ring the relation `x^n + a_{n-1} x^{n-1} + ... + a_1 x + a_0 = 0`
//! is used to eliminate `a0`, which leaves a free polynomial ring. Elements are
//! stored as sparse maps from exponent vectors `[x, a1, ..., a{n-1}]` to rational
//! coefficients. Specialized elements use exponent vectors `[x]` and are kept
//! reduced modulo `p`.

mod parse;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_raw, RawPoly};

/// Rational scalars.
pub type Q = BigRational;

pub fn rat(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let err = |msg: &str| Error::Parse { input: s.to_string(), pos: 0, msg: msg.to_string() };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Q::new(num, den))
}

pub(crate) fn add_into(map: &mut BTreeMap<Vec<u32>, Q>, e: Vec<u32>, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A monic univariate polynomial `x^n + c_{n-1} x^{n-1} + ... + c_0`, stored as
/// `[c_0, ..., c_{n-1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Potential {
    coeffs: Vec<Q>,
}

impl Potential {
    pub fn new(coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Unsupported("potential must have degree at least 1".into()));
        }
        Ok(Potential { coeffs })
    }

    /// `x^n - x^(n-1)`.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 1, "potential degree must be positive");
        let mut coeffs = vec![Q::zero(); n];
        coeffs[n - 1] = -Q::one();
        Potential { coeffs }
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[Q]) -> Result<Self> {
        let mut poly = vec![Q::one()];
        for r in roots {
            let mut next = vec![Q::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            poly = next;
        }
        poly.pop();
        Potential::new(poly)
    }

    /// Reads a monic polynomial in `x`, e.g. `"x^3 - x^2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let raw = parse_raw(s, 0)?;
        let deg = raw.terms().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
        let mut dense = vec![Q::zero(); deg + 1];
        for (e, c) in raw.terms() {
            dense[e[0] as usize] = c.clone();
        }
        if deg == 0 || !dense[deg].is_one() {
            return Err(Error::Parse {
                input: s.to_string(),
                pos: 0,
                msg: "potential must be monic of positive degree".into(),
            });
        }
        dense.pop();
        Potential::new(dense)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_standard(&self) -> bool {
        *self == Potential::standard(self.degree())
    }

    /// Dense coefficients including the leading 1.
    pub fn dense(&self) -> Vec<Q> {
        let mut v = self.coeffs.clone();
        v.push(Q::one());
        v
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.dense().iter().rev().fold(Q::zero(), |acc, c| acc * t + c)
    }

    /// Quotient and remainder of the division by `x - r`.
    pub fn divide_by_linear(&self, r: &Q) -> (Vec<Q>, Q) {
        let dense = self.dense();
        let n = self.degree();
        let mut quot = vec![Q::zero(); n];
        let mut carry = Q::zero();
        for i in (0..=n).rev() {
            let v = &dense[i] + &carry * r;
            if i == 0 {
                return (quot, v);
            }
            quot[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn root_multiplicity(&self, r: &Q) -> usize {
        let mut p = self.dense();
        let mut m = 0;
        while p.len() > 1 {
            let (q, rem) = divide_dense_by_linear(&p, r);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }
}

fn divide_dense_by_linear(p: &[Q], r: &Q) -> (Vec<Q>, Q) {
    let n = p.len() - 1;
    let mut quot = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for i in (1..=n).rev() {
        let v = &p[i] + &carry * r;
        quot[i - 1] = v.clone();
        carry = v;
    }
    (quot, &p[0] + &carry * r)
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = BTreeMap::new();
        for (i, c) in self.dense().into_iter().enumerate() {
            add_into(&mut terms, vec![i as u32], c);
        }
        write!(f, "{}", Poly { terms })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Equivariant,
    Specialized(Potential),
}

/// The ring a polynomial lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingCtx {
    n: usize,
    kind: RingKind,
}

/// Result of [`RingCtx::quantum_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QDegree {
    Homogeneous(i64),
    Inhomogeneous,
    /// Specialized rings are only filtered; this is the top `x`-degree, doubled.
    FiltrationLevel(i64),
}

/// A polynomial in normal form for some [`RingCtx`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&Q> {
        self.terms.get(e)
    }

    /// The value if the polynomial is a constant (zero counts).
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Nonzero constant.
    pub fn as_unit(&self) -> Option<Q> {
        self.as_constant().filter(|c| !c.is_zero())
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0]).max()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest power of x first, then by the a-variables.
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| b[0].cmp(&a[0]).then_with(|| b[1..].cmp(&a[1..])));
        for (idx, (e, c)) in items.into_iter().enumerate() {
            let mono = monomial_string(e);
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn monomial_string(e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name = if i == 0 { "x".to_string() } else { format!("a{i}") };
        if k == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{k}"));
        }
    }
    parts.join("*")
}

impl RingCtx {
    /// `Q[x, a1, ..., a{n-1}]`, requires `n >= 2`.
    pub fn equivariant(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(format!("equivariant ring needs n >= 2, got {n}")));
        }
        Ok(RingCtx { n, kind: RingKind::Equivariant })
    }

    /// `Q[x]/(p)`.
    pub fn specialized(p: Potential) -> Self {
        RingCtx { n: p.degree(), kind: RingKind::Specialized(p) }
    }

    /// `Q[x]/(x^n - x^(n-1))`.
    pub fn standard(n: usize) -> Self {
        RingCtx::specialized(Potential::standard(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn is_equivariant(&self) -> bool {
        matches!(self.kind, RingKind::Equivariant)
    }

    pub fn potential(&self) -> Option<&Potential> {
        match &self.kind {
            RingKind::Specialized(p) => Some(p),
            RingKind::Equivariant => None,
        }
    }

    /// Length of exponent vectors.
    pub fn nvars(&self) -> usize {
        if self.is_equivariant() {
            self.n
        } else {
            1
        }
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.constant(Q::one())
    }

    pub fn constant(&self, c: Q) -> Poly {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, vec![0; self.nvars()], c);
        Poly { terms }
    }

    pub fn x(&self) -> Poly {
        self.x_pow(1)
    }

    pub fn x_pow(&self, k: u32) -> Poly {
        let mut e = vec![0; self.nvars()];
        e[0] = k;
        self.monomial(e, Q::one())
    }

    /// The variable `a_i` for `1 <= i < n`; `a_0` is expressed through the relation.
    pub fn a(&self, i: usize) -> Result<Poly> {
        if i >= self.n {
            return Err(Error::VariableOutOfRange { var: format!("a{i}"), n: self.n });
        }
        self.normalize(&RawPoly::var(self.n, i + 1))
    }

    /// `c * m` for an exponent vector `m`, reduced.
    pub fn monomial(&self, e: Vec<u32>, c: Q) -> Poly {
        debug_assert_eq!(e.len(), self.nvars());
        let mut terms = BTreeMap::new();
        add_into(&mut terms, e, c);
        self.reduce(Poly { terms })
    }

    /// Quantum degree of a monomial of the equivariant ring.
    pub fn monomial_degree(&self, e: &[u32]) -> i64 {
        let n = self.n as i64;
        let mut d = 2 * e[0] as i64;
        for (i, &k) in e.iter().enumerate().skip(1) {
            d += 2 * (n - i as i64) * k as i64;
        }
        d
    }

    pub fn add(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = p.clone();
        for (e, c) in &q.terms {
            add_into(&mut out.terms, e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = p.clone();
        for (e, c) in &q.terms {
            add_into(&mut out.terms, e.clone(), -c);
        }
        out
    }

    pub fn neg(&self, p: &Poly) -> Poly {
        Poly { terms: p.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, p: &Poly, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: p.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        if p.is_zero() || q.is_zero() {
            return Poly::zero();
        }
        match &self.kind {
            RingKind::Specialized(pot) => {
                let a = to_dense(p);
                let b = to_dense(q);
                let mut prod = vec![Q::zero(); a.len() + b.len() - 1];
                for (i, ca) in a.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (j, cb) in b.iter().enumerate() {
                        if !cb.is_zero() {
                            prod[i + j] += ca * cb;
                        }
                    }
                }
                reduce_dense(&mut prod, pot);
                from_dense(prod)
            }
            RingKind::Equivariant => {
                let mut terms = BTreeMap::new();
                for (e1, c1) in &p.terms {
                    for (e2, c2) in &q.terms {
                        let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                        add_into(&mut terms, e, c1 * c2);
                    }
                }
                Poly { terms }
            }
        }
    }

    pub fn pow(&self, p: &Poly, k: u32) -> Poly {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, p);
        }
        out
    }

    /// Brings a polynomial with the right exponent layout into normal form.
    pub fn reduce(&self, p: Poly) -> Poly {
        match &self.kind {
            RingKind::Equivariant => p,
            RingKind::Specialized(pot) => {
                if p.x_degree().is_none_or(|d| (d as usize) < self.n) {
                    return p;
                }
                let mut dense = to_dense(&p);
                reduce_dense(&mut dense, pot);
                from_dense(dense)
            }
        }
    }

    /// Checks that `p` is a normal-form element of this ring.
    pub fn check(&self, p: &Poly) -> Result<()> {
        for e in p.terms.keys() {
            if e.len() != self.nvars() {
                return Err(Error::ContextMismatch(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    e.len(),
                    self.nvars()
                )));
            }
            if !self.is_equivariant() && e[0] as usize >= self.n {
                return Err(Error::ContextMismatch(format!(
                    "x^{} is not reduced modulo a degree {} polynomial",
                    e[0], self.n
                )));
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add(p, q))
    }

    pub fn checked_mul(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.mul(p, q))
    }

    pub fn checked_scale(&self, p: &Poly, c: &Q) -> Result<Poly> {
        self.check(p)?;
        Ok(self.scale(p, c))
    }

    /// Rewrites a raw polynomial in `x, a0, ..., a{n-1}` into normal form.
    ///
    /// Equivariant: `a0` is replaced by `-(x^n + a_{n-1} x^{n-1} + ... + a_1 x)`.
    /// Specialized: each `a_i` is replaced by the matching potential coefficient.
    pub fn normalize(&self, raw: &RawPoly) -> Result<Poly> {
        if raw.n > self.n {
            return Err(Error::VariableOutOfRange { var: format!("a{}", raw.n - 1), n: self.n });
        }
        match &self.kind {
            RingKind::Equivariant => {
                let mut a0 = BTreeMap::new();
                let mut e = vec![0; self.n];
                e[0] = self.n as u32;
                add_into(&mut a0, e, -Q::one());
                for i in 1..self.n {
                    let mut e = vec![0; self.n];
                    e[0] = i as u32;
                    e[i] = 1;
                    add_into(&mut a0, e, -Q::one());
                }
                let a0 = Poly { terms: a0 };
                let mut powers = vec![self.one()];
                let mut out = Poly::zero();
                for (e, c) in raw.terms() {
                    let k0 = e.get(1).copied().unwrap_or(0) as usize;
                    while powers.len() <= k0 {
                        let next = self.mul(powers.last().unwrap(), &a0);
                        powers.push(next);
                    }
                    let mut mono = vec![0; self.n];
                    mono[0] = e[0];
                    for (i, &k) in e.iter().enumerate().skip(2) {
                        mono[i - 1] = k;
                    }
                    let mut t = BTreeMap::new();
                    add_into(&mut t, mono, c.clone());
                    out = self.add(&out, &self.mul(&Poly { terms: t }, &powers[k0]));
                }
                Ok(out)
            }
            RingKind::Specialized(pot) => {
                let mut dense: Vec<Q> = Vec::new();
                for (e, c) in raw.terms() {
                    let mut v = c.clone();
                    for (i, &k) in e.iter().enumerate().skip(1) {
                        for _ in 0..k {
                            v *= &pot.coeffs[i - 1];
                        }
                    }
                    let d = e[0] as usize;
                    if dense.len() <= d {
                        dense.resize(d + 1, Q::zero());
                    }
                    dense[d] += v;
                }
                reduce_dense(&mut dense, pot);
                Ok(from_dense(dense))
            }
        }
    }

    /// Parses and normalizes.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        self.normalize(&parse_raw(s, self.n)?)
    }

    pub fn quantum_degree(&self, p: &Poly) -> Result<QDegree> {
        if p.is_zero() {
            return Err(Error::UndefinedDegree);
        }
        self.check(p)?;
        if !self.is_equivariant() {
            return Ok(QDegree::FiltrationLevel(2 * p.x_degree().unwrap() as i64));
        }
        let mut degs = p.terms.keys().map(|e| self.monomial_degree(e));
        let first = degs.next().unwrap();
        if degs.all(|d| d == first) {
            Ok(QDegree::Homogeneous(first))
        } else {
            Ok(QDegree::Inhomogeneous)
        }
    }

    /// Sends `a_i` to the `x^i` coefficient of `pot` and reduces modulo `pot`.
    pub fn evaluate(&self, p: &Poly, pot: &Potential) -> Result<Poly> {
        if !self.is_equivariant() {
            return Err(Error::ContextMismatch("evaluation needs an equivariant polynomial".into()));
        }
        if pot.degree() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, found: pot.degree() });
        }
        self.check(p)?;
        let mut dense: Vec<Q> = Vec::new();
        for (e, c) in &p.terms {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate().skip(1) {
                for _ in 0..k {
                    v *= &pot.coeffs[i];
                }
            }
            let d = e[0] as usize;
            if dense.len() <= d {
                dense.resize(d + 1, Q::zero());
            }
            dense[d] += v;
        }
        reduce_dense(&mut dense, pot);
        Ok(from_dense(dense))
    }

    /// Value at `x = t` of a specialized polynomial.
    pub fn eval_at(&self, p: &Poly, t: &Q) -> Result<Q> {
        if self.is_equivariant() {
            return Err(Error::ContextMismatch("point evaluation needs a specialized ring".into()));
        }
        self.check(p)?;
        Ok(to_dense(p).iter().rev().fold(Q::zero(), |acc, c| acc * t + c))
    }
}

/// Dense coefficient vector of a univariate polynomial.
pub(crate) fn to_dense(p: &Poly) -> Vec<Q> {
    let len = p.x_degree().map_or(0, |d| d as usize + 1);
    let mut v = vec![Q::zero(); len];
    for (e, c) in &p.terms {
        v[e[0] as usize] = c.clone();
    }
    v
}

pub(crate) fn from_dense(v: Vec<Q>) -> Poly {
    let terms = v
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (vec![i as u32], c))
        .collect();
    Poly { terms }
}

fn reduce_dense(v: &mut Vec<Q>, pot: &Potential) {
    let n = pot.degree();
    let coeffs = pot.coeffs();
    while v.len() > n {
        let d = v.len() - 1;
        let c = v.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        for (i, ci) in coeffs.iter().enumerate() {
            if !ci.is_zero() {
                v[d - n + i] -= &c * ci;
            }
        }
    }
}
