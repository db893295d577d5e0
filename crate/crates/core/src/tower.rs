//! Towers of shifted monomial charts over the plane, exact evaluation along
//! them, and conjugation of unit-form automorphisms through them.
//!
//! A stage with shift `c` and exponents `(k, m, n, l)`, `kl − mn = 1`, maps
//! bottom coordinates `(x, y)` to top coordinates
//! `((x − c)^k / y^m, y^l / (x − c)^n)`; its inverse is the polynomial map
//! `(s, t) ↦ (c + s^l t^m, s^n t^k)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hj::BezoutPair;
use crate::ratfunc::{Locus, Poly, RatFunc, Q};
use crate::upoly::{UPoly, URat};
use crate::yseries::YSeries;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub u: Q,
    pub v: Q,
}

impl RationalPoint {
    pub fn new(u: Q, v: Q) -> Self {
        RationalPoint { u, v }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

fn powi_q(x: &Q, e: i64) -> Result<Q> {
    if e < 0 && x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let p = crate::ratfunc::pow_q(x, e.unsigned_abs() as u32);
    Ok(if e < 0 { p.recip() } else { p })
}

/// `(u, v) ↦ (u^a v^b, u^c v^d)` for rows `(a, b)`, `(c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    rows: [[i64; 2]; 2],
}

impl MonomialMap {
    pub fn new(rows: [[i64; 2]; 2]) -> Result<Self> {
        let m = MonomialMap { rows };
        if m.det().abs() != 1 {
            return Err(Error::Domain(format!("exponent matrix {rows:?} is not unimodular")));
        }
        Ok(m)
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        self.rows
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.rows;
        a * d - b * c
    }

    pub fn apply(&self, p: &RationalPoint) -> Result<RationalPoint> {
        let [[a, b], [c, d]] = self.rows;
        Ok(RationalPoint {
            u: powi_q(&p.u, a)? * powi_q(&p.v, b)?,
            v: powi_q(&p.u, c)? * powi_q(&p.v, d)?,
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonomialMap) -> MonomialMap {
        let (x, y) = (self.rows, other.rows);
        let mut r = [[0i64; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        MonomialMap { rows: r }
    }

    pub fn inverse(&self) -> MonomialMap {
        let [[a, b], [c, d]] = self.rows;
        let s = self.det();
        MonomialMap { rows: [[d * s, -b * s], [-c * s, a * s]] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerStage {
    pub c: Q,
    pub bezout: BezoutPair,
}

impl TowerStage {
    /// Stage with the canonical complement of `(k, m)`.
    pub fn new(c: Q, k: u64, m: u64) -> Result<Self> {
        Ok(TowerStage { c, bezout: crate::hj::bezout_complement(k, m)? })
    }

    /// Stage with explicit `(n, l)`, checked against the stage invariants.
    pub fn with_complement(c: Q, k: u64, m: u64, n: u64, l: u64) -> Result<Self> {
        let b = BezoutPair { k, m, n, l };
        if k == 0 || m == 0 || k.gcd(&m) != 1 || m > k || !b.satisfies_identity() {
            return Err(Error::Domain(format!(
                "stage (k, m, n, l) = ({k}, {m}, {n}, {l}) needs coprime m ≤ k and kl − mn = 1"
            )));
        }
        Ok(TowerStage { c, bezout: b })
    }

    /// Exponent rows of the forward map on `(x − c, y)`.
    pub fn top_map(&self) -> MonomialMap {
        let b = &self.bezout;
        let (k, m, n, l) = (b.k as i64, b.m as i64, b.n as i64, b.l as i64);
        MonomialMap { rows: [[k, -m], [-n, l]] }
    }

    /// Exponent rows of the inverse map to `(x − c, y)`.
    pub fn inverse_map(&self) -> MonomialMap {
        let b = &self.bezout;
        let (k, m, n, l) = (b.k as i64, b.m as i64, b.n as i64, b.l as i64);
        MonomialMap { rows: [[l, m], [n, k]] }
    }

    /// Why the forward map is undefined at the bottom point, if it is.
    fn singular_at(&self, bottom: &RationalPoint) -> Option<&'static str> {
        if bottom.v.is_zero() {
            return Some("y = 0");
        }
        if self.bezout.n > 0 && bottom.u == self.c {
            return Some("x = c");
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChartTower {
    pub stages: Vec<TowerStage>,
}

impl ChartTower {
    pub fn new(stages: Vec<TowerStage>) -> Self {
        ChartTower { stages }
    }

    pub fn depth(&self) -> usize {
        self.stages.len()
    }
}

/// Bottom coordinates to top coordinates.
pub fn tower_up(t: &ChartTower, pt: &RationalPoint) -> Result<RationalPoint> {
    let mut p = pt.clone();
    for (i, st) in t.stages.iter().enumerate() {
        if let Some(reason) = st.singular_at(&p) {
            return Err(Error::SingularLocus { stage: i + 1, reason: reason.into() });
        }
        let shifted = RationalPoint::new(&p.u - &st.c, p.v.clone());
        p = st.top_map().apply(&shifted).map_err(|_| Error::SingularLocus {
            stage: i + 1,
            reason: "division by zero".into(),
        })?;
    }
    Ok(p)
}

/// Top coordinates to bottom coordinates. Refuses points whose descent
/// passes through a locus where the forward map is undefined.
pub fn tower_down(t: &ChartTower, pt: &RationalPoint) -> Result<RationalPoint> {
    let mut p = pt.clone();
    for (i, st) in t.stages.iter().enumerate().rev() {
        let d = st.inverse_map().apply(&p).expect("nonnegative exponents");
        p = RationalPoint::new(&st.c + d.u, d.v);
        if let Some(reason) = st.singular_at(&p) {
            return Err(Error::SingularLocus { stage: i + 1, reason: reason.into() });
        }
    }
    Ok(p)
}

/// `(n, l)` with `kl − mn = 1`, `0 < l ≤ m`, for any coprime pair.
fn complement_any(k: u64, m: u64) -> Result<(u64, u64)> {
    if m <= k {
        let b = crate::hj::bezout_complement(k, m)?;
        return Ok((b.n, b.l));
    }
    if k.gcd(&m) != 1 {
        return Err(Error::Domain(format!("k={k} and m={m} are not coprime")));
    }
    let e = (k as i128).extended_gcd(&(m as i128));
    let l = e.x.rem_euclid(m as i128) as u64;
    let l = if l == 0 { m } else { l };
    let n = ((k as u128 * l as u128 - 1) / m as u128) as u64;
    Ok((n, l))
}

/// Check `(x − c)^k / y^m = s` and `y^l / (x − c)^n = t` at
/// `(x, y) = (c + s^l t^m, s^n t^k)`.
pub fn verify_chi_identity(k: u64, m: u64, c: &Q, pt: &RationalPoint) -> Result<bool> {
    if k == 0 || m == 0 {
        return Err(Error::Domain("exponents must be positive".into()));
    }
    if pt.u.is_zero() || pt.v.is_zero() {
        return Err(Error::Domain(format!("point {pt} has a zero coordinate")));
    }
    let (n, l) = complement_any(k, m)?;
    let (s, t) = (&pt.u, &pt.v);
    let p = |x: &Q, e: u64| crate::ratfunc::pow_q(x, e as u32);
    let x = c + p(s, l) * p(t, m);
    let y = p(s, n) * p(t, k);
    let dx = &x - c;
    let s_back = p(&dx, k) / p(&y, m);
    let t_back = p(&y, l) / p(&dx, n);
    Ok(&s_back == s && &t_back == t)
}

/// `(x, y) ↦ (x·(1 + p), y·(1 + q))` with `p`, `q` vanishing at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitFormMap {
    pub p: RatFunc,
    pub q: RatFunc,
}

impl UnitFormMap {
    pub fn new(p: RatFunc, q: RatFunc) -> Result<Self> {
        for (name, f) in [("p", &p), ("q", &q)] {
            if !f.vanishes_on(Locus::Origin)? {
                return Err(Error::Domain(format!("{name} does not vanish at the origin")));
            }
        }
        Ok(UnitFormMap { p, q })
    }

    pub fn identity() -> Self {
        UnitFormMap { p: RatFunc::zero(), q: RatFunc::zero() }
    }

    pub fn apply(&self, pt: &RationalPoint) -> Result<RationalPoint> {
        let p = self.p.eval(&pt.u, &pt.v)?;
        let q = self.q.eval(&pt.u, &pt.v)?;
        Ok(RationalPoint::new(&pt.u * (Q::one() + p), &pt.v * (Q::one() + q)))
    }

    /// Pullbacks of the two coordinates, `x(1 + p)` and `y(1 + q)`.
    pub fn pullbacks(&self) -> (RatFunc, RatFunc) {
        (
            RatFunc::x().mul(&self.p.add_const(&Q::one())),
            RatFunc::y().mul(&self.q.add_const(&Q::one())),
        )
    }
}

/// `p = x/(a − x)`, `q = y/(b − y)`, i.e. `(x, y) ↦ (ax/(a − x), by/(b − y))`.
pub fn moebius_alpha(a: &Q, b: &Q) -> Result<UnitFormMap> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("Möbius parameters must be nonzero".into()));
    }
    let p = RatFunc::new(Poly::x(), &Poly::constant(a.clone()) - &Poly::x())?;
    let q = RatFunc::new(Poly::y(), &Poly::constant(b.clone()) - &Poly::y())?;
    UnitFormMap::new(p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Predicate {
    /// `c̈ = c` for the center of the stage.
    ShiftPreserved,
    /// `p` is regular along the new x-axis and vanishes there.
    PVanishesOnAxis,
    QVanishesOnAxis,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::ShiftPreserved => "shift-preserved",
            Predicate::PVanishesOnAxis => "p-vanishes-on-x-axis",
            Predicate::QVanishesOnAxis => "q-vanishes-on-x-axis",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageCertificate {
    /// 1-based stage.
    pub stage: usize,
    pub predicate: Predicate,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for StageCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "stage {} {} {}", self.stage, self.predicate, verdict)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationReport {
    /// The lifted maps, one per stage, in the stage's top coordinates.
    pub maps: Vec<UnitFormMap>,
    pub certificates: Vec<StageCertificate>,
}

impl ConjugationReport {
    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&StageCertificate> {
        self.certificates.iter().find(|c| !c.passed)
    }
}

fn poly_at_y0(p: &Poly) -> UPoly {
    let r = p.at_y_zero();
    let deg = r.terms().map(|((i, _), _)| *i).max().unwrap_or(0) as usize;
    let mut v = vec![Q::zero(); deg + 1];
    for ((i, _), c) in r.terms() {
        v[*i as usize] = c.clone();
    }
    UPoly::from_coeffs(v)
}

fn shift_certificate(stage: usize, a_restricted: Option<URat>, c: &Q) -> StageCertificate {
    let (passed, detail) = match a_restricted {
        None => (false, "pulled-back coordinate is not regular along the axis".to_string()),
        Some(r) => match r.eval(c) {
            None => (false, format!("pulled-back coordinate has a pole at {c}")),
            Some(v) if &v == c => (true, String::new()),
            Some(v) => (false, format!("center {c} moves to {v}")),
        },
    };
    StageCertificate { stage, predicate: Predicate::ShiftPreserved, passed, detail }
}

fn vanish_certificate(stage: usize, predicate: Predicate, f: &RatFunc) -> StageCertificate {
    let (passed, detail) = match f.vanishes_on(Locus::XAxis) {
        Ok(true) => (true, String::new()),
        Ok(false) => (false, "nonzero on the axis".to_string()),
        Err(e) => (false, e.to_string()),
    };
    StageCertificate { stage, predicate, passed, detail }
}

/// Lift `α` through every stage by exact substitution of rational
/// functions. Coefficient growth makes this practical only for shallow
/// towers with small exponents; [`certify_conjugation`] decides the same
/// predicates on deep towers.
pub fn conjugate_automorphism(t: &ChartTower, alpha: &UnitFormMap) -> Result<ConjugationReport> {
    let (mut a, mut b) = alpha.pullbacks();
    let mut maps = Vec::new();
    let mut certificates = Vec::new();
    for (i, st) in t.stages.iter().enumerate() {
        let stage = i + 1;
        let restricted = {
            let tidy = a.clone().tidy();
            let den = poly_at_y0(&tidy.den);
            (!den.is_zero()).then(|| URat::new(poly_at_y0(&tidy.num), den))
        };
        certificates.push(shift_certificate(stage, restricted, &st.c));

        let bz = &st.bezout;
        let d = a.add_const(&-st.c.clone());
        let f = d.powi(bz.k as i64)?.mul(&b.powi(-(bz.m as i64))?);
        let g = b.powi(bz.l as i64)?.mul(&d.powi(-(bz.n as i64))?);
        let gx = RatFunc::from(&Poly::constant(st.c.clone()) + &Poly::monomial(Q::one(), bz.l as u32, bz.m as u32));
        let gy = RatFunc::from(Poly::monomial(Q::one(), bz.n as u32, bz.k as u32));
        a = f.substitute(&gx, &gy)?;
        b = g.substitute(&gx, &gy)?;
        let p = a.div(&RatFunc::x())?.add_const(&-Q::one());
        let q = b.div(&RatFunc::y())?.add_const(&-Q::one());
        certificates.push(vanish_certificate(stage, Predicate::PVanishesOnAxis, &p));
        certificates.push(vanish_certificate(stage, Predicate::QVanishesOnAxis, &q));
        maps.push(UnitFormMap { p, q });
    }
    Ok(ConjugationReport { maps, certificates })
}

enum Verdict {
    Pass,
    Fail(String),
    Undecided,
}

/// `(p, q)` of the lifted map at `level` as series in that level's top
/// coordinates, or `None` when `rel` terms do not suffice.
///
/// With `e = x − c` for the stage below, the lift satisfies
/// `1 + p' = (1 + x·p/e)^k (1 + q)^(−m)` and
/// `1 + q' = (1 + q)^l (1 + x·p/e)^(−n)`, so only the final subtraction of
/// one can cancel leading terms.
fn level_series(
    t: &ChartTower,
    alpha: &UnitFormMap,
    level: usize,
    rel: usize,
) -> Option<(YSeries, YSeries)> {
    // Bottom coordinates of each stage, and x − c, expressed at `level`.
    let mut xs = vec![YSeries::x()];
    let mut ys = vec![YSeries::y()];
    let mut es = Vec::new();
    for st in t.stages[..level].iter().rev() {
        let b = &st.bezout;
        let (x, y) = (xs.last().unwrap(), ys.last().unwrap());
        let e = x.powi(b.l as i64, rel)?.mul(&y.powi(b.m as i64, rel)?).cap(rel);
        let ny = x.powi(b.n as i64, rel)?.mul(&y.powi(b.k as i64, rel)?).cap(rel);
        xs.push(e.add_scalar(&st.c).cap(rel));
        ys.push(ny);
        es.push(e);
    }
    xs.reverse();
    ys.reverse();
    es.reverse();
    let ratio = |f: &RatFunc| -> Option<YSeries> {
        let num = YSeries::eval_poly(&f.num, &xs[0], &ys[0], rel);
        let den = YSeries::eval_poly(&f.den, &xs[0], &ys[0], rel);
        Some(num.mul(&den.inv(rel)?).cap(rel))
    };
    let mut p = ratio(&alpha.p)?;
    let mut q = ratio(&alpha.q)?;
    for (i, st) in t.stages[..level].iter().enumerate() {
        let bz = &st.bezout;
        let u = xs[i].mul(&p).mul(&es[i].inv(rel)?).cap(rel).add_scalar(&Q::one());
        let v = q.add_scalar(&Q::one());
        let np = u.powi(bz.k as i64, rel)?.mul(&v.powi(-(bz.m as i64), rel)?).cap(rel);
        let nq = v.powi(bz.l as i64, rel)?.mul(&u.powi(-(bz.n as i64), rel)?).cap(rel);
        p = np.add_scalar(&-Q::one());
        q = nq.add_scalar(&-Q::one());
    }
    Some((p, q))
}

/// Does `s` (a series in the level's `Y`) vanish along `Y = 0`?
fn decide_vanishing(s: &YSeries) -> Verdict {
    if let Some(v) = s.valuation() {
        if v <= 0 {
            return Verdict::Fail(if v < 0 {
                format!("pole of order {} along the axis", -v)
            } else {
                "nonzero on the axis".into()
            });
        }
    }
    if s.prec() >= 1 {
        Verdict::Pass
    } else {
        Verdict::Undecided
    }
}

fn decide_shift(a: &YSeries, c: &Q) -> Verdict {
    if let Some(v) = a.valuation() {
        if v < 0 {
            return Verdict::Fail(format!("pulled-back coordinate has a pole of order {} along the axis", -v));
        }
    }
    match a.coeff(0) {
        None => Verdict::Undecided,
        Some(r) => match r.eval(c) {
            None => Verdict::Fail(format!("pulled-back coordinate has a pole at {c}")),
            Some(v) if &v == c => Verdict::Pass,
            Some(v) => Verdict::Fail(format!("center {c} moves to {v}")),
        },
    }
}

const MAX_REL: usize = 4096;

/// Decide the conjugation certificates with exact truncated series along
/// each axis. Every coefficient used is exact; the truncation order grows
/// until each predicate is decided.
pub fn certify_conjugation(t: &ChartTower, alpha: &UnitFormMap) -> Result<Vec<StageCertificate>> {
    let mut out = Vec::new();
    for level in 0..=t.depth() {
        let mut rel = 8;
        loop {
            if rel > MAX_REL {
                return Err(Error::Internal(format!(
                    "level {level}: undecided at {MAX_REL} series terms"
                )));
            }
            let Some((p, q)) = level_series(t, alpha, level, rel) else {
                rel *= 2;
                continue;
            };
            let mut verdicts = Vec::new();
            if level > 0 {
                verdicts.push((level, Predicate::PVanishesOnAxis, decide_vanishing(&p)));
                verdicts.push((level, Predicate::QVanishesOnAxis, decide_vanishing(&q)));
            }
            if let Some(st) = t.stages.get(level) {
                let a = YSeries::x().mul(&p.add_scalar(&Q::one()));
                verdicts.push((level + 1, Predicate::ShiftPreserved, decide_shift(&a, &st.c)));
            }
            if verdicts.iter().any(|(_, _, v)| matches!(v, Verdict::Undecided)) {
                rel *= 2;
                continue;
            }
            for (stage, predicate, v) in verdicts {
                let (passed, detail) = match v {
                    Verdict::Pass => (true, String::new()),
                    Verdict::Fail(d) => (false, d),
                    Verdict::Undecided => unreachable!(),
                };
                out.push(StageCertificate { stage, predicate, passed, detail });
            }
            break;
        }
    }
    out.sort_by_key(|c| (c.stage, c.predicate));
    Ok(out)
}

fn height(x: &Q) -> BigInt {
    x.numer().abs().max(x.denom().clone())
}

/// Rationals of height at most `h`, ordered by height, denominator,
/// magnitude, then sign.
fn rationals_up_to(h: i64) -> Vec<Q> {
    let mut v = vec![Q::zero()];
    for den in 1..=h {
        for num in 1..=h {
            if num.gcd(&den) == 1 {
                let r = Q::new(BigInt::from(num), BigInt::from(den));
                v.push(r.clone());
                v.push(-r);
            }
        }
    }
    v.sort_by(|a, b| {
        (height(a), a.denom().clone(), a.numer().abs(), a.is_negative())
            .cmp(&(height(b), b.denom().clone(), b.numer().abs(), b.is_negative()))
    });
    v
}

/// Whether `s = a + b·t + c·t²` passes through `target` and misses `avoid`.
pub fn parabola_fits(abc: &(Q, Q, Q), target: &RationalPoint, avoid: &[RationalPoint]) -> bool {
    let (a, b, c) = abc;
    let at = |t: &Q| a + b * t + c * t * t;
    at(&target.v) == target.u && avoid.iter().all(|p| at(&p.v) != p.u)
}

const MAX_HEIGHT: i64 = 64;

/// A parabola `s = a + b·t + c·t²` through `target` missing every point of
/// `avoid`. Points are `(s, t)`.
pub fn find_avoiding_parabola(target: &RationalPoint, avoid: &[RationalPoint]) -> Result<(Q, Q, Q)> {
    if target.u.is_zero() || target.v.is_zero() {
        return Err(Error::Domain(format!("target {target} has a zero coordinate")));
    }
    if avoid.contains(target) {
        return Err(Error::Domain("target is in the avoided set".into()));
    }
    let t0 = &target.v;
    let mut prev = 0usize;
    for h in 0..=MAX_HEIGHT {
        let rs = rationals_up_to(h);
        let hb = BigInt::from(h);
        for b in &rs {
            for c in &rs {
                if h > 0 && height(b) < hb && height(c) < hb {
                    continue;
                }
                let a = &target.u - b * t0 - c * t0 * t0;
                let abc = (a, b.clone(), c.clone());
                if parabola_fits(&abc, target, avoid) {
                    return Ok(abc);
                }
            }
        }
        prev = rs.len().max(prev);
    }
    Err(Error::Internal(format!("no parabola of height ≤ {MAX_HEIGHT} among {prev}² pairs")))
}
