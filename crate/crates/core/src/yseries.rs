//! Truncated Laurent series in `Y` with coefficients in ℚ(X), with exact
//! precision tracking: every stored coefficient is exact, and `prec` is the
//! first exponent that is not known.

use num_traits::{One, Zero};

use crate::ratfunc::{Poly, Q};
use crate::upoly::URat;

/// Precision of a series known exactly.
pub(crate) const EXACT: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
pub(crate) struct YSeries {
    /// Exponent of `coeffs[0]`.
    val: i64,
    /// `coeffs[0]` is nonzero unless the series is empty.
    coeffs: Vec<URat>,
    prec: i64,
}

impl YSeries {
    pub fn exact(val: i64, coeffs: Vec<URat>) -> Self {
        YSeries { val, coeffs, prec: EXACT }.normalize()
    }

    pub fn constant(c: URat) -> Self {
        Self::exact(0, vec![c])
    }

    pub fn scalar(c: Q) -> Self {
        Self::constant(URat::constant(c))
    }

    /// `X`.
    pub fn x() -> Self {
        Self::constant(URat::var())
    }

    /// `Y`.
    pub fn y() -> Self {
        Self::exact(1, vec![URat::one()])
    }

    fn normalize(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
                let keep = (self.prec - self.val).max(0) as usize;
                self.coeffs.truncate(keep);
            }
        }
        self
    }

    /// Forget everything beyond `rel` terms past the valuation.
    pub fn cap(mut self, rel: usize) -> Self {
        if !self.coeffs.is_empty() {
            self.prec = self.prec.min(self.val + rel as i64);
            self.coeffs.truncate(rel);
        }
        self.normalize()
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Valuation, when some coefficient is known to be nonzero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// A lower bound for the valuation.
    fn low(&self) -> i64 {
        self.val
    }

    /// Coefficient of `Y^e`, if known.
    pub fn coeff(&self, e: i64) -> Option<URat> {
        if e >= self.prec {
            return None;
        }
        if e < self.val {
            return Some(URat::zero());
        }
        Some(self.coeffs.get((e - self.val) as usize).cloned().unwrap_or_else(URat::zero))
    }

    pub fn add(&self, o: &YSeries) -> YSeries {
        let prec = self.prec.min(o.prec);
        let lo = self.low().min(o.low());
        if lo >= prec {
            return YSeries { val: prec, coeffs: vec![], prec };
        }
        let end = |s: &YSeries| if s.coeffs.is_empty() { lo } else { s.val + s.coeffs.len() as i64 };
        let hi = end(self).max(end(o)).min(prec);
        let mut coeffs = Vec::with_capacity((hi - lo).max(0) as usize);
        for e in lo..hi {
            let a = self.coeff(e).unwrap_or_else(URat::zero);
            let b = o.coeff(e).unwrap_or_else(URat::zero);
            coeffs.push(a.add(&b));
        }
        YSeries { val: lo, coeffs, prec }.normalize()
    }

    #[cfg(test)]
    pub fn neg(&self) -> YSeries {
        YSeries { val: self.val, coeffs: self.coeffs.iter().map(URat::neg).collect(), prec: self.prec }
    }

    #[cfg(test)]
    pub fn sub(&self, o: &YSeries) -> YSeries {
        self.add(&o.neg())
    }

    pub fn add_scalar(&self, c: &Q) -> YSeries {
        self.add(&YSeries::scalar(c.clone()))
    }

    pub fn mul(&self, o: &YSeries) -> YSeries {
        let sat = |a: i64, b: i64| if a >= EXACT || b >= EXACT { EXACT } else { a + b };
        let prec = sat(self.prec, o.low()).min(sat(o.prec, self.low()));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            let v = self.low() + o.low();
            return YSeries { val: v.min(prec), coeffs: vec![], prec }.normalize();
        }
        let val = self.val + o.val;
        let len = if prec >= EXACT {
            self.coeffs.len() + o.coeffs.len() - 1
        } else {
            ((prec - val).max(0) as usize).min(self.coeffs.len() + o.coeffs.len() - 1)
        };
        let mut coeffs = vec![URat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        YSeries { val, coeffs, prec }.normalize()
    }

    /// Multiplicative inverse to `rel` relative terms (fewer if the input is
    /// known to fewer). `None` when no coefficient is known to be nonzero.
    pub fn inv(&self, rel: usize) -> Option<YSeries> {
        let v = self.valuation()?;
        let known = if self.prec >= EXACT { rel } else { ((self.prec - v) as usize).min(rel) };
        let a0_inv = self.coeffs[0].recip()?;
        let mut out: Vec<URat> = Vec::with_capacity(known);
        out.push(a0_inv.clone());
        for i in 1..known {
            let mut s = URat::zero();
            for j in 1..=i.min(self.coeffs.len() - 1) {
                let aj = &self.coeffs[j];
                if !aj.is_zero() {
                    s = s.add(&aj.mul(&out[i - j]));
                }
            }
            out.push(s.mul(&a0_inv).neg());
        }
        Some(YSeries { val: -v, coeffs: out, prec: -v + known as i64 }.normalize())
    }

    /// Integer power; negative powers go through `inv`.
    pub fn powi(&self, e: i64, rel: usize) -> Option<YSeries> {
        let base = if e < 0 { self.inv(rel)? } else { self.clone() };
        let mut acc = YSeries::scalar(Q::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base).cap(rel);
        }
        Some(acc)
    }

    /// A bivariate polynomial evaluated at `(xs, ys)`.
    pub fn eval_poly(p: &Poly, xs: &YSeries, ys: &YSeries, rel: usize) -> YSeries {
        let mut acc = YSeries::scalar(Q::zero());
        for ((i, j), c) in p.terms() {
            let mut t = YSeries::scalar(c.clone());
            for _ in 0..*i {
                t = t.mul(xs).cap(rel);
            }
            for _ in 0..*j {
                t = t.mul(ys).cap(rel);
            }
            acc = acc.add(&t);
        }
        acc
    }

    #[cfg(test)]
    pub fn is_known_zero_below(&self, e: i64) -> bool {
        self.prec >= e && (self.coeffs.is_empty() || self.val >= e)
    }
}
