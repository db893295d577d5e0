//! Univariate polynomials and reduced rational functions over ℚ.

use std::fmt;

use num_traits::{One, Zero};

use crate::ratfunc::Q;

/// Dense coefficients, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(vec![])
    }

    pub fn constant(c: Q) -> Self {
        UPoly(vec![c]).trim()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// `c·X^e`.
    pub fn monomial(c: Q, e: usize) -> Self {
        let mut v = vec![Q::zero(); e + 1];
        v[e] = c;
        UPoly(v).trim()
    }

    pub fn from_coeffs(v: Vec<Q>) -> Self {
        UPoly(v).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = o.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly(v).trim()
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        UPoly(v).trim()
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    /// Divide by `X^e`; the low coefficients must vanish.
    pub fn shift_down(&self, e: usize) -> UPoly {
        debug_assert!(self.0.iter().take(e).all(|c| c.is_zero()));
        UPoly(self.0.iter().skip(e).cloned().collect())
    }

    pub fn monic(&self) -> (Q, UPoly) {
        let l = self.lead();
        if l.is_zero() {
            return (Q::one(), UPoly::zero());
        }
        let inv = l.recip();
        (l, self.scale(&inv))
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.0.len() - 1;
        let inv = d.lead().recip();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut qv = vec![Q::zero(); r.len() - dd];
        for i in (0..qv.len()).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.0.iter().enumerate() {
                r[i + j] -= &c * b;
            }
            qv[i] = c;
        }
        r.truncate(dd);
        (UPoly(qv).trim(), UPoly(r).trim())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.monic().1, o.monic().1);
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic().1;
        }
        a
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = crate::ratfunc::Poly::from_terms(
            self.0.iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())),
        );
        write!(f, "{p}")
    }
}

/// Reduced `num/den` with monic `den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct URat {
    num: UPoly,
    den: UPoly,
}

impl URat {
    pub fn zero() -> Self {
        URat { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        URat { num: UPoly::constant(c), den: UPoly::one() }
    }

    pub fn poly(p: UPoly) -> Self {
        URat { num: p, den: UPoly::one() }
    }

    /// `X`.
    pub fn var() -> Self {
        Self::poly(UPoly::monomial(Q::one(), 1))
    }

    /// `c·X^e` for any integer `e`.
    #[cfg(test)]
    pub fn monomial(c: Q, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if e >= 0 {
            Self::poly(UPoly::monomial(c, e as usize))
        } else {
            URat { num: UPoly::constant(c), den: UPoly::monomial(Q::one(), (-e) as usize) }
        }
    }

    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        // Cheap path: a monomial denominator only shares powers of X.
        if den.is_monomial() {
            let dv = den.valuation().unwrap();
            let nv = num.valuation().unwrap();
            let e = dv.min(nv);
            let c = den.lead().recip();
            return URat {
                num: num.shift_down(e).scale(&c),
                den: UPoly::monomial(Q::one(), dv - e),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let (l, den) = den.monic();
        URat { num: num.scale(&l.recip()), den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &URat) -> URat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return URat::new(self.num.add(&o.num), self.den.clone());
        }
        URat::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> URat {
        URat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &URat) -> URat {
        if self.is_zero() || o.is_zero() {
            return URat::zero();
        }
        URat::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn recip(&self) -> Option<URat> {
        if self.is_zero() {
            return None;
        }
        Some(URat::new(self.den.clone(), self.num.clone()))
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

}

impl fmt::Display for URat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
