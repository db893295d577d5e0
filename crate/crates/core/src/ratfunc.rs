//! Sparse bivariate polynomials and rational functions in `x`, `y` over ℚ.
//!
//! Fractions are never reduced by a polynomial gcd; equality is decided by
//! cross-multiplication. Only monomial content is stripped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Exponents `(i, j)` of `x^i y^j`.
pub type Exp = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Exp, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Q::one(), 0, 1)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, Q)>) -> Self {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn shift(&self, di: u32, dj: u32) -> Poly {
        Poly { terms: self.terms.iter().map(|((i, j), v)| ((i + di, j + dj), v.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Smallest exponents of x and of y over all terms.
    pub fn monomial_content(&self) -> Exp {
        let mut it = self.terms.keys();
        let Some(&(mut a, mut b)) = it.next() else {
            return (0, 0);
        };
        for &(i, j) in it {
            a = a.min(i);
            b = b.min(j);
        }
        (a, b)
    }

    /// Divide by `x^a y^b`; all terms must be divisible.
    pub fn unshift(&self, a: u32, b: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|((i, j), v)| ((i - a, j - b), v.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        // Horner-free but with cached powers.
        let mut xp: BTreeMap<u32, Q> = BTreeMap::new();
        let mut yp: BTreeMap<u32, Q> = BTreeMap::new();
        let mut s = Q::zero();
        for ((i, j), c) in &self.terms {
            let xi = xp.entry(*i).or_insert_with(|| pow_q(x, *i)).clone();
            let yj = yp.entry(*j).or_insert_with(|| pow_q(y, *j)).clone();
            s += c * xi * yj;
        }
        s
    }

    /// The polynomial with `y = 0` (a univariate polynomial in x).
    pub fn at_y_zero(&self) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|((_, j), _)| *j == 0).map(|(e, c)| (*e, c.clone())))
    }

    /// The polynomial with `x = 0`.
    pub fn at_x_zero(&self) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|((i, _), _)| *i == 0).map(|(e, c)| (*e, c.clone())))
    }

    /// Multiply by the lcm of coefficient denominators and divide by the gcd
    /// of numerators, making the leading coefficient positive. Returns the
    /// factor removed (so that `self = factor * result`).
    pub fn primitive(&self) -> (Q, Poly) {
        if self.is_zero() {
            return (Q::one(), Poly::zero());
        }
        use num_integer::Integer;
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        let lead_neg = self.terms.values().next_back().unwrap().is_negative();
        let mut f = Q::new(g, l);
        if lead_neg {
            f = -f;
        }
        let inv = f.recip();
        (f, self.scale(&inv))
    }

    /// Substitute polynomials for x and y.
    pub fn compose(&self, gx: &Poly, gy: &Poly) -> Poly {
        let mut xp: Vec<Poly> = vec![Poly::one()];
        let mut yp: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for ((i, j), c) in &self.terms {
            while xp.len() <= *i as usize {
                let n = xp.last().unwrap() * gx;
                xp.push(n);
            }
            while yp.len() <= *j as usize {
                let n = yp.last().unwrap() * gy;
                yp.push(n);
            }
            out = &out + &(&xp[*i as usize] * &yp[*j as usize]).scale(c);
        }
        out
    }

    pub fn parse(s: &str) -> Result<Poly> {
        let f = RatFunc::parse(s)?;
        match f.den.as_constant() {
            Some(c) if !c.is_zero() => Ok(f.num.scale(&c.recip())),
            _ => Err(Error::Parse(format!("`{s}` is not a polynomial"))),
        }
    }
}

pub(crate) fn pow_q(x: &Q, e: u32) -> Q {
    // Powers of coprime parts stay coprime, so skip the reduction.
    Q::new_raw(num_traits::pow(x.numer().clone(), e as usize), num_traits::pow(x.denom().clone(), e as usize))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut acc: BTreeMap<Exp, Q> = BTreeMap::new();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                *acc.entry((i + k, j + l)).or_insert_with(Q::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { terms: acc }
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut first = true;
    for (v, e) in [("x", i), ("y", j)] {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

/// Terms by descending total degree, then descending power of x.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Exp, &Q)> = self.terms.iter().collect();
        terms.sort_by(|((a, b), _), ((c, d), _)| (c + d, c).cmp(&(a + b, a)));
        for (n, ((i, j), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            if *i == 0 && *j == 0 {
                write!(f, "{mag}")?;
            } else {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(f, *i, *j)?;
            }
        }
        Ok(())
    }
}

/// Loci on which rational functions are tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    /// `{y = 0}`.
    XAxis,
    /// `{x = 0}`.
    YAxis,
    Origin,
}

#[derive(Debug, Clone)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        (&self.num * &o.den) == (&o.num * &self.den)
    }
}

impl Eq for RatFunc {}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num, den }.tidy())
    }

    pub fn constant(c: Q) -> Self {
        Poly::constant(c).into()
    }

    pub fn zero() -> Self {
        Poly::zero().into()
    }

    pub fn one() -> Self {
        Poly::one().into()
    }

    pub fn x() -> Self {
        Poly::x().into()
    }

    pub fn y() -> Self {
        Poly::y().into()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Strip common monomial and rational content. Does not change the
    /// function.
    pub fn tidy(self) -> Self {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let (a, b) = self.num.monomial_content();
        let (c, d) = self.den.monomial_content();
        let (ex, ey) = (a.min(c), b.min(d));
        let num = self.num.unshift(ex, ey);
        let den = self.den.unshift(ex, ey);
        let (fd, den) = den.primitive();
        let (fn_, num) = num.primitive();
        RatFunc { num: num.scale(&(fn_ / fd)), den }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc { num: &self.num + &o.num, den: self.den.clone() }.tidy();
        }
        RatFunc {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .tidy()
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc { num: &self.num * &o.num, den: &self.den * &o.den }.tidy()
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num: &self.num * &o.den, den: &self.den * &o.num }.tidy())
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::one().div(self)
    }

    /// Integer power; negative exponents need a nonzero function.
    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        let p = e.unsigned_abs() as u32;
        let r = RatFunc { num: self.num.pow(p), den: self.den.pow(p) };
        if e < 0 {
            r.recip()
        } else {
            Ok(r.tidy())
        }
    }

    pub fn add_const(&self, c: &Q) -> RatFunc {
        RatFunc { num: &self.num + &self.den.scale(c), den: self.den.clone() }.tidy()
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Result<Q> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x, y) / d)
    }

    /// `f(gx, gy)`.
    pub fn substitute(&self, gx: &RatFunc, gy: &RatFunc) -> Result<RatFunc> {
        // Clear the substituted denominators: multiply numerator and
        // denominator by gx.den^A * gy.den^B.
        let a = max_exp(&self.num, &self.den, |e| e.0);
        let b = max_exp(&self.num, &self.den, |e| e.1);
        let xn = powers(&gx.num, a);
        let xd = powers(&gx.den, a);
        let yn = powers(&gy.num, b);
        let yd = powers(&gy.den, b);
        let hom = |p: &Poly| {
            let mut out = Poly::zero();
            for ((i, j), c) in p.terms() {
                let (i, j) = (*i as usize, *j as usize);
                let t = &(&(&xn[i] * &xd[a as usize - i]) * &yn[j]) * &yd[b as usize - j];
                out = &out + &t.scale(c);
            }
            out
        };
        let den = hom(&self.den);
        if den.is_zero() {
            return Err(Error::Domain("substitution makes the denominator vanish".into()));
        }
        Ok(RatFunc { num: hom(&self.num), den }.tidy())
    }

    /// Whether `f` is regular on `locus` and vanishes there.
    pub fn vanishes_on(&self, locus: Locus) -> Result<bool> {
        let f = self.clone().tidy();
        match locus {
            Locus::XAxis | Locus::YAxis => {
                let (restrict, var): (fn(&Poly) -> Poly, &str) = match locus {
                    Locus::XAxis => (Poly::at_y_zero, "the x-axis"),
                    _ => (Poly::at_x_zero, "the y-axis"),
                };
                if restrict(&f.den).is_zero() {
                    return Err(Error::Regularity(var.into()));
                }
                Ok(restrict(&f.num).is_zero())
            }
            Locus::Origin => {
                if f.den.coeff(0, 0).is_zero() {
                    return Err(Error::Regularity("the origin".into()));
                }
                Ok(f.num.coeff(0, 0).is_zero())
            }
        }
    }

    pub fn parse(s: &str) -> Result<RatFunc> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let f = p.expr()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("unexpected `{}` at {}", &s[p.i..], p.i)));
        }
        Ok(f)
    }
}

fn max_exp(a: &Poly, b: &Poly, sel: fn(&Exp) -> u32) -> u32 {
    a.terms().chain(b.terms()).map(|(e, _)| sel(e)).max().unwrap_or(0)
}

fn powers(p: &Poly, n: u32) -> Vec<Poly> {
    let mut v = vec![Poly::one()];
    for _ in 0..n {
        let next = v.last().unwrap() * p;
        v.push(next);
    }
    v
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.as_constant() {
            Some(c) if c.is_one() => write!(f, "{}", self.num),
            _ => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

/// Recursive descent over `+ - * / ^ ( )`, rationals, `x`, `y`.
struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at byte {}", self.i)))
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.i += 1;
                    acc = acc.div(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i64 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.powi(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected a number");
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'x') => {
                self.i += 1;
                Ok(RatFunc::x())
            }
            Some(b'y') => {
                self.i += 1;
                Ok(RatFunc::y())
            }
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFunc::constant(Q::from_integer(self.integer()?))),
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rf("x/y").mul(&rf("y/x")), RatFunc::one());
        assert!(rf("x+y").sub(&rf("x+y")).is_zero());
        let lhs = rf("x^2 - y^2").div(&rf("x - y")).unwrap();
        assert_eq!(lhs, rf("x + y"));
        assert_eq!(rf("x").div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn substitution_examples() {
        let (l, m, n, k) = (2, 3, 1, 5);
        let gx = RatFunc::from(Poly::monomial(q(1), l, m));
        let gy = RatFunc::from(Poly::monomial(q(1), n, k));
        assert_eq!(RatFunc::x().substitute(&gx, &gy).unwrap(), gx);
        let f = rf("(3/2*x^2*y - y^3)/(1 + x)");
        assert_eq!(f.substitute(&RatFunc::x(), &RatFunc::y()).unwrap(), f);
        // y/x at (s*t, t) with s, t renamed to x, y.
        let r = rf("y/x").substitute(&rf("x*y"), &rf("y")).unwrap();
        assert_eq!(r, rf("1/x"));
        assert!(matches!(
            rf("1/x").substitute(&RatFunc::zero(), &RatFunc::y()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn vanishing_examples() {
        assert!(rf("y*(1+x)").vanishes_on(Locus::XAxis).unwrap());
        assert!(rf("x/(1-y)").vanishes_on(Locus::Origin).unwrap());
        let f = rf("x/(3-x)");
        assert!(f.vanishes_on(Locus::YAxis).unwrap());
        assert!(!f.vanishes_on(Locus::XAxis).unwrap());
        assert!(matches!(rf("x/y").vanishes_on(Locus::XAxis), Err(Error::Regularity(_))));
        assert!(rf("y^2/y").vanishes_on(Locus::XAxis).unwrap());
        assert!(!rf("y/y").vanishes_on(Locus::XAxis).unwrap());
        assert!(matches!(rf("1/x").vanishes_on(Locus::Origin), Err(Error::Regularity(_))));
    }

    #[test]
    fn printing_round_trips() {
        for s in ["3/2*x^2*y - y^3", "-x + 1", "0", "x*y^2 + 7/3", "-1/2*y"] {
            let p = Poly::parse(s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
        }
        assert!(Poly::parse("x/y").is_err());
        assert!(Poly::parse("x +").is_err());
        assert!(Poly::parse("2 $ x").is_err());
    }

    #[test]
    fn evaluation() {
        let f = rf("(x^2 + y)/(x - y)");
        assert_eq!(f.eval(&q(3), &q(1)).unwrap(), q(5));
        assert_eq!(f.eval(&q(1), &q(1)), Err(Error::DivisionByZero));
    }
}
