//! Minimal resolution chains of the pencil `y^m / x^k` and their Bézout data.
//!
//! Each exceptional curve is recorded by its valuation vector
//! `(ord x, ord y)`. The proper transform of the x-axis `{y = 0}` is the
//! vector `(0, 1)` and that of the y-axis `{x = 0}` is `(1, 0)`. Every curve
//! of the resolution is a Stern–Brocot mediant of the two, and the
//! (−1)-curve is `(m, k)`.

use std::cmp::Ordering;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;

/// Valuation vector `(ord x, ord y)` of a curve over the origin.
pub type Valuation = (u64, u64);

pub(crate) const X_AXIS: Valuation = (0, 1);
pub(crate) const Y_AXIS: Valuation = (1, 0);

fn add(a: Valuation, b: Valuation) -> Valuation {
    (a.0 + b.0, a.1 + b.1)
}

fn cross(a: Valuation, b: Valuation) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

/// Order of `y^m / x^k` along the curve with valuation `v`.
pub fn coefficient(k: u64, m: u64, v: Valuation) -> i128 {
    m as i128 * v.1 as i128 - k as i128 * v.0 as i128
}

fn check_coprime(k: u64, m: u64) -> Result<()> {
    if k == 0 || m == 0 {
        return Err(Error::Domain(format!("exponents must be positive, got k={k}, m={m}")));
    }
    if k.gcd(&m) != 1 {
        return Err(Error::Domain(format!("k={k} and m={m} are not coprime")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutPair {
    pub k: u64,
    pub m: u64,
    pub n: u64,
    pub l: u64,
}

impl BezoutPair {
    pub fn satisfies_identity(&self) -> bool {
        self.k as i128 * self.l as i128 - self.m as i128 * self.n as i128 == 1
    }
}

/// The `(n, l)` with `k·l − m·n = 1` and `0 < l ≤ m`.
pub fn bezout_complement(k: u64, m: u64) -> Result<BezoutPair> {
    check_coprime(k, m)?;
    if m > k {
        return Err(Error::Domain(format!("need m ≤ k, got k={k}, m={m}")));
    }
    let l = if m == 1 {
        1
    } else {
        let e = (k as i128).extended_gcd(&(m as i128));
        (e.x.rem_euclid(m as i128)) as u64
    };
    let n = ((k as u128 * l as u128 - 1) / m as u128) as u64;
    let p = BezoutPair { k, m, n, l };
    if !p.satisfies_identity() {
        return Err(Error::Internal(format!("bad complement {p:?}")));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitionMatrix(pub [[i64; 2]; 2]);

impl TransitionMatrix {
    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn mul(&self, o: &TransitionMatrix) -> TransitionMatrix {
        let a = self.0;
        let b = o.0;
        let mut r = [[0i64; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        TransitionMatrix(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == [[1, 0], [0, 1]]
    }
}

/// Exponent rows of the chart `(x^k/y^m, y^l/x^n)` and of its inverse
/// `(x₁^l y₁^m, x₁^n y₁^k)`.
pub fn transition_data(k: u64, m: u64) -> Result<(TransitionMatrix, TransitionMatrix)> {
    let b = bezout_complement(k, m)?;
    let (k, m, n, l) = (b.k as i64, b.m as i64, b.n as i64, b.l as i64);
    Ok((
        TransitionMatrix([[k, -m], [-n, l]]),
        TransitionMatrix([[l, m], [n, k]]),
    ))
}

/// A linear contractible chain with a unique (−1)-vertex, listed from the
/// end met by the x-axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJChain {
    graph: WeightedDualGraph,
    order: Vec<String>,
    minus_one: usize,
}

impl HJChain {
    /// Chain `C1 - C2 - …` with `weights[0]` at the x-axis end.
    pub fn from_weights(weights: &[i64]) -> Result<Self> {
        let g = WeightedDualGraph::chain_from_weights(weights);
        Self::from_graph(&g, "C1")
    }

    /// Wrap a linear graph whose endpoint `x_end` meets the x-axis.
    pub fn from_graph(g: &WeightedDualGraph, x_end: &str) -> Result<Self> {
        let order = g
            .path_order(Some(x_end))
            .ok_or_else(|| Error::NotHjChain(format!("not a path starting at `{x_end}`")))?;
        let weights: Vec<i64> = order.iter().map(|id| g.weight(id).unwrap()).collect();
        let minus: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] == -1).collect();
        if minus.len() != 1 {
            return Err(Error::NotHjChain(format!(
                "expected exactly one (−1)-vertex, found {}",
                minus.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w != -1 && w > -2) {
            return Err(Error::NotHjChain(format!("weight {w} is above −2")));
        }
        if !g.is_contractible() {
            return Err(Error::NotHjChain("chain does not contract".into()));
        }
        Ok(HJChain { graph: g.clone(), order, minus_one: minus[0] })
    }

    pub fn graph(&self) -> &WeightedDualGraph {
        &self.graph
    }

    /// Vertex ids from the x-axis end.
    pub fn ids(&self) -> &[String] {
        &self.order
    }

    pub fn weights(&self) -> Vec<i64> {
        self.order.iter().map(|id| self.graph.weight(id).unwrap()).collect()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn minus_one(&self) -> usize {
        self.minus_one
    }

    pub fn x_side(&self) -> usize {
        0
    }

    pub fn y_side(&self) -> usize {
        self.order.len() - 1
    }

    pub fn minus_one_id(&self) -> &str {
        &self.order[self.minus_one]
    }

    pub fn x_side_id(&self) -> &str {
        &self.order[0]
    }

    pub fn y_side_id(&self) -> &str {
        self.order.last().unwrap()
    }

    /// The same chain with the roles of the axes swapped.
    pub fn reversed(&self) -> HJChain {
        let order: Vec<String> = self.order.iter().rev().cloned().collect();
        HJChain {
            graph: self.graph.clone(),
            minus_one: order.len() - 1 - self.minus_one,
            order,
        }
    }
}

/// Curves of the minimal resolution of `y^m / x^k`, from the x-axis end.
pub fn resolution_valuations(k: u64, m: u64) -> Result<Vec<Valuation>> {
    check_coprime(k, m)?;
    let target = (m, k);
    // Ordered by slope ord y / ord x, the x-axis being slope ∞.
    let slope_cmp = |a: Valuation, b: Valuation| 0.cmp(&cross(a, b));
    let (mut lo, mut hi) = (X_AXIS, Y_AXIS);
    let mut out = Vec::new();
    loop {
        let med = add(lo, hi);
        out.push(med);
        match slope_cmp(med, target) {
            Ordering::Equal => break,
            Ordering::Greater => lo = med,
            Ordering::Less => hi = med,
        }
    }
    out.sort_by(|&a, &b| slope_cmp(b, a));
    Ok(out)
}

fn weights_of(vals: &[Valuation]) -> Vec<i64> {
    (0..vals.len())
        .map(|i| {
            let left = if i == 0 { X_AXIS } else { vals[i - 1] };
            let right = vals.get(i + 1).copied().unwrap_or(Y_AXIS);
            -(cross(left, right).abs() as i64)
        })
        .collect()
}

pub fn resolution_chain(k: u64, m: u64) -> Result<HJChain> {
    let vals = resolution_valuations(k, m)?;
    HJChain::from_weights(&weights_of(&vals))
}

/// Valuation vectors of an arbitrary chain (x end first) obtained by
/// contracting it with the two axes as fixed ends and rebuilding each
/// contracted curve as the sum of its neighbors. Also returns the position
/// of the first contracted curve.
pub(crate) fn replay_valuations(weights: &[i64]) -> Result<(Vec<Valuation>, usize)> {
    const XB: usize = usize::MAX - 1;
    const YB: usize = usize::MAX;
    let mut live: Vec<(usize, i64)> = weights.iter().copied().enumerate().collect();
    let mut steps: Vec<(usize, usize, usize)> = Vec::new();
    while !live.is_empty() {
        let minus: Vec<usize> = (0..live.len()).filter(|&i| live[i].1 == -1).collect();
        let [p] = minus.as_slice() else {
            return Err(Error::NotHjChain(format!(
                "{} (−1)-vertices after {} contractions",
                minus.len(),
                steps.len()
            )));
        };
        let p = *p;
        let left = if p == 0 { XB } else { live[p - 1].0 };
        let right = if p + 1 == live.len() { YB } else { live[p + 1].0 };
        steps.push((live[p].0, left, right));
        if p > 0 {
            live[p - 1].1 += 1;
        }
        if p + 1 < live.len() {
            live[p + 1].1 += 1;
        }
        live.remove(p);
    }
    let mut vals = vec![(0u64, 0u64); weights.len()];
    let get = |vals: &[Valuation], i: usize| match i {
        XB => X_AXIS,
        YB => Y_AXIS,
        _ => vals[i],
    };
    for &(v, l, r) in steps.iter().rev() {
        vals[v] = add(get(&vals, l), get(&vals, r));
    }
    Ok((vals, steps[0].0))
}

/// The `(k, m)` whose resolution chain is `c`.
pub fn recover_exponents(c: &HJChain) -> Result<(u64, u64)> {
    recover_from_weights(&c.weights())
}

/// As [`recover_exponents`], on raw weights listed from the x-axis end.
pub fn recover_from_weights(weights: &[i64]) -> Result<(u64, u64)> {
    if weights.is_empty() {
        return Err(Error::NotHjChain("empty chain".into()));
    }
    let (vals, e) = replay_valuations(weights)?;
    let (k, m) = (vals[e].1, vals[e].0);
    let rebuilt = resolution_chain(k, m).map_err(|e| Error::NotHjChain(e.to_string()))?;
    if rebuilt.weights() != weights {
        return Err(Error::NotHjChain(format!(
            "weights {weights:?} are not the resolution chain of ({k}, {m})"
        )));
    }
    Ok((k, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_examples() {
        let p = bezout_complement(3, 2).unwrap();
        assert_eq!((p.n, p.l), (1, 1));
        assert_eq!(3 * p.l - 2 * p.n, 1);
        for k in 1..12 {
            let p = bezout_complement(k, 1).unwrap();
            assert_eq!((p.n, p.l), (k - 1, 1));
        }
        let p = bezout_complement(5, 3).unwrap();
        assert_eq!((p.n, p.l), (3, 2));
        assert_eq!(5 * 2 - 3 * 3, 1);
    }

    #[test]
    fn bezout_errors() {
        assert!(matches!(bezout_complement(4, 2), Err(Error::Domain(_))));
        assert!(matches!(bezout_complement(2, 3), Err(Error::Domain(_))));
        assert!(matches!(bezout_complement(0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn bezout_ranges() {
        for k in 2..40u64 {
            for m in 2..k {
                if k.gcd(&m) != 1 {
                    continue;
                }
                let p = bezout_complement(k, m).unwrap();
                assert!(p.satisfies_identity());
                assert!(0 < p.l && p.l <= m && 0 < p.n && p.n < k, "{p:?}");
            }
        }
    }

    #[test]
    fn chain_examples() {
        let c = resolution_chain(1, 1).unwrap();
        assert_eq!(c.weights(), vec![-1]);
        assert_eq!((c.x_side(), c.y_side(), c.minus_one()), (0, 0, 0));
        for k in 1..10 {
            let c = resolution_chain(k, 1).unwrap();
            let mut w = vec![-2; k as usize];
            w[0] = -1;
            assert_eq!(c.weights(), w);
        }
        assert_eq!(resolution_chain(3, 2).unwrap().weights(), vec![-2, -1, -3]);
        assert_eq!(resolution_chain(2, 3).unwrap().weights(), vec![-3, -1, -2]);
        assert_eq!(resolution_chain(5, 3).unwrap().weights(), vec![-3, -1, -2, -3]);
        assert_eq!(resolution_chain(5, 2).unwrap().weights(), vec![-2, -1, -3, -2]);
        assert!(matches!(resolution_chain(6, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn swapping_exponents_reverses_the_chain() {
        for k in 1..20u64 {
            for m in 1..20u64 {
                if k.gcd(&m) != 1 {
                    continue;
                }
                let a = resolution_chain(k, m).unwrap().weights();
                let mut b = resolution_chain(m, k).unwrap().weights();
                b.reverse();
                assert_eq!(a, b, "({k}, {m})");
            }
        }
    }

    #[test]
    fn recover_examples() {
        assert_eq!(recover_from_weights(&[-1]).unwrap(), (1, 1));
        assert_eq!(recover_from_weights(&[-1, -2, -2, -2]).unwrap(), (4, 1));
        assert_eq!(recover_from_weights(&[-2, -1, -3]).unwrap(), (3, 2));
        assert_eq!(recover_from_weights(&[-3, -1, -2]).unwrap(), (2, 3));
        assert!(matches!(recover_from_weights(&[-1, -1]), Err(Error::NotHjChain(_))));
        assert!(matches!(recover_from_weights(&[-2, -1, -2]), Err(Error::NotHjChain(_))));
        assert!(matches!(HJChain::from_weights(&[-1, -1]), Err(Error::NotHjChain(_))));
    }

    #[test]
    fn transition_examples() {
        let (t, i) = transition_data(1, 1).unwrap();
        assert_eq!(t.0, [[1, -1], [0, 1]]);
        assert_eq!(i.0, [[1, 1], [0, 1]]);
        let (t, i) = transition_data(3, 2).unwrap();
        assert_eq!(t.0, [[3, -2], [-1, 1]]);
        assert_eq!(i.0, [[1, 2], [1, 3]]);
        assert_eq!((t.det(), i.det()), (1, 1));
        assert!(t.mul(&i).is_identity());
    }

    #[test]
    fn complement_vector_is_the_y_side_neighbor() {
        for k in 1..30u64 {
            for m in 1..=k {
                if k.gcd(&m) != 1 {
                    continue;
                }
                let b = bezout_complement(k, m).unwrap();
                let vals = resolution_valuations(k, m).unwrap();
                let e = vals.iter().position(|&v| v == (m, k)).unwrap();
                let next = vals.get(e + 1).copied().unwrap_or(Y_AXIS);
                assert_eq!(next, (b.l, b.n), "({k}, {m})");
            }
        }
    }
}
