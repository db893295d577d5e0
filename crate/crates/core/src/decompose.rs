//! Branch structure of contractible graphs with a single (−1)-vertex, and
//! their factorization into stages of monomial resolutions.
//!
//! Contracting such a graph is forced: there is only ever one (−1)-vertex.
//! The contraction order cuts the graph into linear windows; a new window
//! opens each time the (−1)-vertex is a branch point of the original graph.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;
use crate::hj::{recover_from_weights, Valuation, X_AXIS, Y_AXIS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchStructure {
    /// `E_1, …, E_{n−1}`.
    pub branch_points: Vec<String>,
    /// `Γ_1, …, Γ_n` as paths. For `i ≥ 2` the path starts at the end
    /// adjacent to `E_{i−1}`.
    pub subgraphs: Vec<Vec<String>>,
    /// Branch points lying at an end of their own window. The contraction
    /// still goes through, but the window's exponents are not both ≥ 2.
    pub end_branch_points: Vec<String>,
}

impl BranchStructure {
    pub fn depth(&self) -> usize {
        self.subgraphs.len()
    }
}

fn unique_minus_one(g: &WeightedDualGraph) -> Result<String> {
    let minus: Vec<&str> = g
        .sorted_ids()
        .into_iter()
        .filter(|id| g.weight(id).unwrap() == -1)
        .collect();
    match minus.as_slice() {
        [e] => Ok(e.to_string()),
        _ => Err(Error::Domain(format!(
            "expected a unique (−1)-vertex, found {}",
            minus.len()
        ))),
    }
}

/// Weights of `path` in `g`, with `first` forced to −1.
fn window_weights(g: &WeightedDualGraph, path: &[String], forced: Option<&str>) -> Vec<i64> {
    path.iter()
        .map(|id| if Some(id.as_str()) == forced { -1 } else { g.weight(id).unwrap() })
        .collect()
}

pub fn analyze(g: &WeightedDualGraph, e: &str) -> Result<BranchStructure> {
    let unique = unique_minus_one(g)?;
    if unique != e {
        return Err(Error::Domain(format!("`{e}` is not the (−1)-vertex, `{unique}` is")));
    }
    if !g.is_contractible() {
        return Err(Error::NotContractible);
    }
    if let Some(v) = g.sorted_ids().into_iter().find(|id| g.degree(id) >= 4) {
        return Err(Error::OutsideBranchFamily(format!(
            "`{v}` has {} neighbors",
            g.degree(v)
        )));
    }

    // Forced contraction, cut into windows.
    let mut windows: Vec<Vec<String>> = vec![vec![]];
    let mut cur = g.clone();
    let mut target = e.to_string();
    loop {
        if g.degree(&target) == 3 && !windows.last().unwrap().is_empty() {
            windows.push(vec![]);
        }
        windows.last_mut().unwrap().push(target.clone());
        cur = cur.blow_down(&target).map_err(|err| {
            Error::OutsideBranchFamily(format!("forced contraction stuck: {err}"))
        })?;
        if cur.is_empty() {
            break;
        }
        target = unique_minus_one(&cur).map_err(|_| {
            Error::OutsideBranchFamily("contraction does not keep a unique (−1)-vertex".into())
        })?;
    }
    windows.reverse();
    let n = windows.len();
    let branch_points: Vec<String> = windows[..n - 1].iter().map(|w| w[0].clone()).collect();

    // Validate and orient.
    let mut subgraphs = Vec::with_capacity(n);
    let mut end_branch_points = Vec::new();
    for (i, w) in windows.iter().enumerate() {
        let ids: Vec<&str> = w.iter().map(String::as_str).collect();
        let sub = g.induced(&ids)?;
        let start = if i == 0 {
            None
        } else {
            let prev = &branch_points[i - 1];
            let ends: Vec<&str> = ids.iter().copied().filter(|v| sub.degree(v) <= 1).collect();
            let Some(s) = ends.into_iter().find(|v| g.has_edge(prev, v)) else {
                return Err(Error::OutsideBranchFamily(format!(
                    "`{prev}` meets no endpoint of the next window"
                )));
            };
            Some(s)
        };
        let path = sub.path_order(start).ok_or_else(|| {
            Error::OutsideBranchFamily(format!("window {} is not linear", i + 1))
        })?;
        let forced = branch_points.get(i).map(String::as_str);
        let weights = window_weights(g, &path, forced);
        let (k, m) = recover_from_weights(&weights).map_err(|err| {
            Error::OutsideBranchFamily(format!("window {} is not a resolution chain: {err}", i + 1))
        })?;
        if let Some(b) = forced {
            if g.degree(b) != 3 {
                return Err(Error::OutsideBranchFamily(format!("`{b}` is not a branch point")));
            }
            if k < 2 || m < 2 {
                end_branch_points.push(b.to_string());
            }
        }
        subgraphs.push(path);
    }
    Ok(BranchStructure { branch_points, subgraphs, end_branch_points })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attach {
    /// A general point of the previous stage's (−1)-curve.
    Generic,
    /// The point where the previous (−1)-curve meets this neighbor.
    Node(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationStage {
    pub k: u64,
    pub m: u64,
    pub attach: Attach,
    pub c: Option<BigRational>,
}

impl FactorizationStage {
    pub fn generic(k: u64, m: u64) -> Self {
        FactorizationStage { k, m, attach: Attach::Generic, c: None }
    }

    pub fn at_node(k: u64, m: u64, neighbor: &str) -> Self {
        FactorizationStage { k, m, attach: Attach::Node(neighbor.to_string()), c: None }
    }
}

impl fmt::Display for FactorizationStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.m)?;
        if let Attach::Node(n) = &self.attach {
            write!(f, "@{n}")?;
        }
        if let Some(c) = &self.c {
            write!(f, " c={c}")?;
        }
        Ok(())
    }
}

/// Stages of a chain read from its x end: single blow-ups while the
/// x-axis sits on the side of the first blow-up, then one monomial stage.
fn peel(weights: &[i64], out: &mut Vec<FactorizationStage>) -> Result<()> {
    let (k, m) = recover_from_weights(weights)?;
    if m <= k {
        out.push(FactorizationStage::generic(k, m));
        return Ok(());
    }
    out.push(FactorizationStage::generic(1, 1));
    peel(&weights[1..], out)
}

pub fn factorize(g: &WeightedDualGraph) -> Result<Vec<FactorizationStage>> {
    factorize_with_axis(g, None)
}

/// As [`factorize`], with the first window read from `x_end`, the vertex
/// met by the x-axis.
pub fn factorize_with_axis(
    g: &WeightedDualGraph,
    x_end: Option<&str>,
) -> Result<Vec<FactorizationStage>> {
    let e = unique_minus_one(g)?;
    let bs = analyze(g, &e)?;
    let mut out = Vec::new();
    for (i, path) in bs.subgraphs.iter().enumerate() {
        let forced = bs.branch_points.get(i).map(String::as_str);
        let mut weights = window_weights(g, path, forced);
        if i == 0 {
            match x_end {
                Some(x) if path.last().map(String::as_str) == Some(x) => weights.reverse(),
                Some(x) if path[0] != x => {
                    return Err(Error::Domain(format!("`{x}` is not an end of the first window")))
                }
                Some(_) => {}
                None => {
                    let (k, m) = recover_from_weights(&weights)?;
                    if m > k {
                        weights.reverse();
                    }
                }
            }
        }
        peel(&weights, &mut out).map_err(|err| Error::Internal(format!("window {}: {err}", i + 1)))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Side {
    Virtual,
    Real(String),
}

/// Builds a composite exceptional graph one stage at a time.
#[derive(Debug, Clone, Default)]
pub struct StageBuilder {
    graph: WeightedDualGraph,
    current: Option<String>,
}

impl StageBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn graph(&self) -> &WeightedDualGraph {
        &self.graph
    }

    pub fn into_graph(self) -> WeightedDualGraph {
        self.graph
    }

    /// The (−1)-curve of the last stage.
    pub fn current_minus_one(&self) -> Option<&str> {
        self.current.as_deref()
    }

    pub fn push(&mut self, stage: &FactorizationStage) -> Result<()> {
        let (k, m) = (stage.k, stage.m);
        if k == 0 || m == 0 || num_integer::gcd(k, m) != 1 || m > k {
            return Err(Error::Domain(format!("stage ({k}, {m}) needs coprime 1 ≤ m ≤ k")));
        }
        let (mut lo, mut hi) = match (&self.current, &stage.attach) {
            (None, Attach::Generic) => (Side::Virtual, Side::Virtual),
            (None, Attach::Node(n)) => {
                return Err(Error::UnknownVertex(format!("{n} (no earlier stage)")))
            }
            (Some(h), Attach::Generic) => (Side::Real(h.clone()), Side::Virtual),
            (Some(h), Attach::Node(n)) => {
                if !self.graph.has_edge(h, n) {
                    return Err(Error::UnknownEdge(h.clone(), n.clone()));
                }
                (Side::Real(h.clone()), Side::Real(n.clone()))
            }
        };
        let (mut vlo, mut vhi): (Valuation, Valuation) = (X_AXIS, Y_AXIS);
        loop {
            let (g, id) = match (&lo, &hi) {
                (Side::Virtual, Side::Virtual) => self.graph.point_blowup(),
                (Side::Real(a), Side::Virtual) | (Side::Virtual, Side::Real(a)) => {
                    self.graph.outer_blowup(a)?
                }
                (Side::Real(a), Side::Real(b)) => self.graph.inner_blowup(a, b)?,
            };
            self.graph = g;
            let v = (vlo.0 + vhi.0, vlo.1 + vhi.1);
            let coef = m as i128 * v.1 as i128 - k as i128 * v.0 as i128;
            match coef.signum() {
                0 => {
                    self.current = Some(id);
                    return Ok(());
                }
                1 => {
                    lo = Side::Real(id);
                    vlo = v;
                }
                _ => {
                    hi = Side::Real(id);
                    vhi = v;
                }
            }
        }
    }
}

pub fn synthesize(stages: &[FactorizationStage]) -> Result<WeightedDualGraph> {
    let mut b = StageBuilder::new();
    for s in stages {
        b.push(s)?;
    }
    Ok(b.into_graph())
}

/// Ids of `g` that are not in any window; empty for a valid structure.
pub fn uncovered(g: &WeightedDualGraph, bs: &BranchStructure) -> Vec<String> {
    let seen: BTreeSet<&str> = bs.subgraphs.iter().flatten().map(String::as_str).collect();
    g.sorted_ids().into_iter().filter(|v| !seen.contains(v)).map(String::from).collect()
}
