//! Weighted dual graphs of complete SNC curves and the blow-up / blow-down
//! rewrite rules acting on them.
//!
//! Vertices are irreducible components weighted by their self-intersection,
//! edges are intersection points. The graph is a multigraph (two components
//! may meet more than once) but never carries self-loops.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub weight: i64,
    pub label: Option<String>,
}

impl Vertex {
    pub fn new(id: impl Into<String>, weight: i64) -> Self {
        Vertex { id: id.into(), weight, label: None }
    }
}

/// Compare ids so that `E2 < E10`: split into a non-digit prefix and a numeric
/// suffix, falling back to plain string order.
pub fn natural_id_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (head, tail) = s.split_at(cut);
        (head, tail.parse().ok())
    }
    let (ha, na) = split(a);
    let (hb, nb) = split(b);
    ha.cmp(hb).then(na.cmp(&nb)).then(a.cmp(b))
}

#[derive(Debug, Clone, Default)]
pub struct WeightedDualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String)>,
}

/// Structural equality: same vertices (id, weight, label) and the same edge
/// multiset, independent of insertion order and edge orientation.
impl PartialEq for WeightedDualGraph {
    fn eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl Eq for WeightedDualGraph {}

impl WeightedDualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<(String, String)>) -> Result<Self> {
        let mut g = WeightedDualGraph::new();
        for v in vertices {
            g.push_vertex(v)?;
        }
        for (a, b) in edges {
            g.add_edge(&a, &b)?;
        }
        Ok(g)
    }

    /// A path `ids[0] - ids[1] - …` with the given weights.
    pub fn chain<S: AsRef<str>>(ids: &[S], weights: &[i64]) -> Result<Self> {
        if ids.len() != weights.len() {
            return Err(Error::Domain("chain ids and weights differ in length".into()));
        }
        let mut g = WeightedDualGraph::new();
        for (id, &w) in ids.iter().zip(weights) {
            g.add_vertex(id.as_ref(), w)?;
        }
        for pair in ids.windows(2) {
            g.add_edge(pair[0].as_ref(), pair[1].as_ref())?;
        }
        Ok(g)
    }

    /// A path with generated ids `C1, C2, …`.
    pub fn chain_from_weights(weights: &[i64]) -> Self {
        let ids: Vec<String> = (1..=weights.len()).map(|i| format!("C{i}")).collect();
        Self::chain(&ids, weights).expect("generated ids are unique")
    }

    pub fn add_vertex(&mut self, id: &str, weight: i64) -> Result<()> {
        self.push_vertex(Vertex::new(id, weight))
    }

    pub fn push_vertex(&mut self, v: Vertex) -> Result<()> {
        if self.contains(&v.id) {
            return Err(Error::DuplicateVertex(v.id));
        }
        self.vertices.push(v);
        Ok(())
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        for id in [a, b] {
            if !self.contains(id) {
                return Err(Error::UnknownVertex(id.to_string()));
            }
        }
        self.edges.push((a.to_string(), b.to_string()));
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.vertices.iter().any(|v| v.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    fn vertex_mut(&mut self, id: &str) -> Option<&mut Vertex> {
        self.vertices.iter_mut().find(|v| v.id == id)
    }

    pub fn weight(&self, id: &str) -> Result<i64> {
        self.vertex(id)
            .map(|v| v.weight)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn set_weight(&mut self, id: &str, weight: i64) -> Result<()> {
        let v = self
            .vertex_mut(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))?;
        v.weight = weight;
        Ok(())
    }

    pub fn set_label(&mut self, id: &str, label: Option<String>) -> Result<()> {
        let v = self
            .vertex_mut(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))?;
        v.label = label;
        Ok(())
    }

    fn bump_weight(&mut self, id: &str, delta: i64) {
        if let Some(v) = self.vertex_mut(id) {
            v.weight += delta;
        }
    }

    /// Degree counted with edge multiplicity.
    pub fn degree(&self, id: &str) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| a == id || b == id)
            .count()
    }

    /// Neighbors with multiplicity, in edge order.
    pub fn neighbors(&self, id: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter_map(|(a, b)| {
                if a == id {
                    Some(b.as_str())
                } else if b == id {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect()
    }

    /// Distinct neighbors, sorted by natural id order.
    pub fn distinct_neighbors(&self, id: &str) -> Vec<&str> {
        let mut n = self.neighbors(id);
        n.sort_by(|a, b| natural_id_cmp(a, b));
        n.dedup();
        n
    }

    pub fn edge_multiplicity(&self, a: &str, b: &str) -> usize {
        self.edges
            .iter()
            .filter(|(x, y)| (x == a && y == b) || (x == b && y == a))
            .count()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        self.edge_multiplicity(a, b) > 0
    }

    pub fn weight_sum(&self) -> i64 {
        self.vertices.iter().map(|v| v.weight).sum()
    }

    /// Ids in natural order.
    pub fn sorted_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.vertices.iter().map(|v| v.id.as_str()).collect();
        ids.sort_by(|a, b| natural_id_cmp(a, b));
        ids
    }

    /// Smallest `{prefix}{n}` (n ≥ 1) not yet used as an id.
    pub fn fresh_id(&self, prefix: &str) -> String {
        (1..)
            .map(|n| format!("{prefix}{n}"))
            .find(|id| !self.contains(id))
            .expect("unbounded search")
    }

    fn remove_one_edge(&mut self, a: &str, b: &str) -> Result<()> {
        let pos = self
            .edges
            .iter()
            .position(|(x, y)| (x == a && y == b) || (x == b && y == a))
            .ok_or_else(|| Error::UnknownEdge(a.to_string(), b.to_string()))?;
        self.edges.remove(pos);
        Ok(())
    }

    fn remove_vertex(&mut self, id: &str) {
        self.vertices.retain(|v| v.id != id);
        self.edges.retain(|(a, b)| a != id && b != id);
    }

    /// Induced subgraph on `ids` (order of `ids` is kept).
    pub fn induced(&self, ids: &[&str]) -> Result<Self> {
        let mut g = WeightedDualGraph::new();
        for id in ids {
            let v = self
                .vertex(id)
                .ok_or_else(|| Error::UnknownVertex(id.to_string()))?;
            g.push_vertex(v.clone())?;
        }
        for (a, b) in &self.edges {
            if g.contains(a) && g.contains(b) {
                g.edges.push((a.clone(), b.clone()));
            }
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.vertices.first() else {
            return true;
        };
        let mut seen = vec![first.id.as_str()];
        let mut stack = vec![first.id.as_str()];
        while let Some(v) = stack.pop() {
            for n in self.neighbors(v) {
                if !seen.contains(&n) {
                    seen.push(n);
                    stack.push(n);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Connected, no branch points, no cycles (multi-edges count as cycles).
    pub fn is_linear(&self) -> bool {
        !self.is_empty()
            && self.is_connected()
            && self.edges.len() + 1 == self.vertices.len()
            && self.vertices.iter().all(|v| self.degree(&v.id) <= 2)
    }

    /// For a linear graph, vertex ids from one endpoint to the other,
    /// starting at `start` when given.
    pub fn path_order(&self, start: Option<&str>) -> Option<Vec<String>> {
        if !self.is_linear() {
            return None;
        }
        let first = match start {
            Some(s) => {
                if !self.contains(s) || self.degree(s) > 1 {
                    return None;
                }
                s.to_string()
            }
            None => self
                .sorted_ids()
                .into_iter()
                .find(|id| self.degree(id) <= 1)?
                .to_string(),
        };
        let mut order = vec![first];
        while order.len() < self.vertices.len() {
            let last = order.last().unwrap();
            let next = self
                .neighbors(last)
                .into_iter()
                .find(|n| !order.iter().any(|o| o == n))?
                .to_string();
            order.push(next);
        }
        Some(order)
    }

    /// Blow up the intersection point of `a` and `b`: the edge is replaced by
    /// `a - E - b` with a new (−1)-vertex `E`, and both endpoints lose one.
    /// Returns the new graph and the id of `E`.
    pub fn inner_blowup(&self, a: &str, b: &str) -> Result<(Self, String)> {
        if !self.has_edge(a, b) {
            return Err(Error::UnknownEdge(a.to_string(), b.to_string()));
        }
        let mut g = self.clone();
        let e = g.fresh_id("E");
        g.remove_one_edge(a, b)?;
        g.vertices.push(Vertex::new(e.clone(), -1));
        g.edges.push((a.to_string(), e.clone()));
        g.edges.push((e.clone(), b.to_string()));
        g.bump_weight(a, -1);
        g.bump_weight(b, -1);
        Ok((g, e))
    }

    /// Blow up a smooth point of the curve `v`: `v` loses one and a new
    /// (−1)-leaf is attached to it.
    pub fn outer_blowup(&self, v: &str) -> Result<(Self, String)> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let mut g = self.clone();
        let e = g.fresh_id("E");
        g.vertices.push(Vertex::new(e.clone(), -1));
        g.edges.push((v.to_string(), e.clone()));
        g.bump_weight(v, -1);
        Ok((g, e))
    }

    /// Blow up a point off the curve: a new isolated (−1)-vertex.
    pub fn point_blowup(&self) -> (Self, String) {
        let mut g = self.clone();
        let e = g.fresh_id("E");
        g.vertices.push(Vertex::new(e.clone(), -1));
        (g, e)
    }

    /// Why `v` cannot be contracted, if it cannot.
    pub fn check_blow_down(&self, v: &str) -> Result<()> {
        let w = self.weight(v)?;
        if w != -1 {
            return Err(Error::NotContractibleVertex { id: v.to_string(), weight: w });
        }
        let nbrs = self.neighbors(v);
        if nbrs.len() > 2 {
            return Err(Error::BranchPoint { id: v.to_string(), degree: nbrs.len() });
        }
        if nbrs.len() == 2 && nbrs[0] == nbrs[1] {
            return Err(Error::WouldCreateSelfLoop(v.to_string()));
        }
        Ok(())
    }

    /// Contract the (−1)-vertex `v`: the inverse of an inner blow-up when
    /// `v` has two neighbors, of an outer blow-up when it has one, and plain
    /// deletion when it is isolated.
    pub fn blow_down(&self, v: &str) -> Result<Self> {
        self.check_blow_down(v)?;
        let nbrs: Vec<String> = self.neighbors(v).into_iter().map(String::from).collect();
        let mut g = self.clone();
        g.remove_vertex(v);
        for n in &nbrs {
            g.bump_weight(n, 1);
        }
        if let [a, b] = nbrs.as_slice() {
            g.edges.push((a.clone(), b.clone()));
        }
        Ok(g)
    }

    /// Vertices that `blow_down` would accept, in natural id order.
    pub fn contraction_targets(&self) -> Vec<&str> {
        self.sorted_ids()
            .into_iter()
            .filter(|id| self.check_blow_down(id).is_ok())
            .collect()
    }

    /// Greedy contraction, lowest id first.
    pub fn contract_fully(&self) -> std::result::Result<ContractionSequence, Stuck> {
        let mut g = self.clone();
        let mut steps = Vec::new();
        loop {
            let Some(target) = g.contraction_targets().first().map(|s| s.to_string()) else {
                break;
            };
            let neighbors = g.neighbors(&target).into_iter().map(String::from).collect();
            g = g.blow_down(&target).expect("target was checked");
            steps.push(ContractionStep { vertex: target, neighbors });
        }
        if g.is_empty() {
            Ok(ContractionSequence { steps })
        } else {
            Err(Stuck { steps, residual: g })
        }
    }

    pub fn is_contractible(&self) -> bool {
        self.contract_fully().is_ok()
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let ids = self.sorted_ids();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let n = ids.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (i, id) in ids.iter().enumerate() {
            entries[i][i] = self.weight(id).unwrap();
        }
        for (a, b) in &self.edges {
            let (i, j) = (index[a.as_str()], index[b.as_str()]);
            entries[i][j] += 1;
            entries[j][i] += 1;
        }
        IntersectionMatrix {
            ids: ids.into_iter().map(String::from).collect(),
            entries,
        }
    }

    /// Unimodularity and negative definiteness of the intersection matrix,
    /// both necessary for the graph to be the exceptional divisor of a
    /// sequence of point blow-ups over a smooth point.
    pub fn necessary_criterion(&self) -> Criterion {
        let m = self.intersection_matrix();
        Criterion {
            unimodular: m.determinant().abs() == 1.into(),
            negative_definite: m.is_negative_definite(),
        }
    }

    fn normalized(&self) -> (Vec<(String, i64, Option<String>)>, Vec<(String, String)>) {
        let mut vs: Vec<_> = self
            .vertices
            .iter()
            .map(|v| (v.id.clone(), v.weight, v.label.clone()))
            .collect();
        vs.sort();
        let mut es: Vec<_> = self
            .edges
            .iter()
            .map(|(a, b)| if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) })
            .collect();
        es.sort();
        (vs, es)
    }
}

impl fmt::Display for WeightedDualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("{}({})", v.id, v.weight))
            .collect();
        let es: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "[{}] {{{}}}", vs.join(" "), es.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep {
    pub vertex: String,
    /// Neighbors (with multiplicity) at the time of contraction.
    pub neighbors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContractionSequence {
    pub steps: Vec<ContractionStep>,
}

impl ContractionSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Apply the steps to `g`, checking the recorded neighbors.
    pub fn replay(&self, g: &WeightedDualGraph) -> Result<WeightedDualGraph> {
        let mut g = g.clone();
        for step in &self.steps {
            let mut now: Vec<&str> = g.neighbors(&step.vertex);
            let mut rec: Vec<&str> = step.neighbors.iter().map(String::as_str).collect();
            now.sort();
            rec.sort();
            if now != rec {
                return Err(Error::Domain(format!(
                    "neighbors of `{}` differ from the recorded ones",
                    step.vertex
                )));
            }
            g = g.blow_down(&step.vertex)?;
        }
        Ok(g)
    }
}

/// Greedy contraction got stuck before reaching the empty graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stuck {
    pub steps: Vec<ContractionStep>,
    pub residual: WeightedDualGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Criterion {
    pub unimodular: bool,
    pub negative_definite: bool,
}

impl Criterion {
    pub fn holds(&self) -> bool {
        self.unimodular && self.negative_definite
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub ids: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn dim(&self) -> usize {
        self.ids.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Exact determinant (fraction-free elimination with row pivoting).
    pub fn determinant(&self) -> num_bigint::BigInt {
        crate::intmat::determinant(&self.entries)
    }

    /// Sylvester: the k-th leading principal minor has sign (−1)^k.
    pub fn is_negative_definite(&self) -> bool {
        if self.dim() == 0 {
            return false;
        }
        crate::intmat::leading_minors(&self.entries)
            .into_iter()
            .enumerate()
            .all(|(k, d)| {
                use num_traits::Signed;
                // k is zero-based, so the size of the minor is k+1.
                if k % 2 == 0 {
                    d.is_negative()
                } else {
                    d.is_positive()
                }
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weights_along(g: &WeightedDualGraph) -> Vec<i64> {
        let order = g.path_order(None).expect("linear");
        order.iter().map(|id| g.weight(id).unwrap()).collect()
    }

    #[test]
    fn inner_blowup_on_a_two_chain() {
        let g = WeightedDualGraph::chain_from_weights(&[-2, -3]);
        let (h, e) = g.inner_blowup("C1", "C2").unwrap();
        assert_eq!(weights_along(&h), vec![-3, -1, -4]);
        assert_eq!(h.weight(&e).unwrap(), -1);
        assert!(!h.has_edge("C1", "C2"));
    }

    #[test]
    fn inner_blowup_of_zero_zero() {
        let g = WeightedDualGraph::chain_from_weights(&[0, 0]);
        let (h, _) = g.inner_blowup("C1", "C2").unwrap();
        assert_eq!(weights_along(&h), vec![-1, -1, -1]);
    }

    #[test]
    fn inner_blowup_first_edge_of_three_chain() {
        let g = WeightedDualGraph::chain_from_weights(&[-1, -2, -2]);
        let (h, _) = g.inner_blowup("C1", "C2").unwrap();
        assert_eq!(weights_along(&h), vec![-2, -1, -3, -2]);
    }

    #[test]
    fn inner_blowup_missing_edge() {
        let g = WeightedDualGraph::chain_from_weights(&[-1, -2, -2]);
        assert_eq!(
            g.inner_blowup("C1", "C3").unwrap_err(),
            Error::UnknownEdge("C1".into(), "C3".into())
        );
    }

    #[test]
    fn outer_blowups() {
        let mut g = WeightedDualGraph::new();
        g.add_vertex("C1", 0).unwrap();
        let (h, _) = g.outer_blowup("C1").unwrap();
        assert_eq!(weights_along(&h), vec![-1, -1]);

        g.set_weight("C1", -1).unwrap();
        let (h, e) = g.outer_blowup("C1").unwrap();
        assert_eq!(h.weight("C1").unwrap(), -2);
        assert_eq!(h.weight(&e).unwrap(), -1);

        let g = WeightedDualGraph::chain_from_weights(&[-2, -2]);
        let (h, e) = g.outer_blowup("C1").unwrap();
        let order = h.path_order(Some(&e)).unwrap();
        let ws: Vec<i64> = order.iter().map(|id| h.weight(id).unwrap()).collect();
        assert_eq!(ws, vec![-1, -3, -2]);

        assert!(matches!(g.outer_blowup("nope"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn blow_down_cases() {
        let g = WeightedDualGraph::chain_from_weights(&[-3, -1, -4]);
        let h = g.blow_down("C2").unwrap();
        assert_eq!(weights_along(&h), vec![-2, -3]);

        let mut single = WeightedDualGraph::new();
        single.add_vertex("E", -1).unwrap();
        assert!(single.blow_down("E").unwrap().is_empty());

        let g = WeightedDualGraph::chain_from_weights(&[-1, -2, -2]);
        let h = g.blow_down("C1").unwrap();
        assert_eq!(weights_along(&h), vec![-1, -2]);
    }

    #[test]
    fn blow_down_errors() {
        let g = WeightedDualGraph::chain_from_weights(&[-2, -1, -2]);
        assert!(matches!(
            g.blow_down("C1"),
            Err(Error::NotContractibleVertex { weight: -2, .. })
        ));

        let mut star = WeightedDualGraph::new();
        star.add_vertex("E", -1).unwrap();
        for leaf in ["A", "B", "C"] {
            star.add_vertex(leaf, -2).unwrap();
            star.add_edge("E", leaf).unwrap();
        }
        assert!(matches!(star.blow_down("E"), Err(Error::BranchPoint { degree: 3, .. })));

        let mut double = WeightedDualGraph::new();
        double.add_vertex("E", -1).unwrap();
        double.add_vertex("A", -2).unwrap();
        double.add_edge("E", "A").unwrap();
        double.add_edge("E", "A").unwrap();
        assert_eq!(double.blow_down("E"), Err(Error::WouldCreateSelfLoop("E".into())));
    }

    #[test]
    fn self_loops_are_rejected() {
        let mut g = WeightedDualGraph::new();
        g.add_vertex("A", 0).unwrap();
        assert_eq!(g.add_edge("A", "A"), Err(Error::SelfLoop("A".into())));
        assert_eq!(g.add_vertex("A", 1), Err(Error::DuplicateVertex("A".into())));
        assert!(matches!(g.add_edge("A", "B"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn contract_chain() {
        let g = WeightedDualGraph::chain_from_weights(&[-1, -2, -2]);
        let seq = g.contract_fully().unwrap();
        assert_eq!(seq.len(), 3);
        assert!(seq.replay(&g).unwrap().is_empty());
        assert!(WeightedDualGraph::new().contract_fully().unwrap().is_empty());
    }

    #[test]
    fn contract_gets_stuck() {
        // (−1)-(−1): contracting either leaves an isolated (0).
        let g = WeightedDualGraph::chain_from_weights(&[-1, -1]);
        let stuck = g.contract_fully().unwrap_err();
        assert_eq!(stuck.steps.len(), 1);
        assert_eq!(stuck.residual.vertices()[0].weight, 0);
    }

    #[test]
    fn natural_order() {
        assert_eq!(natural_id_cmp("E2", "E10"), Ordering::Less);
        assert_eq!(natural_id_cmp("A", "E1"), Ordering::Less);
        assert_eq!(natural_id_cmp("E1", "E1"), Ordering::Equal);
    }

    #[test]
    fn criterion_small_cases() {
        let g = WeightedDualGraph::chain_from_weights(&[-1, -2, -2]);
        let c = g.necessary_criterion();
        assert!(c.unimodular && c.negative_definite);

        let mut zero = WeightedDualGraph::new();
        zero.add_vertex("A", 0).unwrap();
        let c = zero.necessary_criterion();
        assert!(!c.unimodular && !c.negative_definite);
    }

    #[test]
    fn intersection_matrix_shape() {
        let g = WeightedDualGraph::chain_from_weights(&[-1, -2, -2]);
        let m = g.intersection_matrix();
        assert!(m.is_symmetric());
        assert_eq!(m.entries, vec![vec![-1, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]);
        // Leading minors by hand: −1, 2−1 = 1, −1·(4−1) − 1·(−2) = −1.
        assert_eq!(m.determinant(), (-1).into());
    }

    #[test]
    fn structural_equality_ignores_order() {
        let a = WeightedDualGraph::chain(&["A", "B", "C"], &[-1, -2, -3]).unwrap();
        let b = WeightedDualGraph::from_parts(
            vec![Vertex::new("C", -3), Vertex::new("A", -1), Vertex::new("B", -2)],
            vec![("C".into(), "B".into()), ("B".into(), "A".into())],
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
