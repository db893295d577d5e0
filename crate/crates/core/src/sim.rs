//! Brute-force resolution of `y^m / x^k` by tracking the order of the
//! function along every curve.
//!
//! Start with the two axes meeting once. While some intersection point
//! joins a curve where the function has a pole to one where it has a zero,
//! blow that point up; the new curve's order is the sum of the two.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;
use crate::hj::HJChain;

pub const X_BOUNDARY: &str = "X";
pub const Y_BOUNDARY: &str = "Y";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveKind {
    /// Proper transform of `{y = 0}`.
    BoundaryX,
    /// Proper transform of `{x = 0}`.
    BoundaryY,
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedGraph {
    pub graph: WeightedDualGraph,
    pub coefficient: BTreeMap<String, i64>,
    pub kind: BTreeMap<String, CurveKind>,
    /// Exceptional ids in creation order.
    pub created: Vec<String>,
}

impl DecoratedGraph {
    fn seed(k: u64, m: u64) -> Self {
        let mut graph = WeightedDualGraph::new();
        graph.add_vertex(X_BOUNDARY, 0).unwrap();
        graph.add_vertex(Y_BOUNDARY, 0).unwrap();
        graph.add_edge(X_BOUNDARY, Y_BOUNDARY).unwrap();
        let coefficient = BTreeMap::from([
            (X_BOUNDARY.to_string(), m as i64),
            (Y_BOUNDARY.to_string(), -(k as i64)),
        ]);
        let kind = BTreeMap::from([
            (X_BOUNDARY.to_string(), CurveKind::BoundaryX),
            (Y_BOUNDARY.to_string(), CurveKind::BoundaryY),
        ]);
        DecoratedGraph { graph, coefficient, kind, created: Vec::new() }
    }

    fn sign_changing_edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .graph
            .edges()
            .iter()
            .filter(|(a, b)| {
                let (ca, cb) = (self.coefficient[a], self.coefficient[b]);
                (ca < 0 && cb > 0) || (ca > 0 && cb < 0)
            })
            .map(|(a, b)| {
                if crate::graph::natural_id_cmp(a, b).is_le() {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .collect();
        out.sort_by(|p, q| {
            crate::graph::natural_id_cmp(&p.0, &q.0).then(crate::graph::natural_id_cmp(&p.1, &q.1))
        });
        out
    }

    pub fn blowup_count(&self) -> usize {
        self.created.len()
    }

    /// The exceptional curves alone.
    pub fn exceptional(&self) -> WeightedDualGraph {
        let ids: Vec<&str> = self.created.iter().map(String::as_str).collect();
        self.graph.induced(&ids).expect("created ids exist")
    }

    fn boundary_neighbor(&self, b: &str) -> &str {
        self.graph.neighbors(b)[0]
    }

    pub fn x_meets(&self) -> &str {
        self.boundary_neighbor(X_BOUNDARY)
    }

    pub fn y_meets(&self) -> &str {
        self.boundary_neighbor(Y_BOUNDARY)
    }

    /// The exceptional chain read from the end met by the x-axis.
    pub fn chain(&self) -> Result<HJChain> {
        HJChain::from_graph(&self.exceptional(), self.x_meets())
    }
}

/// Run the blow-up bookkeeping for `y^m / x^k`.
pub fn simulate(k: u64, m: u64) -> Result<DecoratedGraph> {
    if k == 0 || m == 0 || k.gcd(&m) != 1 {
        return Err(Error::Domain(format!(
            "k={k}, m={m}: exponents must be positive and coprime"
        )));
    }
    let mut d = DecoratedGraph::seed(k, m);
    loop {
        let edges = d.sign_changing_edges();
        if edges.len() > 1 {
            return Err(Error::Internal(format!(
                "{} sign-changing intersections at once",
                edges.len()
            )));
        }
        let Some((a, b)) = edges.into_iter().next() else {
            break;
        };
        let (mut g, e) = d.graph.inner_blowup(&a, &b)?;
        for boundary in [X_BOUNDARY, Y_BOUNDARY] {
            g.set_weight(boundary, 0)?;
        }
        let c = d.coefficient[&a] + d.coefficient[&b];
        d.graph = g;
        d.coefficient.insert(e.clone(), c);
        d.kind.insert(e.clone(), CurveKind::Exceptional);
        d.created.push(e);
    }
    let zeros = d.created.iter().filter(|id| d.coefficient[*id] == 0).count();
    if zeros != 1 {
        return Err(Error::Internal(format!("{zeros} curves with order zero")));
    }
    Ok(d)
}

/// Creation-order indices (0 is the first blow-up) of the exceptional
/// curves met by the x-axis and the y-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Attachment {
    pub x_meets: usize,
    pub y_meets: usize,
}

pub fn attachment_shape(k: u64, m: u64) -> Result<Attachment> {
    let d = simulate(k, m)?;
    let pos = |id: &str| d.created.iter().position(|c| c == id).expect("exceptional");
    Ok(Attachment { x_meets: pos(d.x_meets()), y_meets: pos(d.y_meets()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hj::resolution_chain;
    use crate::iso::is_isomorphic;

    fn coefs_from_x(d: &DecoratedGraph) -> Vec<i64> {
        d.chain().unwrap().ids().iter().map(|id| d.coefficient[id]).collect()
    }

    #[test]
    fn one_one() {
        let d = simulate(1, 1).unwrap();
        assert_eq!(d.blowup_count(), 1);
        assert_eq!(d.chain().unwrap().weights(), vec![-1]);
        assert_eq!(coefs_from_x(&d), vec![0]);
        assert_eq!(attachment_shape(1, 1).unwrap(), Attachment { x_meets: 0, y_meets: 0 });
    }

    #[test]
    fn three_two() {
        let d = simulate(3, 2).unwrap();
        assert_eq!(d.blowup_count(), 3);
        let c = d.chain().unwrap();
        assert_eq!(c.weights(), vec![-2, -1, -3]);
        assert_eq!(coefs_from_x(&d), vec![1, 0, -1]);
        let a = attachment_shape(3, 2).unwrap();
        let w = |i: usize| d.graph.weight(&d.created[i]).unwrap();
        assert_eq!((w(a.x_meets), w(a.y_meets)), (-2, -3));
    }

    #[test]
    fn k_one() {
        for k in 1..12u64 {
            let d = simulate(k, 1).unwrap();
            assert_eq!(d.blowup_count(), k as usize);
            let mut w = vec![-2; k as usize];
            w[0] = -1;
            assert_eq!(d.chain().unwrap().weights(), w);
            assert_eq!(d.graph.weight(d.x_meets()).unwrap(), -1);
            if k > 1 {
                assert_eq!(d.graph.weight(d.y_meets()).unwrap(), -2);
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(simulate(4, 2), Err(Error::Domain(_))));
        assert!(matches!(attachment_shape(0, 1), Err(Error::Domain(_))));
    }

    fn partial_quotient_sum(mut a: u64, mut b: u64) -> u64 {
        let mut s = 0;
        while b != 0 {
            s += a / b;
            (a, b) = (b, a % b);
        }
        s
    }

    #[test]
    fn agrees_with_the_chain_construction() {
        for k in 1..=30u64 {
            for m in 1..=30u64 {
                if k.gcd(&m) != 1 {
                    continue;
                }
                let d = simulate(k, m).unwrap();
                let sim = d.chain().unwrap();
                let direct = resolution_chain(k, m).unwrap();
                assert_eq!(sim.weights(), direct.weights(), "({k}, {m})");
                assert!(is_isomorphic(sim.graph(), direct.graph()));
                assert_eq!(
                    d.blowup_count() as u64,
                    partial_quotient_sum(k.max(m), k.min(m))
                );
                let zero: Vec<&String> =
                    d.created.iter().filter(|id| d.coefficient[*id] == 0).collect();
                assert_eq!(zero.len(), 1);
                assert_eq!(zero[0], sim.minus_one_id());
                let cs = coefs_from_x(&d);
                assert!(cs.windows(2).all(|w| w[0] > w[1]), "{cs:?}");
                assert!(cs[0] <= m as i64 && *cs.last().unwrap() >= -(k as i64));
            }
        }
    }
}
