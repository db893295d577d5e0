//! Canonical labeling of small weighted multigraphs.
//!
//! Color refinement followed by individualization; leaves of the search tree
//! are compared by their adjacency certificate and the smallest one wins.
//! Interchangeable twins in a cell are explored only once.

use std::collections::BTreeMap;

use crate::graph::WeightedDualGraph;

/// Isomorphism-invariant encoding: two graphs are isomorphic (respecting
/// weights and labels) iff their certificates are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate {
    colors: Vec<(i64, Option<String>)>,
    adjacency: Vec<u32>,
}

struct Prepared {
    n: usize,
    adj: Vec<Vec<u32>>,
    base: Vec<(i64, Option<String>)>,
}

fn prepare(g: &WeightedDualGraph) -> Prepared {
    let ids: Vec<&str> = g.vertices().iter().map(|v| v.id.as_str()).collect();
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let n = ids.len();
    let mut adj = vec![vec![0u32; n]; n];
    for (a, b) in g.edges() {
        let (i, j) = (index[a.as_str()], index[b.as_str()]);
        adj[i][j] += 1;
        adj[j][i] += 1;
    }
    let base = g
        .vertices()
        .iter()
        .map(|v| (v.weight, v.label.clone()))
        .collect();
    Prepared { n, adj, base }
}

/// Rank keys into dense colors 0..c, ordered by key.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

fn refine(p: &Prepared, mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let count = colors.iter().max().map_or(0, |m| m + 1);
        let keys: Vec<(usize, Vec<(usize, u32)>)> = (0..p.n)
            .map(|v| {
                let mut sig: Vec<(usize, u32)> = (0..p.n)
                    .filter(|&u| p.adj[v][u] > 0)
                    .map(|u| (colors[u], p.adj[v][u]))
                    .collect();
                sig.sort();
                (colors[v], sig)
            })
            .collect();
        let next = rank(&keys);
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        if next_count == count {
            return next;
        }
        colors = next;
    }
}

fn certificate_of(p: &Prepared, colors: &[usize]) -> Certificate {
    // Discrete coloring: color c is held by exactly one vertex.
    let mut order = vec![0usize; p.n];
    for (v, &c) in colors.iter().enumerate() {
        order[c] = v;
    }
    let colors_out = order.iter().map(|&v| p.base[v].clone()).collect();
    let mut adjacency = Vec::with_capacity(p.n * p.n);
    for &a in &order {
        for &b in &order {
            adjacency.push(p.adj[a][b]);
        }
    }
    Certificate { colors: colors_out, adjacency }
}

fn twins(p: &Prepared, u: usize, v: usize) -> bool {
    (0..p.n).all(|w| w == u || w == v || p.adj[u][w] == p.adj[v][w])
}

fn search(p: &Prepared, colors: Vec<usize>, best: &mut Option<Certificate>) {
    let count = colors.iter().max().map_or(0, |m| m + 1);
    if count == p.n {
        let cert = certificate_of(p, &colors);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    }
    // First smallest non-singleton cell.
    let mut sizes = vec![0usize; count];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..count)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .expect("non-discrete coloring has a big cell");
    let cell: Vec<usize> = (0..p.n).filter(|&v| colors[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&t| twins(p, t, v)) {
            continue;
        }
        tried.push(v);
        // Individualize v: it keeps its color, everything else in the cell
        // is pushed after it.
        let keys: Vec<(usize, bool)> = (0..p.n).map(|u| (colors[u], u != v && colors[u] == target)).collect();
        let split = rank(&keys);
        search(p, refine(p, split), best);
    }
}

pub fn certificate(g: &WeightedDualGraph) -> Certificate {
    let p = prepare(g);
    if p.n == 0 {
        return Certificate { colors: vec![], adjacency: vec![] };
    }
    let initial = rank(&p.base);
    let mut best = None;
    search(&p, refine(&p, initial), &mut best);
    best.expect("search visits at least one leaf")
}

/// Isomorphism of weighted multigraphs, respecting vertex labels.
pub fn is_isomorphic(a: &WeightedDualGraph, b: &WeightedDualGraph) -> bool {
    a.len() == b.len()
        && a.edges().len() == b.edges().len()
        && certificate(a) == certificate(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn relabel(g: &WeightedDualGraph, perm: &[usize]) -> WeightedDualGraph {
        let ids: Vec<String> = g.vertices().iter().map(|v| v.id.clone()).collect();
        let rename = |id: &str| {
            let i = ids.iter().position(|x| x == id).unwrap();
            format!("V{}", perm[i])
        };
        let mut vs: Vec<Vertex> = g
            .vertices()
            .iter()
            .map(|v| Vertex { id: rename(&v.id), weight: v.weight, label: v.label.clone() })
            .collect();
        vs.reverse();
        let es = g.edges().iter().map(|(a, b)| (rename(b), rename(a))).collect();
        WeightedDualGraph::from_parts(vs, es).unwrap()
    }

    #[test]
    fn relabeled_chain_is_isomorphic() {
        let g = WeightedDualGraph::chain_from_weights(&[-2, -1, -3, -2]);
        let h = relabel(&g, &[3, 0, 2, 1]);
        assert!(is_isomorphic(&g, &h));
        let r = WeightedDualGraph::chain_from_weights(&[-2, -3, -1, -2]);
        assert!(is_isomorphic(&g, &r));
    }

    #[test]
    fn weights_matter() {
        let g = WeightedDualGraph::chain_from_weights(&[-2, -1, -3]);
        let h = WeightedDualGraph::chain_from_weights(&[-1, -2, -3]);
        assert!(!is_isomorphic(&g, &h));
    }

    #[test]
    fn labels_matter() {
        let g = WeightedDualGraph::chain_from_weights(&[-2, -2]);
        let mut h = g.clone();
        h.set_label("C1", Some("x".into())).unwrap();
        assert!(!is_isomorphic(&g, &h));
        let mut k = g.clone();
        k.set_label("C2", Some("x".into())).unwrap();
        assert!(is_isomorphic(&h, &k));
    }

    #[test]
    fn regular_graphs_need_individualization() {
        // A 6-cycle and two triangles: same degrees and weights everywhere.
        let mut c6 = WeightedDualGraph::new();
        let mut tt = WeightedDualGraph::new();
        for i in 0..6 {
            c6.add_vertex(&format!("v{i}"), -2).unwrap();
            tt.add_vertex(&format!("v{i}"), -2).unwrap();
        }
        for i in 0..6 {
            c6.add_edge(&format!("v{i}"), &format!("v{}", (i + 1) % 6)).unwrap();
        }
        for (a, b) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            tt.add_edge(&format!("v{a}"), &format!("v{b}")).unwrap();
        }
        assert!(!is_isomorphic(&c6, &tt));
        assert!(is_isomorphic(&c6, &relabel(&c6, &[2, 4, 0, 5, 1, 3])));
    }

    #[test]
    fn star_with_many_identical_leaves_is_fast() {
        let mut g = WeightedDualGraph::new();
        g.add_vertex("hub", -12).unwrap();
        for i in 0..12 {
            let id = format!("leaf{i}");
            g.add_vertex(&id, -1).unwrap();
            g.add_edge("hub", &id).unwrap();
        }
        let perm: Vec<usize> = (0..13).rev().collect();
        assert!(is_isomorphic(&g, &relabel(&g, &perm)));
    }

    #[test]
    fn multi_edges_count() {
        let mut a = WeightedDualGraph::new();
        a.add_vertex("A", -1).unwrap();
        a.add_vertex("B", -1).unwrap();
        a.add_edge("A", "B").unwrap();
        let mut b = a.clone();
        b.add_edge("A", "B").unwrap();
        assert!(!is_isomorphic(&a, &b));
    }
}
