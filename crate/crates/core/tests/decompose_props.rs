use dualcalc::decompose::{analyze, factorize, synthesize, Attach, FactorizationStage, StageBuilder};
use dualcalc::is_isomorphic;
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    (1u64..=7, 1u64..=7)
        .prop_filter("coprime", |(k, m)| num_integer::gcd(*k, *m) == 1)
        .prop_map(|(a, b)| (a.max(b), a.min(b)))
}

/// Stage lists; `pick` chooses a node neighbor of the current (−1)-curve
/// when it is `Some` and a neighbor exists.
fn stage_list() -> impl Strategy<Value = Vec<((u64, u64), Option<usize>)>> {
    prop::collection::vec((coprime_pair(), prop::option::of(0usize..3)), 1..=4)
}

fn build(plan: &[((u64, u64), Option<usize>)]) -> (Vec<FactorizationStage>, dualcalc::WeightedDualGraph) {
    let mut b = StageBuilder::new();
    let mut stages = Vec::new();
    for &((k, m), pick) in plan {
        let attach = match (b.current_minus_one(), pick) {
            (Some(h), Some(i)) => {
                let mut nb: Vec<String> =
                    b.graph().distinct_neighbors(h).into_iter().map(String::from).collect();
                nb.sort();
                if nb.is_empty() {
                    Attach::Generic
                } else {
                    Attach::Node(nb[i % nb.len()].clone())
                }
            }
            _ => Attach::Generic,
        };
        let s = FactorizationStage { k, m, attach, c: None };
        b.push(&s).unwrap();
        stages.push(s);
    }
    (stages, b.into_graph())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn synthesized_graphs_are_contractible(plan in stage_list()) {
        let (_, g) = build(&plan);
        prop_assert!(g.is_contractible());
        let minus = g.vertices().iter().filter(|v| v.weight == -1).count();
        prop_assert_eq!(minus, 1);
    }

    #[test]
    fn factorization_round_trips(plan in stage_list()) {
        let (_, g) = build(&plan);
        let f = factorize(&g).unwrap();
        prop_assert!(f.iter().all(|s| s.m <= s.k && s.attach == Attach::Generic));
        let back = synthesize(&f).unwrap();
        prop_assert!(is_isomorphic(&back, &g));
        prop_assert_eq!(factorize(&back).unwrap(), f);
    }

    #[test]
    fn analyze_invariants(plan in stage_list()) {
        let (_, g) = build(&plan);
        let e = g.vertices().iter().find(|v| v.weight == -1).unwrap().id.clone();
        let bs = analyze(&g, &e).unwrap();
        prop_assert_eq!(bs.branch_points.len() + 1, bs.subgraphs.len());
        for (i, b) in bs.branch_points.iter().enumerate() {
            prop_assert_eq!(g.degree(b), 3);
            prop_assert!(bs.subgraphs[i].contains(b));
            let next = &bs.subgraphs[i + 1];
            prop_assert!(g.has_edge(b, &next[0]));
        }
        prop_assert!(bs.subgraphs.last().unwrap().contains(&e));
    }

    #[test]
    fn generic_lists_with_interior_curves_are_fixed(
        head in prop::collection::vec((3u64..=7, 2u64..=6), 0..3),
        last in coprime_pair(),
    ) {
        let mut s: Vec<FactorizationStage> = head
            .into_iter()
            .filter(|&(k, m)| m < k && num_integer::gcd(k, m) == 1)
            .map(|(k, m)| FactorizationStage::generic(k, m))
            .collect();
        s.push(FactorizationStage::generic(last.0, last.1));
        let g = synthesize(&s).unwrap();
        prop_assert_eq!(factorize(&g).unwrap(), s);
    }
}
