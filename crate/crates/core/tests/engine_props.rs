mod common;

use common::{arb_dag, arb_graph, dag_mex, naive_values, retrograde_outcomes};
use grundy_forge::{product_graph, solve, sum_value, GameGraph, Outcome, Rank, SGValue};
use proptest::prelude::*;

fn ranks(g: &GameGraph) -> Vec<Option<u32>> {
    solve(g).ranks.iter().map(|r| r.finite()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_literal_recursion(g in arb_graph(14, 4)) {
        let s = solve(&g);
        let (values, rank) = naive_values(&g);
        prop_assert_eq!(&s.values, &values);
        prop_assert_eq!(ranks(&g), rank);
    }

    #[test]
    fn sum_of_values_is_value_of_sum(v in arb_graph(7, 3), w in arb_graph(7, 3)) {
        let (sv, sw) = (solve(&v), solve(&w));
        let p = product_graph(&v, &w).unwrap();
        let sp = solve(&p);
        prop_assert_eq!(
            sp.root_value().unwrap(),
            &sum_value(sv.root_value().unwrap(), sw.root_value().unwrap())
        );
    }

    #[test]
    fn outcome_law(g in arb_graph(14, 4)) {
        let s = solve(&g);
        let retro = retrograde_outcomes(&g);
        for x in 0..g.len() {
            let o = s.outcomes[x];
            let expected = match &s.values[x] {
                SGValue::Finite(0) => Outcome::P,
                SGValue::Finite(_) => Outcome::N,
                SGValue::InfiniteRank(a) if a.contains(&0) => Outcome::N,
                SGValue::InfiniteRank(_) => Outcome::D,
            };
            prop_assert_eq!(o, expected);
            prop_assert_eq!(o, retro[x]);
            let opts: Vec<Outcome> = g.options(x).iter().map(|&y| s.outcomes[y]).collect();
            let local = if opts.contains(&Outcome::P) {
                Outcome::N
            } else if opts.iter().all(|&c| c == Outcome::N) {
                Outcome::P
            } else {
                Outcome::D
            };
            prop_assert_eq!(o, local);
        }
    }

    #[test]
    fn certification_law(g in arb_graph(14, 4)) {
        let s = solve(&g);
        for x in 0..g.len() {
            let (SGValue::Finite(m), Rank::Finite(n)) = (&s.values[x], s.ranks[x]) else { continue };
            let fin = |y: usize| match (&s.values[y], s.ranks[y]) {
                (SGValue::Finite(v), Rank::Finite(r)) => Some((*v, r)),
                _ => None,
            };
            for i in 0..*m {
                prop_assert!(g.options(x).iter().any(|&y| fin(y).is_some_and(|(v, r)| v == i && r < n)));
            }
            for &y in g.options(x) {
                let low = fin(y).is_some_and(|(v, r)| v < *m && r < n);
                let reverts = g.options(y).iter().any(|&z| fin(z).is_some_and(|(v, r)| v == *m && r < n));
                prop_assert!(low || reverts, "x={} y={}", x, y);
            }
        }
    }

    #[test]
    fn loop_free_graphs_get_classical_values(g in arb_dag(25, 5)) {
        let s = solve(&g);
        let want: Vec<SGValue> = dag_mex(&g).into_iter().map(SGValue::Finite).collect();
        prop_assert_eq!(s.values, want);
    }

    #[test]
    fn declaration_order_does_not_matter(g in arb_graph(12, 4), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut order: Vec<usize> = (0..g.len()).collect();
        order.shuffle(&mut rand_pcg::Pcg64Mcg::seed_from_u64(perm_seed));
        let mut h = GameGraph::new();
        for &x in &order {
            h.add_position(g.id(x).as_str()).unwrap();
        }
        for &x in &order {
            let hx = h.index_of(g.id(x).as_str()).unwrap();
            let mut opts: Vec<usize> = g.options(x).to_vec();
            opts.reverse();
            for y in opts {
                h.add_arc(hx, h.index_of(g.id(y).as_str()).unwrap()).unwrap();
            }
        }
        let (a, b) = (solve(&g), solve(&h));
        for x in 0..g.len() {
            let id = g.id(x).as_str();
            prop_assert_eq!(a.value_of(id), b.value_of(id));
            prop_assert_eq!(a.ranks[x], b.ranks[b.index_of(id).unwrap()]);
        }
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&solve(&g)).unwrap());
    }
}
