use ntsp_core::dominators::{immediate_dominators, Digraph, Host, Side};
use ntsp_core::flow::{max_flow_at_least, FlowNetwork, FlowNode, INF};
use ntsp_core::oracle::{oracle_immediate_dominator, oracle_max_flow, OracleInstance};
use ntsp_core::{next_to_shortest, parse_graph, random_graph, Query};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = (ntsp_core::Graph, Query)> {
    (4usize..=8, any::<u64>(), 0u8..3).prop_flat_map(|(n, seed, zp)| {
        let max_m = (n * (n - 1) / 2).min(16);
        (n - 1..=max_m, 0..n, 1..n).prop_map(move |(m, s, off)| {
            let g = random_graph(n, m, 3, [0.0, 0.3, 0.6][zp as usize], seed).unwrap();
            (g, Query::new(s, (s + off) % n))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip((g, _q) in small_graph()) {
        let back = parse_graph(g.to_text().as_bytes()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn solver_matches_oracle_and_is_deterministic((g, q) in small_graph()) {
        let o = OracleInstance::new(&g, q).unwrap();
        let a = next_to_shortest(&g, q).unwrap();
        let b = next_to_shortest(&g, q).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.length, o.next_to_shortest());
        if let Some(p) = &a.path {
            prop_assert!(a.length.unwrap() > a.shortest);
            prop_assert_eq!(g.path_length(p), a.length);
        }
    }

    #[test]
    fn dominators_match_removal(n in 2usize..10, arcs in prop::collection::vec((0usize..10, 0usize..10), 0..30)) {
        let arcs: Vec<_> = arcs.into_iter().filter(|&(a, b)| a < n && b < n && a != b).collect();
        let dg = Digraph::from_arcs(n, arcs.iter().copied());
        let reach = dg.reachable_avoiding(0, None);
        let mut sub = Digraph::with_present(reach.clone());
        for &(a, b) in &arcs {
            if reach[a] && reach[b] {
                sub.add_arc(a, b);
            }
        }
        let tree = immediate_dominators(&sub, 0, Side::FromSource, Host::SpDag).unwrap();
        for v in (1..n).filter(|&v| reach[v]) {
            prop_assert_eq!(tree.idom(v), Some(oracle_immediate_dominator(&sub, 0, v)));
        }
    }

    #[test]
    fn flow_matches_generic_max_flow(
        caps in prop::collection::vec(1u32..3, 1..7),
        arcs in prop::collection::vec((0usize..9, 0usize..9), 0..20),
        k in 1u32..4,
    ) {
        let mut net = FlowNetwork::new();
        for (i, &c) in caps.iter().enumerate() {
            net.add_node(FlowNode::Vertex(i), c);
        }
        let len = net.len();
        for (a, b) in arcs {
            let (a, b) = (a % len, b % len);
            if a != b && a != net.sink && b != net.source {
                net.add_arc(a, b, INF);
            }
        }
        let out = max_flow_at_least(&net, k);
        prop_assert!(out.rounds <= k as usize);
        prop_assert_eq!(u64::from(out.value), oracle_max_flow(&net).min(u64::from(k)));
        prop_assert_eq!(out.paths.len(), out.value as usize);
    }
}
