//! Property tests for the structural invariants: orientation storage,
//! statistics algebra, vertex-removal round trips, and format round trips.

use hamdisc::format;
use hamdisc::graph::{OrientedGraph, VertexId};
use hamdisc::{verify_hamilton_cycle, CycleCert};
use proptest::prelude::*;

fn v(i: usize) -> VertexId {
    VertexId::new(i)
}

/// Arbitrary oriented graph: a size and one three-way state per pair.
fn oriented_graph() -> impl Strategy<Value = OrientedGraph> {
    (1usize..12)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(0u8..3, pairs))
        })
        .prop_map(|(n, states)| {
            let mut g = OrientedGraph::new(n).unwrap();
            let mut it = states.into_iter();
            for a in 0..n {
                for b in a + 1..n {
                    match it.next().unwrap() {
                        1 => g.add_arc(v(a), v(b)).unwrap(),
                        2 => g.add_arc(v(b), v(a)).unwrap(),
                        _ => {}
                    }
                }
            }
            g
        })
}

/// Graph with a planted Hamilton cycle plus clutter, and the planted order.
fn graph_with_cycle() -> impl Strategy<Value = (OrientedGraph, Vec<usize>)> {
    (3usize..10)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(0u8..3, n * (n - 1) / 2),
                proptest::collection::vec(0usize..1000, n),
            )
        })
        .prop_map(|(n, dirs, states, keys)| {
            // permutation from sort keys
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| (keys[i], i));
            let mut g = OrientedGraph::new(n).unwrap();
            for t in 0..n {
                let a = order[t];
                let b = order[(t + 1) % n];
                if dirs[t] {
                    g.add_arc(v(a), v(b)).unwrap();
                } else {
                    g.add_arc(v(b), v(a)).unwrap();
                }
            }
            let mut it = states.into_iter();
            for a in 0..n {
                for b in a + 1..n {
                    let state = it.next().unwrap();
                    if g.has_edge(v(a), v(b)) {
                        continue;
                    }
                    match state {
                        1 => g.add_arc(v(a), v(b)).unwrap(),
                        2 => g.add_arc(v(b), v(a)).unwrap(),
                        _ => {}
                    }
                }
            }
            (g, order)
        })
}

proptest! {
    #[test]
    fn storage_never_holds_loops_or_antiparallel_pairs(g in oriented_graph()) {
        let n = g.vertex_count();
        for a in 0..n {
            prop_assert!(!g.has_arc(v(a), v(a)));
            for b in 0..n {
                if a != b {
                    prop_assert!(!(g.has_arc(v(a), v(b)) && g.has_arc(v(b), v(a))));
                }
            }
        }
    }

    #[test]
    fn degree_is_in_plus_out(g in oriented_graph()) {
        for u in g.vertices() {
            prop_assert_eq!(g.degree(u), g.in_degree(u) + g.out_degree(u));
            prop_assert_eq!(g.degree(u), g.neighbors(u).len());
        }
    }

    #[test]
    fn remove_then_restore_reproduces_graph(g in oriented_graph(), wsel in any::<prop::sample::Index>()) {
        prop_assume!(g.vertex_count() >= 2);
        let w = v(wsel.index(g.vertex_count()));
        let (h, map) = g.remove_vertex(w).unwrap();
        // rebuild: survivors' arcs from h via the map, plus w's incident arcs
        let mut r = OrientedGraph::new(g.vertex_count()).unwrap();
        for (a, b) in h.arcs() {
            r.add_arc(map[a.idx()], map[b.idx()]).unwrap();
        }
        for u in g.vertices() {
            if g.has_arc(u, w) {
                r.add_arc(u, w).unwrap();
            }
            if g.has_arc(w, u) {
                r.add_arc(w, u).unwrap();
            }
        }
        prop_assert_eq!(r.arcs(), g.arcs());
        prop_assert_eq!(r.fingerprint(), g.fingerprint());
    }

    #[test]
    fn cycle_sigma_algebra((g, order) in graph_with_cycle()) {
        let n = order.len();
        let c = CycleCert::new(&g, order.iter().map(|&i| v(i)).collect());
        let s = c.sigma(&g).unwrap();
        prop_assert_eq!(s.sigma_plus + s.sigma_minus, n);
        prop_assert_eq!(s.sigma_max, s.sigma_plus.max(s.sigma_minus));
        prop_assert_eq!(s.sigma_min, s.sigma_plus.min(s.sigma_minus));

        // reversal swaps the directed counts and fixes the extremes
        let rev = CycleCert::new(&g, order.iter().rev().map(|&i| v(i)).collect());
        let sr = rev.sigma(&g).unwrap();
        prop_assert_eq!(sr.sigma_plus, s.sigma_minus);
        prop_assert_eq!(sr.sigma_minus, s.sigma_plus);
        prop_assert_eq!(sr.sigma_max, s.sigma_max);
        prop_assert_eq!(sr.sigma_min, s.sigma_min);

        // rotation changes nothing
        let rot: Vec<VertexId> = order.iter().cycle().skip(n / 2).take(n).map(|&i| v(i)).collect();
        let c2 = CycleCert::new(&g, rot);
        prop_assert_eq!(c2.sigma(&g).unwrap(), s);

        // a passing verdict is consistent with the recomputed stats
        let verdict = verify_hamilton_cycle(&g, &c, s.sigma_max);
        prop_assert!(verdict.ok);
        prop_assert_eq!(verdict.stats.unwrap(), s);
        prop_assert!(!verify_hamilton_cycle(&g, &c, s.sigma_max + 1).ok);
    }

    #[test]
    fn formats_round_trip(g in oriented_graph()) {
        let el = format::write_edge_list(&g);
        let g2 = format::read_edge_list(&el).unwrap();
        prop_assert_eq!(g2.arcs(), g.arcs());
        prop_assert_eq!(format::write_edge_list(&g2), el);

        let d6 = format::encode_digraph6(&g);
        let g3 = format::decode_digraph6(&d6).unwrap();
        prop_assert_eq!(g3.arcs(), g.arcs());
        prop_assert_eq!(format::encode_digraph6(&g3), d6);
        prop_assert_eq!(g3.fingerprint(), g.fingerprint());
    }
}
