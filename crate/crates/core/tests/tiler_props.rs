mod common;

use common::{brute_max_stars, brute_tileable, graphs};
use kss_core::bigraph::Part;
use kss_core::tiler::stars::star_lower_bounds;
use kss_core::tiler::{
    exact_tile, greedy_tile, hall_tile, refute_by_crossing, star_packing, BlockPartition4, RefuteOutcome, Search,
};
use kss_core::{verify_tiling, BalancedBigraph, BigraphBuilder};
use num::rational::Ratio;
use proptest::prelude::*;

const BUDGET: u64 = 1_000_000;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn s1_matches_hall(g in graphs(1, 12, 0.5)) {
        let exact = exact_tile(&g, 1, BUDGET).outcome;
        prop_assert!(!matches!(exact, Search::Unknown));
        prop_assert_eq!(matches!(exact, Search::Found(_)), hall_tile(&g).is_some());
    }

    #[test]
    fn exact_agrees_with_enumeration(g in graphs(1, 10, 0.7), s in 1usize..=3) {
        let r = exact_tile(&g, s, BUDGET);
        match &r.outcome {
            Search::Found(t) => {
                prop_assert_eq!(verify_tiling(&g, t), Ok(()));
                prop_assert!(brute_tileable(&g, s));
            }
            Search::Absent => prop_assert!(!brute_tileable(&g, s)),
            Search::Unknown => prop_assert!(false, "budget exhausted on n = {}", g.n()),
        }
    }

    #[test]
    fn greedy_copies_are_valid(g in graphs(2, 12, 0.8), s in 1usize..=3) {
        let r = greedy_tile(&g, s);
        for c in &r.copies {
            prop_assert!(c.is_complete_in(&g));
        }
        if r.is_complete() {
            prop_assert_eq!(verify_tiling(&g, &kss_core::Tiling { s, copies: r.copies.clone() }), Ok(()));
        }
    }

    #[test]
    fn adding_an_edge_keeps_a_tiling(g in graphs(2, 10, 0.7), s in 1usize..=2, u in 0usize..10, v in 0usize..10) {
        let (u, v) = (u % g.n(), v % g.n());
        let before = exact_tile(&g, s, BUDGET).outcome;
        let mut b = BigraphBuilder::new(g.n());
        g.edges().for_each(|(x, y)| b.add_edge(x, y));
        b.add_edge(u, v);
        let after = exact_tile(&b.build(), s, BUDGET).outcome;
        if matches!(before, Search::Found(_)) {
            prop_assert!(matches!(after, Search::Found(_)));
        }
    }

    #[test]
    fn refuter_never_contradicts_a_tiling(g in graphs(2, 10, 0.75), split in 0usize..10) {
        let s = 2;
        prop_assume!(g.n() % s == 0);
        let n = g.n();
        let a = split % (n + 1);
        let blocks = BlockPartition4 {
            u1: (0..a).collect(),
            u2: (a..n).collect(),
            v1: (0..a).collect(),
            v2: (a..n).collect(),
        };
        let outcome = refute_by_crossing(&g, &blocks, s, BUDGET).unwrap();
        let tileable = brute_tileable(&g, s);
        if let RefuteOutcome::Refuted(r) = outcome {
            prop_assert!(!tileable, "refuted a tileable graph");
            prop_assert!(r.system_infeasible());
            prop_assert_eq!(r.verify(&g, &blocks, BUDGET), Ok(()));
        }
    }

    #[test]
    fn star_bounds_and_exact_maximum(
        a in 1usize..=12,
        b in 1usize..=12,
        h in 2usize..=3,
        mask in prop::collection::vec(prop::bool::weighted(0.6), 144),
    ) {
        let n = a.max(b);
        let mut builder = BigraphBuilder::new(n);
        for x in 0..a {
            for y in 0..b {
                if mask[x * 12 + y] {
                    builder.add_edge(x, y);
                }
            }
        }
        let g = builder.build();
        let centers: Vec<usize> = (0..a).collect();
        let leaves: Vec<usize> = (0..b).collect();
        let exact = brute_max_stars(&g, &centers, &leaves, h);
        let leaf_set = g.vertex_set_of(&leaves);
        let center_set = g.vertex_set_of(&centers);
        let delta = centers.iter().map(|&x| g.degree_into(Part::U, x, &leaf_set)).min().unwrap();
        let big_delta = leaves.iter().map(|&y| g.degree_into(Part::V, y, &center_set)).max().unwrap();
        let (f, _) = star_lower_bounds(delta, big_delta, a, b, h);
        prop_assert!(Ratio::from_integer(exact as i64) >= f.ceil(), "{exact} < {f}");
        // the other direction: centres in B, leaves in A
        let exact_back = brute_max_stars(&transpose(&g), &leaves, &centers, h);
        let (_, g_bound) = star_lower_bounds(delta, big_delta, a, b, h);
        prop_assert!(Ratio::from_integer(exact_back as i64) >= g_bound.ceil(), "{exact_back} < {g_bound}");

        let packing = star_packing(&g, Part::U, &centers, &leaves, h, a);
        prop_assert!(packing.is_valid_in(&g));
        prop_assert_eq!(packing.len(), exact);
    }
}

fn transpose(g: &BalancedBigraph) -> BalancedBigraph {
    BalancedBigraph::from_edges(g.n(), g.edges().map(|(u, v)| (v, u))).unwrap()
}

#[test]
fn indivisible_sizes_are_absent_at_once() {
    for n in 1..12 {
        for s in 2..5 {
            if n % s != 0 {
                let r = exact_tile(&BalancedBigraph::complete(n), s, 10);
                assert!(r.outcome.is_absent());
                assert_eq!(r.nodes, 0);
            }
        }
    }
}
