use prodstruct::colouring::{
    check_nonrepetitive, check_p_centered, check_p_centered_subsets, check_queue_layout,
    chi_p_small, greedy_queue_layout, lift_p_centered, ChiMode, Colouring,
};
use prodstruct::generate::{random_gnp, random_plane_triangulation, rng};
use prodstruct::graph::{layered_width, Graph};
use prodstruct::lift::part_graph;
use prodstruct::planar::{planarize, tripod_partition, Drawing};
use proptest::prelude::*;

fn octahedron() -> Drawing {
    Drawing::from_int_points(
        &[(0, 0), (12, 0), (6, 12), (6, 2), (8, 6), (4, 6)],
        vec![
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (3, 0),
            (3, 1),
            (4, 1),
            (4, 2),
            (5, 2),
            (5, 0),
        ],
    )
}

/// Lifts an exact χ_p colouring of the tripod quotient and checks the result
/// exhaustively. Returns (colours used, cap).
fn lift_and_check(tri: &prodstruct::planar::PlaneGraph, p: usize) -> (usize, usize) {
    let g = tri.underlying_graph();
    let tp = tripod_partition(tri).unwrap();
    let h = part_graph(&g, &tp.partition);
    let ell = layered_width(&tp.partition, &tp.levels, None);
    assert!(ell <= 3);
    let gamma = chi_p_small(&h, p, ChiMode::Exact, 12).unwrap();
    assert!(check_p_centered(&h, p, &gamma, 18).unwrap().is_none());
    let c = lift_p_centered(&g, &tp.partition, &tp.levels, ell, p, &gamma).unwrap();
    assert!(check_p_centered(&g, p, &c.to_colouring(), 18)
        .unwrap()
        .is_none());
    (c.colour_count(), ell * (p + 1) * gamma.colour_count())
}

#[test]
fn octahedron_lift_is_two_centered() {
    let tri = planarize(&octahedron(), Some(0)).unwrap().plane;
    let (used, cap) = lift_and_check(&tri, 2);
    assert!(used <= cap, "{used} > {cap}");
}

#[test]
fn lifts_of_small_triangulations() {
    for seed in 0..12 {
        let tri = random_plane_triangulation(8 + seed as usize % 8, &mut rng(seed)).unwrap();
        for p in 1..=2 {
            let (used, cap) = lift_and_check(&tri, p);
            assert!(used <= cap, "seed {seed} p {p}: {used} > {cap}");
        }
    }
}

#[test]
fn rainbow_is_nonrepetitive_on_random_graphs() {
    for seed in 0..10 {
        let g = random_gnp(9, 0.4, &mut rng(seed));
        let c = Colouring::rainbow(9);
        assert!(check_nonrepetitive(&g, &c, 4).unwrap().is_none());
    }
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut i = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[i] {
                        g.add_edge(a, b);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn checkers_agree(g in graph_strategy(10), colours in proptest::collection::vec(0usize..4, 10), p in 0usize..4) {
        let c = Colouring::new(colours[..g.vertex_count()].to_vec());
        let a = check_p_centered(&g, p, &c, 18).unwrap();
        let b = check_p_centered_subsets(&g, p, &c, 18).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
        for w in [a, b].into_iter().flatten() {
            let sub = g.induced_subgraph(&w);
            prop_assert!(sub.is_connected());
            let mut cs: Vec<usize> = w.iter().map(|&v| c.colour(v)).collect();
            cs.sort_unstable();
            let distinct = { let mut d = cs.clone(); d.dedup(); d.len() };
            prop_assert!(distinct <= p);
            prop_assert!(cs.iter().all(|x| cs.iter().filter(|y| *y == x).count() >= 2));
        }
    }

    #[test]
    fn greedy_queue_layout_is_valid(g in graph_strategy(12)) {
        let q = greedy_queue_layout(&g, None).unwrap();
        prop_assert!(check_queue_layout(&g, &q).unwrap().is_none());
    }

    #[test]
    fn heuristic_colouring_is_valid(g in graph_strategy(12), p in 1usize..4) {
        let c = chi_p_small(&g, p, ChiMode::Heuristic, 12).unwrap();
        prop_assert!(check_p_centered(&g, p, &c, 18).unwrap().is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_chi_is_monotone(g in graph_strategy(7), p in 1usize..4) {
        let chi = chi_p_small(&g, p, ChiMode::Exact, 12).unwrap().colour_count();
        let lower = chi_p_small(&g, p - 1, ChiMode::Exact, 12).unwrap().colour_count();
        prop_assert!(chi >= lower);
        let n = g.vertex_count();
        for v in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            let sub = g.induced_subgraph(&rest);
            let c = chi_p_small(&sub, p, ChiMode::Exact, 12).unwrap().colour_count();
            prop_assert!(chi >= c);
        }
    }
}
