mod common;

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::SeedableRng;

use psg_core::gen::random_two_connected;
use psg_core::grids::{build_grid, build_triangulated_grid, DiagonalPolicy, EdgeLabel, GridSpec};
use psg_core::ham_search::enumerate_hamiltonian;
use psg_core::PlaneSignedGraph;

use common::{circle_edge_set, permutation_circles, EdgeSet};

fn search_circles(g: &PlaneSignedGraph) -> BTreeSet<EdgeSet> {
    let found = enumerate_hamiltonian(g, None).unwrap();
    assert!(!found.truncated);
    let set: BTreeSet<EdgeSet> = found.circles.iter().map(|c| circle_edge_set(g, c)).collect();
    assert_eq!(set.len(), found.circles.len(), "duplicate circles");
    set
}

#[test]
fn grid_counts_match_permutation_search() {
    for (m, n) in [(2, 2), (2, 5), (3, 4), (4, 4), (4, 5), (3, 6)] {
        let g = build_grid(&GridSpec::all_plus(m, n)).unwrap().graph;
        assert_eq!(search_circles(&g), permutation_circles(&g), "{m}x{n}");
    }
}

#[test]
fn four_by_four_grid_has_six_circles() {
    let g = build_grid(&GridSpec::all_plus(4, 4)).unwrap().graph;
    assert_eq!(permutation_circles(&g).len(), 6);
}

#[test]
fn triangulated_grids_match() {
    for policy in [DiagonalPolicy::Rising, DiagonalPolicy::Falling, DiagonalPolicy::FirstBoxFalling] {
        for (m, n) in [(2, 3), (3, 3), (3, 4)] {
            let g = build_triangulated_grid(&GridSpec::all_plus(m, n), &policy).unwrap().graph;
            assert_eq!(search_circles(&g), permutation_circles(&g), "{m}x{n} {policy:?}");
        }
    }
}

#[test]
fn random_graphs_match() {
    let mut rng = StdRng::seed_from_u64(2024);
    for k in 0..60 {
        let g = random_two_connected(&mut rng, 4 + k % 9, k % 6, 0.5);
        assert_eq!(search_circles(&g), permutation_circles(&g), "graph {k}");
    }
}

#[test]
fn falling_first_box_then_deletion_is_uniquely_hamiltonian() {
    let spec = GridSpec::all_plus(3, 3);
    let grid = build_triangulated_grid(&spec, &DiagonalPolicy::FirstBoxFalling).unwrap();
    let e = grid.edge(EdgeLabel::H(3, 2)).unwrap();
    let (g, _) = grid.graph.delete_edge(e).unwrap();
    assert_eq!(permutation_circles(&g).len(), 1);
    assert_eq!(search_circles(&g).len(), 1);
}

#[test]
fn limit_stops_early() {
    let g = build_grid(&GridSpec::all_plus(4, 5)).unwrap().graph;
    let all = enumerate_hamiltonian(&g, None).unwrap().circles.len();
    let capped = enumerate_hamiltonian(&g, Some(3)).unwrap();
    assert!(all > 3);
    assert!(capped.truncated);
    assert_eq!(capped.circles.len(), 3);
}
