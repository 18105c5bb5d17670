mod common;

use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use psg_core::face_dual::{dual_is_tree, is_outerplane, outerplane_unique_hamiltonian};
use psg_core::format::{read_graph, serialize_graph};
use psg_core::gen::{random_outerplane, random_two_connected};
use psg_core::ham_search::enumerate_hamiltonian;
use psg_core::peeling::{apply_coham, coham_from_circle, UniquenessCheck};
use psg_core::{PlaneSignedGraph, Sign, VertexId};

fn two_connected_graph() -> impl Strategy<Value = PlaneSignedGraph> {
    (any::<u64>(), 3usize..14, 0usize..5).prop_map(|(seed, n, chords)| {
        random_two_connected(&mut StdRng::seed_from_u64(seed), n, chords, 0.4)
    })
}

fn outerplane_graph() -> impl Strategy<Value = PlaneSignedGraph> {
    (any::<u64>(), 3usize..14).prop_map(|(seed, n)| random_outerplane(&mut StdRng::seed_from_u64(seed), n, n, 0.4))
}

/// Connected after deleting `skip`, by breadth-first search.
fn connected_without(g: &PlaneSignedGraph, skip: Option<usize>) -> bool {
    let n = g.vertex_count();
    let Some(start) = (0..n).find(|&v| Some(v) != skip) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(VertexId(v)) {
            if Some(w.0) != skip && !seen[w.0] {
                seen[w.0] = true;
                queue.push_back(w.0);
            }
        }
    }
    (0..n).all(|v| seen[v] || Some(v) == skip)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_parse_round_trip(g in two_connected_graph()) {
        let text = serialize_graph(&g);
        let back = read_graph(&text).unwrap();
        prop_assert_eq!(serialize_graph(&back), text);
        prop_assert_eq!(back.face_count(), g.face_count());
    }

    #[test]
    fn outer_sign_is_product_of_face_signs(g in two_connected_graph()) {
        let outer: Sign = g.outer_walk().edges().iter().map(|&e| g.sign(e)).product();
        let inner: Sign = g
            .bounded_faces()
            .map(|f| g.face(f).unwrap().edges().iter().map(|&e| g.sign(e)).product::<Sign>())
            .product();
        prop_assert_eq!(outer, inner);
    }

    #[test]
    fn outerplane_dual_is_tree_with_one_circle(g in outerplane_graph()) {
        prop_assert!(is_outerplane(&g));
        prop_assert!(dual_is_tree(&g).unwrap());
        let found = enumerate_hamiltonian(&g, None).unwrap();
        prop_assert_eq!(found.circles.len(), 1);
        prop_assert_eq!(found.circles[0].edges().iter().copied().collect::<BTreeSet<_>>(), g.outer_edges());
        prop_assert_eq!(&outerplane_unique_hamiltonian(&g).unwrap(), &found.circles[0]);
    }

    #[test]
    fn incremental_deletion_matches_retrace(g in two_connected_graph(), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        let e = edges[pick.index(edges.len())];
        if let Ok((h, _)) = g.delete_edge(e) {
            prop_assert!(h.faces_match_retrace());
            prop_assert_eq!(h.face_count() + 1, g.face_count());
        }
    }

    #[test]
    fn two_connectivity_agrees_with_vertex_removal(
        seed in any::<u64>(),
        n in 4usize..12,
        drop in any::<prop::sample::Index>(),
    ) {
        let g = random_two_connected(&mut StdRng::seed_from_u64(seed), n, 2, 0.0);
        let edges: Vec<_> = g.edges().collect();
        let g = match g.delete_edge(edges[drop.index(edges.len())]) {
            Ok((h, _)) => h,
            Err(_) => g,
        };
        let brute = connected_without(&g, None) && (0..g.vertex_count()).all(|v| connected_without(&g, Some(v)));
        prop_assert_eq!(g.is_two_connected().unwrap(), brute);
        // A connected plane graph on at least three vertices is 2-connected
        // exactly when every face boundary is a simple cycle.
        prop_assert_eq!(g.faces().all(|w| w.is_simple()), brute);
    }

    #[test]
    fn peeling_round_trip(g in two_connected_graph()) {
        let found = enumerate_hamiltonian(&g, Some(200)).unwrap();
        for c in found.circles.iter().take(5) {
            let seq = coham_from_circle(&g, c).unwrap();
            let outcome = apply_coham(&g, &seq.edges, UniquenessCheck::Oracle).unwrap();
            prop_assert_eq!(&outcome.set.circle, c);
            prop_assert_eq!(outcome.sequence.faces, seq.faces);
        }
    }
}
