//! Small hand-built graphs with known structure: a plane graph with three
//! interior vertices, two ladder configurations and two hexagon
//! configurations (one with a single inner vertex). Each certificate fixture
//! carries one negative edge, `v_1 v_2`, so its two small circles differ in sign.

use std::collections::BTreeSet;

use crate::embedding::{EmbeddingInput, PlaneSignedGraph, VertexId};
use crate::local_configs::{HexConfig, LadderConfig};
use crate::sign::Sign;

fn straight(points: &[(f64, f64)], pairs: &[(usize, usize)], negative: &[(usize, usize)]) -> PlaneSignedGraph {
    let edges: Vec<(usize, usize, Sign)> = pairs
        .iter()
        .map(|&(a, b)| {
            let neg = negative.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
            (a, b, if neg { Sign::Minus } else { Sign::Plus })
        })
        .collect();
    PlaneSignedGraph::build(&EmbeddingInput::straight_line(points, &edges)).expect("fixture is plane")
}

fn ids(xs: &[usize]) -> Vec<VertexId> {
    xs.iter().map(|&x| VertexId(x)).collect()
}

fn edge_set(g: &PlaneSignedGraph, pairs: &[(usize, usize)]) -> BTreeSet<crate::embedding::EdgeId> {
    pairs
        .iter()
        .map(|&(a, b)| g.edge_between(VertexId(a), VertexId(b)).expect("fixture edge"))
        .collect()
}

/// Hexagonal outer circle `0..5` around interior vertices 6, 7, 8; all edges positive.
pub fn three_interior() -> PlaneSignedGraph {
    let points = [
        (3.5, 3.9),
        (6.0, 2.0),
        (5.0, 0.0),
        (0.0, 0.0),
        (-1.0, 2.0),
        (1.0, 3.0),
        (3.0, 2.3),
        (4.0, 1.5),
        (1.5, 1.5),
    ];
    let pairs = [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
        (4, 8), (8, 3), (8, 6), (6, 5), (6, 7), (7, 1), (7, 2), (8, 7), (0, 6),
    ];
    straight(&points, &pairs, &[])
}

/// Ladder with `s = 6`, `i = 4`: circle `0..5`, left chain 6, 7, 8 and right
/// chain 9. Vertex 7 sits inside the left region until edge 6-8 is released.
pub fn ladder_small() -> (PlaneSignedGraph, LadderConfig) {
    let points = [
        (0.0, 2.0),
        (1.0, 2.0),
        (1.0, 1.0),
        (1.0, 0.0),
        (0.0, 0.0),
        (0.0, 1.0),
        (-1.0, 2.0),
        (-0.5, 1.0),
        (-1.0, 0.0),
        (2.0, 1.0),
    ];
    let pairs = [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (2, 5),
        (0, 6), (6, 7), (7, 8), (8, 4), (6, 8), (7, 5),
        (1, 9), (9, 3), (9, 2),
    ];
    let g = straight(&points, &pairs, &[(0, 1)]);
    let config = LadderConfig {
        c: ids(&[0, 1, 2, 3, 4, 5]),
        i: 4,
        p: ids(&[6, 7, 8]),
        q: ids(&[9]),
        el: edge_set(&g, &[(6, 8)]),
        er: BTreeSet::new(),
    };
    (g, config)
}

/// Ladder with `s = 8`, `i = 5` and release edges on both sides.
pub fn ladder_wide() -> (PlaneSignedGraph, LadderConfig) {
    let points = [
        (0.0, 3.0),
        (1.0, 3.0),
        (1.0, 2.0),
        (1.0, 1.0),
        (1.0, 0.0),
        (0.0, 0.0),
        (0.0, 1.0),
        (0.0, 2.0),
        (-1.0, 3.0),
        (-0.5, 1.5),
        (-1.0, 0.0),
        (2.0, 3.0),
        (1.5, 1.5),
        (2.0, 0.0),
    ];
    let pairs = [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (2, 7), (3, 6),
        (0, 8), (8, 9), (9, 10), (10, 5), (8, 10), (9, 7), (9, 6),
        (1, 11), (11, 12), (12, 13), (13, 4), (11, 13), (12, 2), (12, 3),
    ];
    let g = straight(&points, &pairs, &[(0, 1)]);
    let config = LadderConfig {
        c: ids(&[0, 1, 2, 3, 4, 5, 6, 7]),
        i: 5,
        p: ids(&[8, 9, 10]),
        q: ids(&[11, 12, 13]),
        el: edge_set(&g, &[(8, 10)]),
        er: edge_set(&g, &[(11, 13)]),
    };
    (g, config)
}

/// Hexagon `0 1 6 2 3 4` with inner path 4, 5, 6, left chain 7, 8 and right chain 9, 10.
pub fn hexagon() -> (PlaneSignedGraph, HexConfig) {
    let points = [
        (0.0, 2.0),
        (3.0, 2.0),
        (3.0, 0.0),
        (0.0, 0.0),
        (0.0, 1.0),
        (1.5, 1.0),
        (3.0, 1.0),
        (-1.0, 2.0),
        (-1.0, 0.0),
        (4.0, 2.0),
        (4.0, 0.0),
    ];
    let pairs = [
        (0, 1), (1, 6), (6, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6),
        (0, 7), (7, 8), (8, 3), (1, 9), (9, 10), (10, 2), (7, 4), (6, 10),
    ];
    let g = straight(&points, &pairs, &[(0, 1)]);
    let config = HexConfig {
        v: [VertexId(0), VertexId(1), VertexId(2), VertexId(3)],
        r: ids(&[4, 5, 6]),
        p: ids(&[7, 8]),
        q: ids(&[9, 10]),
        el: BTreeSet::new(),
        er: BTreeSet::new(),
    };
    (g, config)
}

/// Hexagon whose inner path is the single vertex 4, adjacent to all four corners.
pub fn hexagon_single_r() -> (PlaneSignedGraph, HexConfig) {
    let points = [
        (0.0, 2.0),
        (3.0, 2.0),
        (3.0, 0.0),
        (0.0, 0.0),
        (1.5, 1.0),
        (-1.0, 2.0),
        (-1.0, 0.0),
        (4.0, 2.0),
        (4.0, 0.0),
    ];
    let pairs = [
        (0, 1), (1, 4), (4, 2), (2, 3), (3, 4), (4, 0),
        (0, 5), (5, 6), (6, 3), (1, 7), (7, 8), (8, 2),
    ];
    let g = straight(&points, &pairs, &[(0, 1)]);
    let config = HexConfig {
        v: [VertexId(0), VertexId(1), VertexId(2), VertexId(3)],
        r: ids(&[4]),
        p: ids(&[5, 6]),
        q: ids(&[7, 8]),
        el: BTreeSet::new(),
        er: BTreeSet::new(),
    };
    (g, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_two_connected() {
        let graphs = [
            three_interior(),
            ladder_small().0,
            ladder_wide().0,
            hexagon().0,
            hexagon_single_r().0,
        ];
        for g in graphs {
            assert!(g.is_two_connected().unwrap());
            assert!(g.faces_match_retrace());
        }
    }
}
