//! Seeded random generators for plane signed graphs.
//!
//! 2-connected graphs grow from a polygon by repeatedly adding an ear (a path
//! of fresh vertices, or a single chord) across a random face, then one face
//! is picked uniformly as the outer face. Outerplane graphs are convex
//! polygons with non-crossing chords.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::embedding::{EmbeddingInput, OuterHint, PlaneSignedGraph, VertexId};
use crate::sign::Sign;

fn random_sign<R: Rng>(rng: &mut R, negative: f64) -> Sign {
    if rng.gen_bool(negative) {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

fn signed(rng: &mut impl Rng, rotations: Vec<Vec<usize>>, negative: f64, outer: OuterHint) -> EmbeddingInput {
    let mut signs = std::collections::BTreeMap::new();
    for (u, rot) in rotations.iter().enumerate() {
        for &v in rot {
            if u < v {
                signs.insert((u, v), random_sign(rng, negative));
            }
        }
    }
    EmbeddingInput {
        rotations,
        signs,
        outer,
    }
}

/// Insert `x` into the rotation at `a` inside the face corner that runs from
/// `next` to `prev`.
fn insert_at_corner(rot: &mut Vec<usize>, prev: usize, x: usize) {
    let at = rot.iter().position(|&w| w == prev).expect("corner neighbor");
    rot.insert(at, x);
}

/// A random 2-connected plane graph with exactly `n >= 3` vertices and
/// roughly `extra_chords` chords beyond the ears; each edge is negative with
/// probability `negative`.
pub fn random_two_connected<R: Rng>(rng: &mut R, n: usize, extra_chords: usize, negative: f64) -> PlaneSignedGraph {
    assert!(n >= 3, "need at least three vertices");
    let start = rng.gen_range(3..=n.min(6));
    let mut rotations: Vec<Vec<usize>> = (0..start).map(|v| vec![(v + 1) % start, (v + start - 1) % start]).collect();
    let mut chords_left = extra_chords;
    let mut stall = 0;
    while rotations.len() < n || (chords_left > 0 && stall < 50) {
        let g = PlaneSignedGraph::build(&EmbeddingInput {
            rotations: rotations.clone(),
            signs: Default::default(),
            outer: OuterHint::Longest,
        })
        .expect("ear insertion keeps the embedding plane");
        let faces: Vec<_> = g.faces().map(|f| f.vertices().to_vec()).collect();
        let walk = faces.choose(rng).expect("a face").clone();
        let k = walk.len();
        let i = rng.gen_range(0..k);
        let j = rng.gen_range(0..k);
        if i == j {
            stall += 1;
            continue;
        }
        let (a, b) = (walk[i], walk[j]);
        let corner = |t: usize| (walk[(t + k - 1) % k].0, walk[t].0);
        let fresh = if rotations.len() < n {
            rng.gen_range(1..=(n - rotations.len()).min(3))
        } else {
            0
        };
        if fresh == 0 && g.edge_between(a, b).is_some() {
            stall += 1;
            continue;
        }
        let mut path = vec![a.0];
        for _ in 0..fresh {
            path.push(rotations.len());
            rotations.push(Vec::new());
        }
        path.push(b.0);
        let (prev_a, _) = corner(i);
        let (prev_b, _) = corner(j);
        insert_at_corner(&mut rotations[a.0], prev_a, path[1]);
        insert_at_corner(&mut rotations[b.0], prev_b, path[path.len() - 2]);
        for w in 1..path.len() - 1 {
            rotations[path[w]] = vec![path[w - 1], path[w + 1]];
        }
        if fresh == 0 {
            chords_left -= 1;
        }
        stall = 0;
    }
    let g = PlaneSignedGraph::build(&EmbeddingInput {
        rotations: rotations.clone(),
        signs: Default::default(),
        outer: OuterHint::Longest,
    })
    .expect("plane");
    let faces: Vec<Vec<usize>> = g.faces().map(|f| f.vertices().iter().map(|v| v.0).collect()).collect();
    let mut outer = faces.choose(rng).expect("a face").clone();
    outer.push(outer[0]);
    PlaneSignedGraph::build(&signed(rng, rotations, negative, OuterHint::Walk(outer))).expect("plane")
}

/// A convex `n`-gon with up to `chords` random non-crossing chords.
pub fn random_outerplane<R: Rng>(rng: &mut R, n: usize, chords: usize, negative: f64) -> PlaneSignedGraph {
    assert!(n >= 3, "need at least three vertices");
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        let inside = |x: usize| a < x && x < b;
        let shared = a == c || a == d || b == c || b == d;
        !shared && inside(c) != inside(d)
    };
    let mut chord_set: Vec<(usize, usize)> = Vec::new();
    for _ in 0..chords * 4 {
        if chord_set.len() == chords {
            break;
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if b - a < 2 || (a == 0 && b == n - 1) || chord_set.contains(&(a, b)) {
            continue;
        }
        if chord_set.iter().all(|&c| !crosses((a, b), c)) {
            chord_set.push((a, b));
        }
    }
    pairs.extend(chord_set);
    let points: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let edges: Vec<(usize, usize, Sign)> = pairs.iter().map(|&(a, b)| (a, b, random_sign(rng, negative))).collect();
    let mut input = EmbeddingInput::straight_line(&points, &edges);
    let mut outer: Vec<usize> = (0..n).rev().collect();
    outer.push(n - 1);
    input.outer = OuterHint::Walk(outer);
    PlaneSignedGraph::build(&input).expect("convex drawing is plane")
}

/// Vertices on the outer face, in walk order.
pub fn outer_vertices(graph: &PlaneSignedGraph) -> Vec<VertexId> {
    graph.outer_walk().vertices().to_vec()
}
