//! Weak duals, face signs, the face map and the removable-vertex elimination.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::embedding::{Circle, EmbeddingError, FaceId, PlaneSignedGraph};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FaceDualError {
    #[error("NotOuterplane: vertex {0} is not on the outer face")]
    NotOuterplane(usize),
    #[error("NotTwoConnected: the graph has a cut vertex or too few vertices")]
    NotTwoConnected,
    #[error("NonPolygonalFace: the boundary of {0} repeats a vertex")]
    NonPolygonalFace(FaceId),
    #[error("NoBoundedFace: the graph has no bounded face")]
    NoBoundedFace,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeLabel {
    pub phi: i64,
    pub degree: usize,
}

/// The weak dual: one node per bounded face, adjacent when the faces share an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceGraph {
    labels: BTreeMap<FaceId, NodeLabel>,
    adjacency: BTreeMap<FaceId, BTreeSet<FaceId>>,
}

impl FaceGraph {
    pub fn nodes(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.labels.keys().copied()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn contains(&self, f: FaceId) -> bool {
        self.labels.contains_key(&f)
    }

    pub fn label(&self, f: FaceId) -> Option<NodeLabel> {
        self.labels.get(&f).copied()
    }

    pub fn neighbors(&self, f: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        self.adjacency.get(&f).into_iter().flatten().copied()
    }

    /// Dual edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(FaceId, FaceId)> {
        self.adjacency
            .iter()
            .flat_map(|(&a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.nodes().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for g in self.neighbors(f) {
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        seen.len() == self.node_count()
    }

    /// Connected, acyclic and non-empty.
    pub fn is_tree(&self) -> bool {
        self.node_count() > 0 && self.edge_count() + 1 == self.node_count() && self.is_connected()
    }

    /// True when every stored degree equals the adjacency degree.
    pub fn labels_consistent(&self) -> bool {
        self.labels
            .iter()
            .all(|(f, l)| l.degree == self.adjacency.get(f).map_or(0, BTreeSet::len))
    }

    fn remove(&mut self, f: FaceId) {
        if let Some(ns) = self.adjacency.remove(&f) {
            for g in ns {
                if let Some(set) = self.adjacency.get_mut(&g) {
                    set.remove(&f);
                }
                if let Some(l) = self.labels.get_mut(&g) {
                    l.degree -= 1;
                }
            }
        }
        self.labels.remove(&f);
    }
}

pub fn weak_dual(graph: &PlaneSignedGraph) -> FaceGraph {
    let signs = face_signs(graph);
    let mut adjacency: BTreeMap<FaceId, BTreeSet<FaceId>> =
        graph.bounded_faces().map(|f| (f, BTreeSet::new())).collect();
    for e in graph.edges() {
        let (a, b) = graph.faces_of_edge(e).expect("live edge");
        if a != b && graph.is_bounded_face(a) && graph.is_bounded_face(b) {
            adjacency.get_mut(&a).expect("bounded").insert(b);
            adjacency.get_mut(&b).expect("bounded").insert(a);
        }
    }
    let labels = adjacency
        .iter()
        .map(|(&f, ns)| {
            let len = graph.face(f).expect("live").len() as i64;
            let phi = signs[&f].to_i8() as i64 * (len - 2);
            (f, NodeLabel { phi, degree: ns.len() })
        })
        .collect();
    FaceGraph { labels, adjacency }
}

/// Sign of every bounded face: the product of its boundary edge signs.
pub fn face_signs(graph: &PlaneSignedGraph) -> BTreeMap<FaceId, Sign> {
    graph
        .bounded_faces()
        .map(|f| (f, graph.face_sign(f).expect("live face")))
        .collect()
}

/// Compares the sign of the outer boundary circle with the product of all
/// bounded face signs. A `false` answer means the face bookkeeping is broken.
pub fn verify_outer_product(graph: &PlaneSignedGraph) -> bool {
    let Ok(outer) = graph.outer_circle() else {
        return false;
    };
    let Ok(lhs) = graph.circle_sign(&outer) else {
        return false;
    };
    lhs == face_signs(graph).values().product::<Sign>()
}

pub fn is_outerplane(graph: &PlaneSignedGraph) -> bool {
    graph.classify_vertices().interior.is_empty()
}

fn require_two_connected(graph: &PlaneSignedGraph) -> Result<(), FaceDualError> {
    match graph.is_two_connected() {
        Ok(true) => Ok(()),
        _ => Err(FaceDualError::NotTwoConnected),
    }
}

/// The outer boundary, which is the only Hamiltonian circle of a 2-connected
/// outerplane graph.
pub fn outerplane_unique_hamiltonian(graph: &PlaneSignedGraph) -> Result<Circle, FaceDualError> {
    require_two_connected(graph)?;
    if let Some(v) = graph.classify_vertices().interior.first() {
        return Err(FaceDualError::NotOuterplane(v.0));
    }
    Ok(graph.outer_circle()?)
}

pub fn dual_is_tree(graph: &PlaneSignedGraph) -> Result<bool, FaceDualError> {
    require_two_connected(graph)?;
    if graph.bounded_faces().next().is_none() {
        return Err(FaceDualError::NoBoundedFace);
    }
    Ok(weak_dual(graph).is_tree())
}

/// `phi(f) = sign(f) * (|boundary| - 2)` for every bounded face.
pub fn face_map(graph: &PlaneSignedGraph) -> Result<BTreeMap<FaceId, i64>, FaceDualError> {
    let mut map = BTreeMap::new();
    for f in graph.bounded_faces() {
        let walk = graph.face(f).expect("live");
        if !walk.is_simple() {
            return Err(FaceDualError::NonPolygonalFace(f));
        }
        let sign = graph.face_sign(f).expect("live");
        map.insert(f, sign.to_i8() as i64 * (walk.len() as i64 - 2));
    }
    Ok(map)
}

/// Nodes whose degree equals `|phi| + 1`.
pub fn removable_vertices(face_graph: &FaceGraph) -> BTreeSet<FaceId> {
    face_graph
        .labels
        .iter()
        .filter(|(_, l)| l.degree as i64 == l.phi.abs() + 1)
        .map(|(&f, _)| f)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    /// Smallest face id first.
    #[default]
    FirstFound,
    /// Largest current degree first, ties by face id.
    MaxDegree,
    /// Smallest phi first, ties by face id.
    MinPhi,
}

impl std::str::FromStr for OrderPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first-found" => Ok(OrderPolicy::FirstFound),
            "max-degree" => Ok(OrderPolicy::MaxDegree),
            "min-phi" => Ok(OrderPolicy::MinPhi),
            other => Err(format!("unknown policy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationOutcome {
    Tree,
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationStep {
    pub face: FaceId,
    pub label: NodeLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationTrace {
    pub steps: Vec<EliminationStep>,
    pub remaining: FaceGraph,
    pub outcome: EliminationOutcome,
}

impl EliminationTrace {
    /// The surviving faces. Only a candidate Hamiltonian set; validate it
    /// with `peeling::validate_hamiltonian_set`.
    pub fn candidate(&self) -> BTreeSet<FaceId> {
        self.remaining.nodes().collect()
    }
}

/// Deletes removable nodes one at a time until the remainder is a tree or
/// nothing is removable.
pub fn eliminate(face_graph: &FaceGraph, policy: OrderPolicy) -> EliminationTrace {
    let mut g = face_graph.clone();
    let mut steps = Vec::new();
    loop {
        debug_assert!(g.labels_consistent());
        if g.is_tree() {
            return EliminationTrace {
                steps,
                remaining: g,
                outcome: EliminationOutcome::Tree,
            };
        }
        let removable = removable_vertices(&g);
        let pick = match policy {
            OrderPolicy::FirstFound => removable.first().copied(),
            OrderPolicy::MaxDegree => removable
                .iter()
                .copied()
                .min_by_key(|f| (std::cmp::Reverse(g.labels[f].degree), *f)),
            OrderPolicy::MinPhi => removable.iter().copied().min_by_key(|f| (g.labels[f].phi, *f)),
        };
        let Some(face) = pick else {
            return EliminationTrace {
                steps,
                remaining: g,
                outcome: EliminationOutcome::Stuck,
            };
        };
        steps.push(EliminationStep {
            face,
            label: g.labels[&face],
        });
        g.remove(face);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{EmbeddingInput, VertexId};
    use crate::grids::{build_grid, EdgeLabel, GridBox, GridSpec};

    #[test]
    fn grid_dual_is_box_adjacency() {
        let grid = build_grid(&GridSpec::all_plus(3, 4)).unwrap();
        let dual = weak_dual(&grid.graph);
        assert_eq!(dual.node_count(), 6);
        // 2x3 box array: 2*2 horizontal + 3*1 vertical adjacencies
        assert_eq!(dual.edge_count(), 7);
        for (a, b) in dual.edges() {
            let (ba, bb) = (grid.box_of(a).unwrap(), grid.box_of(b).unwrap());
            assert_eq!(ba.i.abs_diff(bb.i) + ba.j.abs_diff(bb.j), 1);
        }
        assert!(dual.labels_consistent());
    }

    #[test]
    fn single_box_dual() {
        let grid = build_grid(&GridSpec::all_plus(2, 2)).unwrap();
        let dual = weak_dual(&grid.graph);
        assert_eq!(dual.node_count(), 1);
        assert!(dual.is_tree());
        assert!(dual_is_tree(&grid.graph).unwrap());
        assert_eq!(dual.label(dual.nodes().next().unwrap()).unwrap().phi, 2);
    }

    #[test]
    fn shared_negative_edge_flips_both_faces() {
        let spec = GridSpec::all_plus(2, 3).with_edge(EdgeLabel::V(1, 2), Sign::Minus);
        let grid = build_grid(&spec).unwrap();
        let signs = face_signs(&grid.graph);
        assert!(signs.values().all(|s| s.is_negative()));
        assert!(verify_outer_product(&grid.graph));
    }

    #[test]
    fn negative_four_cycle_product() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let m = Sign::Minus;
        let edges = [(0, 1, m), (1, 2, m), (2, 3, m), (3, 0, m)];
        let g = PlaneSignedGraph::build(&EmbeddingInput::straight_line(&pts, &edges)).unwrap();
        assert!(verify_outer_product(&g));
        assert_eq!(face_signs(&g).values().next(), Some(&Sign::Plus));
    }

    #[test]
    fn outerplanarity() {
        let g3 = build_grid(&GridSpec::all_plus(3, 3)).unwrap();
        assert!(!is_outerplane(&g3.graph));
        assert_eq!(
            outerplane_unique_hamiltonian(&g3.graph),
            Err(FaceDualError::NotOuterplane(4))
        );
        assert!(!dual_is_tree(&g3.graph).unwrap());
        let g2 = build_grid(&GridSpec::all_plus(2, 5)).unwrap();
        assert!(is_outerplane(&g2.graph));
        let c = outerplane_unique_hamiltonian(&g2.graph).unwrap();
        assert_eq!(c.len(), 10);
    }

    #[test]
    fn fan_is_outerplane() {
        // apex 0 above a path 1..5
        let mut pts = vec![(2.0, 3.0)];
        pts.extend((1..=5).map(|k| (k as f64 - 1.0, 0.0)));
        let p = Sign::Plus;
        let mut edges: Vec<_> = (1..5).map(|k| (k, k + 1, p)).collect();
        edges.extend((1..=5).map(|k| (0, k, p)));
        let g = PlaneSignedGraph::build(&EmbeddingInput::straight_line(&pts, &edges)).unwrap();
        assert!(is_outerplane(&g));
        assert!(dual_is_tree(&g).unwrap());
        let c = outerplane_unique_hamiltonian(&g).unwrap();
        assert_eq!(c.vertices()[0], VertexId(0));
    }

    #[test]
    fn face_map_values() {
        let pts = [(0.0, 0.0), (2.0, 0.0), (3.0, 1.0), (2.0, 2.0), (0.0, 2.0), (-1.0, 1.0)];
        let m = Sign::Minus;
        let p = Sign::Plus;
        let edges = [(0, 1, m), (1, 2, p), (2, 3, p), (3, 4, p), (4, 5, p), (5, 0, p)];
        let g = PlaneSignedGraph::build(&EmbeddingInput::straight_line(&pts, &edges)).unwrap();
        let map = face_map(&g).unwrap();
        assert_eq!(map.values().copied().collect::<Vec<_>>(), vec![-4]);

        let pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
        let edges = [(0, 1, m), (1, 2, p), (2, 0, p)];
        let g = PlaneSignedGraph::build(&EmbeddingInput::straight_line(&pts, &edges)).unwrap();
        assert_eq!(face_map(&g).unwrap().values().copied().collect::<Vec<_>>(), vec![-1]);
    }

    #[test]
    fn pendant_edge_face_is_not_polygonal() {
        let pts = [(0.0, 0.0), (2.0, 0.0), (1.0, 2.0), (1.0, 0.7)];
        let p = Sign::Plus;
        let edges = [(0, 1, p), (1, 2, p), (2, 0, p), (0, 3, p)];
        let g = PlaneSignedGraph::build(&EmbeddingInput::straight_line(&pts, &edges)).unwrap();
        assert!(matches!(face_map(&g), Err(FaceDualError::NonPolygonalFace(_))));
    }

    #[test]
    fn removable_rule() {
        let mut labels = BTreeMap::new();
        let mut adjacency = BTreeMap::new();
        // positive box of degree 3, positive box of degree 2 (path a-b-c plus d on b)
        let (a, b, c, d) = (FaceId(0), FaceId(1), FaceId(2), FaceId(3));
        adjacency.insert(a, BTreeSet::from([b]));
        adjacency.insert(b, BTreeSet::from([a, c, d]));
        adjacency.insert(c, BTreeSet::from([b]));
        adjacency.insert(d, BTreeSet::from([b]));
        labels.insert(a, NodeLabel { phi: 2, degree: 1 });
        labels.insert(b, NodeLabel { phi: 2, degree: 3 });
        labels.insert(c, NodeLabel { phi: 1, degree: 1 });
        labels.insert(d, NodeLabel { phi: 0, degree: 1 });
        let g = FaceGraph { labels, adjacency };
        assert_eq!(removable_vertices(&g), BTreeSet::from([b, d]));
    }

    #[test]
    fn tree_needs_no_elimination() {
        let grid = build_grid(&GridSpec::all_plus(2, 4)).unwrap();
        let trace = eliminate(&weak_dual(&grid.graph), OrderPolicy::FirstFound);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.outcome, EliminationOutcome::Tree);
    }

    #[test]
    fn two_negative_boxes_elimination() {
        // 4 rows, 3 columns; boxes [3,1] and [2,2] negative
        let spec = GridSpec::with_box_signs(4, 3, &[GridBox::new(3, 1), GridBox::new(2, 2)]);
        let grid = build_grid(&spec).unwrap();
        let dual = weak_dual(&grid.graph);
        assert_eq!(dual.node_count(), 6);
        let negatives: BTreeSet<_> = dual
            .nodes()
            .filter(|&f| dual.label(f).unwrap().phi == -2)
            .map(|f| grid.box_of(f).unwrap())
            .collect();
        assert_eq!(negatives, BTreeSet::from([GridBox::new(2, 2), GridBox::new(3, 1)]));
        let trace = eliminate(&dual, OrderPolicy::MinPhi);
        assert_eq!(trace.outcome, EliminationOutcome::Tree);
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(grid.box_of(trace.steps[0].face), Some(GridBox::new(2, 2)));
        assert!(trace.remaining.labels_consistent());
    }
}
