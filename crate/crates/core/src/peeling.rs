//! Peeling Hamiltonian circles down to the outer boundary, and validating
//! co-Hamiltonian edge and face sequences.
//!
//! A co-Hamiltonian sequence deletes outer-boundary edges one at a time,
//! each deletion merging one bounded face into the outer face, keeping the
//! graph 2-connected, until every vertex is exterior. The surviving bounded
//! faces form a Hamiltonian set whose boundary is the determined circle.

use std::collections::{BTreeMap, BTreeSet};

use crate::embedding::{Circle, EdgeId, EmbeddingError, FaceId, PlaneSignedGraph};
use crate::face_dual::{outerplane_unique_hamiltonian, FaceDualError};
use crate::grids::{build_grid, Grid, GridBox, GridError, GridSpec};
use crate::ham_search::enumerate_hamiltonian;
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PeelingError {
    #[error("AlreadyOuterBoundary: the circle is the outer boundary")]
    AlreadyOuterBoundary,
    #[error("NoHamiltonianCircle: the protected circle is not a Hamiltonian circle of the graph")]
    NoHamiltonianCircle,
    #[error("NotHamiltonian: the circle does not pass through every vertex")]
    NotHamiltonian,
    #[error("NotTwoConnected: the input graph is not 2-connected")]
    NotTwoConnected,
    #[error("NotOnOuterBoundary: step {0} deletes an edge that is not on the outer boundary")]
    NotOnOuterBoundary(usize),
    #[error("NotTwoConnectedAfter: the graph is not 2-connected after step {0}")]
    NotTwoConnectedAfter(usize),
    #[error("FinalHasInteriorVertex: vertex {0} is still interior after the last step")]
    FinalHasInteriorVertex(usize),
    #[error("FinalNotUniquelyHamiltonian: the final graph has {0} Hamiltonian circles")]
    FinalNotUniquelyHamiltonian(usize),
    #[error("DuplicateEdge: step {0} repeats an edge")]
    DuplicateEdge(usize),
    #[error("UnknownEdge: step {0} names an edge that is not in the graph")]
    UnknownEdge(usize),
    #[error("FaceNotOnOuterBoundary: at step {0} the face shares no edge with the outer face")]
    FaceNotOnOuterBoundary(usize),
    #[error("InvalidSet: {0}")]
    InvalidSet(String),
    #[error("OddN: n = {0} must be even")]
    OddN(usize),
    #[error("PeelingFailed: no outer edge off the circle keeps the graph 2-connected")]
    PeelingFailed,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("{0}")]
    Search(String),
}

/// How the final graph of a sequence is checked for a unique Hamiltonian circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UniquenessCheck {
    /// Rely on 2-connected outerplane graphs having exactly one Hamiltonian circle.
    #[default]
    Lemma,
    /// Run the exhaustive search, stopping at the second circle.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoHamSequence {
    pub edges: Vec<EdgeId>,
    /// Bounded face merged into the outer face at each step.
    pub faces: Vec<FaceId>,
    /// Bounded faces left at the end: the Hamiltonian set.
    pub final_bounded: BTreeSet<FaceId>,
}

impl CoHamSequence {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Product of the signs of the deleted faces, measured in `graph`.
    pub fn face_product(&self, graph: &PlaneSignedGraph) -> Sign {
        self.faces
            .iter()
            .map(|&f| graph.face_sign(f).expect("face of the original graph"))
            .product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianSet {
    pub faces: BTreeSet<FaceId>,
    pub circle: Circle,
}

#[derive(Debug, Clone)]
pub struct CoHamOutcome {
    pub sequence: CoHamSequence,
    pub set: HamiltonianSet,
    /// The graph after all deletions.
    pub residual: PlaneSignedGraph,
}

fn two_connected(graph: &PlaneSignedGraph) -> bool {
    graph.is_two_connected().unwrap_or(false)
}

/// An outer-boundary edge off `circle` whose deletion keeps the graph
/// 2-connected; the smallest such edge id is chosen.
pub fn peel_step(graph: &PlaneSignedGraph, circle: &Circle) -> Result<EdgeId, PeelingError> {
    if !two_connected(graph) {
        return Err(PeelingError::NotTwoConnected);
    }
    if !circle.is_hamiltonian_in(graph) || Circle::from_edges(graph, circle.edges().iter().copied()).is_err() {
        return Err(PeelingError::NoHamiltonianCircle);
    }
    let outer = graph.outer_edges();
    if outer.iter().eq(circle.edges().iter()) {
        return Err(PeelingError::AlreadyOuterBoundary);
    }
    for e in outer.into_iter().filter(|&e| !circle.contains_edge(e)) {
        let (g, _) = graph.delete_edge(e)?;
        if two_connected(&g) {
            return Ok(e);
        }
    }
    Err(PeelingError::PeelingFailed)
}

/// Peels until `circle` is the outer boundary and records the deletions.
pub fn coham_from_circle(graph: &PlaneSignedGraph, circle: &Circle) -> Result<CoHamSequence, PeelingError> {
    if !circle.is_hamiltonian_in(graph) {
        return Err(PeelingError::NotHamiltonian);
    }
    if !two_connected(graph) {
        return Err(PeelingError::NotTwoConnected);
    }
    let mut g = graph.clone();
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    loop {
        match peel_step(&g, circle) {
            Ok(e) => {
                let (next, deletion) = g.delete_edge(e)?;
                edges.push(e);
                faces.push(deletion.merged_into_outer.expect("outer edge deletion"));
                g = next;
            }
            Err(PeelingError::AlreadyOuterBoundary) => break,
            Err(PeelingError::NoHamiltonianCircle) => return Err(PeelingError::NotHamiltonian),
            Err(other) => return Err(other),
        }
    }
    Ok(CoHamSequence {
        edges,
        faces,
        final_bounded: g.bounded_faces().collect(),
    })
}

fn finish(
    graph: PlaneSignedGraph,
    edges: Vec<EdgeId>,
    faces: Vec<FaceId>,
    check: UniquenessCheck,
) -> Result<CoHamOutcome, PeelingError> {
    if let Some(v) = graph.classify_vertices().interior.first() {
        return Err(PeelingError::FinalHasInteriorVertex(v.0));
    }
    let circle = match check {
        UniquenessCheck::Lemma => match outerplane_unique_hamiltonian(&graph) {
            Ok(c) => c,
            Err(FaceDualError::NotTwoConnected) => {
                return Err(PeelingError::NotTwoConnectedAfter(edges.len()))
            }
            Err(_) => return Err(PeelingError::FinalNotUniquelyHamiltonian(0)),
        },
        UniquenessCheck::Oracle => {
            let found = enumerate_hamiltonian(&graph, Some(1)).map_err(|e| PeelingError::Search(e.to_string()))?;
            if found.truncated {
                return Err(PeelingError::FinalNotUniquelyHamiltonian(2));
            }
            match found.circles.as_slice() {
                [c] => c.clone(),
                other => return Err(PeelingError::FinalNotUniquelyHamiltonian(other.len())),
            }
        }
    };
    let final_bounded: BTreeSet<FaceId> = graph.bounded_faces().collect();
    Ok(CoHamOutcome {
        sequence: CoHamSequence {
            edges,
            faces,
            final_bounded: final_bounded.clone(),
        },
        set: HamiltonianSet {
            faces: final_bounded,
            circle,
        },
        residual: graph,
    })
}

/// Validates an edge sequence step by step and returns the Hamiltonian set
/// it determines.
pub fn apply_coham(
    graph: &PlaneSignedGraph,
    sequence: &[EdgeId],
    check: UniquenessCheck,
) -> Result<CoHamOutcome, PeelingError> {
    if !two_connected(graph) {
        return Err(PeelingError::NotTwoConnected);
    }
    let mut g = graph.clone();
    let mut seen = BTreeSet::new();
    let mut faces = Vec::with_capacity(sequence.len());
    for (k, &e) in sequence.iter().enumerate() {
        let t = k + 1;
        if !seen.insert(e) {
            return Err(PeelingError::DuplicateEdge(t));
        }
        if !g.is_live(e) {
            return Err(PeelingError::UnknownEdge(t));
        }
        if !g.is_outer_edge(e) {
            return Err(PeelingError::NotOnOuterBoundary(t));
        }
        let (next, deletion) = g.delete_edge(e).map_err(|err| match err {
            EmbeddingError::BridgeDeletion(_) => PeelingError::NotTwoConnectedAfter(t),
            other => other.into(),
        })?;
        if !two_connected(&next) {
            return Err(PeelingError::NotTwoConnectedAfter(t));
        }
        faces.push(deletion.merged_into_outer.expect("outer edge deletion"));
        g = next;
    }
    finish(g, sequence.to_vec(), faces, check)
}

/// Realizes a face sequence by deleting, for each face, the smallest-id edge
/// it shares with the current outer face, then validates as [`apply_coham`].
pub fn apply_coham_faces(
    graph: &PlaneSignedGraph,
    faces: &[FaceId],
    check: UniquenessCheck,
) -> Result<CoHamOutcome, PeelingError> {
    if !two_connected(graph) {
        return Err(PeelingError::NotTwoConnected);
    }
    let mut g = graph.clone();
    let mut edges = Vec::with_capacity(faces.len());
    for (k, &f) in faces.iter().enumerate() {
        let t = k + 1;
        if !g.is_bounded_face(f) {
            return Err(PeelingError::FaceNotOnOuterBoundary(t));
        }
        let outer = g.outer_edges();
        let e = g
            .face(f)
            .expect("live")
            .edges()
            .into_iter()
            .find(|e| outer.contains(e))
            .ok_or(PeelingError::FaceNotOnOuterBoundary(t))?;
        let (next, _) = g.delete_edge(e).map_err(|_| PeelingError::NotTwoConnectedAfter(t))?;
        if !two_connected(&next) {
            return Err(PeelingError::NotTwoConnectedAfter(t));
        }
        edges.push(e);
        g = next;
    }
    finish(g, edges, faces.to_vec(), check)
}

/// Checks that `faces` is a Hamiltonian set of `graph`: the edges bounding
/// exactly one face of the set form a Hamiltonian circle enclosing exactly
/// those faces.
pub fn validate_hamiltonian_set(
    graph: &PlaneSignedGraph,
    faces: &BTreeSet<FaceId>,
) -> Result<HamiltonianSet, PeelingError> {
    if faces.is_empty() {
        return Err(PeelingError::InvalidSet("empty face set".into()));
    }
    let mut uses: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for &f in faces {
        if !graph.is_bounded_face(f) {
            return Err(PeelingError::InvalidSet(format!("{f} is not a bounded face")));
        }
        for h in graph.face(f).expect("live").half_edges() {
            *uses.entry(h.edge()).or_default() += 1;
        }
    }
    let boundary = uses.into_iter().filter(|&(_, k)| k == 1).map(|(e, _)| e);
    let circle = Circle::from_edges(graph, boundary)
        .map_err(|e| PeelingError::InvalidSet(format!("boundary is not a circle ({e})")))?;
    if !circle.is_hamiltonian_in(graph) {
        return Err(PeelingError::InvalidSet("boundary circle misses a vertex".into()));
    }
    if graph.faces_inside(&circle) != *faces {
        return Err(PeelingError::InvalidSet("faces do not form a disk".into()));
    }
    Ok(HamiltonianSet {
        faces: faces.clone(),
        circle,
    })
}

/// Product of the face signs over a Hamiltonian set, which equals the sign
/// of the circle it determines.
pub fn hamiltonian_set_sign(graph: &PlaneSignedGraph, faces: &BTreeSet<FaceId>) -> Result<Sign, PeelingError> {
    let set = validate_hamiltonian_set(graph, faces)?;
    let product: Sign = faces.iter().map(|&f| graph.face_sign(f).expect("live")).product();
    let direct = graph.circle_sign(&set.circle)?;
    if product != direct {
        return Err(PeelingError::InvalidSet(
            "face-sign product disagrees with the circle sign".into(),
        ));
    }
    Ok(product)
}

/// Boxes `[i,2], [i,4], ..., [i,n-2]` for rows `i = 1..m-2`, in that order.
pub fn canonical_coham_boxes(m: usize, n: usize) -> Result<Vec<GridBox>, PeelingError> {
    if !n.is_multiple_of(2) {
        return Err(PeelingError::OddN(n));
    }
    if m < 2 || n < 2 {
        return Err(GridError::BadDimensions { m, n }.into());
    }
    Ok((1..m.saturating_sub(1))
        .flat_map(|i| (2..n.saturating_sub(1)).step_by(2).map(move |j| GridBox::new(i, j)))
        .collect())
}

/// The canonical co-Hamiltonian sequence of an `m x n` grid with even `n`,
/// validated through [`apply_coham_faces`].
pub fn canonical_coham_grid(spec: &GridSpec) -> Result<(Grid, CoHamOutcome), PeelingError> {
    let boxes = canonical_coham_boxes(spec.m, spec.n)?;
    let grid = build_grid(spec)?;
    let faces: Vec<FaceId> = boxes
        .iter()
        .map(|&b| grid.face_of_box(b).expect("box in range"))
        .collect();
    let outcome = apply_coham_faces(&grid.graph, &faces, UniquenessCheck::Lemma)?;
    Ok((grid, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::VertexId;
    use crate::fixtures::three_interior;
    use crate::grids::EdgeLabel;

    fn e(g: &PlaneSignedGraph, a: usize, b: usize) -> EdgeId {
        g.edge_between(VertexId(a), VertexId(b)).unwrap()
    }

    #[test]
    fn three_interior_sequences() {
        let g = three_interior();
        assert_eq!(g.bounded_faces().count(), 7);
        assert_eq!(g.classify_vertices().interior.len(), 3);
        let l1 = apply_coham(&g, &[e(&g, 4, 5), e(&g, 6, 8)], UniquenessCheck::Oracle).unwrap();
        assert_eq!(l1.set.faces.len(), 5);
        assert_eq!(l1.set.circle.len(), 9);
        let l2 = apply_coham(
            &g,
            &[e(&g, 5, 0), e(&g, 1, 2), e(&g, 3, 4)],
            UniquenessCheck::Oracle,
        )
        .unwrap();
        assert_eq!(l2.set.faces.len(), 4);
        assert_ne!(l1.set.circle, l2.set.circle);
        // the face form of the second sequence realizes the same edges
        let by_faces = apply_coham_faces(&g, &l2.sequence.faces, UniquenessCheck::Lemma).unwrap();
        assert_eq!(by_faces.sequence.edges, l2.sequence.edges);
    }

    #[test]
    fn interior_edge_first_is_rejected() {
        let g = three_interior();
        assert_eq!(
            apply_coham(&g, &[e(&g, 6, 8)], UniquenessCheck::Lemma).unwrap_err(),
            PeelingError::NotOnOuterBoundary(1)
        );
        assert_eq!(
            apply_coham(&g, &[e(&g, 4, 5), e(&g, 4, 5)], UniquenessCheck::Lemma).unwrap_err(),
            PeelingError::DuplicateEdge(2)
        );
        assert_eq!(
            apply_coham(&g, &[e(&g, 4, 5)], UniquenessCheck::Lemma).unwrap_err(),
            PeelingError::FinalHasInteriorVertex(7)
        );
    }

    #[test]
    fn peel_step_on_three_by_four() {
        let grid = build_grid(&GridSpec::all_plus(3, 4)).unwrap();
        let g = &grid.graph;
        let h12 = grid.edge(EdgeLabel::H(1, 2)).unwrap();
        let (residual, _) = g.delete_edge(h12).unwrap();
        let circle = residual.outer_circle().unwrap();
        assert!(circle.is_hamiltonian_in(g));
        assert_eq!(peel_step(g, &circle).unwrap(), h12);
        let seq = coham_from_circle(g, &circle).unwrap();
        assert_eq!(seq.edges, vec![h12]);
        assert_eq!(seq.faces, vec![grid.face_of_box(GridBox::new(1, 2)).unwrap()]);
        assert_eq!(seq.final_bounded, g.faces_inside(&circle));
    }

    #[test]
    fn outer_boundary_circle_is_already_peeled() {
        let grid = build_grid(&GridSpec::all_plus(2, 4)).unwrap();
        let c = grid.graph.outer_circle().unwrap();
        assert_eq!(peel_step(&grid.graph, &c), Err(PeelingError::AlreadyOuterBoundary));
        let seq = coham_from_circle(&grid.graph, &c).unwrap();
        assert!(seq.is_empty());
    }

    #[test]
    fn canonical_lengths() {
        for m in 2..=5 {
            for n in [4, 6, 8] {
                let (_, outcome) = canonical_coham_grid(&GridSpec::all_plus(m, n)).unwrap();
                assert_eq!(outcome.sequence.len(), (n / 2 - 1) * (m - 2));
                assert_eq!(outcome.set.circle.len(), m * n);
            }
        }
        assert_eq!(
            canonical_coham_grid(&GridSpec::all_plus(4, 5)).unwrap_err(),
            PeelingError::OddN(5)
        );
    }

    #[test]
    fn set_sign_examples() {
        let spec = GridSpec::with_box_signs(3, 4, &[GridBox::new(2, 3)]);
        let grid = build_grid(&spec).unwrap();
        let all: BTreeSet<FaceId> = grid.graph.bounded_faces().collect();
        let drop = grid.face_of_box(GridBox::new(1, 2)).unwrap();
        let set: BTreeSet<FaceId> = all.iter().copied().filter(|&f| f != drop).collect();
        assert_eq!(hamiltonian_set_sign(&grid.graph, &set).unwrap(), Sign::Minus);
        let plus = build_grid(&GridSpec::all_plus(3, 4)).unwrap();
        assert_eq!(hamiltonian_set_sign(&plus.graph, &set).unwrap(), Sign::Plus);
        assert!(matches!(
            hamiltonian_set_sign(&plus.graph, &all),
            Err(PeelingError::InvalidSet(_))
        ));
    }
}
