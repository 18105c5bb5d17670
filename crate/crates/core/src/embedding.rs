//! Simple plane signed graphs represented by rotation systems.
//!
//! Every vertex stores its outgoing half-edges in counterclockwise order.
//! Faces are traced with the successor rule
//! `next(h) = the half-edge preceding twin(h) in the rotation at head(h)`,
//! which keeps each face on the left of its half-edges: bounded faces are
//! traversed counterclockwise and the outer face clockwise.
//!
//! Edge ids are the ranks of the normalized endpoint pairs `(min, max)` in
//! lexicographic order, so they do not depend on how the rotations were
//! listed. Deleting an edge retires its id; face ids of untouched faces are
//! preserved and the merged face keeps the outer id when the outer face is
//! involved, the smaller id otherwise.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::sign::Sign;

macro_rules! id_type {
    ($name:ident, $prefix:literal) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub usize);

        impl $name {
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(VertexId, "");
id_type!(EdgeId, "e");
id_type!(FaceId, "f");
id_type!(HalfEdgeId, "h");

impl HalfEdgeId {
    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 / 2)
    }

    pub fn twin(self) -> HalfEdgeId {
        HalfEdgeId(self.0 ^ 1)
    }
}

impl EdgeId {
    /// The half-edge leaving the smaller endpoint.
    pub fn forward(self) -> HalfEdgeId {
        HalfEdgeId(2 * self.0)
    }

    pub fn backward(self) -> HalfEdgeId {
        HalfEdgeId(2 * self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("NonSimple: {0}")]
    NonSimple(String),
    #[error("InconsistentRotation: {u} lists {v} but {v} does not list {u}")]
    InconsistentRotation { u: usize, v: usize },
    #[error("UnknownVertex: vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("UnknownEdge: {0}")]
    UnknownEdge(String),
    #[error("NonPlanarEmbedding: V - E + F = {euler} (V={vertices}, E={edges}, F={faces}), expected 2")]
    NonPlanarEmbedding {
        vertices: usize,
        edges: usize,
        faces: usize,
        euler: i64,
    },
    #[error("Disconnected: the graph has {0} components")]
    Disconnected(usize),
    #[error("EmptyGraph: at least one edge is required")]
    EmptyGraph,
    #[error("BadOuterHint: {0}")]
    BadOuterHint(String),
    #[error("BridgeDeletion: {0} is a bridge")]
    BridgeDeletion(EdgeId),
    #[error("TooSmall: 2-connectivity needs at least 3 vertices, found {0}")]
    TooSmall(usize),
    #[error("NotACircle: {0}")]
    NotACircle(String),
    #[error("FaceBookkeeping: incremental faces disagree with a full retrace after deleting {0}")]
    FaceBookkeeping(EdgeId),
}

pub type Result<T, E = EmbeddingError> = std::result::Result<T, E>;

/// How the unbounded face is identified when building a graph.
#[derive(Debug, Clone, PartialEq)]
pub enum OuterHint {
    /// The face on the left of the half-edge `u -> v`.
    HalfEdge(usize, usize),
    /// A closed vertex walk `v0 v1 ... v0` bounding the outer face, in either orientation.
    Walk(Vec<usize>),
    /// The longest face walk; ties go to the walk containing the smallest vertex.
    Longest,
    /// The face traced clockwise under these vertex positions.
    Coordinates(Vec<(f64, f64)>),
}

/// Raw input for [`PlaneSignedGraph::build`].
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingInput {
    /// Neighbors of each vertex in counterclockwise order.
    pub rotations: Vec<Vec<usize>>,
    /// Edge signs keyed by endpoint pair (either order); missing edges are `+`.
    pub signs: BTreeMap<(usize, usize), Sign>,
    pub outer: OuterHint,
}

impl EmbeddingInput {
    /// Rotation system of a straight-line drawing; the outer face is the one
    /// traced clockwise.
    pub fn straight_line(points: &[(f64, f64)], edges: &[(usize, usize, Sign)]) -> EmbeddingInput {
        let mut rotations = vec![Vec::new(); points.len()];
        let mut signs = BTreeMap::new();
        for &(u, v, s) in edges {
            if u < points.len() && v < points.len() {
                rotations[u].push(v);
                rotations[v].push(u);
            }
            signs.insert((u.min(v), u.max(v)), s);
        }
        for (u, rot) in rotations.iter_mut().enumerate() {
            let (x0, y0) = points[u];
            rot.sort_by(|&a, &b| {
                let ta = (points[a].1 - y0).atan2(points[a].0 - x0);
                let tb = (points[b].1 - y0).atan2(points[b].0 - x0);
                ta.total_cmp(&tb).then(a.cmp(&b))
            });
        }
        EmbeddingInput {
            rotations,
            signs,
            outer: OuterHint::Coordinates(points.to_vec()),
        }
    }
}

/// Read-only view of a half-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub id: HalfEdgeId,
    pub edge: EdgeId,
    pub origin: VertexId,
    pub twin: HalfEdgeId,
}

/// Closed boundary walk of one face, starting at its smallest half-edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub face: FaceId,
    half_edges: Vec<HalfEdgeId>,
    vertices: Vec<VertexId>,
}

impl FaceWalk {
    pub fn half_edges(&self) -> &[HalfEdgeId] {
        &self.half_edges
    }

    /// Origins of the half-edges, in walk order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.half_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_edges.is_empty()
    }

    /// Distinct edges on the walk, sorted.
    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.half_edges.iter().map(|h| h.edge()).collect()
    }

    /// True when no vertex repeats, i.e. the boundary is a simple polygon.
    pub fn is_simple(&self) -> bool {
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        distinct.len() == self.vertices.len()
    }
}

/// A simple cycle, identified by its edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

impl Circle {
    pub fn from_edges<I>(graph: &PlaneSignedGraph, edges: I) -> Result<Circle>
    where
        I: IntoIterator<Item = EdgeId>,
    {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        if edges.len() < 3 {
            return Err(EmbeddingError::NotACircle(format!(
                "{} edges cannot form a simple cycle",
                edges.len()
            )));
        }
        let mut incident: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &e in &edges {
            let (u, v) = graph.try_ends(e)?;
            incident.entry(u).or_default().push(v);
            incident.entry(v).or_default().push(u);
        }
        if let Some((v, nbrs)) = incident.iter().find(|(_, n)| n.len() != 2) {
            return Err(EmbeddingError::NotACircle(format!(
                "vertex {v} has degree {} in the edge set",
                nbrs.len()
            )));
        }
        let start = *incident.keys().next().expect("non-empty");
        let mut order = vec![start];
        let first = incident[&start].iter().min().copied().expect("degree 2");
        let mut prev = start;
        let mut cur = first;
        while cur != start {
            order.push(cur);
            let nbrs = &incident[&cur];
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = cur;
            cur = next;
        }
        if order.len() != incident.len() {
            return Err(EmbeddingError::NotACircle(
                "edge set is a disjoint union of cycles".into(),
            ));
        }
        Ok(Circle {
            edges: edges.into_iter().collect(),
            vertices: order,
        })
    }

    /// Builds a circle from a cyclic vertex sequence; a trailing repeat of the
    /// first vertex is allowed.
    pub fn from_vertices(graph: &PlaneSignedGraph, seq: &[VertexId]) -> Result<Circle> {
        let mut seq = seq.to_vec();
        if seq.len() > 1 && seq.first() == seq.last() {
            seq.pop();
        }
        let distinct: BTreeSet<_> = seq.iter().collect();
        if distinct.len() != seq.len() {
            return Err(EmbeddingError::NotACircle("vertex sequence repeats a vertex".into()));
        }
        let mut edges = Vec::with_capacity(seq.len());
        for (k, &u) in seq.iter().enumerate() {
            let v = seq[(k + 1) % seq.len()];
            let e = graph
                .edge_between(u, v)
                .ok_or_else(|| EmbeddingError::UnknownEdge(format!("no edge {u}-{v}")))?;
            edges.push(e);
        }
        Circle::from_edges(graph, edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Vertices in cyclic order, starting at the smallest vertex and heading
    /// towards its smaller neighbor.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_hamiltonian_in(&self, graph: &PlaneSignedGraph) -> bool {
        self.vertices.len() == graph.vertex_count()
            && self.edges.iter().all(|&e| graph.is_live(e))
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        if let Some(v) = self.vertices.first() {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// Bookkeeping returned by [`PlaneSignedGraph::delete_edge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deletion {
    pub edge: EdgeId,
    /// Face id carried by the merged face.
    pub survivor: FaceId,
    /// Face id that no longer exists.
    pub retired: FaceId,
    /// The bounded face absorbed by the outer face, if the edge was an outer edge.
    pub merged_into_outer: Option<FaceId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClasses {
    pub exterior: BTreeSet<VertexId>,
    pub interior: BTreeSet<VertexId>,
}

#[derive(Debug, Clone)]
struct EdgeSlot {
    ends: (VertexId, VertexId),
    sign: Sign,
    live: bool,
}

#[derive(Debug, Clone)]
pub struct PlaneSignedGraph {
    edges: Vec<EdgeSlot>,
    rotations: Vec<Vec<HalfEdgeId>>,
    rot_pos: Vec<usize>,
    faces: Vec<Option<FaceWalk>>,
    face_of: Vec<Option<FaceId>>,
    outer: FaceId,
    live_edges: usize,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
}

impl PlaneSignedGraph {
    pub fn build(input: &EmbeddingInput) -> Result<PlaneSignedGraph> {
        let n = input.rotations.len();
        let mut pairs = BTreeSet::new();
        for (u, rot) in input.rotations.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &v in rot {
                if v >= n {
                    return Err(EmbeddingError::UnknownVertex(v));
                }
                if v == u {
                    return Err(EmbeddingError::NonSimple(format!("loop at vertex {u}")));
                }
                if !seen.insert(v) {
                    return Err(EmbeddingError::NonSimple(format!(
                        "parallel edges between {u} and {v}"
                    )));
                }
                if !input.rotations[v].contains(&u) {
                    return Err(EmbeddingError::InconsistentRotation { u, v });
                }
                pairs.insert((u.min(v), u.max(v)));
            }
        }
        if pairs.is_empty() {
            return Err(EmbeddingError::EmptyGraph);
        }
        for &(u, v) in input.signs.keys() {
            if u >= n {
                return Err(EmbeddingError::UnknownVertex(u));
            }
            if v >= n {
                return Err(EmbeddingError::UnknownVertex(v));
            }
            if !pairs.contains(&(u.min(v), u.max(v))) {
                return Err(EmbeddingError::UnknownEdge(format!("sign given for non-edge {u}-{v}")));
            }
        }

        let mut lookup = HashMap::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for (k, &(u, v)) in pairs.iter().enumerate() {
            let sign = input
                .signs
                .get(&(u, v))
                .or_else(|| input.signs.get(&(v, u)))
                .copied()
                .unwrap_or_default();
            let (u, v) = (VertexId(u), VertexId(v));
            lookup.insert((u, v), EdgeId(k));
            lookup.insert((v, u), EdgeId(k));
            edges.push(EdgeSlot {
                ends: (u, v),
                sign,
                live: true,
            });
        }

        let mut rotations = Vec::with_capacity(n);
        let mut rot_pos = vec![usize::MAX; 2 * edges.len()];
        for (u, rot) in input.rotations.iter().enumerate() {
            let hs: Vec<HalfEdgeId> = rot
                .iter()
                .map(|&v| {
                    let e = lookup[&(VertexId(u), VertexId(v))];
                    if u < v {
                        e.forward()
                    } else {
                        e.backward()
                    }
                })
                .collect();
            for (p, h) in hs.iter().enumerate() {
                rot_pos[h.0] = p;
            }
            rotations.push(hs);
        }

        let mut graph = PlaneSignedGraph {
            live_edges: edges.len(),
            edges,
            rotations,
            rot_pos,
            faces: Vec::new(),
            face_of: Vec::new(),
            outer: FaceId(0),
            lookup,
        };

        let components = graph.component_count();
        if components != 1 {
            return Err(EmbeddingError::Disconnected(components));
        }
        let walks = graph.retrace();
        let euler = n as i64 - graph.live_edges as i64 + walks.len() as i64;
        if euler != 2 {
            return Err(EmbeddingError::NonPlanarEmbedding {
                vertices: n,
                edges: graph.live_edges,
                faces: walks.len(),
                euler,
            });
        }
        graph.face_of = vec![None; 2 * graph.edges.len()];
        for walk in &walks {
            for h in &walk.half_edges {
                graph.face_of[h.0] = Some(walk.face);
            }
        }
        graph.faces = walks.into_iter().map(Some).collect();
        graph.outer = graph.resolve_outer(&input.outer)?;
        Ok(graph)
    }

    fn resolve_outer(&self, hint: &OuterHint) -> Result<FaceId> {
        let n = self.vertex_count();
        match hint {
            OuterHint::HalfEdge(u, v) => {
                if *u >= n || *v >= n {
                    return Err(EmbeddingError::BadOuterHint(format!("unknown half-edge {u}->{v}")));
                }
                let h = self
                    .half_edge_between(VertexId(*u), VertexId(*v))
                    .ok_or_else(|| EmbeddingError::BadOuterHint(format!("no edge {u}-{v}")))?;
                Ok(self.face_of[h.0].expect("live"))
            }
            OuterHint::Walk(walk) => {
                let mut walk: Vec<VertexId> = walk.iter().map(|&v| VertexId(v)).collect();
                if walk.len() > 1 && walk.first() == walk.last() {
                    walk.pop();
                }
                if walk.len() < 2 || walk.iter().any(|v| v.0 >= n) {
                    return Err(EmbeddingError::BadOuterHint("walk is too short or names unknown vertices".into()));
                }
                let mut reversed = walk.clone();
                reversed.reverse();
                for candidate in [&walk, &reversed] {
                    if let Some(h) = self.half_edge_between(candidate[0], candidate[1]) {
                        let f = self.face_of[h.0].expect("live");
                        let face = self.faces[f.0].as_ref().expect("live face");
                        if cyclic_eq(face.vertices(), candidate) {
                            return Ok(f);
                        }
                    }
                }
                Err(EmbeddingError::BadOuterHint("walk does not match any face boundary".into()))
            }
            OuterHint::Longest => Ok(self
                .faces()
                .max_by(|a, b| {
                    let amin = a.vertices.iter().min();
                    let bmin = b.vertices.iter().min();
                    a.len()
                        .cmp(&b.len())
                        .then(bmin.cmp(&amin))
                        .then(b.face.cmp(&a.face))
                })
                .expect("at least one face")
                .face),
            OuterHint::Coordinates(points) => {
                if points.len() != n {
                    return Err(EmbeddingError::BadOuterHint(format!(
                        "{} coordinates for {n} vertices",
                        points.len()
                    )));
                }
                let area = |walk: &FaceWalk| -> f64 {
                    let vs = walk.vertices();
                    (0..vs.len())
                        .map(|k| {
                            let (x0, y0) = points[vs[k].0];
                            let (x1, y1) = points[vs[(k + 1) % vs.len()].0];
                            x0 * y1 - x1 * y0
                        })
                        .sum::<f64>()
                };
                let (face, a) = self
                    .faces()
                    .map(|w| (w.face, area(w)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("at least one face");
                if a < 0.0 || self.face_count() == 1 {
                    Ok(face)
                } else {
                    Err(EmbeddingError::BadOuterHint("no face is traced clockwise".into()))
                }
            }
        }
    }

    fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![VertexId(s)];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w.0] {
                        seen[w.0] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    fn next_in_face(&self, h: HalfEdgeId) -> HalfEdgeId {
        let t = h.twin();
        let head = self.origin(t);
        let rot = &self.rotations[head.0];
        rot[(self.rot_pos[t.0] + rot.len() - 1) % rot.len()]
    }

    fn trace_from(&self, start: HalfEdgeId, face: FaceId) -> FaceWalk {
        let mut half_edges = vec![start];
        let mut h = self.next_in_face(start);
        while h != start {
            half_edges.push(h);
            h = self.next_in_face(h);
        }
        let min_pos = half_edges
            .iter()
            .enumerate()
            .min_by_key(|(_, h)| **h)
            .map(|(k, _)| k)
            .unwrap_or(0);
        half_edges.rotate_left(min_pos);
        let vertices = half_edges.iter().map(|&h| self.origin(h)).collect();
        FaceWalk {
            face,
            half_edges,
            vertices,
        }
    }

    /// Fresh face tracing over all live half-edges, ids in discovery order.
    fn retrace(&self) -> Vec<FaceWalk> {
        let mut visited = vec![false; 2 * self.edges.len()];
        let mut walks = Vec::new();
        for h in 0..2 * self.edges.len() {
            if visited[h] || !self.edges[h / 2].live {
                continue;
            }
            let walk = self.trace_from(HalfEdgeId(h), FaceId(walks.len()));
            for x in &walk.half_edges {
                visited[x.0] = true;
            }
            walks.push(walk);
        }
        walks
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    /// Number of live edges.
    pub fn edge_count(&self) -> usize {
        self.live_edges
    }

    /// Upper bound on edge ids ever issued by this graph.
    pub fn edge_capacity(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, s)| s.live)
            .map(|(k, _)| EdgeId(k))
    }

    pub fn is_live(&self, e: EdgeId) -> bool {
        self.edges.get(e.0).is_some_and(|s| s.live)
    }

    fn try_ends(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        match self.edges.get(e.0) {
            Some(slot) if slot.live => Ok(slot.ends),
            _ => Err(EmbeddingError::UnknownEdge(format!("{e} is not an edge of the graph"))),
        }
    }

    /// Endpoints of `e`, smaller first. Panics on unknown ids.
    pub fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0].ends
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.edges[e.0].sign
    }

    pub fn signs(&self) -> impl Iterator<Item = (EdgeId, Sign)> + '_ {
        self.edges().map(|e| (e, self.sign(e)))
    }

    /// Copy of the graph with every live edge resigned by `f`.
    pub fn with_signs<F: FnMut(EdgeId) -> Sign>(&self, mut f: F) -> PlaneSignedGraph {
        let mut g = self.clone();
        for (k, slot) in g.edges.iter_mut().enumerate() {
            if slot.live {
                slot.sign = f(EdgeId(k));
            }
        }
        g
    }

    pub fn origin(&self, h: HalfEdgeId) -> VertexId {
        let (u, v) = self.edges[h.0 / 2].ends;
        if h.0.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    pub fn target(&self, h: HalfEdgeId) -> VertexId {
        self.origin(h.twin())
    }

    pub fn half_edge(&self, h: HalfEdgeId) -> HalfEdge {
        HalfEdge {
            id: h,
            edge: h.edge(),
            origin: self.origin(h),
            twin: h.twin(),
        }
    }

    /// Outgoing half-edges of `v` in counterclockwise order.
    pub fn rotation(&self, v: VertexId) -> &[HalfEdgeId] {
        &self.rotations[v.0]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotations[v.0].iter().map(move |&h| self.target(h))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v.0].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.lookup.get(&(u, v)).copied().filter(|&e| self.is_live(e))
    }

    pub fn half_edge_between(&self, u: VertexId, v: VertexId) -> Option<HalfEdgeId> {
        self.edge_between(u, v).map(|e| {
            if self.edges[e.0].ends.0 == u {
                e.forward()
            } else {
                e.backward()
            }
        })
    }

    pub fn outer(&self) -> FaceId {
        self.outer
    }

    pub fn outer_walk(&self) -> &FaceWalk {
        self.face(self.outer).expect("outer face is live")
    }

    pub fn face(&self, f: FaceId) -> Option<&FaceWalk> {
        self.faces.get(f.0).and_then(|w| w.as_ref())
    }

    /// Live faces in id order.
    pub fn faces(&self) -> impl Iterator<Item = &FaceWalk> + '_ {
        self.faces.iter().flatten()
    }

    pub fn face_count(&self) -> usize {
        self.faces().count()
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.faces().map(|w| w.face).filter(move |&f| f != self.outer)
    }

    pub fn is_bounded_face(&self, f: FaceId) -> bool {
        f != self.outer && self.face(f).is_some()
    }

    /// Face on the left of `h`.
    pub fn face_of(&self, h: HalfEdgeId) -> Option<FaceId> {
        self.face_of.get(h.0).copied().flatten()
    }

    /// The two faces incident with `e` (equal for a bridge).
    pub fn faces_of_edge(&self, e: EdgeId) -> Option<(FaceId, FaceId)> {
        if !self.is_live(e) {
            return None;
        }
        Some((self.face_of[e.forward().0]?, self.face_of[e.backward().0]?))
    }

    pub fn is_outer_edge(&self, e: EdgeId) -> bool {
        self.faces_of_edge(e)
            .is_some_and(|(a, b)| a == self.outer || b == self.outer)
    }

    /// Live outer edges, sorted.
    pub fn outer_edges(&self) -> BTreeSet<EdgeId> {
        self.outer_walk().edges()
    }

    /// Face walks in id order. Their count is `E - V + 2` and together they
    /// use every half-edge exactly once.
    pub fn trace_faces(&self) -> Vec<FaceWalk> {
        self.faces().cloned().collect()
    }

    pub fn classify_vertices(&self) -> VertexClasses {
        let exterior: BTreeSet<VertexId> = self.outer_walk().vertices().iter().copied().collect();
        let interior = self.vertices().filter(|v| !exterior.contains(v)).collect();
        VertexClasses { exterior, interior }
    }

    /// Cut vertices, found by an iterative low-link search. Also reports
    /// whether the graph is connected.
    pub fn cut_vertices(&self) -> (bool, BTreeSet<VertexId>) {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cuts = BTreeSet::new();
        let mut time = 0;
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        let mut root_children = 0;
        // (vertex, half-edge used to enter it, next rotation index)
        let mut stack: Vec<(usize, Option<HalfEdgeId>, usize)> = vec![(0, None, 0)];
        while let Some(&mut (u, via, ref mut idx)) = stack.last_mut() {
            if *idx < self.rotations[u].len() {
                let h = self.rotations[u][*idx];
                *idx += 1;
                if Some(h.twin()) == via {
                    continue;
                }
                let w = self.target(h).0;
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if u == 0 {
                        root_children += 1;
                    }
                    stack.push((w, Some(h), 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[u]);
                    if parent != 0 && low[u] >= disc[parent] {
                        cuts.insert(VertexId(parent));
                    }
                }
            }
        }
        if root_children > 1 {
            cuts.insert(VertexId(0));
        }
        (disc.iter().all(|&d| d != usize::MAX), cuts)
    }

    pub fn is_two_connected(&self) -> Result<bool> {
        let n = self.vertex_count();
        if n < 3 {
            return Err(EmbeddingError::TooSmall(n));
        }
        let (connected, cuts) = self.cut_vertices();
        Ok(connected && cuts.is_empty())
    }

    /// Removes a non-bridge edge, updating only the two faces it separated.
    pub fn delete_edge(&self, e: EdgeId) -> Result<(PlaneSignedGraph, Deletion)> {
        let (fa, fb) = self
            .faces_of_edge(e)
            .ok_or_else(|| EmbeddingError::UnknownEdge(format!("{e} is not an edge of the graph")))?;
        if fa == fb {
            return Err(EmbeddingError::BridgeDeletion(e));
        }
        let (survivor, retired) = if fa == self.outer || fb == self.outer {
            (self.outer, if fa == self.outer { fb } else { fa })
        } else {
            (fa.min(fb), fa.max(fb))
        };
        let start = {
            let walk = self.face(fa).expect("live face");
            let pos = walk
                .half_edges
                .iter()
                .position(|&h| h == e.forward())
                .expect("forward half-edge lies on its face");
            walk.half_edges[(pos + 1) % walk.len()]
        };
        let expected_len = self.face(fa).map_or(0, |w| w.len()) + self.face(fb).map_or(0, |w| w.len()) - 2;

        let mut g = self.clone();
        for h in [e.forward(), e.backward()] {
            let v = g.origin(h).0;
            let pos = g.rot_pos[h.0];
            g.rotations[v].remove(pos);
            for (p, x) in g.rotations[v].iter().enumerate() {
                g.rot_pos[x.0] = p;
            }
            g.rot_pos[h.0] = usize::MAX;
            g.face_of[h.0] = None;
        }
        g.edges[e.0].live = false;
        g.live_edges -= 1;

        let merged = g.trace_from(start, survivor);
        debug_assert_eq!(merged.len(), expected_len);
        for h in &merged.half_edges {
            g.face_of[h.0] = Some(survivor);
        }
        g.faces[survivor.0] = Some(merged);
        g.faces[retired.0] = None;

        let merged_into_outer = (survivor == self.outer).then_some(retired);
        Ok((
            g,
            Deletion {
                edge: e,
                survivor,
                retired,
                merged_into_outer,
            },
        ))
    }

    /// [`delete_edge`](Self::delete_edge) followed by a full retrace that must
    /// reproduce the incremental face bookkeeping.
    pub fn delete_edge_verified(&self, e: EdgeId) -> Result<(PlaneSignedGraph, Deletion)> {
        let (g, deletion) = self.delete_edge(e)?;
        if !g.faces_match_retrace() {
            return Err(EmbeddingError::FaceBookkeeping(e));
        }
        Ok((g, deletion))
    }

    /// True when the stored faces equal a fresh tracing as sets of walks.
    pub fn faces_match_retrace(&self) -> bool {
        let fresh: BTreeSet<Vec<HalfEdgeId>> =
            self.retrace().into_iter().map(|w| w.half_edges).collect();
        let stored: BTreeSet<Vec<HalfEdgeId>> =
            self.faces().map(|w| w.half_edges.clone()).collect();
        let consistent = self.faces().all(|w| {
            w.half_edges
                .iter()
                .all(|h| self.face_of[h.0] == Some(w.face))
        });
        fresh == stored && consistent
    }

    pub fn circle_sign(&self, circle: &Circle) -> Result<Sign> {
        for &e in circle.edges() {
            self.try_ends(e)?;
        }
        Circle::from_edges(self, circle.edges().iter().copied())?;
        Ok(circle.edges().iter().map(|&e| self.sign(e)).product())
    }

    pub fn face_sign(&self, f: FaceId) -> Option<Sign> {
        self.face(f)
            .map(|w| w.edges().into_iter().map(|e| self.sign(e)).product())
    }

    /// The boundary of the outer face as a circle. Fails unless that boundary
    /// is a simple cycle, which holds for every 2-connected graph.
    pub fn outer_circle(&self) -> Result<Circle> {
        let walk = self.outer_walk();
        if !walk.is_simple() {
            return Err(EmbeddingError::NotACircle("outer boundary repeats a vertex".into()));
        }
        Circle::from_edges(self, walk.edges())
    }

    /// Bounded faces enclosed by `circle`: those not reachable from the outer
    /// face without crossing an edge of the circle.
    pub fn faces_inside(&self, circle: &Circle) -> BTreeSet<FaceId> {
        let mut reached = BTreeSet::from([self.outer]);
        let mut queue = VecDeque::from([self.outer]);
        while let Some(f) = queue.pop_front() {
            let walk = self.face(f).expect("live face");
            for &h in walk.half_edges() {
                if circle.contains_edge(h.edge()) {
                    continue;
                }
                if let Some(g) = self.face_of(h.twin()) {
                    if reached.insert(g) {
                        queue.push_back(g);
                    }
                }
            }
        }
        self.bounded_faces().filter(|f| !reached.contains(f)).collect()
    }

    /// Vertices strictly inside `circle`.
    pub fn vertices_inside(&self, circle: &Circle) -> BTreeSet<VertexId> {
        let on_circle: BTreeSet<VertexId> = circle.vertices().iter().copied().collect();
        self.faces_inside(circle)
            .into_iter()
            .flat_map(|f| self.face(f).expect("live").vertices().to_vec())
            .filter(|v| !on_circle.contains(v))
            .collect()
    }

    /// Neighbor lists in rotation order, as accepted by [`EmbeddingInput`].
    pub fn rotation_lists(&self) -> Vec<Vec<usize>> {
        self.vertices()
            .map(|v| self.neighbors(v).map(|w| w.0).collect())
            .collect()
    }

    /// Round-trips the live structure through [`EmbeddingInput`]; edge ids are
    /// renumbered densely.
    pub fn to_input(&self) -> EmbeddingInput {
        let outer = self.outer_walk();
        let h = outer.half_edges()[0];
        EmbeddingInput {
            rotations: self.rotation_lists(),
            signs: self
                .signs()
                .map(|(e, s)| {
                    let (u, v) = self.ends(e);
                    ((u.0, v.0), s)
                })
                .collect(),
            outer: OuterHint::HalfEdge(self.origin(h).0, self.target(h).0),
        }
    }
}

fn cyclic_eq(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|shift| (0..a.len()).all(|k| a[(k + shift) % a.len()] == b[k]))
}
