//! Rectangular and triangulated grids with box and edge labels.
//!
//! Vertex `(i, j)` sits in row `i` (counted from the bottom) and column `j`
//! (counted from the left), at coordinates `(x, y) = (j, i)`; its id is
//! `(i - 1) * n + (j - 1)`. Edge labels follow the usual naming:
//! `h i j` joins `(i, j)` and `(i, j + 1)`, `v i j` joins `(i, j)` and
//! `(i + 1, j)`, and `d i j` is the diagonal inside box `[i, j]`, whose
//! bottom-left corner is `(i, j)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::embedding::{EdgeId, EmbeddingInput, FaceId, PlaneSignedGraph, VertexId};
use crate::ham_search::{sign_census, HamSearchError};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridError {
    #[error("BadDimensions: {m}x{n} grid, both sides must be at least 2")]
    BadDimensions { m: usize, n: usize },
    #[error("OutOfRange: {0} is not part of the grid")]
    OutOfRange(String),
    #[error("BadPreconditions: {0}")]
    BadPreconditions(String),
    #[error("BadLabel: {0}")]
    BadLabel(String),
    #[error(transparent)]
    Search(#[from] HamSearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    H(usize, usize),
    V(usize, usize),
    D(usize, usize),
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::H(i, j) => write!(f, "h {i} {j}"),
            EdgeLabel::V(i, j) => write!(f, "v {i} {j}"),
            EdgeLabel::D(i, j) => write!(f, "d {i} {j}"),
        }
    }
}

impl FromStr for EdgeLabel {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let bad = || GridError::BadLabel(format!("expected `h|v|d i j`, found `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let i: usize = parts[1].parse().map_err(|_| bad())?;
        let j: usize = parts[2].parse().map_err(|_| bad())?;
        match parts[0] {
            "h" => Ok(EdgeLabel::H(i, j)),
            "v" => Ok(EdgeLabel::V(i, j)),
            "d" => Ok(EdgeLabel::D(i, j)),
            _ => Err(bad()),
        }
    }
}

/// Unit face `[i, j]` with bottom-left corner `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridBox {
    pub i: usize,
    pub j: usize,
}

impl GridBox {
    pub fn new(i: usize, j: usize) -> GridBox {
        GridBox { i, j }
    }

    pub fn is_corner(self, m: usize, n: usize) -> bool {
        (self.i == 1 || self.i == m - 1) && (self.j == 1 || self.j == n - 1)
    }

    fn in_range(self, m: usize, n: usize) -> bool {
        (1..m).contains(&self.i) && (1..n).contains(&self.j)
    }
}

impl fmt::Display for GridBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

impl FromStr for GridBox {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GridError::BadLabel(format!("expected `[i,j]`, found `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        Ok(GridBox {
            i: i.trim().parse().map_err(|_| bad())?,
            j: j.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// Grid dimensions plus signs of the labeled edges; missing labels are `+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub m: usize,
    pub n: usize,
    pub signing: BTreeMap<EdgeLabel, Sign>,
}

impl GridSpec {
    pub fn all_plus(m: usize, n: usize) -> GridSpec {
        GridSpec::uniform(m, n, Sign::Plus)
    }

    pub fn all_minus(m: usize, n: usize) -> GridSpec {
        GridSpec::uniform(m, n, Sign::Minus)
    }

    fn uniform(m: usize, n: usize, sign: Sign) -> GridSpec {
        let signing = grid_labels(m, n).into_iter().map(|l| (l, sign)).collect();
        GridSpec { m, n, signing }
    }

    pub fn with_edge(mut self, label: EdgeLabel, sign: Sign) -> GridSpec {
        self.signing.insert(label, sign);
        self
    }

    /// A signing in which exactly the listed boxes are negative.
    pub fn with_box_signs(m: usize, n: usize, negative: &[GridBox]) -> GridSpec {
        let mut spec = GridSpec::all_plus(m, n);
        for b in negative {
            spec.toggle_box(*b);
        }
        spec
    }

    /// Flips `h 1 j .. h i j`, which changes the sign of box `[i, j]` and no other box.
    fn toggle_box(&mut self, b: GridBox) {
        for k in 1..=b.i {
            let s = self.signing.entry(EdgeLabel::H(k, b.j)).or_default();
            *s = -*s;
        }
    }

    pub fn sign_of(&self, label: EdgeLabel) -> Sign {
        self.signing.get(&label).copied().unwrap_or_default()
    }

    pub fn boxes(&self) -> impl Iterator<Item = GridBox> + '_ {
        let n = self.n;
        (1..self.m).flat_map(move |i| (1..n).map(move |j| GridBox::new(i, j)))
    }

    fn check(&self, triangulated: bool) -> Result<(), GridError> {
        if self.m < 2 || self.n < 2 {
            return Err(GridError::BadDimensions { m: self.m, n: self.n });
        }
        for &label in self.signing.keys() {
            let ok = match label {
                EdgeLabel::H(i, j) => (1..=self.m).contains(&i) && (1..self.n).contains(&j),
                EdgeLabel::V(i, j) => (1..self.m).contains(&i) && (1..=self.n).contains(&j),
                EdgeLabel::D(i, j) => triangulated && GridBox::new(i, j).in_range(self.m, self.n),
            };
            if !ok {
                return Err(GridError::OutOfRange(format!("edge `{label}`")));
            }
        }
        Ok(())
    }
}

/// All `h` and `v` labels of an `m x n` grid in label order.
pub fn grid_labels(m: usize, n: usize) -> Vec<EdgeLabel> {
    let mut labels = Vec::new();
    for i in 1..=m {
        for j in 1..n {
            labels.push(EdgeLabel::H(i, j));
        }
    }
    for i in 1..m {
        for j in 1..=n {
            labels.push(EdgeLabel::V(i, j));
        }
    }
    labels.sort();
    labels
}

/// Which way the diagonal of each box runs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum DiagonalPolicy {
    /// Bottom-left to top-right everywhere.
    #[default]
    Rising,
    /// Top-left to bottom-right everywhere.
    Falling,
    /// Box `[1,1]` falling, every other box rising.
    FirstBoxFalling,
    /// Listed boxes falling, the rest rising.
    Custom(Vec<GridBox>),
}

impl DiagonalPolicy {
    fn falling(&self, b: GridBox) -> bool {
        match self {
            DiagonalPolicy::Rising => false,
            DiagonalPolicy::Falling => true,
            DiagonalPolicy::FirstBoxFalling => b == GridBox::new(1, 1),
            DiagonalPolicy::Custom(boxes) => boxes.contains(&b),
        }
    }
}

/// A built grid with its label maps.
#[derive(Debug, Clone)]
pub struct Grid {
    pub spec: GridSpec,
    pub graph: PlaneSignedGraph,
    labels: BTreeMap<EdgeLabel, EdgeId>,
    box_faces: BTreeMap<GridBox, Vec<FaceId>>,
}

impl Grid {
    pub fn m(&self) -> usize {
        self.spec.m
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn vertex(&self, i: usize, j: usize) -> VertexId {
        VertexId((i - 1) * self.spec.n + (j - 1))
    }

    pub fn position(&self, v: VertexId) -> (usize, usize) {
        (v.0 / self.spec.n + 1, v.0 % self.spec.n + 1)
    }

    pub fn edge(&self, label: EdgeLabel) -> Option<EdgeId> {
        self.labels.get(&label).copied()
    }

    pub fn label_of(&self, e: EdgeId) -> Option<EdgeLabel> {
        self.labels.iter().find(|(_, &x)| x == e).map(|(&l, _)| l)
    }

    pub fn labels(&self) -> &BTreeMap<EdgeLabel, EdgeId> {
        &self.labels
    }

    /// The face of a box in a plain grid; `None` for triangulated grids.
    pub fn face_of_box(&self, b: GridBox) -> Option<FaceId> {
        match self.box_faces.get(&b).map(Vec::as_slice) {
            Some([f]) => Some(*f),
            _ => None,
        }
    }

    /// Faces inside box `b`: one for plain grids, two triangles otherwise.
    pub fn faces_of_box(&self, b: GridBox) -> &[FaceId] {
        self.box_faces.get(&b).map_or(&[], Vec::as_slice)
    }

    pub fn box_of(&self, f: FaceId) -> Option<GridBox> {
        self.box_faces
            .iter()
            .find(|(_, fs)| fs.contains(&f))
            .map(|(&b, _)| b)
    }

    pub fn box_map(&self) -> BTreeMap<FaceId, GridBox> {
        self.box_faces
            .iter()
            .flat_map(|(&b, fs)| fs.iter().map(move |&f| (f, b)))
            .collect()
    }
}

fn assemble(spec: &GridSpec, diagonals: Option<&DiagonalPolicy>) -> Result<Grid, GridError> {
    spec.check(diagonals.is_some())?;
    let (m, n) = (spec.m, spec.n);
    let id = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let points: Vec<(f64, f64)> = (1..=m)
        .flat_map(|i| (1..=n).map(move |j| (j as f64, i as f64)))
        .collect();
    let mut ends: Vec<(EdgeLabel, usize, usize)> = Vec::new();
    for label in grid_labels(m, n) {
        let (a, b) = match label {
            EdgeLabel::H(i, j) => (id(i, j), id(i, j + 1)),
            EdgeLabel::V(i, j) => (id(i, j), id(i + 1, j)),
            EdgeLabel::D(..) => unreachable!(),
        };
        ends.push((label, a, b));
    }
    if let Some(policy) = diagonals {
        for i in 1..m {
            for j in 1..n {
                let (a, b) = if policy.falling(GridBox::new(i, j)) {
                    (id(i, j + 1), id(i + 1, j))
                } else {
                    (id(i, j), id(i + 1, j + 1))
                };
                ends.push((EdgeLabel::D(i, j), a, b));
            }
        }
    }
    let edges: Vec<(usize, usize, Sign)> = ends
        .iter()
        .map(|&(l, a, b)| (a, b, spec.sign_of(l)))
        .collect();
    let graph = PlaneSignedGraph::build(&EmbeddingInput::straight_line(&points, &edges))
        .expect("grid drawings are plane");
    let labels: BTreeMap<EdgeLabel, EdgeId> = ends
        .iter()
        .map(|&(l, a, b)| (l, graph.edge_between(VertexId(a), VertexId(b)).expect("edge")))
        .collect();

    let mut box_faces = BTreeMap::new();
    for i in 1..m {
        for j in 1..n {
            let b = GridBox::new(i, j);
            let bottom = labels[&EdgeLabel::H(i, j)];
            let top = labels[&EdgeLabel::H(i + 1, j)];
            // The bottom edge runs left to right, so its box lies on the left;
            // the top edge traversed right to left has the box on its left too.
            let mut faces = vec![graph.face_of(bottom.forward()).expect("face")];
            let upper = graph.face_of(top.backward()).expect("face");
            if !faces.contains(&upper) {
                faces.push(upper);
            }
            faces.sort();
            box_faces.insert(b, faces);
        }
    }
    Ok(Grid {
        spec: spec.clone(),
        graph,
        labels,
        box_faces,
    })
}

pub fn build_grid(spec: &GridSpec) -> Result<Grid, GridError> {
    assemble(spec, None)
}

pub fn build_triangulated_grid(spec: &GridSpec, policy: &DiagonalPolicy) -> Result<Grid, GridError> {
    assemble(spec, Some(policy))
}

/// True iff the grid has an odd number of interior vertices, which rules out
/// Hamiltonian circles.
pub fn parity_obstruction(m: usize, n: usize) -> Result<bool, GridError> {
    if m < 2 || n < 2 {
        return Err(GridError::BadDimensions { m, n });
    }
    Ok((m - 2) * (n - 2) % 2 == 1)
}

pub fn box_sign(spec: &GridSpec, b: GridBox) -> Result<Sign, GridError> {
    if !b.in_range(spec.m, spec.n) {
        return Err(GridError::OutOfRange(format!("box {b}")));
    }
    let (i, j) = (b.i, b.j);
    Ok([
        EdgeLabel::H(i, j),
        EdgeLabel::H(i + 1, j),
        EdgeLabel::V(i, j),
        EdgeLabel::V(i, j + 1),
    ]
    .into_iter()
    .map(|l| spec.sign_of(l))
    .product())
}

fn non_corner_boxes_agree(spec: &GridSpec) -> bool {
    let mut signs = spec
        .boxes()
        .filter(|b| !b.is_corner(spec.m, spec.n))
        .map(|b| box_sign(spec, b).expect("in range"));
    match signs.next() {
        Some(first) => signs.all(|s| s == first),
        None => true,
    }
}

/// Decides from box signs alone whether all Hamiltonian circles share one
/// sign: they do iff all boxes except the four corners have the same sign.
/// Requires `m` even and `m, n > 3`.
pub fn all_same_sign_decision(spec: &GridSpec) -> Result<bool, GridError> {
    if !spec.m.is_multiple_of(2) || spec.m <= 3 || spec.n <= 3 {
        return Err(GridError::BadPreconditions(format!(
            "need m even and m, n > 3, got {}x{}",
            spec.m, spec.n
        )));
    }
    Ok(non_corner_boxes_agree(spec))
}

/// The same box-sign rule with the roles of `m` and `n` exchanged (`n` even).
/// Exposed for experiments only; nothing asserts that it decides correctly.
pub fn all_same_sign_decision_swapped(spec: &GridSpec) -> Result<bool, GridError> {
    if !spec.n.is_multiple_of(2) || spec.m <= 3 || spec.n <= 3 {
        return Err(GridError::BadPreconditions(format!(
            "need n even and m, n > 3, got {}x{}",
            spec.m, spec.n
        )));
    }
    Ok(non_corner_boxes_agree(spec))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    /// Bit `k` set means the `k`-th box in row-major order is negative.
    pub pattern: u64,
    pub decision: bool,
    pub positive: usize,
    pub negative: usize,
}

impl SweepRecord {
    /// The census verdict: no two Hamiltonian circles of opposite sign.
    pub fn census_same_sign(&self) -> bool {
        self.positive == 0 || self.negative == 0
    }

    pub fn agrees(&self) -> bool {
        self.decision == self.census_same_sign()
    }
}

/// Runs the box-sign decision and the oracle census on every box-sign
/// pattern of an `m x n` grid, in parallel. Records come back in pattern order.
pub fn same_sign_sweep(m: usize, n: usize) -> Result<Vec<SweepRecord>, GridError> {
    let base = GridSpec::all_plus(m, n);
    all_same_sign_decision(&base)?;
    let boxes: Vec<GridBox> = base.boxes().collect();
    if boxes.len() > 20 {
        return Err(GridError::BadPreconditions(format!(
            "{} boxes give too many patterns to sweep",
            boxes.len()
        )));
    }
    let unsigned = build_grid(&base)?;
    (0..1u64 << boxes.len())
        .into_par_iter()
        .map(|pattern| {
            let negative: Vec<GridBox> = boxes
                .iter()
                .enumerate()
                .filter(|(k, _)| pattern >> k & 1 == 1)
                .map(|(_, &b)| b)
                .collect();
            let spec = GridSpec::with_box_signs(m, n, &negative);
            let graph = unsigned.graph.with_signs(|e| {
                spec.sign_of(unsigned.label_of(e).expect("grid edge"))
            });
            let census = sign_census(&graph, None)?;
            Ok(SweepRecord {
                pattern,
                decision: all_same_sign_decision(&spec)?,
                positive: census.positive,
                negative: census.negative,
            })
        })
        .collect()
}
