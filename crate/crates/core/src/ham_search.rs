//! Exhaustive Hamiltonian-circle enumeration and sign census.
//!
//! The search grows a path from vertex 0 and keeps a circle only when the
//! second vertex is smaller than the last one, so each circle is reported
//! once. Branches are cut when an unvisited vertex has fewer than two
//! usable neighbors, when a degree-2 vertex forces the next step, or when
//! the unvisited vertices are no longer reachable from the path head.

use std::collections::BTreeSet;

use crate::embedding::{Circle, EmbeddingError, FaceId, PlaneSignedGraph, VertexId};
use crate::peeling::{coham_from_circle, hamiltonian_set_sign, CoHamSequence, PeelingError};
use crate::sign::Sign;

/// Default cap on the number of circles collected.
pub const DEFAULT_LIMIT: usize = 1_000_000;

/// The search keeps vertex sets in a `u128`.
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HamSearchError {
    #[error("LimitExceeded: more than {0} Hamiltonian circles")]
    LimitExceeded(usize),
    #[error("TooManyVertices: {0} vertices, the search supports at most 128")]
    TooManyVertices(usize),
    #[error("NoHamiltonianCircle: the graph has no Hamiltonian circle")]
    NoHamiltonianCircle,
    #[error("NotTwoConnected: the graph is not 2-connected")]
    NotTwoConnected,
    #[error("BadSymmetricDifference: {0}")]
    BadSymmetricDifference(String),
    #[error(transparent)]
    Peeling(Box<PeelingError>),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

impl From<PeelingError> for HamSearchError {
    fn from(e: PeelingError) -> Self {
        HamSearchError::Peeling(Box::new(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Circles sorted by their edge sets.
    pub circles: Vec<Circle>,
    /// Set when the limit stopped the search early.
    pub truncated: bool,
}

struct Search<'a> {
    graph: &'a PlaneSignedGraph,
    adj: Vec<u128>,
    nbrs: Vec<Vec<usize>>,
    path: Vec<usize>,
    found: Vec<Vec<usize>>,
    limit: usize,
    truncated: bool,
}

impl Search<'_> {
    fn avail(&self, w: usize, open: u128) -> u32 {
        (self.adj[w] & open).count_ones()
    }

    fn run(&mut self, visited: u128, all: u128) {
        if self.truncated {
            return;
        }
        let head = *self.path.last().expect("non-empty path");
        let unvisited = all & !visited;
        if unvisited == 0 {
            if self.path.len() >= 3 && self.adj[head] & 1 != 0 && self.path[1] < head {
                if self.found.len() == self.limit {
                    self.truncated = true;
                } else {
                    self.found.push(self.path.clone());
                }
            }
            return;
        }
        if self.adj[0] & unvisited == 0 {
            return;
        }
        let open = unvisited | 1 | (1u128 << head);
        let mut forced = None;
        let mut rest = unvisited;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let a = self.avail(w, open);
            if a < 2 {
                return;
            }
            if a == 2 && head != 0 && self.adj[head] >> w & 1 == 1 {
                if forced.is_some() {
                    return;
                }
                forced = Some(w);
            }
        }
        // every unvisited vertex must be reachable from the head through unvisited vertices
        let mut reached = 1u128 << head;
        let mut frontier = reached;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & unvisited & !reached;
            reached |= new;
            frontier |= new;
        }
        if reached & unvisited != unvisited {
            return;
        }
        let candidates: Vec<usize> = match forced {
            Some(w) => vec![w],
            None => self.nbrs[head]
                .iter()
                .copied()
                .filter(|&w| unvisited >> w & 1 == 1)
                .collect(),
        };
        for w in candidates {
            self.path.push(w);
            self.run(visited | 1u128 << w, all);
            self.path.pop();
            if self.truncated {
                return;
            }
        }
    }
}

/// All Hamiltonian circles, deduplicated and sorted by edge set. At most
/// `limit` circles are kept; `truncated` reports whether more exist.
pub fn enumerate_hamiltonian(
    graph: &PlaneSignedGraph,
    limit: Option<usize>,
) -> Result<Enumeration, HamSearchError> {
    let n = graph.vertex_count();
    if n > MAX_VERTICES {
        return Err(HamSearchError::TooManyVertices(n));
    }
    if n < 3 {
        return Ok(Enumeration {
            circles: Vec::new(),
            truncated: false,
        });
    }
    let mut nbrs: Vec<Vec<usize>> = graph
        .vertices()
        .map(|v| graph.neighbors(v).map(|w| w.0).collect())
        .collect();
    for list in &mut nbrs {
        list.sort_unstable();
    }
    let adj = nbrs
        .iter()
        .map(|l| l.iter().fold(0u128, |m, &w| m | 1u128 << w))
        .collect();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut search = Search {
        graph,
        adj,
        nbrs,
        path: vec![0],
        found: Vec::new(),
        limit: limit.unwrap_or(DEFAULT_LIMIT),
        truncated: false,
    };
    search.run(1, all);
    let mut circles: Vec<Circle> = search
        .found
        .iter()
        .map(|p| {
            let vs: Vec<VertexId> = p.iter().map(|&v| VertexId(v)).collect();
            Circle::from_vertices(search.graph, &vs).expect("search paths are circles")
        })
        .collect();
    circles.sort();
    Ok(Enumeration {
        circles,
        truncated: search.truncated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignCensus {
    pub positive: usize,
    pub negative: usize,
    /// First positive circle in enumeration order.
    pub positive_witness: Option<Circle>,
    pub negative_witness: Option<Circle>,
}

impl SignCensus {
    pub fn total(&self) -> usize {
        self.positive + self.negative
    }

    pub fn has_both_signs(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }
}

pub fn sign_census(graph: &PlaneSignedGraph, limit: Option<usize>) -> Result<SignCensus, HamSearchError> {
    let limit = limit.unwrap_or(DEFAULT_LIMIT);
    let found = enumerate_hamiltonian(graph, Some(limit))?;
    if found.truncated {
        return Err(HamSearchError::LimitExceeded(limit));
    }
    let mut census = SignCensus {
        positive: 0,
        negative: 0,
        positive_witness: None,
        negative_witness: None,
    };
    for c in found.circles {
        match graph.circle_sign(&c)? {
            Sign::Plus => {
                census.positive += 1;
                census.positive_witness.get_or_insert(c);
            }
            Sign::Minus => {
                census.negative += 1;
                census.negative_witness.get_or_insert(c);
            }
        }
    }
    Ok(census)
}

/// Two co-Hamiltonian sequences whose deleted faces have opposite sign
/// products, pulled from a positive and a negative Hamiltonian circle.
/// `None` when every Hamiltonian circle has the same sign.
pub fn opposite_sign_witness(
    graph: &PlaneSignedGraph,
) -> Result<Option<(CoHamSequence, CoHamSequence)>, HamSearchError> {
    if !graph.is_two_connected().unwrap_or(false) {
        return Err(HamSearchError::NotTwoConnected);
    }
    let census = sign_census(graph, None)?;
    match (census.positive_witness, census.negative_witness) {
        (None, None) => Err(HamSearchError::NoHamiltonianCircle),
        (Some(pos), Some(neg)) => Ok(Some((
            coham_from_circle(graph, &pos)?,
            coham_from_circle(graph, &neg)?,
        ))),
        _ => Ok(None),
    }
}

/// Checks that two Hamiltonian sets differing in one face each have equal
/// circle signs exactly when the two swapped faces have equal signs.
pub fn symmetric_difference_sign_check(
    graph: &PlaneSignedGraph,
    h1: &BTreeSet<FaceId>,
    h2: &BTreeSet<FaceId>,
) -> Result<bool, HamSearchError> {
    let only1: Vec<FaceId> = h1.difference(h2).copied().collect();
    let only2: Vec<FaceId> = h2.difference(h1).copied().collect();
    if only1.len() != 1 || only2.len() != 1 {
        return Err(HamSearchError::BadSymmetricDifference(format!(
            "sets differ in {} and {} faces, expected one each",
            only1.len(),
            only2.len()
        )));
    }
    let s1 = hamiltonian_set_sign(graph, h1)?;
    let s2 = hamiltonian_set_sign(graph, h2)?;
    let sa = graph.face_sign(only1[0]).expect("validated face");
    let sb = graph.face_sign(only2[0]).expect("validated face");
    Ok((s1 == s2) == (sa == sb))
}
