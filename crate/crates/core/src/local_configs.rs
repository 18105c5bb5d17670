//! Circle toggling and the two local certificates for Hamiltonian circles of
//! both signs: the ladder and the hexagon configurations.
//!
//! Both certificates are supplied by the caller (graph, vertex roles and
//! release edge sets). Every hypothesis is checked and the first failing one
//! is reported by name; nothing is searched for.

use std::collections::BTreeSet;

use crate::embedding::{Circle, EdgeId, EmbeddingError, PlaneSignedGraph, VertexId};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LocalConfigError {
    #[error("InvalidConfig: {clause}: {detail}")]
    InvalidConfig { clause: &'static str, detail: String },
    #[error("NotHamiltonianAfterToggle: {0}")]
    NotHamiltonianAfterToggle(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn invalid(clause: &'static str, detail: impl Into<String>) -> LocalConfigError {
    LocalConfigError::InvalidConfig {
        clause,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToggleResult {
    pub circle: Circle,
    /// Product of the toggled cycle signs: `sign(new) = sign(old) * relation`.
    pub sign_relation: Sign,
}

/// Replaces the edge set of `circle` by its symmetric difference with every
/// cycle in `cycles`; the result must again be a Hamiltonian circle.
pub fn toggle(
    graph: &PlaneSignedGraph,
    circle: &Circle,
    cycles: &[Circle],
) -> Result<ToggleResult, LocalConfigError> {
    let mut edges: BTreeSet<EdgeId> = circle.edges().iter().copied().collect();
    let mut relation = Sign::Plus;
    for c in cycles {
        relation *= graph.circle_sign(c)?;
        for &e in c.edges() {
            if !edges.remove(&e) {
                edges.insert(e);
            }
        }
    }
    let result = Circle::from_edges(graph, edges)
        .map_err(|e| LocalConfigError::NotHamiltonianAfterToggle(e.to_string()))?;
    if !result.is_hamiltonian_in(graph) {
        return Err(LocalConfigError::NotHamiltonianAfterToggle(format!(
            "the result visits {} of {} vertices",
            result.vertices().len(),
            graph.vertex_count()
        )));
    }
    Ok(ToggleResult {
        circle: result,
        sign_relation: relation,
    })
}

/// Ladder configuration around the circle `C = v_1 ... v_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderConfig {
    /// `v_1, ..., v_s`.
    pub c: Vec<VertexId>,
    /// 1-based index `i` with `4 <= i <= s - 2`.
    pub i: usize,
    /// Left chain `p_1, ..., p_k` as it runs once `E_L` is released.
    pub p: Vec<VertexId>,
    /// Right chain `q_1, ..., q_r` as it runs once `E_R` is released.
    pub q: Vec<VertexId>,
    pub el: BTreeSet<EdgeId>,
    pub er: BTreeSet<EdgeId>,
}

/// Hexagon configuration `v_1 v_2 r_t v_3 v_4 r_1` with inner path `r_1 ... r_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexConfig {
    pub v: [VertexId; 4],
    pub r: Vec<VertexId>,
    pub p: Vec<VertexId>,
    pub q: Vec<VertexId>,
    pub el: BTreeSet<EdgeId>,
    pub er: BTreeSet<EdgeId>,
}

/// A certified pair of Hamiltonian circles together with the two small
/// circles whose signs differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub h1: Circle,
    pub h2: Circle,
    pub c1: Circle,
    pub c2: Circle,
}

fn require_edge(
    graph: &PlaneSignedGraph,
    a: VertexId,
    b: VertexId,
    clause: &'static str,
) -> Result<EdgeId, LocalConfigError> {
    graph
        .edge_between(a, b)
        .ok_or_else(|| invalid(clause, format!("missing edge {a}-{b}")))
}

fn path_edges(
    graph: &PlaneSignedGraph,
    path: &[VertexId],
    clause: &'static str,
) -> Result<Vec<EdgeId>, LocalConfigError> {
    path.windows(2)
        .map(|w| require_edge(graph, w[0], w[1], clause))
        .collect()
}

fn require_distinct(vertices: &[VertexId], n: usize) -> Result<(), LocalConfigError> {
    if let Some(v) = vertices.iter().find(|v| v.0 >= n) {
        return Err(invalid("vertex roles", format!("vertex {v} does not exist")));
    }
    let set: BTreeSet<_> = vertices.iter().collect();
    if set.len() != vertices.len() {
        return Err(invalid("vertex roles", "a vertex has two roles"));
    }
    Ok(())
}

fn require_live(graph: &PlaneSignedGraph, edges: &BTreeSet<EdgeId>, clause: &'static str) -> Result<(), LocalConfigError> {
    match edges.iter().find(|&&e| !graph.is_live(e)) {
        Some(e) => Err(invalid(clause, format!("{e} is not an edge"))),
        None => Ok(()),
    }
}

/// Deletes the release edges one by one; the result must be 2-connected.
fn release(
    graph: &PlaneSignedGraph,
    edges: &BTreeSet<EdgeId>,
) -> Result<PlaneSignedGraph, LocalConfigError> {
    let mut g = graph.clone();
    for &e in edges {
        g = g
            .delete_edge(e)
            .map_err(|err| invalid("release 2-connected", err.to_string()))?
            .0;
    }
    if !g.is_two_connected().unwrap_or(false) {
        return Err(invalid("release 2-connected", "the released graph has a cut vertex"));
    }
    Ok(g)
}

/// The outer-boundary path from `from` to `to` that avoids `avoid`.
fn outer_path(
    graph: &PlaneSignedGraph,
    from: VertexId,
    to: VertexId,
    avoid: VertexId,
    clause: &'static str,
) -> Result<Vec<VertexId>, LocalConfigError> {
    let outer = graph
        .outer_circle()
        .map_err(|e| invalid(clause, e.to_string()))?;
    let cyc = outer.vertices();
    let pos = |v: VertexId| cyc.iter().position(|&x| x == v);
    let (Some(a), Some(b)) = (pos(from), pos(to)) else {
        return Err(invalid(clause, format!("{from} or {to} is not on the outer boundary")));
    };
    let len = cyc.len();
    for step in [1, len - 1] {
        let mut path = vec![cyc[a]];
        let mut k = a;
        while k != b {
            k = (k + step) % len;
            path.push(cyc[k]);
        }
        if !path.contains(&avoid) {
            return Ok(path);
        }
    }
    Err(invalid(clause, "both outer paths pass the excluded vertex"))
}

fn circle_through(
    graph: &PlaneSignedGraph,
    vertices: &[VertexId],
    clause: &'static str,
) -> Result<Circle, LocalConfigError> {
    Circle::from_vertices(graph, vertices).map_err(|e| invalid(clause, e.to_string()))
}

fn require_released(
    graph: &PlaneSignedGraph,
    released: &PlaneSignedGraph,
    region: &Circle,
    clause: &'static str,
) -> Result<(), LocalConfigError> {
    let exterior = released.classify_vertices().exterior;
    match graph
        .vertices_inside(region)
        .into_iter()
        .find(|v| !exterior.contains(v))
    {
        Some(v) => Err(invalid(clause, format!("vertex {v} stays interior after the release"))),
        None => Ok(()),
    }
}

fn require_hamiltonian(
    graph: &PlaneSignedGraph,
    released: &BTreeSet<EdgeId>,
    seq: &[VertexId],
    clause: &'static str,
) -> Result<Circle, LocalConfigError> {
    let circle = circle_through(graph, seq, clause)?;
    if !circle.is_hamiltonian_in(graph) {
        return Err(invalid(clause, format!("the circle misses {} vertices", graph.vertex_count() - circle.len())));
    }
    if let Some(e) = circle.edges().iter().find(|e| released.contains(e)) {
        return Err(invalid(clause, format!("the circle uses released edge {e}")));
    }
    Ok(circle)
}

/// Checks a ladder configuration and, when `sign(C_1) != sign(C_2)`, returns
/// Hamiltonian circles `H_1` and `H_2 = H_1 + C_1 + C_2` of opposite sign.
pub fn certify_ladder(
    graph: &PlaneSignedGraph,
    config: &LadderConfig,
) -> Result<Option<Certificate>, LocalConfigError> {
    let c = &config.c;
    let s = c.len();
    let i = config.i;
    if s < 6 || i < 4 || i + 2 > s {
        return Err(invalid("indices", format!("need 4 <= i <= s - 2, got i={i}, s={s}")));
    }
    if config.p.is_empty() || config.q.is_empty() {
        return Err(invalid("vertex roles", "empty p or q chain"));
    }
    let all: Vec<VertexId> = c.iter().chain(&config.p).chain(&config.q).copied().collect();
    require_distinct(&all, graph.vertex_count())?;
    require_live(graph, &config.el, "E_L edges")?;
    require_live(graph, &config.er, "E_R edges")?;
    // 1-based access to v_1..v_s
    let v = |k: usize| c[k - 1];

    let circle_c = circle_through(graph, c, "cycle C")?;
    require_edge(graph, v(3), v(s), "ladder chords")?;
    require_edge(graph, v(i - 1), v(i + 2), "ladder chords")?;
    if let Some(x) = graph.vertices_inside(&circle_c).first() {
        return Err(invalid("empty disk", format!("vertex {x} lies inside C")));
    }
    for (a, b) in [(v(1), v(2)), (v(i), v(i + 1))] {
        let e = require_edge(graph, a, b, "outer edges")?;
        if !graph.is_outer_edge(e) {
            return Err(invalid("outer edges", format!("{a}-{b} is not on the outer boundary")));
        }
    }

    let (p1, pk) = (config.p[0], *config.p.last().expect("non-empty"));
    let (q1, qr) = (config.q[0], *config.q.last().expect("non-empty"));
    let mut p_l = vec![p1, v(1)];
    p_l.extend((i + 1..=s).rev().map(v));
    p_l.push(pk);
    let mut p_r = vec![q1];
    p_r.extend((2..=i).map(v));
    p_r.push(qr);
    let fixed_l: BTreeSet<EdgeId> = path_edges(graph, &p_l, "P_L fixed")?.into_iter().collect();
    let fixed_r: BTreeSet<EdgeId> = path_edges(graph, &p_r, "P_R fixed")?.into_iter().collect();
    if let Some(e) = config.el.intersection(&fixed_l).next() {
        return Err(invalid("P_L fixed", format!("E_L contains {e} of P_L")));
    }
    if let Some(e) = config.er.intersection(&fixed_r).next() {
        return Err(invalid("P_R fixed", format!("E_R contains {e} of P_R")));
    }
    path_edges(graph, &config.p, "p chain")?;
    path_edges(graph, &config.q, "q chain")?;

    // L closes P_L through the outer boundary on the left, R closes P_R on the right.
    let mut l_seq: Vec<VertexId> = vec![v(1)];
    l_seq.extend((i + 1..=s).rev().map(v));
    let back = outer_path(graph, v(i + 1), v(1), v(2), "circle L")?;
    l_seq.extend(&back[1..back.len() - 1]);
    let circle_l = circle_through(graph, &l_seq, "circle L")?;
    let mut r_seq: Vec<VertexId> = (2..=i).map(v).collect();
    let back = outer_path(graph, v(i), v(2), v(1), "circle R")?;
    r_seq.extend(&back[1..back.len() - 1]);
    let circle_r = circle_through(graph, &r_seq, "circle R")?;

    let released_edges: BTreeSet<EdgeId> = config.el.union(&config.er).copied().collect();
    let released = release(graph, &released_edges)?;
    require_released(graph, &released, &circle_l, "left release")?;
    require_released(graph, &released, &circle_r, "right release")?;

    let mut h1_seq = vec![v(1)];
    h1_seq.extend((i + 2..=s).rev().map(v));
    h1_seq.extend((2..=i - 1).rev().map(v));
    h1_seq.extend(&config.q);
    h1_seq.push(v(i));
    h1_seq.push(v(i + 1));
    h1_seq.extend(config.p.iter().rev());
    let h1 = require_hamiltonian(graph, &released_edges, &h1_seq, "H_1 Hamiltonian")?;

    let c1 = circle_through(graph, &[v(1), v(2), v(3), v(s)], "circle C_1")?;
    let c2 = circle_through(graph, &[v(i - 1), v(i), v(i + 1), v(i + 2)], "circle C_2")?;
    if graph.circle_sign(&c1)? == graph.circle_sign(&c2)? {
        return Ok(None);
    }
    let toggled = toggle(graph, &h1, &[c1.clone(), c2.clone()])?;
    Ok(Some(Certificate {
        h1,
        h2: toggled.circle,
        c1,
        c2,
    }))
}

/// Checks a hexagon configuration and, when `sign(C_1) != sign(C_2)`, returns
/// the two explicit Hamiltonian circles of opposite sign.
pub fn certify_hexagon(
    graph: &PlaneSignedGraph,
    config: &HexConfig,
) -> Result<Option<Certificate>, LocalConfigError> {
    let [v1, v2, v3, v4] = config.v;
    let r = &config.r;
    if r.is_empty() || config.p.is_empty() || config.q.is_empty() {
        return Err(invalid("vertex roles", "empty r, p or q chain"));
    }
    let all: Vec<VertexId> = config
        .v
        .iter()
        .chain(r)
        .chain(&config.p)
        .chain(&config.q)
        .copied()
        .collect();
    require_distinct(&all, graph.vertex_count())?;
    require_live(graph, &config.el, "E_L edges")?;
    require_live(graph, &config.er, "E_R edges")?;
    let (r1, rt) = (r[0], *r.last().expect("non-empty"));
    let (p1, pk) = (config.p[0], *config.p.last().expect("non-empty"));
    let (q1, ql) = (config.q[0], *config.q.last().expect("non-empty"));

    for (a, b) in [(v1, v2), (v2, rt), (rt, v3), (v3, v4), (v4, r1), (r1, v1)] {
        require_edge(graph, a, b, "hexagon")?;
    }
    path_edges(graph, r, "path R")?;
    for (a, b) in [(v1, v2), (v3, v4)] {
        let e = require_edge(graph, a, b, "outer edges")?;
        if !graph.is_outer_edge(e) {
            return Err(invalid("outer edges", format!("{a}-{b} is not on the outer boundary")));
        }
    }

    let mut c1_seq = vec![v1, v2];
    c1_seq.extend(r.iter().rev());
    let c1 = circle_through(graph, &c1_seq, "circle C_1")?;
    let mut c2_seq = vec![v3, v4];
    c2_seq.extend(r.iter());
    let c2 = circle_through(graph, &c2_seq, "circle C_2")?;
    for circle in [&c1, &c2] {
        if let Some(x) = graph.vertices_inside(circle).first() {
            return Err(invalid("hexagon interior", format!("vertex {x} is inside the hexagon but off R")));
        }
    }

    let fixed_l = path_edges(graph, &[p1, v1, r1, v4, pk], "fixed left edges")?;
    let fixed_r = path_edges(graph, &[q1, v2, rt, v3, ql], "fixed right edges")?;
    if let Some(e) = fixed_l.iter().find(|e| config.el.contains(e)) {
        return Err(invalid("fixed left edges", format!("E_L contains {e}")));
    }
    if let Some(e) = fixed_r.iter().find(|e| config.er.contains(e)) {
        return Err(invalid("fixed right edges", format!("E_R contains {e}")));
    }
    path_edges(graph, &config.p, "p chain")?;
    path_edges(graph, &config.q, "q chain")?;

    let mut cl_seq = vec![v1, r1, v4];
    let back = outer_path(graph, v4, v1, v2, "circle C'_L")?;
    cl_seq.extend(&back[1..back.len() - 1]);
    let circle_l = circle_through(graph, &cl_seq, "circle C'_L")?;
    let mut cr_seq = outer_path(graph, v2, v3, v1, "circle C'_R")?;
    cr_seq.push(rt);
    let circle_r = circle_through(graph, &cr_seq, "circle C'_R")?;

    let released_edges: BTreeSet<EdgeId> = config.el.union(&config.er).copied().collect();
    let released = release(graph, &released_edges)?;
    require_released(graph, &released, &circle_l, "left release")?;
    require_released(graph, &released, &circle_r, "right release")?;

    let mut h1_seq = vec![v1, v2];
    h1_seq.extend(&config.q);
    h1_seq.push(v3);
    h1_seq.extend(r.iter().rev());
    h1_seq.push(v4);
    h1_seq.extend(config.p.iter().rev());
    let h1 = require_hamiltonian(graph, &released_edges, &h1_seq, "H_1 Hamiltonian")?;
    let mut h2_seq = vec![v1];
    h2_seq.extend(r.iter());
    h2_seq.push(v2);
    h2_seq.extend(&config.q);
    h2_seq.push(v3);
    h2_seq.push(v4);
    h2_seq.extend(config.p.iter().rev());
    let h2 = require_hamiltonian(graph, &released_edges, &h2_seq, "H_2 Hamiltonian")?;

    let (s1, s2) = (graph.circle_sign(&c1)?, graph.circle_sign(&c2)?);
    let (t1, t2) = (graph.circle_sign(&h1)?, graph.circle_sign(&h2)?);
    assert_eq!(t1 * t2, s1 * s2, "sign ratio identity");
    if s1 == s2 {
        return Ok(None);
    }
    Ok(Some(Certificate { h1, h2, c1, c2 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grids::{build_grid, GridBox, GridSpec};
    use crate::ham_search::enumerate_hamiltonian;

    #[test]
    fn empty_toggle_is_identity() {
        let grid = build_grid(&GridSpec::all_plus(2, 3)).unwrap();
        let c = grid.graph.outer_circle().unwrap();
        let t = toggle(&grid.graph, &c, &[]).unwrap();
        assert_eq!(t.circle, c);
        assert_eq!(t.sign_relation, Sign::Plus);
    }

    #[test]
    fn toggle_that_drops_a_vertex_is_reported() {
        let grid = build_grid(&GridSpec::all_plus(2, 3)).unwrap();
        let g = &grid.graph;
        let outer = g.outer_circle().unwrap();
        let f = grid.face_of_box(GridBox::new(1, 1)).unwrap();
        let box11 = Circle::from_edges(g, g.face(f).unwrap().edges()).unwrap();
        assert!(matches!(
            toggle(g, &outer, &[box11]),
            Err(LocalConfigError::NotHamiltonianAfterToggle(_))
        ));
    }

    fn assert_certified(graph: &PlaneSignedGraph, cert: &Certificate) {
        let all = enumerate_hamiltonian(graph, None).unwrap().circles;
        assert!(all.contains(&cert.h1));
        assert!(all.contains(&cert.h2));
        assert_ne!(graph.circle_sign(&cert.h1).unwrap(), graph.circle_sign(&cert.h2).unwrap());
    }

    #[test]
    fn ladder_fixtures_certify() {
        for (graph, config) in [fixtures::ladder_small(), fixtures::ladder_wide()] {
            let cert = certify_ladder(&graph, &config).unwrap().unwrap();
            assert_certified(&graph, &cert);
            let plus = graph.with_signs(|_| Sign::Plus);
            assert_eq!(certify_ladder(&plus, &config).unwrap(), None);
        }
    }

    #[test]
    fn ladder_rejects_release_of_fixed_path() {
        let (graph, mut config) = fixtures::ladder_small();
        let v1 = config.c[0];
        let p1 = config.p[0];
        config.el.insert(graph.edge_between(p1, v1).unwrap());
        let err = certify_ladder(&graph, &config).unwrap_err();
        assert!(matches!(err, LocalConfigError::InvalidConfig { clause: "P_L fixed", .. }));
    }

    #[test]
    fn ladder_without_release_leaves_vertex_inside() {
        let (graph, mut config) = fixtures::ladder_small();
        config.el.clear();
        let err = certify_ladder(&graph, &config).unwrap_err();
        assert!(matches!(err, LocalConfigError::InvalidConfig { clause: "left release", .. }));
    }

    #[test]
    fn hexagon_fixtures_certify() {
        for (graph, config) in [fixtures::hexagon(), fixtures::hexagon_single_r()] {
            let cert = certify_hexagon(&graph, &config).unwrap().unwrap();
            assert_certified(&graph, &cert);
            let plus = graph.with_signs(|_| Sign::Plus);
            assert_eq!(certify_hexagon(&plus, &config).unwrap(), None);
        }
    }

    #[test]
    fn hexagon_rejects_fixed_edge_release() {
        let (graph, mut config) = fixtures::hexagon();
        let [v1, ..] = config.v;
        config.el.insert(graph.edge_between(v1, config.r[0]).unwrap());
        let err = certify_hexagon(&graph, &config).unwrap_err();
        assert!(matches!(err, LocalConfigError::InvalidConfig { clause: "fixed left edges", .. }));
    }
}
