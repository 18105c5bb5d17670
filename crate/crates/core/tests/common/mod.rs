//! Shared helpers for the integration tests: the fixture set, golden-file
//! comparison and a second Hamiltonian circle enumerator that shares no code
//! with the library search.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use psg_core::fixtures;
use psg_core::format;
use psg_core::grids::{build_grid, build_triangulated_grid, DiagonalPolicy, GridBox, GridSpec};
use psg_core::{Circle, PlaneSignedGraph, VertexId};

pub type EdgeSet = BTreeSet<(usize, usize)>;

pub struct Fixture {
    pub name: &'static str,
    pub graph: PlaneSignedGraph,
    /// Contents of a local configuration file, for the certificate fixtures.
    pub config: Option<String>,
}

pub fn fixture_set() -> Vec<Fixture> {
    let grid = |spec: GridSpec| build_grid(&spec).expect("grid").graph;
    let plain = |name, graph| Fixture {
        name,
        graph,
        config: None,
    };
    let (ls, ls_cfg) = fixtures::ladder_small();
    let (lw, lw_cfg) = fixtures::ladder_wide();
    let (hx, hx_cfg) = fixtures::hexagon();
    let (h1, h1_cfg) = fixtures::hexagon_single_r();
    vec![
        plain("grid_3x3", grid(GridSpec::all_plus(3, 3))),
        plain("grid_3x4", grid(GridSpec::all_plus(3, 4))),
        plain("grid_4x4_box22", grid(GridSpec::with_box_signs(4, 4, &[GridBox::new(2, 2)]))),
        plain(
            "grid_4x3_two_boxes",
            grid(GridSpec::with_box_signs(4, 3, &[GridBox::new(3, 1), GridBox::new(2, 2)])),
        ),
        plain(
            "trigrid_3x3",
            build_triangulated_grid(&GridSpec::with_box_signs(3, 3, &[GridBox::new(1, 1)]), &DiagonalPolicy::Rising)
                .expect("trigrid")
                .graph,
        ),
        plain("three_interior", fixtures::three_interior()),
        Fixture {
            name: "ladder_small",
            config: Some(format::ladder_config_text(&ls, &ls_cfg)),
            graph: ls,
        },
        Fixture {
            name: "ladder_wide",
            config: Some(format::ladder_config_text(&lw, &lw_cfg)),
            graph: lw,
        },
        Fixture {
            name: "hexagon",
            config: Some(format::hex_config_text(&hx, &hx_cfg)),
            graph: hx,
        },
        Fixture {
            name: "hexagon_single_r",
            config: Some(format::hex_config_text(&h1, &h1_cfg)),
            graph: h1,
        },
    ]
}

pub fn test_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn updating() -> bool {
    std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1")
}

/// Compares `actual` with the file at `path`, or rewrites the file when
/// `UPDATE_GOLDEN=1`.
pub fn check_golden(path: &Path, actual: &str) -> bool {
    if updating() {
        std::fs::create_dir_all(path.parent().expect("parent")).expect("golden dir");
        std::fs::write(path, actual).expect("write golden");
        return true;
    }
    match std::fs::read_to_string(path) {
        Ok(expected) => expected == actual,
        Err(e) => panic!("missing golden file {}: {e} (rerun with UPDATE_GOLDEN=1)", path.display()),
    }
}

/// Writes the fixture graph and config files, checking existing copies.
pub fn materialize_fixtures() -> Vec<(String, PathBuf, Option<PathBuf>)> {
    let dir = test_dir().join("fixtures");
    fixture_set()
        .into_iter()
        .map(|f| {
            let graph_path = dir.join(format!("{}.psg", f.name));
            assert!(
                check_golden(&graph_path, &format::serialize_graph(&f.graph)),
                "fixture {} is stale",
                f.name
            );
            let config_path = f.config.map(|text| {
                let p = dir.join(format!("{}.cfg", f.name));
                assert!(check_golden(&p, &text), "config {} is stale", f.name);
                p
            });
            (f.name.to_string(), graph_path, config_path)
        })
        .collect()
}

pub fn circle_edge_set(graph: &PlaneSignedGraph, circle: &Circle) -> EdgeSet {
    circle
        .edges()
        .iter()
        .map(|&e| {
            let (u, v) = graph.ends(e);
            (u.0.min(v.0), u.0.max(v.0))
        })
        .collect()
}

/// Every Hamiltonian circle, found by extending vertex permutations that
/// start at vertex 0 and keep consecutive entries adjacent.
pub fn permutation_circles(graph: &PlaneSignedGraph) -> BTreeSet<EdgeSet> {
    let n = graph.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for (v, row) in adj.iter_mut().enumerate() {
        for w in graph.neighbors(VertexId(v)) {
            row[w.0] = true;
        }
    }
    let mut found = BTreeSet::new();
    if n < 3 {
        return found;
    }
    let mut perm = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    extend(&adj, &mut perm, &mut used, &mut found);
    found
}

fn extend(adj: &[Vec<bool>], perm: &mut Vec<usize>, used: &mut [bool], found: &mut BTreeSet<EdgeSet>) {
    let n = adj.len();
    let last = *perm.last().expect("non-empty");
    if perm.len() == n {
        if adj[last][0] {
            let set = (0..n)
                .map(|k| {
                    let (a, b) = (perm[k], perm[(k + 1) % n]);
                    (a.min(b), a.max(b))
                })
                .collect();
            found.insert(set);
        }
        return;
    }
    for next in 1..n {
        if !used[next] && adj[last][next] {
            used[next] = true;
            perm.push(next);
            extend(adj, perm, used, found);
            perm.pop();
            used[next] = false;
        }
    }
}

