//! Text formats: graph files, DOT export, grid signing files, key-value
//! configuration files and deletion sequence files.
//!
//! Graph files look like
//!
//! ```text
//! psg 1
//! vertex 0 : 1 3
//! vertex 1 : 2 0
//! vertex 2 : 3 1
//! vertex 3 : 0 2
//! edge 0 1 -
//! outer : 0 3 2 1 0
//! ```
//!
//! Neighbors are listed counterclockwise, `edge` lines set signs (default
//! `+`), and the `outer` line is a closed walk around the unbounded face.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::embedding::{EdgeId, EmbeddingError, EmbeddingInput, OuterHint, PlaneSignedGraph, VertexId};
use crate::face_dual::FaceGraph;
use crate::grids::{EdgeLabel, GridBox};
use crate::local_configs::{HexConfig, LadderConfig};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("ParseError: line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn parse_err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        reason: reason.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn parse_num(line: usize, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a vertex id, found `{token}`")))
}

pub fn parse_graph(text: &str) -> Result<EmbeddingInput, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "psg 1")) => {}
        Some((line, other)) => return Err(parse_err(line, format!("expected header `psg 1`, found `{other}`"))),
        None => return Err(parse_err(1, "empty file")),
    }
    let mut rotations: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
    let mut signs = BTreeMap::new();
    let mut outer = None;
    for (line, content) in lines {
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match keyword {
            "vertex" => {
                let (id, nbrs) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(line, "expected `vertex <id> : <neighbors>`"))?;
                let id = parse_num(line, id.trim())?;
                let nbrs = nbrs
                    .split_whitespace()
                    .map(|t| parse_num(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                if rotations.insert(id, (line, nbrs)).is_some() {
                    return Err(parse_err(line, format!("vertex {id} declared twice")));
                }
            }
            "edge" => {
                let tokens: Vec<&str> = rest.split_whitespace().collect();
                if !(2..=3).contains(&tokens.len()) {
                    return Err(parse_err(line, "expected `edge <u> <v> [+|-]`"));
                }
                let u = parse_num(line, tokens[0])?;
                let v = parse_num(line, tokens[1])?;
                if u == v {
                    return Err(parse_err(line, format!("loop at vertex {u}")));
                }
                let sign = match tokens.get(2) {
                    Some(t) => t.parse::<Sign>().map_err(|e| parse_err(line, e.to_string()))?,
                    None => Sign::Plus,
                };
                if signs.insert((u.min(v), u.max(v)), sign).is_some() {
                    return Err(parse_err(line, format!("edge {u} {v} listed twice")));
                }
            }
            "outer" => {
                let walk = rest
                    .trim()
                    .strip_prefix(':')
                    .ok_or_else(|| parse_err(line, "expected `outer : <walk>`"))?;
                let walk = walk
                    .split_whitespace()
                    .map(|t| parse_num(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                if outer.replace(walk).is_some() {
                    return Err(parse_err(line, "outer face given twice"));
                }
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let n = rotations.keys().next_back().map_or(0, |&k| k + 1);
    if let Some(missing) = (0..n).find(|k| !rotations.contains_key(k)) {
        return Err(parse_err(0, format!("vertex {missing} is not declared")));
    }
    let outer = outer.ok_or_else(|| parse_err(0, "missing `outer` line"))?;
    Ok(EmbeddingInput {
        rotations: rotations.into_values().map(|(_, nbrs)| nbrs).collect(),
        signs,
        outer: OuterHint::Walk(outer),
    })
}

pub fn read_graph(text: &str) -> Result<PlaneSignedGraph, FormatError> {
    Ok(PlaneSignedGraph::build(&parse_graph(text)?)?)
}

pub fn serialize_graph(graph: &PlaneSignedGraph) -> String {
    let mut out = String::from("psg 1\n");
    for v in graph.vertices() {
        let _ = write!(out, "vertex {v} :");
        for w in graph.neighbors(v) {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
    let mut edges: Vec<(VertexId, VertexId, Sign)> = graph
        .edges()
        .map(|e| {
            let (u, v) = graph.ends(e);
            (u, v, graph.sign(e))
        })
        .collect();
    edges.sort();
    for (u, v, s) in edges {
        let _ = writeln!(out, "edge {u} {v} {s}");
    }
    out.push_str("outer :");
    let walk = graph.outer_walk().vertices();
    for v in walk.iter().chain(walk.first()) {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    out
}

pub fn graph_to_dot(graph: &PlaneSignedGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in graph.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for e in graph.edges() {
        let (u, v) = graph.ends(e);
        let s = graph.sign(e);
        let style = if s.is_negative() { ", style=dashed" } else { "" };
        let _ = writeln!(out, "  {u} -- {v} [label=\"{s}\"{style}];");
    }
    out.push_str("}\n");
    out
}

pub fn face_graph_to_dot(dual: &FaceGraph) -> String {
    let mut out = String::from("graph D {\n");
    for f in dual.nodes() {
        let l = dual.label(f).expect("node");
        let _ = writeln!(out, "  {f} [label=\"({},{})\"];", l.phi, l.degree);
    }
    for (a, b) in dual.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

/// Lines `h i j +|-`, `v i j +|-` or `d i j +|-`.
pub fn parse_signing(text: &str) -> Result<BTreeMap<EdgeLabel, Sign>, FormatError> {
    let mut map = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(parse_err(line, "expected `h|v|d i j +|-`"));
        }
        let label: EdgeLabel = tokens[..3]
            .join(" ")
            .parse()
            .map_err(|e: crate::grids::GridError| parse_err(line, e.to_string()))?;
        let sign: Sign = tokens[3].parse().map_err(|e: crate::sign::ParseSignError| parse_err(line, e.to_string()))?;
        if map.insert(label, sign).is_some() {
            return Err(parse_err(line, format!("`{label}` listed twice")));
        }
    }
    Ok(map)
}

/// `key=value` lines.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, (usize, String)>, FormatError> {
    let mut map = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected `key=value`"))?;
        if map
            .insert(k.trim().to_string(), (line, v.trim().to_string()))
            .is_some()
        {
            return Err(parse_err(line, format!("key `{}` given twice", k.trim())));
        }
    }
    Ok(map)
}

struct Config<'a> {
    graph: &'a PlaneSignedGraph,
    map: BTreeMap<String, (usize, String)>,
}

impl Config<'_> {
    fn raw(&self, key: &str) -> Result<(usize, &str), FormatError> {
        self.map
            .get(key)
            .map(|(l, v)| (*l, v.as_str()))
            .ok_or_else(|| parse_err(0, format!("missing key `{key}`")))
    }

    fn vertices(&self, key: &str) -> Result<Vec<VertexId>, FormatError> {
        let (line, value) = self.raw(key)?;
        value
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| parse_num(line, t).map(VertexId))
            .collect()
    }

    fn vertex(&self, key: &str) -> Result<VertexId, FormatError> {
        let (line, _) = self.raw(key)?;
        match self.vertices(key)?.as_slice() {
            [v] => Ok(*v),
            _ => Err(parse_err(line, format!("`{key}` must name one vertex"))),
        }
    }

    fn edges(&self, key: &str) -> Result<BTreeSet<EdgeId>, FormatError> {
        let Ok((line, value)) = self.raw(key) else {
            return Ok(BTreeSet::new());
        };
        value
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| parse_edge_ref(self.graph, line, t))
            .collect()
    }
}

/// `e<id>` or `<u>-<v>`.
fn parse_edge_ref(graph: &PlaneSignedGraph, line: usize, token: &str) -> Result<EdgeId, FormatError> {
    if let Some(id) = token.strip_prefix('e') {
        let e = EdgeId(parse_num(line, id)?);
        return if graph.is_live(e) {
            Ok(e)
        } else {
            Err(parse_err(line, format!("{e} is not an edge")))
        };
    }
    let (u, v) = token
        .split_once('-')
        .ok_or_else(|| parse_err(line, format!("expected `e<id>` or `u-v`, found `{token}`")))?;
    let (u, v) = (parse_num(line, u)?, parse_num(line, v)?);
    graph
        .edge_between(VertexId(u), VertexId(v))
        .ok_or_else(|| parse_err(line, format!("no edge {u}-{v}")))
}

/// Keys `c`, `i`, `p`, `q` and optionally `EL`, `ER`.
pub fn parse_ladder_config(graph: &PlaneSignedGraph, text: &str) -> Result<LadderConfig, FormatError> {
    let cfg = Config {
        graph,
        map: parse_key_values(text)?,
    };
    let (line, i) = cfg.raw("i")?;
    Ok(LadderConfig {
        c: cfg.vertices("c")?,
        i: parse_num(line, i)?,
        p: cfg.vertices("p")?,
        q: cfg.vertices("q")?,
        el: cfg.edges("EL")?,
        er: cfg.edges("ER")?,
    })
}

/// Keys `v1`..`v4` (or `v` with four entries), `r`, `p`, `q` and optionally `EL`, `ER`.
pub fn parse_hex_config(graph: &PlaneSignedGraph, text: &str) -> Result<HexConfig, FormatError> {
    let cfg = Config {
        graph,
        map: parse_key_values(text)?,
    };
    let v = if cfg.map.contains_key("v") {
        let (line, _) = cfg.raw("v")?;
        let vs = cfg.vertices("v")?;
        <[VertexId; 4]>::try_from(vs).map_err(|_| parse_err(line, "`v` must list four vertices"))?
    } else {
        [cfg.vertex("v1")?, cfg.vertex("v2")?, cfg.vertex("v3")?, cfg.vertex("v4")?]
    };
    Ok(HexConfig {
        v,
        r: cfg.vertices("r")?,
        p: cfg.vertices("p")?,
        q: cfg.vertices("q")?,
        el: cfg.edges("EL")?,
        er: cfg.edges("ER")?,
    })
}

pub fn ladder_config_text(graph: &PlaneSignedGraph, config: &LadderConfig) -> String {
    format!(
        "c={}\ni={}\np={}\nq={}\nEL={}\nER={}\n",
        join_vertices(&config.c),
        config.i,
        join_vertices(&config.p),
        join_vertices(&config.q),
        join_edges(graph, &config.el),
        join_edges(graph, &config.er),
    )
}

pub fn hex_config_text(graph: &PlaneSignedGraph, config: &HexConfig) -> String {
    let [v1, v2, v3, v4] = config.v;
    format!(
        "v1={v1}\nv2={v2}\nv3={v3}\nv4={v4}\nr={}\np={}\nq={}\nEL={}\nER={}\n",
        join_vertices(&config.r),
        join_vertices(&config.p),
        join_vertices(&config.q),
        join_edges(graph, &config.el),
        join_edges(graph, &config.er),
    )
}

fn join_vertices(vs: &[VertexId]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn join_edges(graph: &PlaneSignedGraph, es: &BTreeSet<EdgeId>) -> String {
    es.iter()
        .map(|&e| {
            let (u, v) = graph.ends(e);
            format!("{u}-{v}")
        })
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceItem {
    Edge(VertexId, VertexId),
    Box(GridBox),
}

/// One `u v` edge or `[i,j]` box per line.
pub fn parse_sequence(text: &str) -> Result<Vec<SequenceItem>, FormatError> {
    content_lines(text)
        .map(|(line, content)| {
            if content.starts_with('[') {
                content
                    .parse::<GridBox>()
                    .map(SequenceItem::Box)
                    .map_err(|e| parse_err(line, e.to_string()))
            } else {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                match tokens.as_slice() {
                    [u, v] => Ok(SequenceItem::Edge(
                        VertexId(parse_num(line, u)?),
                        VertexId(parse_num(line, v)?),
                    )),
                    _ => Err(parse_err(line, "expected `u v` or `[i,j]`")),
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grids::{build_grid, GridSpec};

    const SQUARE: &str = "psg 1\n# a 4-cycle\nvertex 0 : 1 3\nvertex 1 : 2 0\nvertex 2 : 3 1\nvertex 3 : 0 2\nedge 0 1 -\nouter : 0 3 2 1 0\n";

    #[test]
    fn four_cycle_file() {
        let g = read_graph(SQUARE).unwrap();
        assert_eq!(g.face_count(), 2);
        assert_eq!(g.sign(g.edge_between(VertexId(0), VertexId(1)).unwrap()), Sign::Minus);
        let text = serialize_graph(&g);
        assert_eq!(serialize_graph(&read_graph(&text).unwrap()), text);
    }

    #[test]
    fn loop_is_a_parse_error() {
        let text = SQUARE.replace("edge 0 1 -", "edge 1 1 +");
        assert_eq!(
            read_graph(&text).unwrap_err(),
            FormatError::Parse {
                line: 7,
                reason: "loop at vertex 1".into()
            }
        );
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(read_graph("psg 2\n"), Err(FormatError::Parse { line: 1, .. })));
        let one_sided = SQUARE.replace("vertex 2 : 3 1", "vertex 2 : 3");
        assert!(matches!(
            read_graph(&one_sided),
            Err(FormatError::Embedding(EmbeddingError::InconsistentRotation { .. }))
        ));
        let unknown = SQUARE.replace("vertex 2 : 3 1", "vertex 2 : 3 1 7");
        assert!(matches!(
            read_graph(&unknown),
            Err(FormatError::Embedding(EmbeddingError::UnknownVertex(7)))
        ));
    }

    #[test]
    fn grid_round_trip() {
        let grid = build_grid(&GridSpec::all_plus(3, 4)).unwrap();
        let text = serialize_graph(&grid.graph);
        let back = read_graph(&text).unwrap();
        assert_eq!(back.outer_edges(), grid.graph.outer_edges());
        assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn dot_output() {
        let grid = build_grid(&GridSpec::all_plus(2, 2)).unwrap();
        let dot = graph_to_dot(&grid.graph);
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert_eq!(dot.lines().filter(|l| l.ends_with(';') && !l.contains("--")).count(), 4);
        let dual = crate::face_dual::weak_dual(&grid.graph);
        assert_eq!(face_graph_to_dot(&dual), "graph D {\n  f0 [label=\"(2,0)\"];\n}\n");
    }

    #[test]
    fn config_round_trip() {
        let (g, config) = fixtures::ladder_wide();
        let text = ladder_config_text(&g, &config);
        assert_eq!(parse_ladder_config(&g, &text).unwrap(), config);
        let (g, config) = fixtures::hexagon();
        let text = hex_config_text(&g, &config);
        assert_eq!(parse_hex_config(&g, &text).unwrap(), config);
        let compact = "v=0,1,2,3\nr=4,5,6\np=7,8\nq=9,10\nEL=\n";
        assert_eq!(parse_hex_config(&g, compact).unwrap(), config);
    }

    #[test]
    fn sequences_and_signings() {
        let items = parse_sequence("4 5\n[1,2]\n").unwrap();
        assert_eq!(
            items,
            vec![
                SequenceItem::Edge(VertexId(4), VertexId(5)),
                SequenceItem::Box(GridBox::new(1, 2))
            ]
        );
        let signs = parse_signing("h 1 2 -\nv 2 1 +\n").unwrap();
        assert_eq!(signs[&EdgeLabel::H(1, 2)], Sign::Minus);
        assert!(parse_signing("h 1 -\n").is_err());
    }
}
