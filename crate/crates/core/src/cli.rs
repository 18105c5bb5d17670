//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the exit code with everything that would go to stdout and stderr.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage or input
//! format error.

use std::collections::BTreeSet;
use std::fmt::{Display, Write as _};

use clap::{Parser, Subcommand, ValueEnum};

use crate::embedding::{Circle, EdgeId, FaceId, PlaneSignedGraph, VertexId};
use crate::face_dual::{eliminate, face_map, is_outerplane, verify_outer_product, weak_dual, EliminationOutcome, OrderPolicy};
use crate::format;
use crate::grids::{
    all_same_sign_decision, build_grid, build_triangulated_grid, DiagonalPolicy, Grid, GridBox, GridSpec,
};
use crate::ham_search::{enumerate_hamiltonian, sign_census, DEFAULT_LIMIT};
use crate::local_configs::{certify_hexagon, certify_ladder, Certificate};
use crate::peeling::{apply_coham, apply_coham_faces, coham_from_circle, peel_step, CoHamOutcome, UniquenessCheck};

/// Environment variable overriding the default enumeration cap.
pub const LIMIT_ENV: &str = "PSG_ORACLE_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "psg", version, about = "Faces, weak duals and Hamiltonian circle signs of plane signed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the faces with their signs and boundary walks.
    Faces { file: String },
    /// Print the weak dual with (phi, degree) labels.
    Dual {
        file: String,
        #[arg(long)]
        dot: bool,
        /// Run the removable-vertex elimination.
        #[arg(long)]
        eliminate: bool,
        #[arg(long, default_value = "first-found")]
        policy: OrderPolicy,
    },
    /// Structural checks: connectivity, cut vertices, sign product identity.
    Check { file: String },
    /// Enumerate Hamiltonian circles.
    Ham {
        file: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Count Hamiltonian circles by sign.
    Census {
        file: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// One peeling step that protects the given Hamiltonian circle.
    Peel {
        file: String,
        /// Vertex sequence, e.g. "0 1 2 3 0".
        #[arg(long)]
        circle: String,
    },
    /// Validate or construct a co-Hamiltonian sequence.
    Coham {
        file: String,
        /// Sequence file of `u v` edge lines.
        #[arg(long, group = "source")]
        edges: Option<String>,
        /// Face ids, e.g. "f3,f5".
        #[arg(long, group = "source")]
        faces: Option<String>,
        /// Peel down to this Hamiltonian circle.
        #[arg(long, group = "source")]
        circle: Option<String>,
        /// Confirm uniqueness of the final circle by exhaustive search.
        #[arg(long)]
        oracle: bool,
    },
    /// Print an m x n grid as a graph file.
    Grid {
        m: usize,
        n: usize,
        #[command(flatten)]
        signs: SignArgs,
        /// Print the residual graph of the canonical co-Hamiltonian sequence.
        #[arg(long, conflicts_with = "apply")]
        coham: bool,
        /// Apply a sequence file of `[i,j]` boxes and print the outcome.
        #[arg(long)]
        apply: Option<String>,
        /// Print the all-same-sign decision instead of the graph.
        #[arg(long, conflicts_with_all = ["coham", "apply"])]
        decide: bool,
    },
    /// Print a triangulated m x n grid as a graph file.
    Trigrid {
        m: usize,
        n: usize,
        #[command(flatten)]
        signs: SignArgs,
        #[arg(long, value_enum, default_value_t = Diagonals::Rising)]
        diagonals: Diagonals,
    },
    /// Certify a ladder configuration.
    CertifyLadder { file: String, config: String },
    /// Certify a hexagon configuration.
    CertifyHex { file: String, config: String },
    /// Export the graph (or its weak dual) as DOT.
    ExportDot {
        file: String,
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Debug, clap::Args)]
struct SignArgs {
    /// `all-plus`, `all-minus` or a signing file.
    #[arg(long, default_value = "all-plus")]
    signs: String,
    /// Boxes made negative by flipping edges, e.g. "[3,1],[2,2]".
    #[arg(long, conflicts_with = "signs")]
    negative_boxes: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Diagonals {
    Rising,
    Falling,
    FirstBoxFalling,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl From<format::FormatError> for CliError {
    fn from(e: format::FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_text(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

fn read_graph(path: &str) -> Result<PlaneSignedGraph, CliError> {
    Ok(format::read_graph(&read_text(path)?)?)
}

fn resolve_limit(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(limit) = flag {
        return Ok(limit);
    }
    match std::env::var(LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{LIMIT_ENV} must be a non-negative integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_LIMIT),
    }
}

fn parse_vertex_list(text: &str) -> Result<Vec<VertexId>, CliError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map(VertexId)
                .map_err(|_| CliError::Usage(format!("expected a vertex id, found `{t}`")))
        })
        .collect()
}

fn parse_circle(graph: &PlaneSignedGraph, text: &str) -> Result<Circle, CliError> {
    Circle::from_vertices(graph, &parse_vertex_list(text)?).map_err(domain)
}

fn parse_face_list(text: &str) -> Result<Vec<FaceId>, CliError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.strip_prefix('f')
                .and_then(|n| n.parse().ok())
                .map(FaceId)
                .ok_or_else(|| CliError::Usage(format!("expected a face id like `f3`, found `{t}`")))
        })
        .collect()
}

fn parse_box_list(text: &str) -> Result<Vec<GridBox>, CliError> {
    let mut out = Vec::new();
    for chunk in text.split(']') {
        let chunk = chunk.trim().trim_start_matches(',').trim();
        if chunk.is_empty() {
            continue;
        }
        out.push(format!("{chunk}]").parse().map_err(|e| CliError::Usage(format!("{e}")))?);
    }
    Ok(out)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn describe_edge(graph: &PlaneSignedGraph, e: EdgeId) -> String {
    let (u, v) = graph.ends(e);
    format!("{e} {u} {v}")
}

fn circle_line(graph: &PlaneSignedGraph, c: &Circle) -> Result<String, CliError> {
    Ok(format!("{} {c}", graph.circle_sign(c).map_err(domain)?))
}

fn dispatch(command: Command) -> Result<String, CliError> {
    let mut out = String::new();
    match command {
        Command::Faces { file } => {
            let g = read_graph(&file)?;
            let _ = writeln!(out, "vertices {}", g.vertex_count());
            let _ = writeln!(out, "edges {}", g.edge_count());
            let _ = writeln!(out, "faces {}", g.face_count());
            let _ = writeln!(out, "outer {}", g.outer());
            for walk in g.faces() {
                let f = walk.face;
                let sign = g.face_sign(f).expect("traced face");
                let vs = walk.vertices();
                let _ = writeln!(out, "{f} sign={sign} len={} : {} {}", walk.len(), join(vs), vs[0]);
            }
        }
        Command::Dual {
            file,
            dot,
            eliminate: run_elimination,
            policy,
        } => {
            let g = read_graph(&file)?;
            let dual = weak_dual(&g);
            if dot {
                out.push_str(&format::face_graph_to_dot(&dual));
            } else {
                let _ = writeln!(out, "nodes {}", dual.node_count());
                let _ = writeln!(out, "edges {}", dual.edge_count());
                for f in dual.nodes() {
                    let l = dual.label(f).expect("node");
                    let _ = writeln!(out, "{f} phi={} degree={}", l.phi, l.degree);
                }
                for (a, b) in dual.edges() {
                    let _ = writeln!(out, "{a} -- {b}");
                }
                let _ = writeln!(out, "tree {}", yes(dual.is_tree()));
            }
            if run_elimination {
                let trace = eliminate(&dual, policy);
                for step in &trace.steps {
                    let _ = writeln!(out, "remove {} phi={} degree={}", step.face, step.label.phi, step.label.degree);
                }
                let outcome = match trace.outcome {
                    EliminationOutcome::Tree => "tree",
                    EliminationOutcome::Stuck => "stuck",
                };
                let _ = writeln!(out, "outcome {outcome}");
                let _ = writeln!(out, "remaining {}", join(trace.candidate()));
            }
        }
        Command::Check { file } => {
            let g = read_graph(&file)?;
            let (connected, cuts) = g.cut_vertices();
            let _ = writeln!(out, "connected {}", yes(connected));
            let _ = writeln!(out, "cut-vertices {}", join(&cuts));
            let _ = writeln!(out, "two-connected {}", yes(g.is_two_connected().unwrap_or(false)));
            let classes = g.classify_vertices();
            let _ = writeln!(out, "exterior {}", join(&classes.exterior));
            let _ = writeln!(out, "interior {}", join(&classes.interior));
            let _ = writeln!(out, "outerplane {}", yes(is_outerplane(&g)));
            let _ = writeln!(out, "outer-product {}", yes(verify_outer_product(&g)));
            if let Ok(phi) = face_map(&g) {
                let _ = writeln!(out, "phi {}", join(phi.iter().map(|(f, p)| format!("{f}={p}"))));
            }
        }
        Command::Ham { file, limit } => {
            let g = read_graph(&file)?;
            let found = enumerate_hamiltonian(&g, Some(resolve_limit(limit)?)).map_err(domain)?;
            let _ = writeln!(out, "circles {}", found.circles.len());
            let _ = writeln!(out, "truncated {}", yes(found.truncated));
            let mut circles = found.circles;
            circles.sort_by(|a, b| a.vertices().cmp(b.vertices()));
            for c in &circles {
                let _ = writeln!(out, "{}", circle_line(&g, c)?);
            }
        }
        Command::Census { file, limit } => {
            let g = read_graph(&file)?;
            let census = sign_census(&g, Some(resolve_limit(limit)?)).map_err(domain)?;
            let _ = writeln!(out, "positive={} negative={}", census.positive, census.negative);
            for (name, w) in [("positive", &census.positive_witness), ("negative", &census.negative_witness)] {
                match w {
                    Some(c) => {
                        let _ = writeln!(out, "{name}-witness {c}");
                    }
                    None => {
                        let _ = writeln!(out, "{name}-witness none");
                    }
                }
            }
        }
        Command::Peel { file, circle } => {
            let g = read_graph(&file)?;
            let c = parse_circle(&g, &circle)?;
            let e = peel_step(&g, &c).map_err(domain)?;
            let _ = writeln!(out, "peel {}", describe_edge(&g, e));
        }
        Command::Coham {
            file,
            edges,
            faces,
            circle,
            oracle,
        } => {
            let g = read_graph(&file)?;
            let check = if oracle {
                UniquenessCheck::Oracle
            } else {
                UniquenessCheck::Lemma
            };
            let outcome = if let Some(path) = edges {
                let seq = edges_from_sequence(&g, &read_text(&path)?)?;
                apply_coham(&g, &seq, check).map_err(domain)?
            } else if let Some(list) = faces {
                apply_coham_faces(&g, &parse_face_list(&list)?, check).map_err(domain)?
            } else if let Some(text) = circle {
                let c = parse_circle(&g, &text)?;
                let seq = coham_from_circle(&g, &c).map_err(domain)?;
                apply_coham(&g, &seq.edges, check).map_err(domain)?
            } else {
                return Err(CliError::Usage("coham needs one of --edges, --faces or --circle".into()));
            };
            write_outcome(&mut out, &g, &outcome)?;
        }
        Command::Grid {
            m,
            n,
            signs,
            coham,
            apply,
            decide,
        } => {
            let spec = grid_spec(m, n, &signs)?;
            if decide {
                let d = all_same_sign_decision(&spec).map_err(domain)?;
                let _ = writeln!(out, "all-same-sign {}", yes(d));
            } else if coham {
                let (_, outcome) = crate::peeling::canonical_coham_grid(&spec).map_err(domain)?;
                out.push_str(&format::serialize_graph(&outcome.residual));
            } else if let Some(path) = apply {
                let grid = build_grid(&spec).map_err(domain)?;
                let faces = faces_from_sequence(&grid, &read_text(&path)?)?;
                let outcome = apply_coham_faces(&grid.graph, &faces, UniquenessCheck::Lemma).map_err(domain)?;
                write_outcome(&mut out, &grid.graph, &outcome)?;
            } else {
                let grid = build_grid(&spec).map_err(domain)?;
                out.push_str(&format::serialize_graph(&grid.graph));
            }
        }
        Command::Trigrid { m, n, signs, diagonals } => {
            let spec = grid_spec(m, n, &signs)?;
            let policy = match diagonals {
                Diagonals::Rising => DiagonalPolicy::Rising,
                Diagonals::Falling => DiagonalPolicy::Falling,
                Diagonals::FirstBoxFalling => DiagonalPolicy::FirstBoxFalling,
            };
            let grid = build_triangulated_grid(&spec, &policy).map_err(domain)?;
            out.push_str(&format::serialize_graph(&grid.graph));
        }
        Command::CertifyLadder { file, config } => {
            let g = read_graph(&file)?;
            let config = format::parse_ladder_config(&g, &read_text(&config)?)?;
            let cert = certify_ladder(&g, &config).map_err(domain)?;
            write_certificate(&mut out, &g, cert.as_ref())?;
        }
        Command::CertifyHex { file, config } => {
            let g = read_graph(&file)?;
            let config = format::parse_hex_config(&g, &read_text(&config)?)?;
            let cert = certify_hexagon(&g, &config).map_err(domain)?;
            write_certificate(&mut out, &g, cert.as_ref())?;
        }
        Command::ExportDot { file, dual } => {
            let g = read_graph(&file)?;
            if dual {
                out.push_str(&format::face_graph_to_dot(&weak_dual(&g)));
            } else {
                out.push_str(&format::graph_to_dot(&g));
            }
        }
    }
    Ok(out)
}

fn grid_spec(m: usize, n: usize, args: &SignArgs) -> Result<GridSpec, CliError> {
    if let Some(list) = &args.negative_boxes {
        return Ok(GridSpec::with_box_signs(m, n, &parse_box_list(list)?));
    }
    Ok(match args.signs.as_str() {
        "all-plus" => GridSpec::all_plus(m, n),
        "all-minus" => GridSpec::all_minus(m, n),
        path => GridSpec {
            m,
            n,
            signing: format::parse_signing(&read_text(path)?)?,
        },
    })
}

fn edges_from_sequence(graph: &PlaneSignedGraph, text: &str) -> Result<Vec<EdgeId>, CliError> {
    format::parse_sequence(text)?
        .into_iter()
        .map(|item| match item {
            format::SequenceItem::Edge(u, v) => graph
                .edge_between(u, v)
                .ok_or_else(|| CliError::Domain(format!("UnknownEdge: no edge {u} {v}"))),
            format::SequenceItem::Box(b) => Err(CliError::Usage(format!("box {b} in an edge sequence"))),
        })
        .collect()
}

fn faces_from_sequence(grid: &Grid, text: &str) -> Result<Vec<FaceId>, CliError> {
    format::parse_sequence(text)?
        .into_iter()
        .map(|item| match item {
            format::SequenceItem::Box(b) => grid
                .face_of_box(b)
                .ok_or_else(|| CliError::Domain(format!("OutOfRange: no box {b}"))),
            format::SequenceItem::Edge(u, v) => Err(CliError::Usage(format!("edge {u} {v} in a box sequence"))),
        })
        .collect()
}

fn write_outcome(out: &mut String, graph: &PlaneSignedGraph, outcome: &CoHamOutcome) -> Result<(), CliError> {
    let seq = &outcome.sequence;
    let _ = writeln!(out, "length {}", seq.len());
    for (k, (&e, &f)) in seq.edges.iter().zip(&seq.faces).enumerate() {
        let _ = writeln!(out, "step {} {} face {f}", k + 1, describe_edge(graph, e));
    }
    let _ = writeln!(out, "face-product {}", seq.face_product(graph));
    let _ = writeln!(out, "hamiltonian-set {}", join(&outcome.set.faces));
    let _ = writeln!(out, "circle {}", circle_line(graph, &outcome.set.circle)?);
    Ok(())
}

fn write_certificate(out: &mut String, graph: &PlaneSignedGraph, cert: Option<&Certificate>) -> Result<(), CliError> {
    let Some(cert) = cert else {
        let _ = writeln!(out, "no certificate: C1 and C2 have the same sign");
        return Ok(());
    };
    for (name, c) in [("H1", &cert.h1), ("H2", &cert.h2), ("C1", &cert.c1), ("C2", &cert.c2)] {
        let _ = writeln!(out, "{name} {}", circle_line(graph, c)?);
    }
    let toggled: BTreeSet<EdgeId> = cert.h1.edges().iter().copied().collect();
    let _ = writeln!(out, "toggled-edges {}", toggled.symmetric_difference(&cert.h2.edges().iter().copied().collect()).count());
    Ok(())
}
