//! Command-line front end. `run` never exits the process; the binary maps
//! its return value to the exit status.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::decision::{decide_row_finite_with, decide_with};
use crate::error::Error;
use crate::exec;
use crate::graph::{parse_graph, Graph, VertexSet};
use crate::hsat::{enumerate_hsat_with_limit, AdmissiblePair};
use crate::oracle::Oracle;
use crate::quotient::{decompose_with, quotient_by};
use crate::recognizer::{is_connected, is_directly_connected, recognize};
use crate::Config;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_ARGS: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "lpa", version, about = "Decomposability of Leavitt path algebras of finite multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex kinds, connectivity, cycles and hereditary saturated sets
    Analyze {
        file: PathBuf,
        /// Print the graph in DOT format instead
        #[arg(long)]
        dot: bool,
    },
    /// Decide whether the algebra decomposes
    Decide {
        file: PathBuf,
        /// Use the criterion for graphs without infinite emitters
        #[arg(long)]
        row_finite: bool,
    },
    /// Decompose into indecomposable quotient graphs
    Decompose {
        file: PathBuf,
        /// Write each component as `component_<k>.graph`
        #[arg(long, value_name = "DIR")]
        emit_dir: Option<PathBuf>,
        /// Print the components in DOT format instead of the tree
        #[arg(long)]
        dot: bool,
    },
    /// Quotient graph by an admissible pair
    Quotient {
        file: PathBuf,
        /// Comma-separated hereditary saturated set
        #[arg(long = "h", value_name = "VERTICES", default_value = "")]
        h: String,
        /// Comma-separated breaking vertices of H
        #[arg(long = "s", value_name = "VERTICES", default_value = "")]
        s: String,
    },
    /// Name the algebra of every component
    Recognize { file: PathBuf },
    /// Exact computations for acyclic graphs with finite multiplicities
    Oracle {
        file: PathBuf,
        #[arg(long, conflicts_with = "verify_pair")]
        dimension: bool,
        /// `a,b:c,d` checks whether the ideals of {a,b} and {c,d} split the algebra
        #[arg(long, value_name = "X:Y")]
        verify_pair: Option<String>,
    },
}

enum Failure {
    Parse(String),
    Args(String),
    Unsupported(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Unsupported(_) => EXIT_UNSUPPORTED,
            Failure::Args(_) => EXIT_ARGS,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Args(m) | Failure::Unsupported(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Parse(e.to_string()),
            Error::NameCollision(_) => Failure::Unsupported(e.to_string()),
            e if e.is_unsupported() => Failure::Unsupported(e.to_string()),
            e => Failure::Args(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => EXIT_ARGS,
            };
        }
    };
    let cfg = Config::from_env();
    match dispatch(cli.command, &cfg) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn load(path: &Path) -> std::result::Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn parse_set(g: &Graph, list: &str) -> std::result::Result<VertexSet, Failure> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(g.vertex_set(names)?)
}

fn dispatch(command: Command, cfg: &Config) -> Outcome {
    match command {
        Command::Analyze { file, dot } => {
            let g = load(&file)?;
            if dot {
                return Ok(g.to_dot("graph"));
            }
            analyze(&g, cfg)
        }
        Command::Decide { file, row_finite } => {
            let g = load(&file)?;
            let verdict = if row_finite { decide_row_finite_with(&g, cfg)? } else { decide_with(&g, cfg)? };
            Ok(pretty(&verdict.to_json(&g)))
        }
        Command::Decompose { file, emit_dir, dot } => {
            let g = load(&file)?;
            let tree = decompose_with(&g, cfg)?;
            let leaves = tree.leaves();
            if let Some(dir) = emit_dir {
                fs::create_dir_all(&dir).map_err(|e| Failure::Args(format!("{}: {e}", dir.display())))?;
                for (k, leaf) in leaves.iter().enumerate() {
                    let path = dir.join(format!("component_{}.graph", k + 1));
                    fs::write(&path, leaf.to_text()).map_err(|e| Failure::Args(format!("{}: {e}", path.display())))?;
                }
            }
            if dot {
                return Ok(leaves
                    .iter()
                    .enumerate()
                    .map(|(k, leaf)| leaf.to_dot(&format!("component_{}", k + 1)))
                    .collect());
            }
            Ok(pretty(&tree.to_json()))
        }
        Command::Quotient { file, h, s } => {
            let g = load(&file)?;
            let pair = AdmissiblePair::new(&g, parse_set(&g, &h)?, parse_set(&g, &s)?)?;
            Ok(quotient_by(&g, &pair)?.to_text())
        }
        Command::Recognize { file } => {
            let g = load(&file)?;
            let tree = decompose_with(&g, cfg)?;
            let items: Vec<Value> = tree
                .leaves()
                .into_iter()
                .map(|leaf| {
                    let d = recognize(leaf).to_json();
                    json!({"family": d["family"], "params": d["params"], "graph": leaf.to_json()})
                })
                .collect();
            Ok(pretty(&json!({"components": items})))
        }
        Command::Oracle { file, dimension, verify_pair } => {
            let g = load(&file)?;
            let oracle = Oracle::new(&g)?;
            if dimension {
                return Ok(pretty(&json!({"dimension": oracle.dimension()})));
            }
            if let Some(spec) = verify_pair {
                let (xs, ys) =
                    spec.split_once(':').ok_or_else(|| Failure::Args(format!("expected X:Y, got `{spec}`")))?;
                let x = parse_set(&g, xs)?;
                let y = parse_set(&g, ys)?;
                let report = crate::oracle::verify_direct_sum(&g, x, y)?;
                return Ok(pretty(&report.to_json()));
            }
            oracle_summary(&g, &oracle, cfg)
        }
    }
}

fn analyze(g: &Graph, cfg: &Config) -> Outcome {
    let vertices: Vec<Value> =
        (0..g.vertex_count()).map(|v| json!({"name": g.name(v), "kind": g.kind(v).as_str()})).collect();
    let cycles: Vec<Value> = g
        .find_cycles()
        .iter()
        .map(|c| json!({"vertices": c.iter().map(|&v| g.name(v)).collect::<Vec<_>>(), "has_exit": g.has_exit(c)}))
        .collect();
    let hsat: Vec<Value> =
        enumerate_hsat_with_limit(g, cfg.max_enumeration_vertices)?.into_iter().map(|s| g.set_json(s)).collect();
    Ok(pretty(&json!({
        "vertices": vertices,
        "connected": is_connected(g),
        "directly_connected": is_directly_connected(g),
        "cycles": cycles,
        "hereditary_saturated": hsat,
    })))
}

/// Dimension plus the ideal of every hereditary saturated set.
fn oracle_summary(g: &Graph, oracle: &Oracle<'_>, cfg: &Config) -> Outcome {
    let sets = enumerate_hsat_with_limit(g, cfg.max_enumeration_vertices)?;
    let spans = exec::map(&sets, cfg.parallelism, |&h| oracle.ideal_span(h, cfg.parallelism));
    let mut ideals = Vec::new();
    for (h, span) in sets.iter().zip(spans) {
        ideals.push(json!({"H": g.set_json(*h), "dim": span?.dim()}));
    }
    Ok(pretty(&json!({"dimension": oracle.dimension(), "ideals": ideals})))
}
