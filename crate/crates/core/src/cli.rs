//! The `tw` command line. Output is one JSON object per command (counts as
//! decimal strings) unless `--pretty` asks for `key: value` lines.
//! Vertex ids in output are 1-indexed, as in the input formats.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::decomposition::{
    exact_treewidth, minfill_decompose, mmd_lower_bound, validate, write_td, ExactTreewidth,
};
use crate::error::{Error, Result};
use crate::graph::{read_dimacs, Graph};
use crate::homcount::{brute_force_hom, count_hom};
use crate::kpath::{kpath_planar_with, WinWinConfig};
use crate::mis::{mis_branching_stats, mis_bruteforce, mis_td};
use crate::permpattern::{self, Permutation};
use crate::subcount::{brute_force_emb, brute_force_sub, emb_to_hom_expansion, SubgraphCounter};
use crate::verify;

#[derive(Parser, Debug)]
#[command(
    name = "tw",
    version,
    about = "Treewidth-based counting and decision algorithms"
)]
struct Cli {
    /// Human-readable `key: value` output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecomposeMethod {
    Minfill,
    Exact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountMethod {
    Dp,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MisMethod {
    Branch,
    Td,
    Brute,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a tree decomposition and write it in PACE `.td` format.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "minfill")]
        method: DecomposeMethod,
        /// Write the decomposition here instead of embedding it in the output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count homomorphisms from a pattern graph to a host graph.
    Homcount {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long, value_enum, default_value = "dp")]
        method: CountMethod,
    },
    /// Count embeddings or subgraph copies, or dump the expansion into
    /// homomorphism counts.
    Subcount {
        #[arg(long, required_unless_present = "expansion")]
        pattern: Option<PathBuf>,
        #[arg(long, required_unless_present = "expansion")]
        host: Option<PathBuf>,
        /// Count injective homomorphisms.
        #[arg(long, conflicts_with = "sub")]
        emb: bool,
        /// Count subgraph copies (the default).
        #[arg(long)]
        sub: bool,
        /// Print the expansion of the given pattern.
        #[arg(long, conflicts_with_all = ["pattern", "host", "emb", "sub"])]
        expansion: Option<PathBuf>,
        /// With --expansion: merge terms with isomorphic quotients.
        #[arg(long, requires = "expansion")]
        grouped: bool,
        #[arg(long, value_enum, default_value = "dp")]
        method: CountMethod,
    },
    /// Count or detect occurrences of a permutation pattern.
    Permcount {
        /// Inline permutation such as "2 1 3 4", or a file holding one.
        #[arg(long, required_unless_present = "pattern_file")]
        pattern: Option<String>,
        #[arg(long, conflicts_with = "pattern")]
        pattern_file: Option<PathBuf>,
        /// Inline permutation or a file holding one.
        #[arg(long, required_unless_present = "text_file")]
        text: Option<String>,
        #[arg(long, conflicts_with = "text")]
        text_file: Option<PathBuf>,
        /// Only decide containment.
        #[arg(long)]
        decide: bool,
        /// With --decide: also print one occurrence (1-indexed positions).
        #[arg(long, requires = "decide")]
        witness: bool,
        #[arg(long, value_enum, default_value = "dp")]
        method: CountMethod,
    },
    /// Decide whether a planar graph has a path on k vertices.
    Kpath {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Promise that the input is planar (required).
        #[arg(long)]
        planar: bool,
        /// Override the width up to which the DP is run directly.
        #[arg(long)]
        acceptance_width: Option<usize>,
    },
    /// Maximum independent set size.
    Mis {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "branch")]
        method: MisMethod,
    },
    /// Run the seeded oracle suites and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Result of one command: a JSON object, or plain lines printed first
/// (the kpath verdict, the verify table).
struct Output {
    head: Option<String>,
    body: Option<Value>,
    code: i32,
}

impl Output {
    fn json(body: Value) -> Self {
        Output {
            head: None,
            body: Some(body),
            code: 0,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 on success, 2 on parse, validation
/// or resource-limit errors, 1 on internal-consistency errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(output) => {
            if let Some(head) = &output.head {
                let _ = writeln!(out, "{head}");
            }
            if let Some(body) = &output.body {
                let _ = if cli.pretty {
                    write!(out, "{}", pretty(body))
                } else {
                    writeln!(out, "{body}")
                };
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn pretty(body: &Value) -> String {
    let mut text = String::new();
    if let Value::Object(map) = body {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            text.push_str(&format!("{k}: {shown}\n"));
        }
    }
    text
}

fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u + 1, v + 1]).collect();
    json!({ "n": g.n(), "edges": edges })
}

/// An inline permutation, or else the path of a file holding one.
fn permutation_arg(inline: Option<&str>, file: Option<&Path>) -> Result<Permutation> {
    if let Some(path) = file {
        return read_permutation(path);
    }
    let value = inline.ok_or_else(|| Error::InvalidArgument("missing permutation".into()))?;
    match value.parse() {
        Ok(p) => Ok(p),
        Err(inline_err) if Path::new(value).is_file() => read_permutation(Path::new(value))
            .map_err(|e| Error::InvalidArgument(format!("{e} (inline: {inline_err})"))),
        Err(e) => Err(e),
    }
}

fn read_permutation(path: &Path) -> Result<Permutation> {
    let text = std::fs::read_to_string(path)?;
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    match lines.as_slice() {
        [line] => line.parse(),
        _ => Err(Error::Parse {
            line: 1,
            msg: format!("{} must hold exactly one permutation line", path.display()),
        }),
    }
}

fn execute(command: Command) -> Result<Output> {
    match command {
        Command::Decompose { input, method, out } => {
            let g = read_dimacs(&input)?;
            let (td, name) = match method {
                DecomposeMethod::Minfill => (minfill_decompose(&g), "minfill"),
                DecomposeMethod::Exact => match exact_treewidth(&g, g.n())? {
                    ExactTreewidth::Found { decomposition, .. } => (decomposition, "exact"),
                    ExactTreewidth::ExceedsBound => {
                        return Err(Error::Internal("treewidth exceeds vertex count".into()))
                    }
                },
            };
            validate(&g, &td).map_err(|d| {
                Error::Internal(format!("constructed decomposition is invalid: {d}"))
            })?;
            let text = write_td(&td, g.n());
            let mut body = Map::new();
            body.insert("method".into(), json!(name));
            body.insert("width".into(), json!(td.width()));
            body.insert("bags".into(), json!(td.num_bags()));
            body.insert("lower_bound".into(), json!(mmd_lower_bound(&g)));
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    body.insert("out".into(), json!(path.display().to_string()));
                }
                None => {
                    body.insert("td".into(), json!(text));
                }
            }
            Ok(Output::json(Value::Object(body)))
        }
        Command::Homcount {
            pattern,
            host,
            method,
        } => {
            let (h, g) = (read_dimacs(&pattern)?, read_dimacs(&host)?);
            let hom = match method {
                CountMethod::Dp => count_hom(&h, &g),
                CountMethod::Brute => brute_force_hom(&h, &g)?,
            };
            Ok(Output::json(json!({ "hom": hom.to_string() })))
        }
        Command::Subcount {
            pattern,
            host,
            emb,
            expansion,
            grouped,
            method,
            ..
        } => {
            if let Some(path) = expansion {
                let h = read_dimacs(&path)?;
                let e = emb_to_hom_expansion(&h)?;
                let terms: Vec<Value> = if grouped {
                    e.grouped()?
                        .iter()
                        .map(|t| {
                            json!({
                                "quotient": graph_json(&t.quotient),
                                "coefficient": t.coefficient.to_string(),
                                "partitions": t.partitions,
                            })
                        })
                        .collect()
                } else {
                    e.terms()
                        .iter()
                        .map(|t| {
                            let blocks: Vec<Vec<usize>> = t
                                .partition
                                .blocks()
                                .iter()
                                .map(|b| b.iter().map(|v| v + 1).collect())
                                .collect();
                            json!({
                                "partition": blocks,
                                "quotient": graph_json(&t.quotient),
                                "coefficient": t.coefficient.to_string(),
                            })
                        })
                        .collect()
                };
                return Ok(Output::json(
                    json!({ "pattern": graph_json(&h), "terms": terms }),
                ));
            }
            let h = read_dimacs(pattern.as_ref().expect("required by clap"))?;
            let g = read_dimacs(host.as_ref().expect("required by clap"))?;
            let (key, value) = match (method, emb) {
                (CountMethod::Dp, true) => ("emb", SubgraphCounter::new(&h)?.emb(&g)?),
                (CountMethod::Dp, false) => ("sub", SubgraphCounter::new(&h)?.sub(&g)?),
                (CountMethod::Brute, true) => ("emb", brute_force_emb(&h, &g)?),
                (CountMethod::Brute, false) => ("sub", brute_force_sub(&h, &g)?),
            };
            Ok(Output::json(json!({ key: value.to_string() })))
        }
        Command::Permcount {
            pattern,
            pattern_file,
            text,
            text_file,
            decide,
            witness,
            method,
        } => {
            let pi = permutation_arg(pattern.as_deref(), pattern_file.as_deref())?;
            let sigma = permutation_arg(text.as_deref(), text_file.as_deref())?;
            if decide {
                let found = permpattern::find_occurrence(&pi, &sigma);
                let mut body = Map::new();
                body.insert("contains".into(), json!(found.is_some()));
                if witness {
                    body.insert("witness".into(), json!(found));
                }
                return Ok(Output::json(Value::Object(body)));
            }
            let count = match method {
                CountMethod::Dp => permpattern::count_occurrences(&pi, &sigma),
                CountMethod::Brute => permpattern::brute_force_count(&pi, &sigma)?,
            };
            Ok(Output::json(json!({ "count": count.to_string() })))
        }
        Command::Kpath {
            input,
            k,
            planar,
            acceptance_width,
        } => {
            let g = read_dimacs(&input)?;
            let r = kpath_planar_with(&g, k, planar, &WinWinConfig { acceptance_width })?;
            let verdict = if r.answer { "YES" } else { "NO" };
            Ok(Output {
                head: Some(verdict.into()),
                body: Some(json!({
                    "answer": verdict,
                    "k": k,
                    "branch": r.branch.name(),
                    "method": r.method.name(),
                    "width": r.width,
                    "threshold": r.threshold,
                    "acceptance_width": r.acceptance_width,
                    "lower_bound": r.lower_bound,
                    "exact_width": r.exact_width,
                })),
                code: 0,
            })
        }
        Command::Mis { input, method } => {
            let g = read_dimacs(&input)?;
            let body = match method {
                MisMethod::Branch => {
                    let (size, stats) = mis_branching_stats(&g);
                    json!({ "mis": size, "stats": { "branch_nodes": stats.branch_nodes, "leaves": stats.leaves } })
                }
                MisMethod::Td => {
                    let td = minfill_decompose(&g);
                    json!({ "mis": mis_td(&g, &td)?, "stats": { "width": td.width(), "bags": td.num_bags() } })
                }
                MisMethod::Brute => json!({ "mis": mis_bruteforce(&g)? }),
            };
            Ok(Output::json(body))
        }
        Command::Verify { seed } => {
            let report = verify::run(seed);
            let text = report.to_string();
            Ok(Output {
                head: Some(text.trim_end().to_string()),
                body: None,
                code: if report.passed() { 0 } else { 1 },
            })
        }
    }
}
