//! The `graceful` command-line surface.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! a [`CommandResult`]; the binary prints its payload to stdout and its
//! diagnostics to stderr and exits with [`CommandResult::exit_code`].

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{
    delta, delta_plus_one, label_lobster_apm_with, label_tree_pm_strong, rosa_caterpillar, AttachmentPlan,
    CompositionInput,
};
use crate::error::Error;
use crate::labeling::{edge_weights, verify_graceful, verify_strongly_graceful, Labeling};
use crate::matching::{contract, matching_missing, max_matching, Group, Matching};
use crate::oracle::{self, Constraint, Family, GeneratorSpec, SearchMode, SearchOptions};
use crate::sweep;
use crate::tree::{parse_tree, ParsedTree, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PayloadFormat {
    /// One JSON document.
    Json,
    /// The payload is an array printed one element per line.
    JsonLines,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    pub format: PayloadFormat,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult { status: Status::Ok, payload, diagnostics: Vec::new(), format: PayloadFormat::Json }
    }

    fn lines(items: Vec<Value>) -> Self {
        CommandResult { format: PayloadFormat::JsonLines, ..Self::ok(Value::Array(items)) }
    }

    fn error(msg: impl Into<String>) -> Self {
        let msg = msg.into();
        CommandResult {
            status: Status::Error,
            payload: json!({ "error": msg }),
            diagnostics: vec![format!("error: {msg}")],
            format: PayloadFormat::Json,
        }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.diagnostics.push(line.into());
        self
    }

    fn violation_if(mut self, bad: bool) -> Self {
        if bad {
            self.status = Status::Violation;
        }
        self
    }

    /// 0 for ok, 1 for a violation, 2 for usage or runtime errors.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }

    /// Text for standard output.
    pub fn render(&self) -> String {
        match (&self.format, &self.payload) {
            (PayloadFormat::JsonLines, Value::Array(items)) => {
                items.iter().map(|v| format!("{v}\n")).collect()
            }
            (_, v) => format!("{v}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "graceful", version, about = "Graceful labelings of trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Tree file (edge list or JSON); standard input when absent or "-".
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct DotOut {
    /// Also write the labeled tree as DOT.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    First,
    All,
    Count,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tree distance class (path, caterpillar, lobster, other).
    Classify(Input),
    /// Graceful labeling of a tree with an almost perfect matching.
    LabelApm {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        dot: DotOut,
        /// Only use Rosa labelings of the contree, never the search fallback.
        #[arg(long)]
        strict: bool,
    },
    /// Strongly graceful labeling of a tree with a perfect matching.
    LabelPm {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        dot: DotOut,
    },
    /// Rosa labeling of a caterpillar.
    Rosa {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        dot: DotOut,
        /// Vertex receiving label 0 (default: first vertex of the canonical longest path).
        #[arg(long)]
        start: Option<usize>,
    },
    /// Delta composition of two graceful trees.
    ComposeDelta(Compose),
    /// Delta-plus-one composition of two graceful trees.
    ComposeDelta1 {
        #[command(flatten)]
        compose: Compose,
        /// Exceptional vertex of S (default: the vertex labeled n_S - 1).
        #[arg(long)]
        u: Option<usize>,
        /// Fixed vertex of T (default: the vertex labeled 0).
        #[arg(long)]
        v: Option<usize>,
    },
    /// Check a labeling (strongly graceful when a matching is given).
    Verify {
        #[command(flatten)]
        input: Input,
        /// Labels as a JSON array, {"labels": [...]}, or a file holding either.
        #[arg(long)]
        labels: String,
        /// Perfect matching as JSON pairs, {"pairs": [...]}, or a file.
        #[arg(long)]
        matching: Option<String>,
    },
    /// Maximum matching, or the almost perfect matching missing a vertex.
    Match {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        missing: Option<usize>,
    },
    /// Contract a matching (default: the maximum matching) to the contree.
    Contract {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        matching: Option<String>,
    },
    /// Exhaustive labeling search.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "count")]
        mode: ModeArg,
        /// Require label 0 on this vertex.
        #[arg(long, conflicts_with = "strong")]
        zero_at: Option<usize>,
        /// Strongly graceful with respect to this perfect matching.
        #[arg(long)]
        strong: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
        /// Stop after this many labelings in `all` mode.
        #[arg(long)]
        limit: Option<usize>,
        /// Count one labeling per complementary pair.
        #[arg(long)]
        modulo_complement: bool,
        /// Decide 0-rotatability instead.
        #[arg(long, conflicts_with_all = ["zero_at", "strong"])]
        rotatable: bool,
    },
    /// Seeded random trees, one JSON line each.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of trees, using seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// All trees of order n up to isomorphism, one JSON line each.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Run the exhaustive verification sweeps and print a pass/fail table.
    Sweep {
        /// Largest order for the matching and labeling sweeps.
        #[arg(long, default_value_t = 11)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
struct Compose {
    /// Tree S.
    #[arg(long = "s")]
    s: PathBuf,
    /// Graceful labeling of S.
    #[arg(long = "f")]
    f: String,
    /// Tree T.
    #[arg(long = "t")]
    t: PathBuf,
    /// Graceful labeling of T.
    #[arg(long = "g")]
    g: String,
    /// Join copies at this T vertex on every edge (default 0, or v).
    #[arg(long, conflicts_with = "random_plan")]
    plan_vertex: Option<usize>,
    /// Draw the T vertex per edge at random from --seed.
    #[arg(long)]
    random_plan: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    dot: DotOut,
}

/// Runs the CLI with standard input as the default tree source.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with_stdin(argv, &mut io::stdin())
}

/// Runs the CLI reading the default tree source from `stdin`.
pub fn run_with_stdin<I, S>(argv: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandResult::ok(Value::Null).note(e.to_string());
            }
            let msg = e.to_string();
            return CommandResult::error(msg.trim_start_matches("error: ").trim_end());
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(r) => r,
        Err(e) => CommandResult::error(e.0),
    }
}

struct CliError(String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_tree(input: &Input, stdin: &mut dyn Read) -> CliResult<ParsedTree> {
    let text = match input.input.as_deref() {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| CliError(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    Ok(parse_tree(&text)?)
}

fn read_tree_file(path: &Path) -> CliResult<Tree> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(parse_tree(&text)?.tree)
}

/// Inline JSON, or the contents of the named file.
fn json_arg(arg: &str) -> CliResult<Value> {
    let text = if arg.trim_start().starts_with(['[', '{']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError(format!("invalid JSON in {arg:?}: {e}")))
}

fn labels_arg(arg: &str) -> CliResult<Labeling> {
    let v = json_arg(arg)?;
    let arr = match v {
        Value::Object(mut o) => o.remove("labels").ok_or_else(|| CliError("missing \"labels\"".into()))?,
        other => other,
    };
    serde_json::from_value::<Vec<usize>>(arr)
        .map(Labeling::new)
        .map_err(|e| CliError(format!("labels must be non-negative integers: {e}")))
}

fn matching_arg(arg: &str) -> CliResult<Matching> {
    let v = json_arg(arg)?;
    let arr = match v {
        Value::Object(mut o) => o.remove("pairs").ok_or_else(|| CliError("missing \"pairs\"".into()))?,
        other => other,
    };
    serde_json::from_value::<Vec<[usize; 2]>>(arr)
        .map(|p| Matching::new(p.into_iter().map(|[a, b]| (a, b)).collect()))
        .map_err(|e| CliError(format!("pairs must be [[a, b], ...]: {e}")))
}

/// DOT rendering with labels inside nodes and weights on edges.
pub fn to_dot(t: &Tree, f: &Labeling) -> String {
    let mut s = String::from("graph labeled_tree {\n  node [shape=circle];\n");
    for v in 0..t.order() {
        s.push_str(&format!("  {v} [label=\"{}\"];\n", f.get(v)));
    }
    for &(a, b) in t.edges() {
        s.push_str(&format!("  {a} -- {b} [label=\"{}\"];\n", f.get(a).abs_diff(f.get(b))));
    }
    s.push_str("}\n");
    s
}

fn write_dot(dot: &DotOut, t: &Tree, f: &Labeling) -> CliResult<()> {
    if let Some(path) = &dot.dot {
        fs::write(path, to_dot(t, f)).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn with_ids(mut r: CommandResult, parsed: &ParsedTree) -> CommandResult {
    if !parsed.is_identity() {
        if let Value::Object(o) = &mut r.payload {
            o.insert("vertex_ids".into(), json!(parsed.ids));
        }
        r = r.note("vertex ids were remapped; see vertex_ids");
    }
    r
}

fn labeling_payload(f: &Labeling) -> Value {
    json!({ "labels": f.values() })
}

fn tree_and_labels(t: &Tree, f: &Labeling) -> Value {
    let mut v = serde_json::to_value(t).expect("tree serializes");
    v["labels"] = json!(f.values());
    v
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> CliResult<CommandResult> {
    match cmd {
        Command::Classify(input) => {
            let p = read_tree(&input, stdin)?;
            let c = p.tree.classify();
            Ok(with_ids(CommandResult::ok(serde_json::to_value(c).unwrap()), &p))
        }
        Command::LabelApm { input, dot, strict } => {
            let p = read_tree(&input, stdin)?;
            let r = label_lobster_apm_with(&p.tree, !strict)?;
            write_dot(&dot, &p.tree, &r.labeling)?;
            let out = CommandResult::ok(labeling_payload(&r.labeling))
                .note(format!("uncovered vertex {} labeled {}", r.uncovered, p.tree.order() - 1))
                .note(format!("contree labeling: {:?}", r.contree_source));
            Ok(with_ids(out, &p))
        }
        Command::LabelPm { input, dot } => {
            let p = read_tree(&input, stdin)?;
            let (f, m) = label_tree_pm_strong(&p.tree)?;
            write_dot(&dot, &p.tree, &f)?;
            let mut payload = labeling_payload(&f);
            payload["pairs"] = serde_json::to_value(&m).unwrap()["pairs"].clone();
            Ok(with_ids(CommandResult::ok(payload), &p))
        }
        Command::Rosa { input, dot, start } => {
            let p = read_tree(&input, stdin)?;
            let start = match start {
                Some(s) => s,
                None => p.tree.longest_path(None)?[0],
            };
            let f = rosa_caterpillar(&p.tree, start)?;
            write_dot(&dot, &p.tree, &f)?;
            Ok(with_ids(CommandResult::ok(labeling_payload(&f)), &p))
        }
        Command::ComposeDelta(c) => compose(c, None),
        Command::ComposeDelta1 { compose: c, u, v } => compose(c, Some((u, v))),
        Command::Verify { input, labels, matching } => {
            let p = read_tree(&input, stdin)?;
            let f = labels_arg(&labels)?;
            let report = match matching {
                Some(m) => verify_strongly_graceful(&p.tree, &f, &matching_arg(&m)?)?,
                None => verify_graceful(&p.tree, &f),
            };
            let mut payload = serde_json::to_value(&report).unwrap();
            if let Ok(w) = edge_weights(&p.tree, &f) {
                payload["weights"] = json!(w);
            }
            let mut out = CommandResult::ok(payload).violation_if(!report.ok);
            for v in &report.violations {
                out = out.note(v.to_string());
            }
            Ok(out)
        }
        Command::Match { input, missing } => {
            let p = read_tree(&input, stdin)?;
            let m = match missing {
                Some(v) => matching_missing(&p.tree, v)?,
                None => max_matching(&p.tree),
            };
            let mut payload = serde_json::to_value(&m).unwrap();
            let uncovered = m.uncovered(p.tree.order());
            payload["uncovered"] = json!(uncovered);
            Ok(with_ids(CommandResult::ok(payload).note(format!("uncovered: {uncovered:?}")), &p))
        }
        Command::Contract { input, matching } => {
            let p = read_tree(&input, stdin)?;
            let m = match matching {
                Some(m) => matching_arg(&m)?,
                None => max_matching(&p.tree),
            };
            let c = contract(&p.tree, &m)?;
            let groups: Vec<Vec<usize>> = c.pair_of.iter().map(Group::members).collect();
            let payload = json!({
                "contree": c.contree,
                "pair_of": groups,
                "origin_edge": c.origin_edge.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                "pairs": serde_json::to_value(&m).unwrap()["pairs"],
            });
            Ok(with_ids(CommandResult::ok(payload), &p))
        }
        Command::Oracle { input, mode, zero_at, strong, budget, limit, modulo_complement, rotatable } => {
            let p = read_tree(&input, stdin)?;
            if rotatable {
                let r = oracle::is_zero_rotatable(&p.tree, budget)?;
                let witnesses: Vec<Value> = r
                    .witnesses
                    .iter()
                    .map(|(v, f)| json!({ "vertex": v, "labels": f.values() }))
                    .collect();
                let payload = json!({ "rotatable": r.rotatable, "witnesses": witnesses, "failing": r.failing });
                return Ok(CommandResult::ok(payload));
            }
            let constraint = match (zero_at, strong) {
                (Some(v), _) => Constraint::ZeroAt(v),
                (None, Some(m)) => Constraint::StronglyGraceful(matching_arg(&m)?),
                (None, None) => Constraint::Graceful,
            };
            let mode = match mode {
                ModeArg::First => SearchMode::First,
                ModeArg::All => SearchMode::All,
                ModeArg::Count => SearchMode::Count,
            };
            let mut opts = SearchOptions::new(mode, constraint);
            opts.node_budget = budget;
            opts.limit = limit;
            opts.modulo_complement = modulo_complement;
            let out = oracle::brute_force(&p.tree, &opts)?;
            Ok(match mode {
                SearchMode::Count => {
                    CommandResult::ok(json!({ "count": out.count, "nodes_visited": out.nodes_visited }))
                }
                _ => {
                    let none = out.labelings.is_empty();
                    let r = CommandResult::lines(out.labelings.iter().map(labeling_payload).collect())
                        .note(format!("nodes visited: {}", out.nodes_visited));
                    if none {
                        r.note("no labeling satisfies the constraint").violation_if(true)
                    } else {
                        r
                    }
                }
            })
        }
        Command::Gen { family, n, seed, count } => {
            let family: Family = family.parse()?;
            let trees = (0..count)
                .map(|i| oracle::generate(&GeneratorSpec::new(family, n, seed.wrapping_add(i))))
                .map(|t| t.map(|t| serde_json::to_value(t).unwrap()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CommandResult::lines(trees))
        }
        Command::Enumerate { n } => {
            let trees = oracle::enumerate_trees(n)?;
            let count = trees.len();
            Ok(CommandResult::lines(trees.into_iter().map(|t| serde_json::to_value(t).unwrap()).collect())
                .note(format!("{count} trees")))
        }
        Command::Sweep { max_n, seed } => {
            let report = sweep::run_all(&sweep::SweepConfig { max_n, seed });
            let all_ok = report.iter().all(|s| s.passed);
            let mut out = CommandResult::ok(json!({ "suites": report })).violation_if(!all_ok);
            for line in sweep::table(&report) {
                out = out.note(line);
            }
            Ok(out)
        }
    }
}

fn compose(c: Compose, plus_one: Option<(Option<usize>, Option<usize>)>) -> CliResult<CommandResult> {
    let s = read_tree_file(&c.s)?;
    let t = read_tree_file(&c.t)?;
    let f = labels_arg(&c.f)?;
    let g = labels_arg(&c.g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let (tree, labels) = match plus_one {
        None => {
            let plan = if c.random_plan {
                AttachmentPlan::random(&s, t.order(), None, &mut rng)
            } else {
                AttachmentPlan::constant(&s, c.plan_vertex.unwrap_or(0), None)
            };
            delta(&CompositionInput::delta(s, f, t, g, plan))?
        }
        Some((u, v)) => {
            let u = u
                .or_else(|| f.vertex_with(s.order() - 1))
                .ok_or_else(|| CliError("no vertex of S carries n_S - 1".into()))?;
            let v = v.or_else(|| g.vertex_with(0)).ok_or_else(|| CliError("no vertex of T carries 0".into()))?;
            let plan = if c.random_plan {
                AttachmentPlan::random(&s, t.order(), Some(u), &mut rng)
            } else {
                AttachmentPlan::constant(&s, c.plan_vertex.unwrap_or(v), Some(u))
            };
            delta_plus_one(&CompositionInput::delta_plus_one(s, f, u, t, g, v, plan))?
        }
    };
    write_dot(&c.dot, &tree, &labels)?;
    Ok(CommandResult::ok(tree_and_labels(&tree, &labels)))
}
