//! Command-line front end.
//!
//! Exit status: 0 success or confirmed, 1 refuted or verification false,
//! 2 usage error, 3 search budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::generators::{Family, VertexLabel};
use crate::graph::{apsp, bfs_distances, Graph};
use crate::io::{graph_to_string, labels_to_string, read_graph, Format};
use crate::resolving::OrderedVertexSet;
use crate::solvers::{solve_min, Budget, Kind, Method, SolveOptions};
use crate::witnesses::{audit_claim, data_point, witness, Verdict, REPORT_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mdim", version, about = "Resolving, doubly resolving and strong resolving sets of layered graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a family graph.
    Gen {
        /// ccc, lcg, cycle, cube, or a full descriptor such as lcg:n=3,k=2
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = GenFormat::EdgeList)]
        format: GenFormat,
        /// Also write the label sidecar (TSV) to this file.
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
    /// Print distances (one row, or the whole matrix).
    Dist {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        from: Option<usize>,
    },
    /// Check whether a set is resolving, doubly resolving or strong resolving.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// @witness, comma-separated ids, or comma-separated p:r:s:i labels
        #[arg(long)]
        set: String,
    },
    /// Compute a minimum set exactly.
    Solve {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Pruned)]
        method: MethodArg,
        /// Require one member in every last-layer unit (family graphs only).
        #[arg(long)]
        family_prune: bool,
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print the explicit witness set for a family and kind.
    Witness {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = ListFormat::Tsv)]
        format: ListFormat,
    },
    /// Audit one closed-form claim.
    Audit {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Audit every closed form on its smallest instances.
    Reproduce {
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// ccc, lcg, cycle, cube, or a full descriptor such as ccc:n=2
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Read an arbitrary graph instead of generating one.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::EdgeList)]
    graph_format: InputFormat,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, default_value_t = 5_000_000)]
    max_subsets: u64,
    #[arg(long)]
    timeout_seconds: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_subsets: Some(self.max_subsets),
            timeout: self.timeout_seconds.map(Duration::from_secs),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenFormat {
    EdgeList,
    Dimacs,
    Pretty,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    EdgeList,
    Dimacs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ListFormat {
    Tsv,
    Pretty,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Resolving,
    Doubly,
    Strong,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Resolving => Kind::Resolving,
            KindArg::Doubly => Kind::Doubly,
            KindArg::Strong => Kind::Strong,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Naive,
    Pruned,
    Vc,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Naive => Method::Naive,
            MethodArg::Pruned => Method::Pruned,
            MethodArg::Vc => Method::VcReduction,
        }
    }
}

fn family_from(name: &str, n: Option<usize>, k: Option<usize>) -> Result<Family> {
    if name.contains(':') {
        return name.parse();
    }
    let mut desc = name.to_string();
    let params: Vec<String> = [("n", n), ("k", k)]
        .iter()
        .filter_map(|(key, v)| v.map(|v| format!("{key}={v}")))
        .collect();
    if !params.is_empty() {
        desc = format!("{desc}:{}", params.join(","));
    }
    desc.parse()
}

impl Source {
    fn family(&self) -> Result<Option<Family>> {
        self.family
            .as_deref()
            .map(|name| family_from(name, self.n, self.k))
            .transpose()
    }

    fn require_family(&self) -> Result<Family> {
        self.family()?
            .ok_or_else(|| Error::domain("this command needs --family"))
    }

    fn load(&self) -> Result<Graph> {
        if let Some(family) = self.family()? {
            return family.build();
        }
        let path = self
            .graph
            .as_ref()
            .ok_or_else(|| Error::domain("give either --family or --graph"))?;
        let format = match self.graph_format {
            InputFormat::EdgeList => Format::EdgeList,
            InputFormat::Dimacs => Format::Dimacs,
        };
        let file = std::fs::File::open(path)?;
        read_graph(BufReader::new(file), format)
    }
}

/// Parses `@witness`, `0,5,7` or `2:1:1:2,2:1:1:4`.
fn parse_set(text: &str, g: &Graph, kind: Kind) -> Result<OrderedVertexSet> {
    let text = text.trim();
    if text == "@witness" {
        let family = g
            .family()
            .ok_or_else(|| Error::domain("@witness needs a generated family graph"))?;
        return witness(family, kind);
    }
    let mut members = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let id = if item.contains(':') {
            let label: VertexLabel = item.parse()?;
            let family = g
                .family()
                .ok_or_else(|| Error::domain("structured labels need a generated family graph"))?;
            family.id_of(label)?
        } else {
            item.parse()
                .map_err(|_| Error::domain(format!("set member {item:?} is neither an id nor a label")))?
        };
        members.push(id);
    }
    OrderedVertexSet::new(members, g.order())
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn pretty_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "order {} edges {}", g.order(), g.edge_count());
    for u in 0..g.order() {
        let name = g.label(u).map_or_else(|| u.to_string(), |l| format!("{u} ({l})"));
        let _ = writeln!(out, "{name}: {}", join(g.neighbors(u), " "));
    }
    out
}

struct Output {
    text: String,
    status: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: EXIT_OK }
    }
}

fn execute(command: Command, err: &mut dyn Write) -> Result<Output> {
    match command {
        Command::Gen {
            family,
            n,
            k,
            format,
            labels_out,
        } => {
            let g = family_from(&family, n, k)?.build()?;
            if let Some(path) = labels_out {
                std::fs::write(path, labels_to_string(&g))?;
            }
            Ok(Output::ok(match format {
                GenFormat::EdgeList => graph_to_string(&g, Format::EdgeList),
                GenFormat::Dimacs => graph_to_string(&g, Format::Dimacs),
                GenFormat::Pretty => pretty_graph(&g),
            }))
        }
        Command::Dist { source, from } => {
            let g = source.load()?;
            let mut text = String::new();
            match from {
                Some(u) => {
                    let row = bfs_distances(&g, u)?;
                    if let Some(v) = row.iter().position(|&d| d == crate::graph::UNREACHABLE) {
                        return Err(Error::Disconnected { from: u, unreached: v });
                    }
                    let _ = writeln!(text, "{}", join(row, "\t"));
                }
                None => {
                    let d = apsp(&g)?;
                    for u in 0..d.order() {
                        let _ = writeln!(text, "{}", join(d.row(u), "\t"));
                    }
                }
            }
            Ok(Output::ok(text))
        }
        Command::Verify { source, kind, set } => {
            let kind = Kind::from(kind);
            let g = source.load()?;
            let set = parse_set(&set, &g, kind)?;
            let d = apsp(&g)?;
            let ok = kind.verify(&d, &set)?;
            Ok(Output {
                text: format!("{ok} {}\n", set.len()),
                status: if ok { EXIT_OK } else { EXIT_FALSE },
            })
        }
        Command::Solve {
            source,
            kind,
            method,
            family_prune,
            parallel,
            budget,
        } => {
            let kind = Kind::from(kind);
            let g = source.load()?;
            let opts = SolveOptions {
                budget: budget.budget(),
                family_pruning: family_prune,
                parallel,
            };
            let res = solve_min(kind, &g, method.into(), &opts)?;
            let _ = writeln!(
                err,
                "examined {} subsets in {:.3}s ({} forced by twins)",
                res.stats.subsets_examined,
                res.stats.elapsed.as_secs_f64(),
                res.stats.forced
            );
            let labelled = g.labels().is_some();
            let mut text = String::from("kind\toptimum\tmethod\twitness");
            text.push_str(if labelled { "\tlabels\n" } else { "\n" });
            let _ = write!(text, "{kind}\t{}\t{}\t{}", res.optimum, res.method_tag(), res.witness.to_csv());
            if labelled {
                let labels = res.witness.members().iter().filter_map(|&v| g.label(v));
                let _ = write!(text, "\t{}", join(labels, ","));
            }
            text.push('\n');
            Ok(Output::ok(text))
        }
        Command::Witness { source, kind, format } => {
            let family = source.require_family()?;
            let set = witness(family, kind.into())?;
            let text = match format {
                ListFormat::Tsv => format!("{}\t{}\n", set.len(), set.to_csv()),
                ListFormat::Pretty => {
                    let mut t = String::new();
                    for &id in set.members() {
                        let _ = writeln!(t, "{id}\t{}", family.label_of(id)?);
                    }
                    t
                }
            };
            Ok(Output::ok(text))
        }
        Command::Audit { source, kind, budget } => {
            let family = source.require_family()?;
            let claim = audit_claim(family, kind.into(), &SolveOptions::with_budget(budget.budget()))?;
            let mut text = format!("{REPORT_HEADER}\n{}\n", claim.report_row());
            if let Some(c) = &claim.counterexample {
                let _ = writeln!(text, "# counterexample: {c}");
            }
            for note in &claim.notes {
                let _ = writeln!(text, "# {note}");
            }
            let status = if claim.verified == Verdict::Refuted {
                EXIT_FALSE
            } else {
                EXIT_OK
            };
            Ok(Output { text, status })
        }
        Command::Reproduce { budget } => reproduce(&SolveOptions::with_budget(budget.budget())),
    }
}

/// Instances audited by `reproduce`.
pub fn reproduce_plan() -> Vec<(Family, Kind)> {
    let ccc2 = Family::Ccc { n: 2 };
    let lcg = |n, k| Family::Lcg { n, k };
    vec![
        (ccc2, Kind::Resolving),
        (ccc2, Kind::Doubly),
        (ccc2, Kind::Strong),
        (lcg(3, 2), Kind::Resolving),
        (lcg(4, 2), Kind::Resolving),
        (lcg(3, 3), Kind::Resolving),
        (lcg(4, 2), Kind::Doubly),
        (lcg(3, 2), Kind::Strong),
        (lcg(4, 2), Kind::Strong),
        (lcg(3, 3), Kind::Strong),
    ]
}

fn reproduce(opts: &SolveOptions) -> Result<Output> {
    let mut text = format!("{REPORT_HEADER}\n");
    let mut comments = String::new();
    let mut status = EXIT_OK;
    for (family, kind) in reproduce_plan() {
        let claim = audit_claim(family, kind, opts)?;
        let _ = writeln!(text, "{}", claim.report_row());
        if let Some(c) = &claim.counterexample {
            let _ = writeln!(comments, "# {family} {kind}: counterexample: {c}");
        }
        if claim.verified == Verdict::Refuted {
            status = EXIT_FALSE;
        }
    }
    // no closed form is claimed below n = 4 for the doubly variant
    for family in [Family::Lcg { n: 3, k: 2 }, Family::Lcg { n: 3, k: 3 }] {
        let _ = writeln!(text, "{}", data_point(family, Kind::Doubly, opts)?);
    }
    text.push_str(&comments);
    Ok(Output { text, status })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::OracleDisagreement { .. } | Error::Invariant(_) => EXIT_FALSE,
        Error::Domain(_) | Error::Parse { .. } | Error::Disconnected { .. } | Error::Io(_) => EXIT_USAGE,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return status;
        }
    };
    match execute(cli.command, err) {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            output.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
