//! `qh`: mutation of quivers with homotopy from the command line.
//!
//! Exit status is 0 on success, 1 for a domain error or a failed check, and
//! 2 when a homotopy membership question could not be decided. Errors are
//! written to stderr as one JSON object.

mod repro;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiver_homotopy::cluster::{explore_laurent, PathSelection};
use quiver_homotopy::covering::{check_global_bounded, orbit_mutate};
use quiver_homotopy::error::Error;
use quiver_homotopy::io::{
    mutation_result_json, parse, quiver_to_dot, quiver_to_graphml, to_json_string, CoveringJson,
    HomotopyJson, QuiverJson, SeedJson,
};
use quiver_homotopy::mutation::init_tracked;
use quiver_homotopy::surface::{
    flip_graph, surface_quiver, verify_flip_mutation_in, BoundaryMode, Triangulation,
    TriangulationSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "qh",
    version,
    about = "Quivers with homotopy: mutation, coverings, surfaces, cluster algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a quiver with homotopy at one vertex or along a sequence.
    Mutate(MutateArgs),
    /// Orbit mutation of a covering at a base vertex.
    OrbitMutate(OrbitArgs),
    /// Check that every orbit-mutation sequence up to a depth stays weakly admissible.
    CheckGlobal(GlobalArgs),
    /// Flip a tagged triangulation at an arc.
    Flip(FlipArgs),
    /// Enumerate the flip graph of a triangulation.
    FlipGraph(FlipGraphArgs),
    /// Compare flips with mutations of the quiver with homotopy.
    VerifyFlipMutation(VerifyArgs),
    /// Explore cluster variables of a seed and report Laurentness, g-vectors and F-polynomials.
    ClusterExplore(ExploreArgs),
    /// Export a quiver (or the quiver of a covering or triangulation).
    Export(ExportArgs),
    /// Recompute a worked example and compare it with its golden file.
    Repro(ReproArgs),
}

#[derive(Args)]
struct MutateArgs {
    #[arg(long)]
    quiver: PathBuf,
    /// Homotopy document; trivial homotopy when omitted.
    #[arg(long)]
    homotopy: Option<PathBuf>,
    /// Vertex to mutate at (0-based).
    #[arg(long, conflicts_with = "seq", required_unless_present = "seq")]
    at: Option<usize>,
    /// Comma-separated vertices, mutated left to right.
    #[arg(long)]
    seq: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    at: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GlobalArgs {
    #[arg(long)]
    cover: PathBuf,
    #[arg(long, default_value_t = 3)]
    depth: usize,
}

#[derive(Args)]
struct FlipArgs {
    #[arg(long)]
    tri: PathBuf,
    /// Arc label, or its index in the arc list.
    #[arg(long)]
    at: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FlipGraphArgs {
    #[arg(long)]
    tri: PathBuf,
    #[arg(long, default_value_t = 1000)]
    max_nodes: usize,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Boundary {
    Omit,
    Frozen,
}

impl From<Boundary> for BoundaryMode {
    fn from(b: Boundary) -> Self {
        match b {
            Boundary::Omit => BoundaryMode::Omit,
            Boundary::Frozen => BoundaryMode::Frozen,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    tri: PathBuf,
    #[arg(long, value_enum, default_value_t = Boundary::Omit)]
    boundary: Boundary,
    /// Check every triangulation of the flip graph, not only the given one.
    #[arg(long)]
    all_nodes: bool,
    #[arg(long, default_value_t = 1000)]
    max_nodes: usize,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long)]
    seed: PathBuf,
    #[arg(long)]
    depth: usize,
    /// Number of random mutation sequences of length `depth`.
    #[arg(
        long,
        conflicts_with = "exhaustive",
        required_unless_present = "exhaustive"
    )]
    paths: Option<usize>,
    /// Every sequence without immediate repetition.
    #[arg(long)]
    exhaustive: bool,
    /// Seed of the random generator for `--paths`.
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Graphml,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExportSource {
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Exports the base quiver of the covering (`--total` for the total quiver).
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Exports the quiver of the triangulation.
    #[arg(long)]
    tri: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    source: ExportSource,
    #[arg(long)]
    total: bool,
    #[arg(long, value_enum, default_value_t = Boundary::Omit)]
    boundary: Boundary,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    /// Example name, or `all`.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(repro::names_with_all()))]
    target: String,
    /// Write the results as golden files into this directory instead of comparing.
    #[arg(long)]
    bless: Option<PathBuf>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_undecided() { 2 } else { 1 };
        let mut body = json!({"error": error_kind(&e), "message": e.to_string()});
        if let Error::Schema { pointer, .. } = &e {
            body["pointer"] = json!(pointer);
        }
        Failure { code, body }
    }
}

fn failure(kind: &str, message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        body: json!({"error": kind, "message": message.into()}),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidQuiver(_) => "InvalidQuiver",
        Error::LoopPresent(_) => "LoopPresent",
        Error::VertexOutOfRange(_) => "VertexOutOfRange",
        Error::UnknownArrow(_) => "UnknownArrow",
        Error::NotComposable(_) => "NotComposable",
        Error::NotClosed => "NotClosed",
        Error::NotReduced(_, _) => "NotReduced",
        Error::DecisionUnknown(_) => "DecisionUnknown",
        Error::InvalidCovering(_) => "InvalidCovering",
        Error::NotWeaklyAdmissible(_) => "NotWeaklyAdmissible",
        Error::NotRegular => "NotRegular",
        Error::NonTransitive(_) => "NonTransitive",
        Error::InvalidGluing(_) => "InvalidGluing",
        Error::InvalidSurface(_) => "InvalidSurface",
        Error::UnknownConfiguration(_) => "UnknownConfiguration",
        Error::NotDivisible => "NotDivisible",
        Error::NotHomogeneous(_) => "NotHomogeneous",
        Error::NotSubtractionFree(_) => "NotSubtractionFree",
        Error::Resource(_) => "Resource",
        Error::Schema { .. } => "Schema",
    }
}

type CliResult = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| failure("Io", format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text)
        .map_err(|e| failure("Io", format!("cannot write {}: {e}", path.display())))
}

/// Writes `text` to `out`, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    Ok(parse(&read(path)?)?)
}

fn load_triangulation(path: &Path) -> std::result::Result<Triangulation, Failure> {
    let spec: TriangulationSpec = load(path)?;
    Ok(Triangulation::from_spec(&spec)?)
}

fn parse_sequence(s: &str) -> std::result::Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| failure("Usage", format!("`{p}` is not a vertex number")))
        })
        .collect()
}

fn mutate(a: MutateArgs) -> CliResult {
    let q = load::<QuiverJson>(&a.quiver)?.to_quiver()?;
    let oracle = match &a.homotopy {
        Some(p) => load::<HomotopyJson>(p)?.to_oracle(&q, "")?,
        None => quiver_homotopy::oracle::HomotopyOracle::trivial(&q),
    };
    let seq = match (a.at, &a.seq) {
        (Some(k), _) => vec![k],
        (None, Some(s)) => parse_sequence(s)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let mut t = init_tracked(&q, oracle)?;
    let mut deletions = Vec::new();
    for k in seq {
        let (next, pairs) = t.mutate_with_log(k)?;
        t = next;
        deletions.push(pairs);
    }
    let result = mutation_result_json(&t, &deletions);
    emit(a.out.as_deref(), &to_json_string(&result))?;
    if let Some(dot) = &a.dot {
        write(dot, &quiver_to_dot(t.current(), "mutated"))?;
    }
    Ok(())
}

fn orbit(a: OrbitArgs) -> CliResult {
    let c = load::<CoveringJson>(&a.cover)?.to_covering()?;
    let m = orbit_mutate(&c, a.at)?;
    let loops: Vec<usize> = m
        .base()
        .arrows()
        .iter()
        .filter(|x| x.src == x.tgt)
        .map(|x| x.src)
        .collect();
    let result = json!({
        "weakly_admissible": m.is_weakly_admissible(),
        "loops_at": loops,
        "covering": CoveringJson::from_covering(&m),
    });
    emit(a.out.as_deref(), &to_json_string(&result))
}

fn global(a: GlobalArgs) -> CliResult {
    let c = load::<CoveringJson>(&a.cover)?.to_covering()?;
    let g = check_global_bounded(&c, a.depth)?;
    let result = json!({
        "ok": g.ok,
        "counterexample": g.counterexample,
        "explored": g.explored,
        "depth": a.depth,
    });
    emit(None, &to_json_string(&result))?;
    if g.ok {
        Ok(())
    } else {
        Err(failure(
            "NotWeaklyAdmissible",
            "some orbit mutation sequence creates a loop",
        ))
    }
}

fn flip(a: FlipArgs) -> CliResult {
    let t = load_triangulation(&a.tri)?;
    let flipped = match t.arc_index(&a.at) {
        Some(_) => t.flip_label(&a.at)?,
        None => {
            let k: usize =
                a.at.parse()
                    .map_err(|_| failure("Usage", format!("no arc `{}`", a.at)))?;
            t.flip(k)?
        }
    };
    emit(a.out.as_deref(), &to_json_string(&flipped.to_spec()))
}

fn flip_graph_cmd(a: FlipGraphArgs) -> CliResult {
    let t = load_triangulation(&a.tri)?;
    let g = flip_graph(&t, a.max_nodes)?;
    let result = json!({
        "nodes": g.nodes.len(),
        "edges": g.neighbour_pairs().len(),
        "complete": g.complete,
        "is_cycle": g.is_cycle(),
        "triangulations": g.nodes.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    emit(None, &to_json_string(&result))?;
    if let Some(dot) = &a.dot {
        write(dot, &g.to_dot())?;
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> CliResult {
    let t = load_triangulation(&a.tri)?;
    let mode = BoundaryMode::from(a.boundary);
    let nodes = if a.all_nodes {
        flip_graph(&t, a.max_nodes)?.nodes
    } else {
        vec![t]
    };
    let mut checks = Vec::new();
    let mut failures = 0;
    for (i, node) in nodes.iter().enumerate() {
        for k in 0..node.arc_labels().len() {
            let c = verify_flip_mutation_in(node, k, mode)?;
            if !c.ok() {
                failures += 1;
            }
            checks.push(json!({
                "node": i,
                "arc": node.arc_labels()[k],
                "quiver_match": c.quiver_match,
                "generators_in": c.generators_in,
            }));
        }
    }
    let result = json!({
        "triangulations": nodes.len(),
        "flips": checks.len(),
        "failures": failures,
        "checks": checks,
    });
    emit(None, &to_json_string(&result))?;
    if failures == 0 {
        Ok(())
    } else {
        Err(failure(
            "FlipMutationMismatch",
            format!("{failures} flips disagree with mutation"),
        ))
    }
}

/// `count` random sequences of length `depth` without immediate repetition.
fn random_paths(rank: usize, depth: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut path: Vec<usize> = Vec::with_capacity(depth);
            for _ in 0..depth {
                let k = loop {
                    let k = rng.gen_range(0..rank);
                    if rank < 2 || path.last() != Some(&k) {
                        break k;
                    }
                };
                path.push(k);
            }
            path
        })
        .collect()
}

fn explore(a: ExploreArgs) -> CliResult {
    let seed = load::<SeedJson>(&a.seed)?.to_seed()?;
    let selection = match a.paths {
        Some(n) => PathSelection::Given(random_paths(seed.rank(), a.depth, n, a.rng_seed)),
        None => PathSelection::Exhaustive,
    };
    let report = explore_laurent(&seed, a.depth, &selection)?;
    if let Some(p) = &a.report {
        write(p, &to_json_string(&report))?;
    }
    let summary = json!({
        "rank": report.rank,
        "depth": report.depth,
        "principal": report.principal,
        "nodes": report.nodes.len(),
        "variables": report.nodes.iter().map(|n| n.variables.len()).sum::<usize>(),
        "findings": report.findings,
    });
    emit(None, &to_json_string(&summary))
}

fn export(a: ExportArgs) -> CliResult {
    let src = &a.source;
    let q = if let Some(p) = &src.quiver {
        load::<QuiverJson>(p)?.to_quiver()?
    } else if let Some(p) = &src.cover {
        let c = load::<CoveringJson>(p)?.to_covering()?;
        if a.total {
            c.total().clone()
        } else {
            c.base().clone()
        }
    } else if let Some(p) = &src.tri {
        surface_quiver(&load_triangulation(p)?, a.boundary.into())?.quiver
    } else {
        unreachable!("clap requires a source")
    };
    let text = match a.format {
        Format::Json => to_json_string(&QuiverJson::from_quiver(&q)),
        Format::Dot => quiver_to_dot(&q, "Q"),
        Format::Graphml => quiver_to_graphml(&q),
    };
    emit(a.out.as_deref(), &text)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Mutate(a) => mutate(a),
        Command::OrbitMutate(a) => orbit(a),
        Command::CheckGlobal(a) => global(a),
        Command::Flip(a) => flip(a),
        Command::FlipGraph(a) => flip_graph_cmd(a),
        Command::VerifyFlipMutation(a) => verify(a),
        Command::ClusterExplore(a) => explore(a),
        Command::Export(a) => export(a),
        Command::Repro(a) => repro::run(&a.target, a.bless.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            eprintln!(
                "{}",
                json!({"error": "Usage", "message": message.trim_end()})
            );
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}
