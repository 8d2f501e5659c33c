//! Command-line front end: ingestion → face filling → curvature /
//! characteristic / flow / dispersion pipelines with machine-readable
//! outputs and a reproducibility manifest.
//!
//! Exit codes: 0 success, 2 input error, 3 mode misuse. Diagnostics go to
//! stderr; data goes to stdout unless `--output-dir` is given.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use netshape_core::{
    bloch, curvature::{self, CurvatureMode}, dispersion, faces, flow, ingest,
    weights::{self, Strictness, WeightScheme},
    Error, PolyhedralComplex, Result, VertexId,
};

#[derive(Parser)]
#[command(
    name = "netshape",
    version,
    about = "Curvature, characteristic and flow analysis of networks as 2-dimensional complexes",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Input file: an edge list (two or three whitespace/comma-separated
    /// columns), or a complex JSON file when the extension is .json.
    #[arg(long)]
    input: PathBuf,
    /// Write output files (plus manifest.json) here instead of stdout.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Largest cycle length filled as a 2-face.
    #[arg(long, default_value_t = faces::DEFAULT_MAX_CYCLE_LEN)]
    faces_max_degree: usize,
    /// Largest clique dimension recorded as a simplex.
    #[arg(long, default_value_t = faces::DEFAULT_MAX_SIMPLEX_DIM)]
    simplex_max_dim: usize,
    /// Face/simplex weight scheme: unit, heron, triangulated, shoelace,
    /// simplex-unit or simplex-product (unit keeps existing weights).
    #[arg(long, default_value = "unit", value_parser = parse_scheme)]
    face_weights: WeightScheme,
    /// Coordinate file ("label x y" per line) for coordinate-based weights.
    #[arg(long)]
    coords: Option<PathBuf>,
    /// Clamp degenerate weights to a small floor instead of failing.
    #[arg(long)]
    lenient: bool,
    /// Cap the worker thread count (0 = automatic).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Node/edge counts, face census and simplex census.
    Stats(StatsArgs),
    /// Fill faces and simplices and emit the complex as JSON.
    Fill(FillArgs),
    /// Per-edge curvature with a summary.
    Curvature(CurvatureArgs),
    /// Full per-cell curvature-function report.
    Bloch(BlochArgs),
    /// Euler characteristic, prototype class and positivity criteria.
    Chi(ChiArgs),
    /// Curvature flow on edge weights with trace and classification.
    Flow(FlowArgs),
    /// Edge dispersion, for all edges or one vertex pair.
    Dispersion(DispersionArgs),
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FillArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CurvatureArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Curvature definition: weighted, combinatorial, or 1d.
    #[arg(long, default_value = "weighted", value_parser = parse_mode)]
    mode: CurvatureMode,
}

#[derive(Args)]
struct BlochArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ChiArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FlowArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Step size (0 disables convergence detection and runs to --max-iter).
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Prune edges below this fraction of the maximum weight, in (0, 1).
    #[arg(long, default_value_t = 0.05)]
    threshold: f64,
    /// Stop after this many iterations if convergence has not been reached.
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
    /// Record a complex snapshot every K iterations (requires --output-dir).
    #[arg(long, value_name = "K")]
    snapshot_every: Option<usize>,
    /// Convergence tolerance on the largest relative weight update.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Drive the flow with the counting curvature function instead of the
    /// weighted curvature.
    #[arg(long)]
    r1_flow: bool,
    /// Flip the sign of the counting-curvature update (alternative printed
    /// form); only meaningful with --r1-flow.
    #[arg(long)]
    def10_sign: bool,
    /// Unnormalized short-term flow (no mean subtraction, no rescaling).
    #[arg(long)]
    short_term: bool,
}

#[derive(Args)]
struct DispersionArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Count non-adjacent common-neighbour pairs whose global common
    /// neighbourhood is empty (identically 0 on edges; kept for comparison).
    #[arg(long)]
    literal: bool,
    /// Optional vertex pair (two labels); default is every edge.
    #[arg(num_args = 2, value_names = ["U", "V"])]
    pair: Option<Vec<String>>,
}

fn parse_scheme(s: &str) -> std::result::Result<WeightScheme, String> {
    WeightScheme::parse(s).ok_or_else(|| {
        format!("unknown weight scheme '{s}' (expected unit, heron, triangulated, shoelace, simplex-unit or simplex-product)")
    })
}

fn parse_mode(s: &str) -> std::result::Result<CurvatureMode, String> {
    CurvatureMode::parse(s)
        .ok_or_else(|| format!("unknown curvature mode '{s}' (expected weighted, combinatorial or 1d)"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Misuse(_) | Error::MissingCoordinate(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let common = match &cli.command {
        Command::Stats(a) => &a.common,
        Command::Fill(a) => &a.common,
        Command::Curvature(a) => &a.common,
        Command::Bloch(a) => &a.common,
        Command::Chi(a) => &a.common,
        Command::Flow(a) => &a.common,
        Command::Dispersion(a) => &a.common,
    };
    if common.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(common.threads)
            .build_global()
            .map_err(|e| Error::Structural(format!("thread pool: {e}")))?;
    }
    let mut out = Outputs::new(common.output_dir.clone());
    match &cli.command {
        Command::Stats(args) => cmd_stats(args, &mut out)?,
        Command::Fill(args) => cmd_fill(args, &mut out)?,
        Command::Curvature(args) => cmd_curvature(args, &mut out)?,
        Command::Bloch(args) => cmd_bloch(args, &mut out)?,
        Command::Chi(args) => cmd_chi(args, &mut out)?,
        Command::Flow(args) => cmd_flow(args, &mut out)?,
        Command::Dispersion(args) => cmd_dispersion(args, &mut out)?,
    }
    let manifest = Manifest::new(&cli.command, common)?;
    out.flush(&manifest)
}

// ---------------------------------------------------------------------------
// Input loading

struct LoadedInput {
    raw_vertices: usize,
    raw_edges: usize,
    complex: PolyhedralComplex,
    from_complex_json: bool,
}

fn is_complex_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Read the input; edge lists are reduced to their largest connected
/// component, complex JSON files are taken as materialized.
fn load_input(common: &CommonArgs) -> Result<LoadedInput> {
    if is_complex_json(&common.input) {
        let complex = ingest::read_complex_json(&common.input)?;
        Ok(LoadedInput {
            raw_vertices: complex.vertex_count(),
            raw_edges: complex.edge_count(),
            from_complex_json: true,
            complex,
        })
    } else {
        let raw = ingest::read_edge_list(&common.input)?;
        let complex = ingest::largest_component(&raw);
        Ok(LoadedInput {
            raw_vertices: raw.vertex_count(),
            raw_edges: raw.edge_count(),
            complex,
            from_complex_json: false,
        })
    }
}

fn strictness(common: &CommonArgs) -> Strictness {
    if common.lenient {
        Strictness::Lenient
    } else {
        Strictness::Strict
    }
}

/// Fill faces on edge-list inputs (complex JSON is already materialized)
/// and apply a non-default weight scheme.
fn prepare_complex(common: &CommonArgs, loaded: &mut LoadedInput) -> Result<()> {
    if !loaded.from_complex_json {
        faces::fill_faces(
            &mut loaded.complex,
            common.faces_max_degree,
            common.simplex_max_dim,
        )?;
    }
    apply_weights(common, &mut loaded.complex)
}

fn apply_weights(common: &CommonArgs, c: &mut PolyhedralComplex) -> Result<()> {
    if common.face_weights == WeightScheme::Unit {
        return Ok(()); // keep whatever weights the input carries
    }
    let coords = match &common.coords {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::IoAt {
                path: path.display().to_string(),
                source,
            })?;
            let parsed = ingest::parse_coordinates(&text)?;
            Some(ingest::coordinates_for(c, &parsed))
        }
        None => None,
    };
    if common.face_weights.needs_coordinates() && coords.is_none() {
        return Err(Error::Misuse(
            "the shoelace scheme needs --coords (label x y per line)".into(),
        ));
    }
    weights::assign_weights(c, common.face_weights, coords.as_ref(), strictness(common))
}

// ---------------------------------------------------------------------------
// Subcommands

fn cmd_stats(args: &StatsArgs, out: &mut Outputs) -> Result<()> {
    let mut loaded = load_input(&args.common)?;
    prepare_complex(&args.common, &mut loaded)?;
    let c = &loaded.complex;

    let mut stats = String::from("key,value\n");
    let _ = writeln!(stats, "nodes_raw,{}", loaded.raw_vertices);
    let _ = writeln!(stats, "edges_raw,{}", loaded.raw_edges);
    let _ = writeln!(stats, "nodes,{}", c.vertex_count());
    let _ = writeln!(stats, "edges,{}", c.edge_count());
    let avg = if c.vertex_count() == 0 {
        0.0
    } else {
        2.0 * c.edge_count() as f64 / c.vertex_count() as f64
    };
    let _ = writeln!(stats, "avg_degree,{avg:.4}");
    out.add("stats.csv", stats);

    let census = faces::census(c, args.common.faces_max_degree, args.common.simplex_max_dim);
    let mut csv = String::from("face_degree,count\n");
    for (d, n) in &census.faces_by_degree {
        let _ = writeln!(csv, "{d},{n}");
    }
    csv.push_str("simplex_dim,count\n");
    for (d, n) in &census.simplices_by_dim {
        let _ = writeln!(csv, "{d},{n}");
    }
    out.add("census.csv", csv);
    Ok(())
}

fn cmd_fill(args: &FillArgs, out: &mut Outputs) -> Result<()> {
    let mut loaded = load_input(&args.common)?;
    faces::fill_faces(
        &mut loaded.complex,
        args.common.faces_max_degree,
        args.common.simplex_max_dim,
    )?;
    apply_weights(&args.common, &mut loaded.complex)?;
    out.add("complex.json", ingest::to_json(&loaded.complex));
    Ok(())
}

fn cmd_curvature(args: &CurvatureArgs, out: &mut Outputs) -> Result<()> {
    let mut loaded = load_input(&args.common)?;
    // 1d curvature is defined on the bare 1-skeleton: an edge list is taken
    // as-is; a complex that already carries faces is a mode misuse (caught
    // by the curvature computation itself).
    if args.mode != CurvatureMode::OneDim {
        prepare_complex(&args.common, &mut loaded)?;
    }
    let c = &loaded.complex;
    let report = curvature::curvature_report(c, args.mode)?;

    let mut csv = String::from("edge_id,u,v,ric\n");
    for (e, value) in c.edge_ids_iter().zip(&report.values) {
        let [u, v] = c.edge(e).endpoints();
        let _ = writeln!(csv, "{},{},{},{}", e.index(), c.label(u), c.label(v), value);
    }
    out.add("curvature.csv", csv);
    out.add("curvature_summary.json", to_pretty(&report)?);
    Ok(())
}

fn cmd_bloch(args: &BlochArgs, out: &mut Outputs) -> Result<()> {
    let mut loaded = load_input(&args.common)?;
    prepare_complex(&args.common, &mut loaded)?;
    let report = bloch::bloch_report(&loaded.complex)?;
    out.add("bloch.json", to_pretty(&report)?);
    Ok(())
}

#[derive(Serialize)]
struct ChiSummary {
    chi_gb: f64,
    chi_comb: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    chi_mean: Option<i64>,
    mean_r1: Option<f64>,
    mean_a1: Option<f64>,
    mean_b1: Option<f64>,
    prototype: bloch::Prototype,
    criteria: bloch::PositivityCriteria,
}

fn cmd_chi(args: &ChiArgs, out: &mut Outputs) -> Result<()> {
    let mut loaded = load_input(&args.common)?;
    prepare_complex(&args.common, &mut loaded)?;
    let report = bloch::bloch_report(&loaded.complex)?;
    let summary = ChiSummary {
        chi_gb: report.chi_gb,
        chi_comb: report.chi_comb,
        chi_mean: report.chi_mean,
        mean_r1: report.mean_r1,
        mean_a1: report.mean_a1,
        mean_b1: report.mean_b1,
        prototype: report.prototype,
        criteria: report.criteria,
    };
    out.add("chi.json", to_pretty(&summary)?);
    Ok(())
}

#[derive(Serialize)]
struct FlowSummary {
    termination: flow::Termination,
    iterations: usize,
    final_chi: i64,
    prototype: bloch::Prototype,
    final_vertices: usize,
    final_edges: usize,
    final_faces: usize,
}

fn cmd_flow(args: &FlowArgs, out: &mut Outputs) -> Result<()> {
    if args.def10_sign && !args.r1_flow {
        return Err(Error::Misuse(
            "--def10-sign flips the counting-curvature update and needs --r1-flow".into(),
        ));
    }
    if args.epsilon == 0.0 {
        eprintln!(
            "warning: step size 0 disables convergence detection; the flow will \
             record identical states until --max-iter"
        );
    }
    if args.snapshot_every.is_some() && args.common.output_dir.is_none() {
        eprintln!("warning: snapshots are only written with --output-dir; ignoring --snapshot-every");
    }
    let mut loaded = load_input(&args.common)?;
    prepare_complex(&args.common, &mut loaded)?;
    let variant = if args.r1_flow {
        flow::FlowVariant::R1
    } else if args.short_term {
        flow::FlowVariant::ShortTerm
    } else {
        flow::FlowVariant::Normalized
    };
    let config = flow::FlowConfig {
        variant,
        epsilon: args.epsilon,
        max_iter: args.max_iter,
        threshold: args.threshold,
        renormalize: !args.short_term,
        tol: args.tol,
        flip_sign: args.def10_sign,
        snapshot_every: args.snapshot_every,
        // An edge whose weight would cross zero is an edge that vanishes:
        // it is clamped to the floor and removed by the same step's prune.
        // (--lenient still governs the weight-scheme preparation above.)
        strictness: Strictness::Lenient,
    };
    let trace = flow::run_flow(&loaded.complex, &config)?;

    let mut lines = String::new();
    for row in &trace.rows {
        lines.push_str(&serde_json::to_string(row)?);
        lines.push('\n');
    }
    out.add("flow_trace.jsonl", lines);
    let summary = FlowSummary {
        termination: trace.termination,
        iterations: trace.rows.last().map_or(0, |r| r.t),
        final_chi: trace.final_chi,
        prototype: trace.prototype,
        final_vertices: trace.final_complex.vertex_count(),
        final_edges: trace.final_complex.edge_count(),
        final_faces: trace.final_complex.face_count(),
    };
    out.add("flow_summary.json", to_pretty(&summary)?);
    if out.dir.is_some() {
        for (t, snapshot) in &trace.snapshots {
            out.add(&format!("snapshot_{t}.json"), ingest::to_json(snapshot));
        }
    }
    Ok(())
}

fn cmd_dispersion(args: &DispersionArgs, out: &mut Outputs) -> Result<()> {
    let loaded = load_input(&args.common)?;
    let c = &loaded.complex;
    let mut csv = String::from("u,v,common,disp\n");
    match &args.pair {
        Some(pair) => {
            let index = c.label_index();
            let resolve = |label: &str| -> Result<VertexId> {
                index.get(label).copied().ok_or_else(|| {
                    Error::Domain(format!("unknown vertex label '{label}'"))
                })
            };
            let (u, v) = (resolve(&pair[0])?, resolve(&pair[1])?);
            let common = dispersion::common_neighbors(c, u, v)?.len();
            let disp = if args.literal {
                dispersion::dispersion_literal(c, u, v)?
            } else {
                dispersion::dispersion(c, u, v)?
            };
            let _ = writeln!(csv, "{},{},{},{}", c.label(u), c.label(v), common, disp);
        }
        None => {
            for value in dispersion::dispersion_all(c, args.literal)? {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    c.label(value.u),
                    c.label(value.v),
                    value.common,
                    value.disp
                );
            }
        }
    }
    out.add("dispersion.csv", csv);
    Ok(())
}

// ---------------------------------------------------------------------------
// Output plumbing

struct Outputs {
    dir: Option<PathBuf>,
    produced: Vec<(String, String)>,
}

impl Outputs {
    fn new(dir: Option<PathBuf>) -> Self {
        Outputs { dir, produced: Vec::new() }
    }

    fn add(&mut self, name: &str, content: String) {
        self.produced.push((name.to_string(), content));
    }

    fn flush(self, manifest: &Manifest) -> Result<()> {
        match &self.dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                for (name, content) in &self.produced {
                    std::fs::write(dir.join(name), content)?;
                }
                std::fs::write(dir.join("manifest.json"), to_pretty(manifest)?)?;
            }
            None => {
                use std::io::Write;
                let stdout = std::io::stdout();
                let mut handle = stdout.lock();
                let mut first = true;
                let mut emit = |text: &str| -> std::io::Result<()> {
                    handle.write_all(text.as_bytes())
                };
                for (_, content) in &self.produced {
                    let result: std::io::Result<()> = (|| {
                        if !first {
                            emit("\n")?;
                        }
                        first = false;
                        emit(content)?;
                        if !content.ends_with('\n') {
                            emit("\n")?;
                        }
                        Ok(())
                    })();
                    match result {
                        // A closed pipe (e.g. `netshape ... | head`) is not
                        // an error worth failing over.
                        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
                        other => other?,
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    input: String,
    input_sha256: String,
    options: serde_json::Value,
    timestamp_unix: u64,
}

impl Manifest {
    fn new(command: &Command, common: &CommonArgs) -> Result<Self> {
        let bytes = std::fs::read(&common.input).map_err(|source| Error::IoAt {
            path: common.input.display().to_string(),
            source,
        })?;
        let digest = Sha256::digest(&bytes);
        let mut options = serde_json::json!({
            "input": common.input.display().to_string(),
            "output_dir": common.output_dir.as_ref().map(|d| d.display().to_string()),
            "faces_max_degree": common.faces_max_degree,
            "simplex_max_dim": common.simplex_max_dim,
            "face_weights": common.face_weights.name(),
            "coords": common.coords.as_ref().map(|d| d.display().to_string()),
            "lenient": common.lenient,
            "threads": common.threads,
        });
        let extra = match command {
            Command::Stats(_) | Command::Fill(_) | Command::Bloch(_) | Command::Chi(_) => {
                serde_json::json!({})
            }
            Command::Curvature(a) => serde_json::json!({ "mode": a.mode.name() }),
            Command::Flow(a) => serde_json::json!({
                "epsilon": a.epsilon,
                "threshold": a.threshold,
                "max_iter": a.max_iter,
                "snapshot_every": a.snapshot_every,
                "tol": a.tol,
                "r1_flow": a.r1_flow,
                "def10_sign": a.def10_sign,
                "short_term": a.short_term,
            }),
            Command::Dispersion(a) => serde_json::json!({
                "literal": a.literal,
                "pair": a.pair,
            }),
        };
        if let (Some(map), Some(more)) = (options.as_object_mut(), extra.as_object()) {
            for (k, v) in more {
                map.insert(k.clone(), v.clone());
            }
        }
        Ok(Manifest {
            tool: "netshape",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: match command {
                Command::Stats(_) => "stats",
                Command::Fill(_) => "fill",
                Command::Curvature(_) => "curvature",
                Command::Bloch(_) => "bloch",
                Command::Chi(_) => "chi",
                Command::Flow(_) => "flow",
                Command::Dispersion(_) => "dispersion",
            },
            input: common.input.display().to_string(),
            input_sha256: hex::encode(digest),
            options,
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        })
    }
}

fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}
