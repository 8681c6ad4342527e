//! `biproj` command-line front end.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use biproj::bench::{self, Algorithm, BenchConfig, Workload};
use biproj::generator::{self, GenSpec, Model};
use biproj::io::{self as fmt_io, Format};
use biproj::projection::{
    project_matrix_weighted_with, project_matrix_with, project_weighted_with, Side,
};
use biproj::verify::{self, Status};
use biproj::{BipartiteGraph, Execution};

#[derive(Parser)]
#[command(name = "biproj", version, about = "One-mode projections of bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Project one side of a bipartite graph.
    Project(ProjectArgs),
    /// Print size, degree and density figures.
    Stats(InputArgs),
    /// Check the structural properties of the projection onto U.
    Verify(VerifyArgs),
    /// Generate a seeded bipartite graph as an edge list.
    Gen(GenArgs),
    /// Time the matrix scan and wedge enumeration over a list of sizes.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for stdin.
    input: PathBuf,
    /// Input format; detected from the header and row shape when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct ProjectArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "u")]
    side: SideArg,
    #[arg(long)]
    weighted: bool,
    #[arg(long, value_enum, default_value = "sparse")]
    algo: AlgoArg,
    /// Write a dense n×n 0/1 adjacency matrix instead of an edge list.
    #[arg(long, conflicts_with = "weighted")]
    dense: bool,
    #[arg(long, value_enum, default_value = "par")]
    exec: ExecArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Emit reports as JSON instead of tab-separated lines.
    #[arg(long)]
    json: bool,
    /// Debugging aid: drop the first edge of the projection before checking.
    #[arg(long, hide = true)]
    corrupt_projection: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long, value_enum, default_value = "gnp")]
    model: ModelArg,
    /// Edge probability for `gnp`.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Edge count for `fixedm`.
    #[arg(long)]
    m: Option<usize>,
    /// Block count for `blocks`.
    #[arg(long, default_value_t = 2)]
    blocks: usize,
}

impl ModelArgs {
    fn model(&self) -> Result<Model, CliError> {
        Ok(match self.model {
            ModelArg::Gnp => Model::Gnp { p: self.p },
            ModelArg::Fixedm => Model::FixedM {
                m: self.m.ok_or_else(|| CliError::Usage("--model fixedm needs --m".into()))?,
            },
            ModelArg::Complete => Model::Complete,
            ModelArg::Blocks => Model::BlockDiagonal { blocks: self.blocks },
        })
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n1: usize,
    #[arg(long)]
    n2: usize,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reject-sample until the graph is connected.
    #[arg(long)]
    connected: bool,
    /// Connected base on (n1-1, n2-1) plus an isolated pendant edge; the
    /// output is tagged so `verify` recognises it.
    #[arg(long)]
    pendant_pair: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated sizes, e.g. `200x100,400x100`.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_size)]
    sizes: Vec<(usize, usize)>,
    #[command(flatten)]
    model: ModelArgs,
    /// Use `fixedm` with m = FACTOR·(n1+n2) at every size (overrides --model).
    #[arg(long)]
    edge_factor: Option<f64>,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(3..))]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "both")]
    algo: BenchAlgoArg,
    #[arg(long, value_enum, default_value = "seq")]
    exec: ExecArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Biadj,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    U,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Matrix,
    Sparse,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchAlgoArg {
    Matrix,
    Sparse,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExecArg {
    Seq,
    Par,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Gnp,
    Fixedm,
    Complete,
    Blocks,
}

impl From<ExecArg> for Execution {
    fn from(e: ExecArg) -> Self {
        match e {
            ExecArg::Seq => Execution::Sequential,
            ExecArg::Par => Execution::Parallel,
        }
    }
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("size {s:?} is not N1xN2"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("size {s:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

enum CliError {
    Usage(String),
    Parse(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Io(m) => m,
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load(args: &InputArgs) -> Result<(BipartiteGraph, String), CliError> {
    let text = read_input(&args.input)?;
    let format = args.format.map(|f| match f {
        FormatArg::Biadj => Format::BiAdjacency,
        FormatArg::Edgelist => Format::EdgeList,
    });
    let g = fmt_io::parse_graph(&text, format)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.input.display())))?;
    Ok((g, text))
}

fn emit(output: Option<&Path>, data: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            fs::write(path, data).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(data.as_bytes()).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn cmd_project(args: &ProjectArgs) -> Result<u8, CliError> {
    let (g, _) = load(&args.input)?;
    let g = match args.side {
        SideArg::U => g,
        SideArg::S => g.transpose(),
    };
    let exec = args.exec.into();
    let text = match (args.algo, args.weighted) {
        (AlgoArg::Matrix, true) => {
            fmt_io::write_weighted_projection(&project_matrix_weighted_with(&g.to_biadjacency(), exec))
        }
        (AlgoArg::Sparse, true) => {
            fmt_io::write_weighted_projection(&project_weighted_with(&g, Side::ProjectU, exec))
        }
        (algo, false) => {
            let p = match algo {
                AlgoArg::Matrix => project_matrix_with(&g.to_biadjacency(), exec),
                AlgoArg::Sparse => project_weighted_with(&g, Side::ProjectU, exec).strip_weights(),
            };
            if args.dense {
                fmt_io::write_adjacency_matrix(&p)
            } else {
                fmt_io::write_projection(&p)
            }
        }
    };
    emit(args.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_stats(args: &InputArgs) -> Result<u8, CliError> {
    let (g, _) = load(args)?;
    let sums = g.degree_sums();
    let d = g.density_stats();
    let (min_u, max_u) = g.degree_range_u();
    let (min_s, max_s) = g.degree_range_s();
    let lines = [
        format!("n1={}", d.n1),
        format!("n2={}", d.n2),
        format!("m={}", d.m),
        format!("sum_u={}", sums.sum_u),
        format!("sum_s={}", sums.sum_s),
        format!("deg_u_min={min_u}"),
        format!("deg_u_max={max_u}"),
        format!("deg_s_min={min_s}"),
        format!("deg_s_max={max_s}"),
        format!("max_edges={}", d.max_edges),
        format!("density={}", d.density),
        format!("linear_budget={}", d.linear_budget),
        format!("connected={}", g.is_connected()),
    ];
    emit(None, &(lines.join("\n") + "\n"))?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let (g, text) = load(&args.input)?;
    let tag = fmt_io::pendant_tag(&text);
    let reports = if args.corrupt_projection {
        let wproj = project_weighted_with(&g, Side::ProjectU, Execution::default());
        let mut proj = wproj.strip_weights();
        if let Some(&(i, j)) = proj.edges().first() {
            proj = proj.without_edge(i, j);
        }
        verify::verify_with(&g, &proj, &wproj, tag)
    } else {
        verify::verify_all_tagged(&g, tag)
    };
    let out = if args.json {
        serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
    } else {
        reports.iter().map(|r| r.to_line() + "\n").collect()
    };
    emit(args.output.as_deref(), &out)?;
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    Ok(u8::from(failed))
}

fn cmd_gen(args: &GenArgs) -> Result<u8, CliError> {
    let mut spec = GenSpec::new(args.n1, args.n2, args.model.model()?, args.seed);
    spec.require_connected = args.connected;
    let text = if args.pendant_pair {
        let inst = generator::generate_with_pendant_pair(&spec)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        fmt_io::write_tagged_edge_list(&inst.graph, (inst.u, inst.s))
    } else {
        let g = generator::generate(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
        fmt_io::write_edge_list(&g)
    };
    emit(args.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_bench(args: &BenchArgs) -> Result<u8, CliError> {
    let workload = match args.edge_factor {
        Some(f) => Workload::EdgesPerVertex(f),
        None => Workload::Model(args.model.model()?),
    };
    let algorithms = match args.algo {
        BenchAlgoArg::Matrix => vec![Algorithm::MatrixScan],
        BenchAlgoArg::Sparse => vec![Algorithm::SparseWedge],
        BenchAlgoArg::Both => vec![Algorithm::MatrixScan, Algorithm::SparseWedge],
    };
    let config = BenchConfig {
        sizes: args.sizes.clone(),
        workload,
        algorithms,
        reps: args.reps as usize,
        seed: args.seed,
        exec: args.exec.into(),
    };
    let mut records = Vec::new();
    for row in bench::run(&config) {
        match row {
            Ok(rs) => records.extend(rs),
            Err((n1, n2, e)) => eprintln!("skipped {n1}x{n2}: {e}"),
        }
    }
    emit(args.output.as_deref(), &bench::to_csv(&records))?;
    for (n2, slope) in bench::matrix_scan_slopes(&records) {
        eprintln!("MatrixScan log-log slope vs n1 at n2={n2}: {slope:.3}");
    }
    for r in &records {
        let (dense, sparse) = bench::output_memory(r.n1, r.peak_edges_out);
        eprintln!(
            "{} {}x{}: output memory dense={dense}B sparse={sparse}B",
            r.algorithm, r.n1, r.n2
        );
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Project(a) => cmd_project(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("biproj: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
