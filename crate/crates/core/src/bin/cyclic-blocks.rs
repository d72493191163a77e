use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclic_blocks::local::{self, CyclicGroup, EndoPermParams};
use cyclic_blocks::oracle::{self, Fault, GridSpec};
use cyclic_blocks::report;
use cyclic_blocks::tree::{self, Block, BlockDescriptor, SignPolicy};

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;

#[derive(Parser)]
#[command(version, about = "Trivial source modules of blocks with cyclic defect groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a block descriptor and list every violated invariant.
    Validate {
        file: PathBuf,
        /// Treat equal signs on adjacent vertices as a violation.
        #[arg(long)]
        strict: bool,
    },
    /// List the trivial source modules and their characters.
    Enumerate(EnumerateArgs),
    /// Computations over the defect group alone.
    Local(LocalArgs),
    /// Run the brute-force consistency grid.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    file: PathBuf,
    /// Vertex index i of D_i; 0 lists the projective modules.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    vertex: Option<u32>,
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct LocalArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u32,
    /// Comma-separated strictly increasing indices of W; empty for k.
    #[arg(long, default_value = "")]
    w: String,
    #[arg(long)]
    vertex: Option<u32>,
    #[arg(value_enum)]
    query: LocalQuery,
}

#[derive(Clone, Copy, ValueEnum)]
enum LocalQuery {
    CapDim,
    Det1Char,
    MoritaChar,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [3, 5, 7])]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    nmax: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of random trees in the corpus.
    #[arg(long, default_value_t = 200)]
    corpus: usize,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file, strict } => cmd_validate(&file, strict),
        Command::Enumerate(args) => cmd_enumerate(&args),
        Command::Local(args) => cmd_local(&args),
        Command::Oracle(args) => cmd_oracle(&args),
    }
}

fn policy(strict: bool) -> SignPolicy {
    if strict {
        SignPolicy::Strict
    } else {
        SignPolicy::Lax
    }
}

fn read_descriptor(file: &Path) -> Result<BlockDescriptor, ExitCode> {
    let text = std::fs::read_to_string(file).map_err(|err| {
        eprintln!("error: cannot read {}: {err}", file.display());
        ExitCode::from(EXIT_PARSE)
    })?;
    BlockDescriptor::from_json(&text).map_err(|err| {
        eprintln!("error: {}: {err}", file.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn cmd_validate(file: &Path, strict: bool) -> ExitCode {
    let desc = match read_descriptor(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let violations = tree::validate(&desc, policy(strict));
    for v in &violations {
        println!("{v}");
    }
    if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> ExitCode {
    let desc = match read_descriptor(&args.file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let block = match Block::new(desc, policy(args.strict)) {
        Ok(b) => b,
        Err(tree::TreeError::Invalid(violations)) => {
            for v in &violations {
                println!("{v}");
            }
            return ExitCode::from(EXIT_VIOLATION);
        }
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_VIOLATION);
        }
    };
    let vertices = match args.vertex {
        Some(i) if i > block.n() => {
            eprintln!("error: vertex index {i} is outside [0, {}]", block.n());
            return ExitCode::from(EXIT_VIOLATION);
        }
        Some(i) => vec![i],
        None => report::all_vertices(&block),
    };
    let table = report::build_table(&block, &vertices);
    match args.format {
        Format::Json => println!("{}", table.to_json()),
        Format::Csv => match table.to_csv() {
            Ok(text) => print!("{text}"),
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::from(EXIT_PARSE);
            }
        },
    }
    for group in &table.vertices {
        if let Some(err) = &group.error {
            eprintln!("error: vertex {}: {err}", group.vertex);
        }
    }
    if table.is_consistent() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}

fn cmd_local(args: &LocalArgs) -> ExitCode {
    match local_value(args) {
        Ok(value) => {
            println!("{value}");
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}

fn local_value(args: &LocalArgs) -> Result<serde_json::Value, String> {
    let g = CyclicGroup::new(args.p, args.n).map_err(|e| e.to_string())?;
    let w: EndoPermParams = args.w.parse().map_err(|e: local::LocalError| e.to_string())?;
    w.check_general(&g).map_err(|e| e.to_string())?;
    let vertex = || args.vertex.ok_or_else(|| "--vertex is required for this query".to_owned());
    let value = match args.query {
        LocalQuery::CapDim => serde_json::json!(local::cap_dim(&w, &g, vertex()?).map_err(|e| e.to_string())?),
        LocalQuery::Det1Char => serde_json::json!(local::char_det1_endoperm(&w, &g).map_err(|e| e.to_string())?),
        LocalQuery::MoritaChar => {
            serde_json::json!(local::morita_correspondent_character(&w, &g, vertex()?).map_err(|e| e.to_string())?)
        }
    };
    Ok(value)
}

fn cmd_oracle(args: &OracleArgs) -> ExitCode {
    let spec = GridSpec {
        primes: args.primes.clone(),
        n_max: args.nmax,
        include_e: true,
        seed: args.seed,
        corpus_size: args.corpus,
        fault: args.inject_fault.then_some(Fault::CapDim),
    };
    let report = oracle::consistency_suite(&spec);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}
