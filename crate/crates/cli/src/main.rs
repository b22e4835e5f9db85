use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nondeg::format::{parse_system_with_order, write_system, SystemFile};
use nondeg::ideal::{ideals_equal_up_to_radical, reduce_basis, Ideal};
use nondeg::nondeg::{nondeg, Mode, NondegError};
use nondeg::sig::{buchberger_sig, sgb, EngineStats, TraceRecord};
use nondeg::systems::{Family, SystemSpec};
use nondeg::{MonomialOrder, OpCounts, Polynomial, DEFAULT_PRIME};

mod report;

use report::Report;

#[derive(Parser)]
#[command(
    name = "nondeg",
    version,
    about = "Nondegenerate loci and signature Gröbner bases over prime fields"
)]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    /// System file to read.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Algorithm::Sgbtree)]
    algorithm: Algorithm,
    /// Syzygy combination for sgbtree: seeded scalars or a slack variable.
    #[arg(long, value_enum, default_value_t = ModeArg::Random)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OrderArg::Drl)]
    order: OrderArg,
    /// Write op counts and engine counters here.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Write the processed-pair log here, one JSON object per line.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a benchmark system.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// n, or s,n for sos.
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME as u64)]
        prime: u64,
    },
    /// Check whether two system files generate ideals with equal radicals.
    Verify { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Naive,
    Sgbtree,
    Sgb,
    Buchberger,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Random,
    Deterministic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Drl,
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Cyclic,
    Pseudo,
    Sos,
    Sing,
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// Valid input the algorithm cannot handle: exit 3.
    Unsupported(String),
    /// Anything else, e.g. an output file that cannot be written: exit 1.
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Unsupported(m) | Failure::Other(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Some(Command::Generate {
            family,
            params,
            seed,
            prime,
        }) => generate(family, &params, seed, prime),
        Some(Command::Verify { a, b }) => verify(&a, &b),
        None => run(&cli.run),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("nondeg: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read_system(path: &Path, order: MonomialOrder) -> Result<SystemFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_system_with_order(&text, order)
        .map_err(|e| Failure::Input(format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message)))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Other(format!("cannot write {}: {e}", path.display())))
}

fn generate(family: FamilyArg, params: &[usize], seed: u64, prime: u64) -> Result<u8, Failure> {
    let want = if family == FamilyArg::Sos { 2 } else { 1 };
    if params.len() != want {
        return Err(Failure::Input(format!(
            "expected {want} parameter(s), got {}",
            params.len()
        )));
    }
    let family = match family {
        FamilyArg::Cyclic => Family::Cyclic(params[0]),
        FamilyArg::Pseudo => Family::Pseudo(params[0]),
        FamilyArg::Sos => Family::Sos(params[0], params[1]),
        FamilyArg::Sing => Family::Sing(params[0]),
    };
    let spec = SystemSpec { family, seed, prime };
    let sys = spec.generate().map_err(|e| Failure::Input(e.to_string()))?;
    let header = match family {
        Family::Cyclic(_) => format!("{family}"),
        _ => format!("{family} seed {seed}"),
    };
    print!("{}", write_system(&sys.ring, &sys.polys, &[header]));
    Ok(0)
}

fn verify(a: &Path, b: &Path) -> Result<u8, Failure> {
    let sa = read_system(a, MonomialOrder::DegRevLex)?;
    let sb = read_system(b, MonomialOrder::DegRevLex)?;
    if sa.ring.prime() != sb.ring.prime() || sa.ring.var_names() != sb.ring.var_names() {
        return Err(Failure::Input(
            "the two files declare different fields or variables".into(),
        ));
    }
    let ia = Ideal::new(sa.polys);
    let ib = Ideal::new(sb.polys);
    if ideals_equal_up_to_radical(&sa.ring, &ia, &ib) {
        println!("equal");
        Ok(0)
    } else {
        println!("different");
        Ok(1)
    }
}

/// What a single run produced, before formatting.
struct Outcome {
    basis: Vec<Polynomial>,
    ops: OpCounts,
    engine: Option<EngineStats>,
    iterations: Vec<nondeg::nondeg::IterationStats>,
    syzygies: Option<Vec<usize>>,
    trace: Vec<TraceRecord>,
}

fn run(args: &RunArgs) -> Result<u8, Failure> {
    let input = args
        .input
        .as_ref()
        .ok_or_else(|| Failure::Input("missing --input (or a subcommand)".into()))?;
    let order = match args.order {
        OrderArg::Drl => MonomialOrder::DegRevLex,
        OrderArg::Lex => MonomialOrder::Lex,
    };
    let sys = read_system(input, order)?;
    let ring = &sys.ring;
    let want_trace = args.trace.is_some();
    let start = Instant::now();
    let outcome = match args.algorithm {
        Algorithm::Naive | Algorithm::Sgbtree => {
            let mode = match (args.algorithm, args.mode) {
                (Algorithm::Naive, _) => Mode::Naive,
                (_, ModeArg::Random) => Mode::SgbTreeRandom(args.seed),
                (_, ModeArg::Deterministic) => Mode::SgbTreeDeterministic,
            };
            let r = nondeg(ring, &sys.polys, mode, want_trace).map_err(|e| match e {
                NondegError::ZeroInput(_) => Failure::Input(e.to_string()),
                NondegError::TooManyEquations { .. } | NondegError::UnsupportedOrder(_) => {
                    Failure::Unsupported(e.to_string())
                }
            })?;
            Outcome {
                basis: r.basis.gens().to_vec(),
                ops: r.ops,
                engine: r.engine,
                iterations: r.iterations,
                syzygies: None,
                trace: r.trace,
            }
        }
        Algorithm::Sgb | Algorithm::Buchberger => {
            let engine = if args.algorithm == Algorithm::Sgb {
                sgb
            } else {
                buchberger_sig
            };
            let r = engine(ring, &sys.polys, want_trace).map_err(|e| Failure::Input(e.to_string()))?;
            Outcome {
                basis: reduce_basis(ring, &r.basis),
                ops: r.ops,
                engine: Some(r.stats),
                iterations: Vec::new(),
                syzygies: Some(r.syzygies.iter().map(Vec::len).collect()),
                trace: r.trace,
            }
        }
    };
    let wall = start.elapsed();

    let algorithm = args
        .algorithm
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let mode = match args.algorithm {
        Algorithm::Sgbtree => args
            .mode
            .to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string(),
        _ => "-".to_string(),
    };
    let report = Report {
        algorithm,
        mode,
        seed: args.seed,
        order: order.name(),
        inputs: sys.polys.len(),
        nvars: ring.nvars(),
        generators: outcome.basis.len(),
        ops: outcome.ops,
        baseline: None,
        wall,
        engine: outcome.engine,
        iterations: outcome.iterations,
        syzygies: outcome.syzygies,
    };
    let comments = report.header();
    print!("{}", write_system(ring, &outcome.basis, &comments));

    if let Some(path) = &args.stats {
        // ops of sgb on the same input, on a fresh counter
        let fresh = ring.with_order(order);
        let baseline = sgb(&fresh, &sys.polys, false).ok().map(|r| r.ops);
        let report = Report { baseline, ..report };
        write_file(path, &report.stats_text())?;
    }
    if let Some(path) = &args.trace {
        let mut text = String::new();
        for t in &outcome.trace {
            text.push_str(&t.to_json().to_string());
            text.push('\n');
        }
        write_file(path, &text)?;
    }
    Ok(0)
}
