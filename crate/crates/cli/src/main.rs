use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wfcoalg::{Limits, WitnessPolicy};
use wfcoalg_cli::commands::{EXIT_HOLDS, EXIT_USAGE};
use wfcoalg_cli::demos::{document, run_demo};
use wfcoalg_cli::{parse_spec, render_spec, run_command, Command, Options, Report};

/// Well-founded and recursive coalgebras of finite set functors.
#[derive(Parser)]
#[command(name = "wfcoalg", version)]
struct Cli {
    /// Worker threads for oracle enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide well-foundedness; exits 1 with a cycle if it fails.
    CheckWf(Flags),
    /// Show the chain computing the well-founded part.
    WfPart(Flags),
    /// Print the canonical graph (`--dot` for Graphviz).
    CanonicalGraph(Flags),
    /// The unique coalgebra-to-algebra morphism into an algebra.
    Hylo(Flags),
    /// The unique solution of a parametric algebra.
    ParaHylo(Flags),
    /// Build the initial chain of the document's functor.
    InitialChain(Flags),
    /// List every coalgebra-to-algebra morphism by exhaustive search.
    FindHoms(Flags),
    /// Check unique solutions for all algebras on small carriers.
    OracleRecursive(Flags),
    /// Same, for parametric algebras.
    OracleParametric(Flags),
    /// Run a built-in example.
    Demo(DemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    First,
    MostSolutions,
}

#[derive(Args)]
struct Flags {
    /// Specification file.
    file: PathBuf,
    /// Coalgebra to use (default: the first one).
    #[arg(long)]
    coalgebra: Option<String>,
    /// Algebra or para_algebra to use (default: the first one).
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long, default_value_t = Limits::default().max_enum)]
    max_enum: u64,
    #[arg(long, default_value_t = Limits::default().max_maps)]
    max_maps: u64,
    /// Largest algebra carrier the oracles enumerate.
    #[arg(long, default_value_t = 2)]
    max_carrier: usize,
    /// Initial chain steps.
    #[arg(long, default_value_t = 6)]
    max_depth: usize,
    /// Which failing algebra the oracles report.
    #[arg(long, value_enum, default_value_t = Policy::First)]
    policy: Policy,
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct DemoArgs {
    /// One of: graph-g, r-coalgebra, quicksort, factorial, fibonacci, automaton, lts.
    name: String,
    #[arg(long)]
    input: Option<String>,
    /// Print the demo's document instead of running it.
    #[arg(long)]
    emit: bool,
    #[arg(long, default_value_t = Limits::default().max_enum)]
    max_enum: u64,
    #[arg(long, default_value_t = Limits::default().max_maps)]
    max_maps: u64,
    #[arg(long, default_value_t = 2)]
    max_carrier: usize,
}

impl Flags {
    fn options(&self) -> Options {
        Options {
            coalgebra: self.coalgebra.clone(),
            algebra: self.algebra.clone(),
            limits: Limits {
                max_enum: self.max_enum,
                max_maps: self.max_maps,
            },
            max_carrier: self.max_carrier,
            max_depth: self.max_depth,
            policy: match self.policy {
                Policy::First => WitnessPolicy::First,
                Policy::MostSolutions => WitnessPolicy::MostSolutions,
            },
            dot: self.dot,
        }
    }
}

fn run_file(flags: &Flags, cmd: Command) -> Report {
    let text = match fs::read_to_string(&flags.file) {
        Ok(t) => t,
        Err(e) => return Report::usage(format!("{}: {e}", flags.file.display())),
    };
    match parse_spec(&text) {
        Ok(doc) => run_command(&doc, cmd, &flags.options()),
        Err(e) => Report::usage(format!("{}:{e}", flags.file.display())),
    }
}

fn run(cli: Cli) -> Report {
    let (flags, cmd) = match &cli.command {
        Cmd::CheckWf(f) => (f, Command::CheckWf),
        Cmd::WfPart(f) => (f, Command::WfPart),
        Cmd::CanonicalGraph(f) => (f, Command::CanonicalGraph),
        Cmd::Hylo(f) => (f, Command::Hylo),
        Cmd::ParaHylo(f) => (f, Command::ParaHylo),
        Cmd::InitialChain(f) => (f, Command::InitialChain),
        Cmd::FindHoms(f) => (f, Command::FindHoms),
        Cmd::OracleRecursive(f) => (f, Command::OracleRecursive),
        Cmd::OracleParametric(f) => (f, Command::OracleParametric),
        Cmd::Demo(d) => {
            if d.emit {
                return match document(&d.name) {
                    Some(doc) => Report::new(render_spec(&doc), EXIT_HOLDS),
                    None => run_demo(&d.name, None, &Options::default()),
                };
            }
            let opts = Options {
                limits: Limits {
                    max_enum: d.max_enum,
                    max_maps: d.max_maps,
                },
                max_carrier: d.max_carrier,
                ..Options::default()
            };
            return run_demo(&d.name, d.input.as_deref(), &opts);
        }
    };
    run_file(flags, cmd)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let report = run(cli);
    if report.code == EXIT_USAGE {
        eprint!("{}", report.text);
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(report.text.as_bytes());
    }
    ExitCode::from(report.code)
}
