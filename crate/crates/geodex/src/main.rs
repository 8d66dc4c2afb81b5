use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use geodex::report::{self, Style};
use geodex::verify::{self, Suite};
use geodex::{census, formats, search_options_from_env, CliError, Format};
use geodex_core::analyze::{self, AnalyzeError, Classification, TransitivityReport};
use geodex_core::{FamilySpec, SearchOptions};

/// Construct and analyze 2-geodesic transitive graphs of prime-power order.
///
/// The search node budget can be set with GEODEX_NODE_BUDGET.
#[derive(Parser)]
#[command(name = "geodex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named graph, e.g. `hamming:2,3`, `kmb:9,3`, `ep3B:5`, `schlafli`.
    Build {
        spec: String,
        #[arg(long, default_value = "edges")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the transitivity report of a named graph or a graph file.
    Analyze {
        #[arg(required_unless_present = "input", conflicts_with = "input")]
        spec: Option<String>,
        /// Edge-list or graph6 file; the format is detected.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// `key=value` lines instead of `key: value`.
        #[arg(long)]
        machine: bool,
    },
    /// Enumerate connected Cayley graphs of order 4, 8, 9, 25 or 27 up to isomorphism.
    Census {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: ex3.4, thm4.3, prop3.5, thm1.2, thm1.4, thm1.5 or cor6.3.
    Verify {
        suite: Suite,
        #[arg(long)]
        p: usize,
        /// Subgroup index for the orbit claims of thm4.3.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn classify(g: &geodex_core::Graph, r: &TransitivityReport, opts: &SearchOptions) -> Result<Option<Classification>, CliError> {
    match analyze::classify_named_with_order(g, Some(&r.aut_order), opts) {
        Ok(c) => Ok(Some(c)),
        Err(AnalyzeError::UnsupportedOrder(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn analyze_cmd(spec: Option<String>, input: Option<PathBuf>, machine: bool, opts: &SearchOptions) -> Result<String, CliError> {
    let (g, r) = match (spec, input) {
        (Some(spec), _) => {
            let spec: FamilySpec = spec.parse()?;
            (spec.build()?, analyze::family_report(&spec, opts)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let g = formats::read_auto(&text)?;
            let r = analyze::transitivity_report(&g, None, opts)?;
            (g, r)
        }
        (None, None) => return Err(CliError::Usage("give a family spec or --in PATH".into())),
    };
    let class = classify(&g, &r, opts)?;
    let style = if machine { Style::Machine } else { Style::Human };
    Ok(report::render(&r, class.as_ref(), style))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let opts = search_options_from_env()?;
    match cli.command {
        Command::Build { spec, format, out } => {
            let spec: FamilySpec = spec.parse()?;
            emit(&formats::write(&spec.build()?, format), out.as_ref())?;
            Ok(true)
        }
        Command::Analyze { spec, input, machine } => {
            print!("{}", analyze_cmd(spec, input, machine, &opts)?);
            Ok(true)
        }
        Command::Census { order, jobs, out } => {
            let c = census::run(order, jobs, &opts)?;
            emit(&c.render(), out.as_ref())?;
            Ok(true)
        }
        Command::Verify { suite, p, m, jobs } => {
            let r = verify::run(suite, p, m, jobs, &opts)?;
            print!("{}", r.render());
            Ok(r.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
