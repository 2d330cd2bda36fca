use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hstrata::cache::{TallyCache, CACHE_ENV};
use hstrata::enumeration::{diagram_for_restricted_limited, DEFAULT_MAX_CELLS};
use hstrata::verify::{run_suite, Fault};
use hstrata::{Diagram, Permutation};

mod report;

use report::{Outcome, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum CountMethod {
    Enum,
    Formula,
    Series,
}

#[derive(Parser, Debug)]
#[command(name = "hstrata", version, about = "Dimensions of H-strata of quantum matrices from Cauchon diagrams")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Cell limit: enumeration cap for `count`/`lookup`, diagram size for `verify`.
    #[arg(long, global = true)]
    max_cells: Option<usize>,

    /// Tally cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one diagram file ('.' white, '#' black; '-' reads stdin).
    Dim { file: PathBuf },
    /// Count m x n strata by dimension.
    Count {
        m: usize,
        n: usize,
        /// May be repeated; all requested methods must agree.
        #[arg(long = "method", value_enum)]
        methods: Vec<CountMethod>,
    },
    /// Run the cross-check suite over every diagram with at most --max-cells cells.
    Verify {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Proportion of d-dimensional strata against its limit as n grows.
    Asymptotics {
        m: usize,
        d: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Find the Cauchon diagram realizing a restricted permutation such as "[3,4,1,2]".
    Lookup {
        permutation: String,
        m: usize,
        n: usize,
    },
    /// Closed form h(m, n, d) = Σ c_k k^n.
    Coeffs { m: usize, d: usize },
}

fn read_diagram(path: &PathBuf) -> Result<Diagram> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Diagram::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> Result<Report> {
    let limit = cli.max_cells.unwrap_or(DEFAULT_MAX_CELLS);
    match cli.command {
        Command::Dim { file } => Ok(report::dim(&read_diagram(&file)?)),
        Command::Count { m, n, mut methods } => {
            if methods.is_empty() {
                methods.push(CountMethod::Formula);
            }
            methods.sort();
            methods.dedup();
            let cache = cli.cache_dir.map(TallyCache::new);
            report::count(m, n, &methods, limit, cache.as_ref())
        }
        Command::Verify { inject_fault } => {
            let k = cli.max_cells.unwrap_or(9);
            let fault = inject_fault.then_some(Fault::FlipMdSign);
            Ok(report::verify(run_suite(k, fault)?))
        }
        Command::Asymptotics { m, d, n_max } => {
            if m == 0 || d > m || n_max == 0 {
                bail!("need m >= 1, 0 <= d <= m and --n-max >= 1");
            }
            report::asymptotics(m, d, n_max)
        }
        Command::Lookup { permutation, m, n } => {
            let sigma = Permutation::parse(&permutation)
                .with_context(|| format!("malformed permutation {permutation:?}"))?;
            let found = diagram_for_restricted_limited(&sigma, m, n, limit)?;
            Ok(report::lookup(&sigma, m, n, found.as_ref()))
        }
        Command::Coeffs { m, d } => report::coeffs(m, d),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", report.render(format));
            match report.outcome {
                Outcome::Ok | Outcome::Warning => ExitCode::SUCCESS,
                Outcome::Failed => ExitCode::FAILURE,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
