//! `geoconfig`: geodesics and motion plans for two-ball configuration
//! spaces, a brute-force verification campaign, and figure rendering.
//!
//! All successful output is JSON on stdout. Invalid input exits with
//! code 2 and a `{code, message}` JSON object; a failed verification
//! campaign exits with code 1.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use geoconfig_cli::commands::{self, CliError, FigureTarget};
use geoconfig_cli::query::{parse_coords, FigureFixture, QuerySpec, SpaceKind};

#[derive(Parser)]
#[command(
    name = "geoconfig",
    about = "Geodesics and geodesic motion planning for two points/unit balls in R^n",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QueryArgs {
    /// Which space: ordered | unordered | alt.
    #[arg(long)]
    space: Option<SpaceKind>,
    /// Ambient dimension (n >= 2).
    #[arg(long)]
    n: Option<usize>,
    /// Start configuration: 2n whitespace-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// Goal configuration: 2n whitespace-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Number of path samples in the report.
    #[arg(long, default_value_t = 256)]
    samples: usize,
    /// Transverse direction for antiparallel ordered queries (n coords).
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// Clearance of the input coordinates (internally normalized to 2).
    #[arg(long = "scale-eps", default_value_t = 2.0)]
    scale_eps: f64,
    /// Read a full QuerySpec JSON object from stdin instead of flags.
    #[arg(long)]
    json: bool,
}

impl QueryArgs {
    fn build(&self) -> Result<QuerySpec, CliError> {
        if self.json {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::io(format!("cannot read stdin: {e}")))?;
            return serde_json::from_str(&text)
                .map_err(|e| CliError::invalid_input(format!("bad query JSON: {e}")));
        }
        let space = self
            .space
            .ok_or_else(|| CliError::invalid_input("--space is required"))?;
        let n = self
            .n
            .ok_or_else(|| CliError::invalid_input("--n is required"))?;
        let p = parse_coords(
            self.p
                .as_deref()
                .ok_or_else(|| CliError::invalid_input("--p is required"))?,
        )?;
        let q = parse_coords(
            self.q
                .as_deref()
                .ok_or_else(|| CliError::invalid_input("--q is required"))?,
        )?;
        let w = match self.w.as_deref() {
            None => None,
            Some(text) => Some(parse_coords(text)?),
        };
        Ok(QuerySpec {
            space,
            n,
            p,
            q,
            samples: self.samples,
            w,
            scale_eps: self.scale_eps,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the minimal geodesic for a query and print a path report.
    Geodesic(QueryArgs),
    /// Compute the planner's geodesic and the partition region of a query.
    Plan(QueryArgs),
    /// Run a deterministic random verification campaign against the
    /// brute-force path optimizer.
    Verify {
        /// Number of random instances.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Ambient dimension.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Campaign seed; defaults to GEOCONFIG_SEED or 7.
        #[arg(long)]
        seed: Option<u64>,
        /// Waypoints per discrete path.
        #[arg(long, default_value_t = 400, visible_alias = "k")]
        waypoints: usize,
        /// Iteration budget per optimization run.
        #[arg(long, default_value_t = 50_000)]
        iters: usize,
    },
    /// Render a 2D figure (built-in fixture or explicit query) as SVG.
    Figure {
        /// Built-in fixture: fig1 | fig2 | fig3.
        #[arg(long, conflicts_with_all = ["space", "n", "p", "q"])]
        fixture: Option<FigureFixture>,
        #[command(flatten)]
        query: QueryArgs,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
    },
}

fn default_seed() -> u64 {
    std::env::var("GEOCONFIG_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(7)
}

fn run() -> Result<ExitCode, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Geodesic(args) => {
            let report = commands::cmd_geodesic(&args.build()?)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Plan(args) => {
            let report = commands::cmd_plan(&args.build()?)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { count, n, seed, waypoints, iters } => {
            let seed = seed.unwrap_or_else(default_seed);
            let report = commands::cmd_verify(count, n, seed, waypoints, iters)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if report.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Figure { fixture, query, out } => {
            let target = match fixture {
                Some(f) => FigureTarget::Fixture(f),
                None => FigureTarget::Query(Box::new(query.build()?)),
            };
            let svg = commands::cmd_figure(&target, &out)?;
            println!(
                "{}",
                serde_json::json!({ "written": out.display().to_string(), "bytes": svg.len() })
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            println!("{}", serde_json::to_string(&err.report()).unwrap());
            ExitCode::from(2)
        }
    }
}
