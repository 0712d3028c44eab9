use std::path::PathBuf;
use std::process::ExitCode;

use cjones_cli::report::{
    compare_text, compute_csv, compute_text, stabilize_csv, stabilize_text, to_canonical_json, verify_csv, verify_text,
};
use cjones_cli::verify::{cmd_verify, Suite, VerifyOptions};
use cjones_cli::{
    cmd_compare, cmd_compute, cmd_stabilize, default_fixture_path, parse_colors, CliError, Depth, OutputFormat, RunConfig,
    Source,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use colored_jones::graphs::Multigraph;
use colored_jones::PretzelSpec;

/// Top coefficients of colored Jones polynomials of pretzel knots
/// P(-m1,-m2,-m3) and their stable sequences.
#[derive(Debug, Parser)]
#[command(name = "cjones", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format: json, csv or text.
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,
    /// Fixture file; defaults to $CJONES_FIXTURE_DIR/colored_jones.txt.
    #[arg(long, global = true)]
    fixture: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SourceArg {
    Fixture,
    Compute,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Truncated colored Jones polynomials, one row per color.
    Compute {
        /// Twist counts, e.g. `1,1,1` for P(-1,-1,-1).
        #[arg(long)]
        pretzel: Option<PretzelSpec>,
        /// Colors, e.g. `4..6` or `2,3`.
        #[arg(long)]
        colors: Option<String>,
        /// Number of coefficients, or `max` for 3N+1.
        #[arg(long, default_value = "max")]
        depth: Depth,
        /// Divide by the unknot value.
        #[arg(long)]
        normalized: bool,
    },
    /// Extract the head, neck and next stable sequence.
    Stabilize {
        /// Fixture knot id; used with `--source fixture`.
        #[arg(long, default_value = "8_5bar")]
        knot: String,
        #[arg(long, value_enum, default_value = "fixture")]
        source: SourceArg,
        #[arg(long)]
        pretzel: Option<PretzelSpec>,
        /// Colors to use; all fixture colors when omitted.
        #[arg(long)]
        colors: Option<String>,
    },
    /// Run verification suites.
    Verify {
        /// tables, neck, difference, t2, lemmas, degrees, agreement, oracle or all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<Suite>,
        #[arg(long)]
        max_color: Option<i64>,
        #[arg(long)]
        max_n: Option<i64>,
    },
    /// Compare reduced checkerboard graphs of two knots.
    Compare {
        #[arg(long, conflicts_with = "graph_a", required_unless_present = "graph_a")]
        pretzel_a: Option<PretzelSpec>,
        #[arg(long, conflicts_with = "graph_b", required_unless_present = "graph_b")]
        pretzel_b: Option<PretzelSpec>,
        /// Graph literal, e.g. `vertices=3; edge 0 1 2; edge 1 2 1; edge 0 2 1`.
        #[arg(long)]
        graph_a: Option<Multigraph>,
        #[arg(long)]
        graph_b: Option<Multigraph>,
        /// Stability order; graphs are compared after capping at m+1.
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
}

fn emit(format: OutputFormat, json: String, csv: impl FnOnce() -> String, text: impl FnOnce() -> String) {
    let out = match format {
        OutputFormat::Json => json,
        OutputFormat::Csv => csv(),
        OutputFormat::Text => text(),
    };
    print!("{out}");
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let fixture_path = cli.common.fixture.unwrap_or_else(default_fixture_path);
    let format = cli.common.format;
    let colors = |s: Option<String>| s.as_deref().map(parse_colors).transpose().map(Option::unwrap_or_default);
    match cli.command {
        Command::Compute { pretzel, colors: c, depth, normalized } => {
            let config = RunConfig { pretzel, colors: colors(c)?, depth, normalized, format, fixture_path, ..RunConfig::default() };
            let r = cmd_compute(&config)?;
            emit(format, to_canonical_json(&r), || compute_csv(&r), || compute_text(&r));
        }
        Command::Stabilize { knot, source, pretzel, colors: c } => {
            let source = match source {
                SourceArg::Fixture => Source::Fixture,
                SourceArg::Compute => Source::Compute,
            };
            let config = RunConfig { pretzel, colors: colors(c)?, format, fixture_path, knot, source, ..RunConfig::default() };
            let r = cmd_stabilize(&config)?;
            emit(format, to_canonical_json(&r), || stabilize_csv(&r), || stabilize_text(&r));
        }
        Command::Verify { suite, max_color, max_n } => {
            let r = cmd_verify(&suite, &VerifyOptions { max_color, max_n, fixture_path });
            emit(format, to_canonical_json(&r), || verify_csv(&r), || verify_text(&r));
            if !r.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Compare { pretzel_a, pretzel_b, graph_a, graph_b, m } => {
            let graph = |p: Option<PretzelSpec>, g: Option<Multigraph>| {
                g.or_else(|| p.as_ref().map(Multigraph::of_pretzel)).expect("clap requires one of the pair")
            };
            let r = cmd_compare(&graph(pretzel_a, graph_a), &graph(pretzel_b, graph_b), m)?;
            emit(format, to_canonical_json(&r), || compare_text(&r), || compare_text(&r));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
