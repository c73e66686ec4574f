mod commands;
mod load;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use mdrg::{Labeling, MonomialOrder, PartialOrder};

/// Exact m-distance-regularity and multivariate P-polynomial certificates.
#[derive(Parser)]
#[command(name = "mdrg", version)]
struct Cli {
    /// Print nothing; only the exit code reports the outcome.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Print wall-clock time to stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a graph, scheme or tensor file for a named family.
    ///
    /// Families: cycle:N, path:N, complete:N, hamming:K,Q, cartesian:FILE,FILE,...,
    /// cell24, cell24-scheme, gen24cell:ELL,S, pauli4, one-class:Q, symmetrize:K (with --scheme).
    Generate {
        family: String,
        /// Base scheme for `symmetrize:K`.
        #[arg(long)]
        scheme: Option<PathBuf>,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compute the m-distance table of a graph.
    Distances {
        graph: PathBuf,
        #[arg(long, default_value = "deglex-sum")]
        order: MonomialOrder,
        /// Write the full table to a file.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Decide whether a graph is m-distance-regular.
    CertifyMdrg {
        graph: PathBuf,
        #[arg(long, default_value = "deglex-sum")]
        order: MonomialOrder,
        /// Write the intersection tensor to a file on success.
        #[arg(long)]
        tensor: Option<PathBuf>,
    },
    /// Check the association scheme axioms of a scheme file.
    VerifyScheme { scheme: PathBuf },
    /// Certify the multivariate P-polynomial property.
    CertifyPpoly {
        input: PathBuf,
        #[arg(long, default_value = "deglex-sum")]
        order: MonomialOrder,
        /// `ab:ALPHA,BETA` or `componentwise`.
        #[arg(long)]
        partial: Option<PartialOrder>,
        /// `ad1`, `ad2` or `tag=i,j;tag=i,j;...`.
        #[arg(long)]
        labeling: Option<Labeling>,
        /// Also check that the boundary relations stay in the span.
        #[arg(long)]
        boundary: bool,
        /// Extract the polynomials v_n; with a path, also write them there.
        #[arg(long, num_args = 0..=1)]
        polys: Option<Option<PathBuf>>,
        /// Check the recurrences satisfied by the extracted polynomials.
        #[arg(long)]
        recurrences: bool,
    },
    /// Bivariate type-(alpha, beta) test at a point or over the whole square.
    TypeAb {
        scheme: PathBuf,
        #[arg(long)]
        labeling: Option<Labeling>,
        #[arg(long, requires = "beta", conflicts_with = "region")]
        alpha: Option<String>,
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
        /// Report every (alpha, beta) for which the test passes.
        #[arg(long, required_unless_present = "alpha")]
        region: bool,
    },
    /// Search generator tuples whose union graph reproduces the scheme.
    Discover {
        scheme: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "deglex-sum")]
        order: MonomialOrder,
    },
}

pub enum Outcome {
    Pass,
    Fail,
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("MDRG_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("MDRG_THREADS must be a non-negative integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let result = init_threads().and_then(|()| commands::run(cli.command));
    if cli.timing && !cli.quiet {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok((value, outcome)) => {
            if !cli.quiet {
                let mut text = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
                text.push('\n');
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
            match outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            if !cli.quiet {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
