use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use limws::generate::{generate, Guard};
use limws::io::{read_points, write_points};
use limws::run::{bench, run, write_csv, Algo, Instances, Verification};

const STEP_WEIGHTS: &str = "\
Step counting: one unit per site read from the input and one per predicate
evaluation (orientation, incircle, bisector clip, ray hit, length
comparison). Building a small in-workspace diagram on m sites in the
trade-off algorithm costs m * (1 + ceil(log2 m)) units on top of reading
its m sites.";

#[derive(Parser)]
#[command(name = "limws", version, about = "Limited-workspace planar geometry", after_help = STEP_WEIGHTS)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one algorithm on a point file and write its edges.
    #[command(after_help = STEP_WEIGHTS)]
    Run {
        /// Point file: one `x y` per line (integers, decimals or p/q).
        input: PathBuf,
        /// voronoi-cws, voronoi-tradeoff, emst, hull or delaunay.
        #[arg(long)]
        algo: Algo,
        /// Space parameter s for voronoi-tradeoff.
        #[arg(long)]
        space: Option<usize>,
        /// Compare the output with the full-memory oracle.
        #[arg(long)]
        verify: bool,
        /// Edge file to write (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time and count steps over generated instances or a point file.
    #[command(after_help = STEP_WEIGHTS)]
    Bench {
        #[arg(long)]
        algo: Algo,
        /// Point file to use instead of generated instances.
        input: Option<PathBuf>,
        /// Instance sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Space parameters for voronoi-tradeoff, comma separated.
        #[arg(long = "s-list", value_delimiter = ',')]
        s_list: Vec<usize>,
        /// Seeds per size (consecutive, starting at --seed).
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// CSV file to write (standard output if omitted).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a seeded random point set in general position.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also require pairwise distinct distances.
        #[arg(long)]
        distinct_lengths: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Run { input, algo, space, verify, out } => {
            let ps = read_points(&input).with_context(|| format!("reading {}", input.display()))?;
            let (report, output) = run(&ps, algo, space, verify)?;
            let mut w = sink(&out)?;
            for line in output.lines(&ps) {
                writeln!(w, "{line}")?;
            }
            w.flush()?;
            eprintln!("{report}");
            if let Verification::Mismatch(diff) = &report.verification {
                eprintln!("verification mismatch: {diff}");
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Bench { algo, input, n, s_list, reps, seed, csv } => {
            let instances = match input {
                Some(p) => Instances::File(read_points(&p)?),
                None if n.is_empty() => bail!("give --n or an input file"),
                None => Instances::Generated { ns: n, seed, reps },
            };
            let s_list: Vec<Option<usize>> = match algo {
                Algo::VoronoiTradeoff if s_list.is_empty() => bail!("voronoi-tradeoff needs --s-list"),
                Algo::VoronoiTradeoff => s_list.into_iter().map(Some).collect(),
                _ => vec![None],
            };
            let rows = bench(algo, &instances, &s_list)?;
            write_csv(&rows, sink(&csv)?)?;
        }
        Cmd::Generate { n, seed, distinct_lengths, out } => {
            let ps = generate(n, seed, Guard { distinct_lengths })?;
            let mut w = sink(&out)?;
            write_points(&ps, &mut w)?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
