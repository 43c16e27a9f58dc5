use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use vpip::{run_benchmark, run_validation, sample_points, summarize, write_records, BenchConfig, SampleBox};
use vpip_core::{
    io as formats, to_voronoi, EngineKind, InclusionEngine, Polygon, RayCrossingEngine, SignOfOffsetEngine,
    VoronoiEngine,
};

/// Convex point-in-polygon engine built on Voronoi generator sets.
#[derive(Parser)]
#[command(name = "vpip", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a convex polygon into its generator set (JSON).
    Convert {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a point file against a polygon.
    Test {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        points: PathBuf,
        /// voronoi, offset or crossing
        #[arg(long, default_value = "voronoi")]
        engine: EngineKind,
        #[arg(long, value_enum, default_value_t = MaskFormat::Csv)]
        format: MaskFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the three engines on seeded random points.
    Validate {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Time the batch kernels over a range of regular polygons.
    Bench {
        /// Edge counts: `3..15` (inclusive), `3..=15`, or a list `3,5,8`.
        #[arg(long, default_value = "3..15")]
        edges: EdgeList,
        #[arg(long, default_value_t = 1_000_000)]
        batch: usize,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated engine list.
        #[arg(long, value_delimiter = ',', default_value = "voronoi,offset,crossing")]
        engines: Vec<EngineKind>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MaskFormat {
    Csv,
    Binary,
}

#[derive(Clone, Debug)]
struct EdgeList(Vec<usize>);

impl std::str::FromStr for EdgeList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        if let Some((lo, hi)) = s.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(format!("empty range {s}"));
            }
            Ok(Self((lo..=hi).collect()))
        } else {
            s.split(',').map(num).collect::<Result<_, _>>().map(Self)
        }
    }
}

/// Wraps errors that should exit with status 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        Self(e.into())
    }
}

fn read_polygon(path: &Path) -> anyhow::Result<Polygon> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let vertices = formats::parse_polygon(&text).with_context(|| format!("parsing {}", path.display()))?;
    Polygon::new(vertices).with_context(|| format!("validating {}", path.display()))
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<bool, InputError> {
    match cli.command {
        Command::Convert { polygon, out } => {
            let poly = read_polygon(&polygon)?;
            let generators = to_voronoi(&poly)?;
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", formats::generators_to_json(&generators))?;
            w.flush()?;
            Ok(true)
        }
        Command::Test {
            polygon,
            points,
            engine,
            format,
            out,
        } => {
            let bytes = fs::read(&points).with_context(|| format!("reading {}", points.display()))?;
            let batch = formats::parse_points(&bytes).with_context(|| format!("parsing {}", points.display()))?;
            let mask = match engine {
                EngineKind::RayCrossing => {
                    // the crossing engine also accepts simple non-convex rings
                    let text = fs::read_to_string(&polygon)?;
                    let vertices = formats::parse_polygon(&text)?;
                    RayCrossingEngine::new(&vertices)?.contains_batch(&batch)
                }
                EngineKind::SignOfOffset => SignOfOffsetEngine::new(&read_polygon(&polygon)?).contains_batch(&batch),
                EngineKind::Voronoi => VoronoiEngine::from_polygon(&read_polygon(&polygon)?)?.contains_batch(&batch),
            };
            let mut w = output(out.as_deref())?;
            match format {
                MaskFormat::Csv => formats::write_mask_csv(&mask, &mut w)?,
                MaskFormat::Binary => formats::write_mask_binary(&mask, &mut w)?,
            }
            w.flush()?;
            Ok(true)
        }
        Command::Validate { polygon, count, seed } => {
            let poly = read_polygon(&polygon)?;
            let batch = sample_points(count, &SampleBox::around(&poly), seed)?;
            let report = run_validation(&poly, &batch)?;
            println!("{report}");
            Ok(report.passed)
        }
        Command::Bench {
            edges,
            batch,
            reps,
            seed,
            engines,
            threads,
            out,
        } => {
            let config = BenchConfig {
                edge_counts: edges.0,
                batch_size: batch,
                repetitions: reps,
                seed,
                sample_box: None,
                engines,
                threads,
            };
            let result = run_benchmark(&config)?;
            for f in &result.failures {
                eprintln!("warning: {} failed for n={}: {}", f.engine, f.n_edges, f.message);
            }
            write_records(&result.records, output(Some(&out))?)?;
            println!("{:<15} {:>3} {:>14} {:>16}", "engine", "n", "median ns", "points/s");
            for row in summarize(&result.records) {
                println!(
                    "{:<15} {:>3} {:>14.0} {:>16.4e}",
                    row.engine.name(),
                    row.n_edges,
                    row.median_wall_time_ns,
                    row.median_throughput
                );
            }
            if !result.failures.is_empty() {
                return Err(anyhow!("{} engine runs failed", result.failures.len()).into());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
