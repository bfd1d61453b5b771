use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use simplexgraph::harness::{self, ConjectureMode, RunOptions, SuiteName};
use simplexgraph::monomial::map_between_tops;
use simplexgraph::{Error, GammaGraph, PLine};

/// Simplex lines of PG(q, q), the graph of 2-dimensional simplex codes and
/// its maximal cliques.
///
/// Reports are JSON with sorted keys. Exit status: 0 when every check passes,
/// 1 when a check fails, 2 on a usage error. Set SIMPLEX_THREADS to fix the
/// number of worker threads; output does not depend on it.
#[derive(Parser)]
#[command(name = "simplexgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every maximal clique of the graph (q <= 5).
    Census {
        #[arg(long)]
        q: u32,
        /// Write the census here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the graph in DOT format (q <= 4).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
    },
    /// Check the worked configurations at q = 7 and q = 11.
    Examples {
        #[arg(long = "case", value_enum)]
        case: CaseArg,
        #[command(flatten)]
        common: Common,
    },
    /// Rank sweep for the I-images of q - 1 points on simplex lines.
    Conjecture {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Number of random (line, subset) draws in sampled mode.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Find a monomial map carrying one 4-line top onto another (q = 5).
    MapTops {
        #[arg(long)]
        q: u32,
        /// Comma-separated line ids of the first top.
        #[arg(long, value_delimiter = ',', required = true)]
        top_a: Vec<u32>,
        /// Comma-separated line ids of the second top.
        #[arg(long, value_delimiter = ',', required = true)]
        top_b: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record elapsed_ms per check (makes reports run-dependent).
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            timings: self.timings,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Q3q4,
    Q5,
    Inversion,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Q7,
    Q11,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Representative,
    Sampled,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report(common: &Common, r: simplexgraph::SuiteReport) -> Result<u8> {
    emit(common.out.as_deref(), &r.to_json())?;
    for c in r.failures() {
        eprintln!("FAIL {}: {}", c.id, c.description);
    }
    Ok(r.exit_code() as u8)
}

fn map_tops(q: u32, a: &[u32], b: &[u32], out: Option<&Path>) -> Result<u8> {
    if q != 5 {
        return Err(Error::Usage(format!("map-tops needs --q 5, got {q}")).into());
    }
    let g = GammaGraph::for_q(5)?;
    let f = g.field();
    let mut tops = Vec::new();
    for ids in [a, b] {
        let c = g
            .classify(ids)
            .map_err(|e| Error::Usage(format!("{ids:?}: {e}")))?;
        if c.len() != 4 || !c.has_triangle() || !g.is_maximal_clique(c.line_ids().unwrap()) {
            return Err(Error::Usage(format!("{ids:?} is not a top")).into());
        }
        tops.push(c);
    }
    let m = map_between_tops(f, &tops[0], &tops[1])?;
    let image: Vec<PLine> = tops[0].lines().iter().map(|l| m.apply_line(f, l)).collect();
    let image = g.ids_of(&image)?;
    let verified = image == tops[1].line_ids().unwrap();
    let doc = serde_json::json!({
        "q": q,
        "top_a": tops[0].line_ids(),
        "top_b": tops[1].line_ids(),
        "map": m.record(),
        "image": image,
        "verified": verified,
    });
    emit(out, &harness::to_json(&doc))?;
    Ok(if verified { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Census { q, out, dot } => {
            let export = harness::census_export(q, dot.is_some())?;
            emit(out.as_deref(), &export.report.to_json())?;
            if let (Some(path), Some(text)) = (dot, export.dot) {
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
        Command::Verify { q, suite, common } => {
            let suite = match suite {
                SuiteArg::Q3q4 => SuiteName::Q3q4,
                SuiteArg::Q5 => SuiteName::Q5,
                SuiteArg::Inversion => SuiteName::Inversion,
                SuiteArg::All => SuiteName::All,
            };
            report(&common, harness::verify(q, suite, &common.options())?)
        }
        Command::Examples { case, common } => {
            let r = match case {
                CaseArg::Q7 => harness::suite_example_q7(&common.options())?,
                CaseArg::Q11 => harness::suite_example_q11(&common.options())?,
            };
            report(&common, r)
        }
        Command::Conjecture {
            q,
            mode,
            samples,
            common,
        } => {
            let mode = match mode {
                ModeArg::Exhaustive => ConjectureMode::Exhaustive,
                ModeArg::Representative => ConjectureMode::Representative,
                ModeArg::Sampled => ConjectureMode::Sampled,
            };
            report(
                &common,
                harness::suite_conjecture(q, mode, samples, &common.options())?,
            )
        }
        Command::MapTops {
            q,
            top_a,
            top_b,
            out,
        } => map_tops(q, &top_a, &top_b, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = harness::threads_from_env()
        .map_err(anyhow::Error::from)
        .and_then(|threads| harness::with_threads(threads, || run(cli)));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Error>().is_some_and(Error::is_usage);
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
