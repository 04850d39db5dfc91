use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use fastss::analysis::{expected_candidates, markov_bound, CollisionModel};
use fastss::bench::{compare_baselines, perturb, run_benchmark, BenchReport};
use fastss::{load_dictionary, load_index, save_index, Dictionary, FastSSIndex, IndexParams};

#[derive(Parser)]
#[command(
    name = "fastss",
    version,
    about = "Lossless approximate dictionary matching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a word list.
    Build {
        #[arg(long)]
        dict: PathBuf,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        split: Split,
        #[arg(long)]
        out: PathBuf,
    },
    /// Look up one word in a prebuilt index.
    Query {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        dict: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Benchmark one index configuration on perturbed queries.
    Bench {
        #[arg(long)]
        dict: PathBuf,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        split: Split,
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare naive scan, BK-tree and FastSS with and without splitting.
    Compare {
        #[arg(long)]
        dict: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Expected residual collisions for uniform random words.
    Expect {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        len: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        sigma: u32,
        #[arg(long)]
        c: Option<f64>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Split {
    /// Split words longer than this many characters.
    #[arg(long)]
    m: Option<usize>,
    /// Never split words.
    #[arg(long)]
    no_split: bool,
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dict".to_string())
}

fn write_report(report: &BenchReport, csv: Option<&Path>) -> anyhow::Result<()> {
    match csv {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            report.write_csv(BufWriter::new(file))?;
        }
        None => report.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn summarize(report: &BenchReport) {
    for row in &report.rows {
        eprintln!(
            "{:>7} m={:<4} pairs={:<10} cand={:<10.2} matches={:<6.2} query={:.1}us (median {:.1}us)",
            row.method,
            if row.m.is_empty() { "-" } else { &row.m },
            row.stored_pairs.map_or("-".to_string(), |p| p.to_string()),
            row.mean_cand,
            row.mean_matches,
            row.mean_query_us,
            row.median_query_us,
        );
    }
}

fn load_nonempty(path: &Path) -> anyhow::Result<Dictionary> {
    let dict = load_dictionary(path)?;
    if dict.is_empty() {
        bail!("{} contains no words", path.display());
    }
    Ok(dict)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Build {
            dict,
            d,
            split,
            out,
        } => {
            let words = load_dictionary(&dict)?;
            let params = IndexParams::new(d, split.m)?;
            let start = Instant::now();
            let index = FastSSIndex::build(words, params);
            let elapsed = start.elapsed();
            save_index(&index, &out)?;
            println!(
                "{} words, {} stored pairs, {} distinct keys, built in {:.1} ms",
                index.dictionary().len(),
                index.stored_pairs(),
                index.distinct_keys(),
                elapsed.as_secs_f64() * 1e3
            );
        }
        Command::Query { index, dict, word } => {
            let index =
                load_index(&index).with_context(|| format!("loading index {}", index.display()))?;
            let words = load_dictionary(&dict)?;
            if &words != index.dictionary() {
                bail!(
                    "{} does not match the dictionary the index was built from",
                    dict.display()
                );
            }
            let mut out = io::stdout().lock();
            for m in index.query(&word) {
                writeln!(out, "{}\t{}", words.word(m.word_id), m.distance)?;
            }
        }
        Command::Bench {
            dict,
            d,
            split,
            queries,
            seed,
            csv,
        } => {
            let words = load_nonempty(&dict)?;
            let params = IndexParams::new(d, split.m)?;
            let workload = perturb(&words, queries, d, seed)?;
            let row = run_benchmark(&dataset_name(&dict), &words, params, &workload)?;
            let report = BenchReport { rows: vec![row] };
            summarize(&report);
            write_report(&report, csv.as_deref())?;
        }
        Command::Compare {
            dict,
            d,
            queries,
            seed,
            csv,
        } => {
            let words = load_nonempty(&dict)?;
            let workload = perturb(&words, queries, d, seed)?;
            let report = compare_baselines(&dataset_name(&dict), &words, &workload)?;
            summarize(&report);
            write_report(&report, csv.as_deref())?;
        }
        Command::Expect {
            n,
            len,
            d,
            sigma,
            c,
        } => {
            let model = CollisionModel::new(n, len, d, sigma)?;
            println!("expected_candidates\t{:.6e}", expected_candidates(&model));
            if let Some(c) = c {
                println!("markov_bound\t{:.6e}", markov_bound(&model, c)?);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<fastss::Error>() {
                Some(fastss::Error::Lossless(_)) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
