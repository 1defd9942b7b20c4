use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use monocls::bench::{error_ratio, run_bench, write_csv, BenchConfig};
use monocls::coreset::{approx_classifier, build_coreset, CoresetParams};
use monocls::instances::{self, io as files};
use monocls::rpe::{run_rpe, test_monotonicity};
use monocls::solver::optimal_monotone;
use monocls::{err, LabeledPointSet, MonotoneClassifier, ProbeOracle};

/// Probe-efficient monotone classification.
#[derive(Parser)]
#[command(name = "monocls", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file (or a directory of files for `pairs`).
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        /// Output file, or directory for `pairs`; stdout when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Compute the optimal monotone error with full label access.
    Solve { file: PathBuf },
    /// Run random probes with elimination.
    Rpe {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a relative-comparison coreset and its approximate classifier.
    Coreset {
        file: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        coreset_out: Option<PathBuf>,
    },
    /// Test whether the labels are monotone.
    Testmono {
        file: PathBuf,
        #[arg(long)]
        xi: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a Monte Carlo campaign from a JSON config and write CSV.
    Bench {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The n one-dimensional inputs with one anomaly pair each.
    Pairs {
        #[arg(long)]
        n: usize,
    },
    /// Independent diagonal boxes, monotone labels.
    Boxes {
        #[arg(long)]
        nprime: usize,
        #[arg(long)]
        wprime: usize,
        /// Per-box count of -1 points; random when absent.
        #[arg(long, value_delimiter = ',')]
        thresholds: Option<Vec<usize>>,
    },
    /// Boxes padded with dummy points so the optimal error is k.
    Dummy {
        #[arg(long)]
        nprime: usize,
        #[arg(long)]
        wprime: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, value_delimiter = ',')]
        thresholds: Option<Vec<usize>>,
    },
    /// Coincident points at w incomparable locations with biased labels.
    Twoloc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        eps: f64,
    },
    /// Random points under a monotone rule with flipped labels.
    Noisy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        noise: f64,
    },
    /// Values 1..n with only the smallest labeled +1.
    Lone {
        #[arg(long)]
        n: usize,
    },
    /// Values 1..n labeled +1, -1, +1, ...
    Alternating {
        #[arg(long)]
        n: usize,
    },
}

fn load(path: &Path) -> Result<LabeledPointSet> {
    files::load_dataset(path).with_context(|| format!("reading {}", path.display()))
}

fn optimum(set: &LabeledPointSet) -> Result<(MonotoneClassifier, usize)> {
    if set.is_empty() {
        return Ok((MonotoneClassifier::anchors(set.dim(), vec![])?, 0));
    }
    Ok(optimal_monotone(set)?)
}

fn anchor_count(h: &MonotoneClassifier) -> usize {
    match h {
        MonotoneClassifier::Threshold1D { .. } => 1,
        MonotoneClassifier::AnchorSet(a) => a.len(),
    }
}

fn write_set(out: Option<&Path>, set: &LabeledPointSet) -> Result<()> {
    match out {
        Some(path) => files::save_dataset(path, set).with_context(|| format!("writing {}", path.display())),
        None => Ok(files::write_dataset(io::stdout().lock(), set)?),
    }
}

fn generate(family: &Family, seed: u64, out: Option<&Path>) -> Result<()> {
    let set = match family {
        Family::Pairs { n } => {
            let Some(dir) = out else { bail!("gen pairs needs --out <directory>") };
            fs::create_dir_all(dir)?;
            for (i, set) in instances::gen_pairs_family(*n)?.iter().enumerate() {
                write_set(Some(&dir.join(format!("pairs_{n}_{i}.jsonl"))), set)?;
            }
            return Ok(());
        }
        Family::Boxes { nprime, wprime, thresholds } => {
            let t = thresholds.clone().unwrap_or_else(|| instances::random_thresholds(*nprime, *wprime, seed));
            instances::gen_boxes_realizable(*nprime, *wprime, &t)?
        }
        Family::Dummy { nprime, wprime, k, c, thresholds } => {
            let t = thresholds.clone().unwrap_or_else(|| instances::random_thresholds(*nprime, *wprime, seed));
            instances::gen_boxes_nonrealizable(*nprime, *wprime, *k, *c, &t)?
        }
        Family::Twoloc { n, w, eps } => instances::gen_two_location(*n, *w, *eps, seed)?.set,
        Family::Noisy { n, d, noise } => instances::gen_noisy_monotone(*n, *d, *noise, seed)?.set,
        Family::Lone { n } => instances::gen_lone_positive(*n)?,
        Family::Alternating { n } => instances::gen_alternating(*n)?,
    };
    write_set(out, &set)
}

fn run(cli: Cli) -> Result<()> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Gen { family, seed, out } => generate(&family, seed, out.as_deref())?,
        Command::Solve { file } => {
            let set = load(&file)?;
            let (h, kstar) = optimum(&set)?;
            writeln!(stdout, "n: {}", set.len())?;
            writeln!(stdout, "dim: {}", set.dim())?;
            writeln!(stdout, "kstar: {kstar}")?;
            writeln!(stdout, "anchors: {}", anchor_count(&h))?;
            writeln!(stdout, "classifier: {h}")?;
        }
        Command::Rpe { file, seed } => {
            let set = load(&file)?;
            let mut oracle = ProbeOracle::from_labeled(&set);
            let r = run_rpe(set.unlabeled(), &mut oracle, seed)?;
            let error = err(&r.classifier, &set)?;
            let kstar = optimum(&set)?.1;
            writeln!(stdout, "probes: {}", r.cost)?;
            writeln!(stdout, "error: {error}")?;
            writeln!(stdout, "kstar: {kstar}")?;
            writeln!(stdout, "ratio: {}", error_ratio(error as f64, kstar))?;
        }
        Command::Coreset { file, eps, delta, seed, coreset_out } => {
            let set = load(&file)?;
            let params = CoresetParams::new(eps, delta, seed)?;
            let mut oracle = ProbeOracle::from_labeled(&set);
            let z = build_coreset(set.unlabeled(), &params, &mut oracle)?;
            let h = approx_classifier(&z)?;
            let error = err(&h, &set)?;
            let kstar = optimum(&set)?.1;
            if let Some(path) = coreset_out {
                files::save_coreset(&path, &z.points).with_context(|| format!("writing {}", path.display()))?;
            }
            writeln!(stdout, "probes: {}", z.probes)?;
            writeln!(stdout, "coreset_size: {}", z.len())?;
            writeln!(stdout, "chains: {}", z.chains)?;
            writeln!(stdout, "error: {error}")?;
            writeln!(stdout, "kstar: {kstar}")?;
            writeln!(stdout, "ratio: {}", error_ratio(error as f64, kstar))?;
            writeln!(stdout, "classifier: {h}")?;
        }
        Command::Testmono { file, xi, seed } => {
            let set = load(&file)?;
            let mut oracle = ProbeOracle::from_labeled(&set);
            let verdict = test_monotonicity(set.unlabeled(), xi, &mut oracle, seed)?;
            writeln!(stdout, "verdict: {verdict}")?;
            writeln!(stdout, "probes: {}", oracle.cost())?;
        }
        Command::Bench { config, out } => {
            let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let results = run_bench(&BenchConfig::from_json(&text)?)?;
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
                    write_csv(io::BufWriter::new(file), &results)?;
                }
                None => write_csv(&mut stdout, &results)?,
            }
        }
    }
    stdout.flush()?;
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
