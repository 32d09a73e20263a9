//! `stabent` command-line front end.

mod commands;
mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stabent::EntropySpec;

#[derive(Parser)]
#[command(
    name = "stabent",
    version,
    about = "Entropic uncertainty relations for stabilizer and graph-state bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest qubit count handed to the dense oracle.
    #[arg(long = "max-n", global = true, default_value_t = 10)]
    max_n: usize,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Maassen–Uffink bound for two bases given as generator or graph files.
    Bound { a: PathBuf, b: PathBuf },
    /// Averaged Shannon entropy on every basis state of both bases.
    Tightness {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        entropy: EntropyArgs,
    },
    /// Anticommuting pairing of the symmetric difference of two groups.
    Matching {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        entropy: EntropyArgs,
        /// Random states checked against each bound.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Boundary of the allowed expectation-value region for two anticommuting observables.
    Boundary {
        #[command(flatten)]
        entropy: EntropyArgs,
        /// Points per quadrant.
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Run a property suite and print a JSON log.
    Verify {
        suite: verify::Suite,
        /// Random cases per check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Restarts for entropy minimization.
        #[arg(long, default_value_t = 20)]
        restarts: usize,
    },
    /// Exact amplitude table of a graph state in the conjugate basis.
    Amplitudes { graph: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EntropyKind {
    Shannon,
    Min,
    Tsallis,
}

#[derive(Args)]
struct EntropyArgs {
    /// Entropy to use; repeat to request several.
    #[arg(long, value_enum)]
    entropy: Vec<EntropyKind>,
    /// Tsallis order, required with `--entropy tsallis`.
    #[arg(long)]
    q: Option<f64>,
}

impl EntropyArgs {
    fn specs(&self) -> Result<Vec<EntropySpec>, String> {
        let has_tsallis = self.entropy.contains(&EntropyKind::Tsallis);
        match (has_tsallis, self.q) {
            (true, None) => return Err("--entropy tsallis requires --q".into()),
            (false, Some(_)) => return Err("--q only applies to --entropy tsallis".into()),
            _ => {}
        }
        if self.entropy.is_empty() {
            return Ok(vec![EntropySpec::Shannon]);
        }
        self.entropy
            .iter()
            .map(|k| match k {
                EntropyKind::Shannon => Ok(EntropySpec::Shannon),
                EntropyKind::Min => Ok(EntropySpec::Min),
                EntropyKind::Tsallis => {
                    EntropySpec::tsallis(self.q.unwrap()).map_err(|e| e.to_string())
                }
            })
            .collect()
    }

    fn single(&self) -> Result<EntropySpec, String> {
        let mut specs = self.specs()?;
        if specs.len() > 1 {
            return Err("this command takes a single --entropy".into());
        }
        Ok(specs.remove(0))
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::Bound { a, b } => commands::bound(&a, &b, cli.max_n, out),
        Command::Tightness { a, b, entropy } => {
            if entropy.single()? != EntropySpec::Shannon {
                return Err("tightness is defined for the Shannon entropy only".into());
            }
            commands::tightness(&a, &b, cli.max_n, out)
        }
        Command::Matching {
            a,
            b,
            entropy,
            samples,
        } => commands::matching(&a, &b, &entropy.specs()?, samples, cli.seed, out),
        Command::Boundary { entropy, samples } => {
            commands::boundary(&entropy.single()?, samples, out)
        }
        Command::Verify {
            suite,
            samples,
            restarts,
        } => {
            let cfg = verify::Config {
                seed: cli.seed,
                samples,
                restarts,
                max_n: cli.max_n,
            };
            verify::run(suite, &cfg, out)
        }
        Command::Amplitudes { graph } => commands::amplitudes(&graph, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
