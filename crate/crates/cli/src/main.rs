mod commands;
mod manifest;
mod run;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{ensure, Context, Result};
use clap::{Args, Parser, Subcommand};

use source::{check_profile, near_uniform, Demands, PdaSource};

/// Secretive coded caching with shared helper caches.
#[derive(Debug, Parser)]
#[command(name = "secache", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate, construct or display placement delivery arrays.
    #[command(subcommand)]
    Pda(PdaCommand),
    /// Run placement, delivery and decoding end to end.
    Simulate(SimulateOpts),
    /// Rebuild a simulation run and check decoding and secrecy.
    Verify {
        /// Directory written by `simulate`.
        run_dir: PathBuf,
        /// Check only the placement phase.
        #[arg(long)]
        caches_only: bool,
    },
    /// Worst-case rate of a PDA under an association profile.
    Rate {
        #[arg(long)]
        pda: PdaSource,
        #[arg(long, value_delimiter = ',', required = true)]
        profile: Vec<usize>,
    },
    /// Cut-set lower bound, and the gap to a PDA scheme if one is given.
    Bound {
        #[arg(long)]
        files: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        profile: Vec<usize>,
        /// Helper-cache memory M in files (e.g. 21, 3/2, 0.5).
        #[arg(long)]
        memory: Option<String>,
        /// Take M from this PDA and report the optimality gap.
        #[arg(long)]
        pda: Option<PdaSource>,
        #[arg(long, default_value = "1")]
        user_memory: String,
    },
    /// Rate–memory sweep as CSV.
    Sweep(SweepOpts),
}

#[derive(Debug, Subcommand)]
enum PdaCommand {
    /// Check a PDA file and print its parameters.
    Validate { path: PathBuf },
    /// Print the MN PDA for Λ caches and parameter t.
    Mn {
        caches: usize,
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a PDA and, with a profile, its user array G.
    Show {
        #[arg(long)]
        pda: PdaSource,
        #[arg(long, value_delimiter = ',')]
        profile: Option<Vec<usize>>,
    },
}

#[derive(Debug, Args)]
struct SimulateOpts {
    #[arg(long)]
    pda: PdaSource,
    /// Users per cache, in cache order.
    #[arg(long, value_delimiter = ',', required = true)]
    profile: Vec<usize>,
    /// Number of files N (synthetic library).
    #[arg(long)]
    files: Option<usize>,
    /// File size in bytes (synthetic library).
    #[arg(long)]
    bytes: Option<usize>,
    /// Symbol size l, for GF(2^l).
    #[arg(long, default_value_t = 8)]
    field: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `worst-case` or 1-based file indices d1,d2,...
    #[arg(long, default_value = "worst-case")]
    demands: Demands,
    #[arg(long)]
    out: PathBuf,
    /// Send transmissions without their pads (breaks secrecy on purpose).
    #[arg(long)]
    strip_pads: bool,
    /// Log whole payloads instead of the first 64 bytes.
    #[arg(long)]
    full_payloads: bool,
    /// Use the equal-length files in this directory as the library.
    #[arg(long)]
    input_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepOpts {
    #[arg(long)]
    files: usize,
    /// Users per cache; alternatively give --caches and --users.
    #[arg(long, value_delimiter = ',')]
    profile: Option<Vec<usize>>,
    #[arg(long)]
    caches: Option<usize>,
    #[arg(long)]
    users: Option<usize>,
    /// Additional PDA files (or mn:Λ,t) to include.
    #[arg(long = "extra-pda")]
    extra_pda: Vec<PdaSource>,
    /// Leave out the MN family.
    #[arg(long)]
    no_mn: bool,
    /// Emit every PDA row instead of one row per memory value.
    #[arg(long)]
    all_points: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Command {
    fn profile(&self) -> Option<&[usize]> {
        match self {
            Command::Pda(PdaCommand::Show { profile, .. }) => profile.as_deref(),
            Command::Simulate(o) => Some(&o.profile),
            Command::Rate { profile, .. } | Command::Bound { profile, .. } => Some(profile),
            Command::Sweep(o) => o.profile.as_deref(),
            _ => None,
        }
    }
}

fn sweep_profile(opts: &SweepOpts) -> Result<Vec<usize>> {
    match (&opts.profile, opts.caches, opts.users) {
        (Some(p), caches, None) => {
            if let Some(c) = caches {
                ensure!(c == p.len(), "--caches {c} but the profile has {} entries", p.len());
            }
            Ok(p.clone())
        }
        (None, Some(c), Some(k)) => {
            ensure!(c > 0 && k > 0, "need at least one cache and one user");
            Ok(near_uniform(k, c))
        }
        _ => anyhow::bail!("pass --profile, or --caches with --users"),
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(profile) = cli.command.profile() {
        check_profile(profile)?;
    }
    match cli.command {
        Command::Pda(PdaCommand::Validate { path }) => commands::pda_validate(&path),
        Command::Pda(PdaCommand::Mn { caches, t, out }) => {
            commands::pda_mn(caches, t, out.as_deref())?;
            Ok(true)
        }
        Command::Pda(PdaCommand::Show { pda, profile }) => {
            commands::pda_show(&pda, profile.as_deref())?;
            Ok(true)
        }
        Command::Simulate(o) => run::simulate(
            run::SimulateArgs {
                pda: o.pda,
                profile: o.profile,
                files: o.files,
                bytes: o.bytes,
                field_bits: o.field,
                seed: o.seed,
                demands: o.demands,
                out: o.out,
                strip_pads: o.strip_pads,
                full_payloads: o.full_payloads,
                input_dir: o.input_dir,
            },
            std::env::args().collect(),
        ),
        Command::Verify { run_dir, caches_only } => run::verify(&run_dir, caches_only),
        Command::Rate { pda, profile } => {
            commands::rate_cmd(&pda, &profile)?;
            Ok(true)
        }
        Command::Bound {
            files,
            profile,
            memory,
            pda,
            user_memory,
        } => {
            commands::bound_cmd(commands::BoundArgs {
                files,
                profile,
                memory,
                pda,
                user_memory,
            })?;
            Ok(true)
        }
        Command::Sweep(o) => {
            let profile = sweep_profile(&o).context("sweep profile")?;
            commands::sweep_cmd(commands::SweepArgs {
                files: o.files,
                profile,
                extra: o.extra_pda,
                skip_mn: o.no_mn,
                all_points: o.all_points,
                out: o.out,
            })?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
