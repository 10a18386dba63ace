use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use memchan::channels::ChannelKind;
use memchan::sweep::{
    emit_plot_script, run_figures, run_sweep, verify_channel, write_csv, SweepConfig, SweepError,
};

const EXIT_CONFIG: u8 = 1;
const EXIT_INVARIANT: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "memchan",
    version,
    about = "Entropic uncertainty under correlated noise channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a sweep described by a JSON config; writes the CSV and a plot script.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Check the Kraus sets of a channel and compare the closed-form table.
    Verify {
        #[arg(long)]
        channel: ChannelKind,
        /// Random input states per D value.
        #[arg(long, default_value_t = 100)]
        states: usize,
        /// Random inputs for the closed-form comparison.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Write the three reference sweeps (CSV + plot script each).
    Figures {
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
    },
}

fn exit_code(err: &SweepError) -> u8 {
    match err {
        SweepError::Config { .. } | SweepError::Io { .. } => EXIT_CONFIG,
        SweepError::Point { .. } | SweepError::Invariant(_) | SweepError::Core(_) => EXIT_INVARIANT,
    }
}

fn configure_threads() -> Result<(), SweepError> {
    let Ok(raw) = std::env::var("MEMCHAN_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| SweepError::Config {
        field: "MEMCHAN_THREADS".into(),
        message: format!("`{raw}` is not a positive integer"),
    })?;
    if threads == 0 {
        return Err(SweepError::Config {
            field: "MEMCHAN_THREADS".into(),
            message: "must be at least 1".into(),
        });
    }
    // Only fails if a global pool already exists, which is harmless here.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn sweep(config: &PathBuf) -> Result<(), SweepError> {
    let text = std::fs::read_to_string(config).map_err(|source| SweepError::Io {
        path: config.clone(),
        source,
    })?;
    let cfg = SweepConfig::from_json(&text)?;
    let records = run_sweep(&cfg)?;
    let csv_path = PathBuf::from(&cfg.output_path);
    let script_path = csv_path.with_extension("py");
    write_csv(&records, &csv_path)?;
    emit_plot_script(&records, &csv_path, &script_path)?;
    println!(
        "wrote {} records to {} and plot script {}",
        records.len(),
        csv_path.display(),
        script_path.display()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<u8, SweepError> {
    configure_threads()?;
    match cli.command {
        Command::Sweep { config } => sweep(&config).map(|_| 0),
        Command::Verify {
            channel,
            states,
            samples,
            seed,
        } => {
            let report = verify_channel(channel, states, samples, seed)?;
            print!("{report}");
            Ok(if report.passed() { 0 } else { EXIT_INVARIANT })
        }
        Command::Figures { out_dir } => {
            for path in run_figures(&out_dir)? {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
