use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use cma_cli::report::{self, Format};
use cma_cli::ScenarioFile;
use cma_core::search::Scheme;

/// Cyclical TDMA planner for a UAV base station flying over a line of
/// ground terminals.
///
/// Without --config the reference deployment is used: 10 terminals over
/// 1000 m, 100 m altitude, 10 dBm transmit power, 80 dB reference SNR,
/// 30 m/s, no trajectory length.
#[derive(Debug, Parser)]
#[command(name = "cma", version)]
struct Cli {
    /// Scenario file (`key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output path, or `stdout` / `-`.
    #[arg(long, global = true, default_value = "stdout")]
    output: String,

    /// Output format; defaults to csv for rates/tradeoff and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Optimal,
    Equal,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rate of every terminal versus UAV position.
    Rates {
        /// Leftmost UAV position (m); default -(span/2 + 2·altitude).
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        /// Rightmost UAV position (m); default span/2 + 2·altitude.
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Segment allocation, throughputs and access delays for traj_length_m.
    Allocate,
    /// Max-min throughput of a UAV hovering above the center.
    Static,
    /// Sweep trajectory length and pick the best point per delay tolerance.
    Tradeoff {
        #[arg(long, default_value_t = 2.0)]
        dbar_max: f64,
        #[arg(long, default_value_t = 0.01)]
        dbar_step: f64,
        /// RMS delay tolerances in seconds.
        #[arg(long, value_delimiter = ',', default_value = "0,10,20,30,40,50,60")]
        phi: Vec<f64>,
        #[arg(long, value_enum, default_value = "both")]
        scheme: SchemeArg,
    },
}

fn threads_from_env() -> anyhow::Result<Option<usize>> {
    match std::env::var("CMA_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => {
            let n: usize =
                v.trim().parse().ok().filter(|&n| n > 0).with_context(|| {
                    format!("CMA_THREADS must be a positive integer, got {v:?}")
                })?;
            Ok(Some(n))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let file = match &cli.config {
        Some(path) => ScenarioFile::load(path)?,
        None => ScenarioFile::reference(),
    };
    let pick = |default| match cli.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => default,
    };

    let text = match cli.command {
        Command::Rates {
            x_min,
            x_max,
            samples,
        } => {
            let s = &file.scenario;
            let reach = s.span() / 2.0 + 2.0 * s.altitude();
            report::rates(s, x_min.unwrap_or(-reach), x_max.unwrap_or(reach), samples)?
                .render(pick(Format::Csv))
        }
        Command::Allocate => report::allocate(&file)?.render(pick(Format::Json)),
        Command::Static => report::static_baseline(&file.scenario).render(pick(Format::Json)),
        Command::Tradeoff {
            dbar_max,
            dbar_step,
            phi,
            scheme,
        } => {
            let schemes: &[Scheme] = match scheme {
                SchemeArg::Optimal => &[Scheme::Optimal],
                SchemeArg::Equal => &[Scheme::Equal],
                SchemeArg::Both => &[Scheme::Optimal, Scheme::Equal],
            };
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(n) = threads_from_env()? {
                pool = pool.num_threads(n);
            }
            let pool = pool.build().context("cannot start worker threads")?;
            pool.install(|| report::tradeoff(&file, schemes, dbar_max, dbar_step, &phi))?
                .render(pick(Format::Csv))
        }
    };

    if cli.output == "stdout" || cli.output == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()?;
    } else {
        std::fs::write(&cli.output, text)
            .with_context(|| format!("cannot write {}", cli.output))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
