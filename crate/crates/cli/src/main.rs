use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symstrat::verify::{Fault, VerifyConfig};
use symstrat::Exec;

mod render;

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "symstrat", version, about = "Stratification and invariants of symmetric powers S^m Y of a smooth n-fold")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Run every computation on the calling thread.
    #[arg(long, global = true)]
    serial: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One row per stratum W_{π,m}: dimension, normalization, tangent dimension.
    Strata {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// The refinement order on partitions of m and its Hasse diagram.
    Poset {
        #[arg(long)]
        m: u32,
    },
    /// The iterated singular loci Sing^t for t = 0..m.
    SingularChain {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Local model at a point of the given multiplicity type.
    Germ {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Point type, comma-separated parts in any order.
        #[arg(long = "type")]
        point: String,
        /// Stratum whose preimage under the local model to decompose.
        #[arg(long)]
        target: Option<String>,
    },
    /// Discrepancy, singularity class, Gorenstein test and class groups.
    Invariants {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Recover (m, n) from the dimensions of Sing^0, Sing^1, ...
    Recover {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u64>,
    },
    /// Labels {(a_i, d_i)} with Σ a_i d_i = m of the divisor strata.
    DivisorStrata {
        #[arg(long)]
        m: u32,
    },
    /// Run every oracle cross-check up to the given scale.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        #[arg(long, default_value_t = 3)]
        max_n: u32,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.common.serial { Exec::Serial } else { Exec::Parallel };
    let format = cli.common.format;

    if format == Format::Dot && !matches!(cli.command, Command::Poset { .. }) {
        eprintln!("error: --format dot is only available for the poset command");
        return ExitCode::from(EXIT_USAGE);
    }

    let mut verify_failed = false;
    let rendered = match cli.command {
        Command::Strata { m, n } => render::strata(m, n, format),
        Command::Poset { m } => render::poset(m, format, exec),
        Command::SingularChain { m, n } => render::singular_chain(m, n, format, exec),
        Command::Germ { m, n, point, target } => render::germ(m, n, &point, target.as_deref(), format),
        Command::Invariants { m, n } => render::invariants(m, n, format),
        Command::Recover { dims } => render::recover(&dims, format),
        Command::DivisorStrata { m } => render::divisor_strata(m, format),
        Command::Verify {
            max_m,
            max_n,
            inject_fault,
        } => {
            let cfg = VerifyConfig {
                max_m,
                max_n,
                exec,
                fault: inject_fault.then_some(Fault::FlipLevel),
            };
            render::verify(&cfg, format).map(|(text, ok)| {
                verify_failed = !ok;
                text
            })
        }
    };

    let text = match rendered {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let written = match &cli.common.out {
        Some(path) => fs::write(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }

    if verify_failed {
        ExitCode::from(EXIT_VERIFY_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}
