//! `fpoly`: command-line access to the polynomial, Frobenius and Hahn-series
//! routines of `fpoly-core`.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Report, EXIT_USAGE};

/// Largest accepted t-variable count.
pub const MAX_TVARS: usize = 9;
/// Largest accepted x-variable count.
pub const MAX_XVARS: usize = 8;
/// Largest accepted Hahn index set size.
pub const MAX_HAHN_INDEX: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "fpoly", version, about = "Exact algebra over F_p(t1..tm)[x1..xn]")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Characteristic.
    #[arg(short = 'p', long = "prime", global = true, default_value_t = 2)]
    pub p: u64,
    /// Number of t-variables; inferred from the input when omitted.
    #[arg(long, global = true)]
    pub tvars: Option<usize>,
    /// Number of x-variables; inferred from the input when omitted.
    #[arg(long, global = true)]
    pub xvars: Option<usize>,
    /// Size of the Hahn index set {1..N}.
    #[arg(long = "hahn-index", global = true, default_value_t = 8)]
    pub hahn_index: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub json: bool,
    /// Enumeration and search cap.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub cap: u64,
    /// Read the main expression from this file instead of the command line.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Raise every coefficient to the p-th power.
    Phi { expr: Option<String> },
    /// Raise every variable to the p-th power.
    Sigma { expr: Option<String> },
    /// The p-th power map.
    Frobenius { expr: Option<String> },
    /// Largest r with the input in the image of sigma^r.
    Level { expr: Option<String> },
    /// Hasse derivative of the given order.
    Hasse {
        #[arg(long)]
        var: usize,
        #[arg(long)]
        order: u64,
        expr: Option<String>,
    },
    /// Split into sigma(h) + sum eps_j phi(g_j).
    D3 {
        expr: Option<String>,
        #[arg(long, default_value = "")]
        eps: String,
    },
    /// Write the input as sum eps_j h_j^p.
    F4 {
        expr: Option<String>,
        #[arg(long, default_value = "")]
        eps: String,
    },
    /// Write the input as sigma^{r+1}(c) + sum eps_j sigma^r(phi(b_j)).
    Levelder {
        expr: Option<String>,
        #[arg(long, default_value = "")]
        eps: String,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Compare the common kernel of the first derivatives with im(sigma).
    KernelCheck {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        deg: u64,
        /// Coefficient pool; defaults to 0..p-1.
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Check b^p a in sum eps_j A^p for sample elements a.
    CheckC {
        #[arg(long, value_enum)]
        ring: RingArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "1")]
        eps: String,
        /// One field element per line; random samples when omitted.
        #[arg(long)]
        sample: Option<PathBuf>,
    },
    /// Confirm that t_{n+1}^p is not in b^{-p} A^p for the cusp ring.
    CuspWitness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: String,
    },
    /// Finite-support Hahn series.
    Hahn {
        #[command(subcommand)]
        command: HahnCommand,
    },
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        command: DemoCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum HahnCommand {
    /// Truncated inverse.
    Invert {
        expr: Option<String>,
        #[arg(long, default_value_t = 4)]
        terms: usize,
    },
    /// Check that t^delta g^{-1} lies in A.
    ShiftCheck {
        expr: Option<String>,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 4)]
        terms: usize,
    },
    /// Check that t^{p delta_j} is not in b^{-p} A^p.
    Aleph1Check {
        expr: Option<String>,
        #[arg(long)]
        j: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DemoCommand {
    /// f = sum t_i x_i^p.
    IntroExample {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// g = sum t_i^p x_i^p against the cusp ring.
    FlatGap {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum RingArg {
    Poly,
    Cusp,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json;
    let report = commands::run(&cli).unwrap_or_else(|msg| {
        Report::new(command_name(&cli.command), serde_json::Value::Null, "error")
            .diagnostic(msg)
            .exit(EXIT_USAGE)
    });
    if json {
        println!("{}", report.to_json());
    } else if report.exit == EXIT_USAGE {
        eprintln!("error: {}", report.diagnostic.as_deref().unwrap_or("usage"));
    } else {
        println!("{}", report.render_text());
    }
    ExitCode::from(report.exit)
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Phi { .. } => "phi",
        Command::Sigma { .. } => "sigma",
        Command::Frobenius { .. } => "frobenius",
        Command::Level { .. } => "level",
        Command::Hasse { .. } => "hasse",
        Command::D3 { .. } => "d3",
        Command::F4 { .. } => "f4",
        Command::Levelder { .. } => "levelder",
        Command::KernelCheck { .. } => "kernel-check",
        Command::CheckC { .. } => "check-c",
        Command::CuspWitness { .. } => "cusp-witness",
        Command::Hahn { command } => match command {
            HahnCommand::Invert { .. } => "hahn invert",
            HahnCommand::ShiftCheck { .. } => "hahn shift-check",
            HahnCommand::Aleph1Check { .. } => "hahn aleph1-check",
        },
        Command::Demo { command } => match command {
            DemoCommand::IntroExample { .. } => "demo intro-example",
            DemoCommand::FlatGap { .. } => "demo flat-gap",
        },
    }
}
