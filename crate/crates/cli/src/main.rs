//! `fraclatt`: fractional Laplacian matrices on cyclic chains.
//!
//! Exit codes: 0 success, 2 invalid input/usage, 3 numerical
//! non-convergence, 4 verification failure.

mod commands;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use output::{emit, Format};

#[derive(Parser)]
#[command(
    name = "fraclatt",
    version,
    about = "Fractional Laplacian matrices on cyclic chains: elements, spectra, kernels, diffusion",
    after_help = "Relative --output paths are resolved against $FRACLATT_OUTPUT_DIR when set."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixMethodArg {
    Spectral,
    Periodized,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelMethodArg {
    Zeta,
    LatticeSum,
    Regularized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiffuseInit {
    Delta,
    Uniform,
    Cosine,
}

#[derive(Subcommand)]
enum Command {
    /// Infinite-chain matrix elements via closed form, recursion,
    /// quadrature, and asymptotics
    Elements {
        /// Fractional order alpha > 0
        #[arg(long)]
        alpha: f64,
        /// Largest offset p to tabulate
        #[arg(long)]
        pmax: usize,
        /// Frequency-squared scale W^2
        #[arg(long, default_value_t = 1.0)]
        omega2: f64,
        /// Quadrature tolerance
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Finite-chain characteristic or Laplacian matrix
    Matrix {
        #[arg(long)]
        alpha: f64,
        /// Number of particles N >= 3
        #[arg(long = "N", visible_alias = "n")]
        n: usize,
        /// Lattice constant
        #[arg(long = "h", default_value_t = 1.0)]
        h: f64,
        /// Particle mass
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        omega2: f64,
        /// Element construction (both = side-by-side with discrepancy)
        #[arg(long, value_enum, default_value_t = MatrixMethodArg::Spectral)]
        method: MatrixMethodArg,
        /// Emit the Laplacian Delta = -mu f instead of the characteristic matrix
        #[arg(long)]
        laplacian: bool,
        /// Emit all N^2 entries (i, j, value) instead of the first row
        #[arg(long)]
        full: bool,
        /// Periodization tolerance
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Dispersion relation omega^2_alpha(kappa_l) for all modes
    Spectrum {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "N", visible_alias = "n")]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        omega2: f64,
    },
    /// Continuum-limit kernels (infinite space or L-periodic)
    Kernel {
        #[arg(long)]
        alpha: f64,
        /// Evaluation point(s); repeat for several
        #[arg(long, required = true)]
        x: Vec<f64>,
        /// Evaluate the L-periodic kernel (needs --L)
        #[arg(long)]
        periodic: bool,
        /// Period of the string
        #[arg(long = "L")]
        l_period: Option<f64>,
        /// Periodic evaluation route
        #[arg(long, value_enum, default_value_t = KernelMethodArg::Zeta)]
        method: KernelMethodArg,
        /// Regularization length (selects the regularized route for the
        /// infinite-space kernel)
        #[arg(long)]
        epsilon: Option<f64>,
        /// Richardson-extrapolate the regularized route to eps -> 0
        #[arg(long)]
        extrapolate: bool,
    },
    /// Fractional diffusion on the ring by exact spectral evolution
    Diffuse {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "N", visible_alias = "n")]
        n: usize,
        /// Evolution time t >= 0
        #[arg(long, visible_alias = "t")]
        time: f64,
        /// Mobility c > 0
        #[arg(long = "mobility", visible_alias = "c", default_value_t = 1.0)]
        mobility: f64,
        #[arg(long = "h", default_value_t = 1.0)]
        h: f64,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        omega2: f64,
        /// Initial condition
        #[arg(long, value_enum, default_value_t = DiffuseInit::Delta)]
        init: DiffuseInit,
        /// Spike site for --init delta
        #[arg(long, default_value_t = 0)]
        site: usize,
        /// Mode index for --init cosine
        #[arg(long, default_value_t = 1)]
        mode: usize,
    },
    /// Cubic-lattice element in 1-3 dimensions by tensorized quadrature
    NdElement {
        #[arg(long)]
        alpha: f64,
        /// Offset vector, comma separated (e.g. --p 1,0); repeat for several
        #[arg(long, required = true)]
        p: Vec<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run the verification suite and report each check
    Verify {
        /// Trim the slowest studies
        #[arg(long)]
        quick: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let table = match cli.command {
        Command::Verify { quick } => return run_verify(quick),
        Command::Elements { alpha, pmax, omega2, tol } => {
            commands::elements(alpha, pmax, omega2, tol)
        }
        Command::Matrix { alpha, n, h, mu, omega2, method, laplacian, full, tol } => {
            commands::matrix(alpha, n, h, mu, omega2, method, laplacian, full, tol)
        }
        Command::Spectrum { alpha, n, omega2 } => commands::spectrum(alpha, n, omega2),
        Command::Kernel { alpha, x, periodic, l_period, method, epsilon, extrapolate } => {
            commands::kernel(alpha, &x, periodic, l_period, method, epsilon, extrapolate)
        }
        Command::Diffuse { alpha, n, time, mobility, h, mu, omega2, init, site, mode } => {
            commands::diffuse(alpha, n, time, mobility, h, mu, omega2, init, site, mode)
        }
        Command::NdElement { alpha, p, tol } => match parse_offsets(&p) {
            Ok(offsets) => commands::nd_element(alpha, &offsets, tol),
            Err(e) => Err(e),
        },
    };

    match table {
        Ok(table) => {
            let content = match cli.format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json(),
            };
            match emit(&content, cli.output.as_deref()) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("fraclatt: cannot write output: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("fraclatt: {e}");
            match e {
                fraclatt::Error::NonConvergence(_) => 3,
                _ => 2,
            }
        }
    }
}

fn parse_offsets(specs: &[String]) -> fraclatt::Result<Vec<Vec<i64>>> {
    specs
        .iter()
        .map(|s| {
            s.split(',')
                .map(|tok| {
                    tok.trim().parse::<i64>().map_err(|_| {
                        fraclatt::Error::InvalidInput(format!(
                            "cannot parse offset component '{tok}' in --p {s}"
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

fn run_verify(quick: bool) -> i32 {
    let checks = fraclatt::verify::run_suite(quick);
    let mut all_ok = true;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("[{status}] {}: {} ({:.2}s)", c.name, c.detail, c.seconds);
        all_ok &= c.passed;
    }
    let total: f64 = checks.iter().map(|c| c.seconds).sum();
    println!(
        "{}: {} of {} checks passed ({total:.2}s)",
        if all_ok { "OK" } else { "FAILED" },
        checks.iter().filter(|c| c.passed).count(),
        checks.len()
    );
    if all_ok {
        0
    } else {
        4
    }
}
