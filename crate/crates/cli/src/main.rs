//! `apolar`: Waring ranks, apolar algebras, secant dimensions and tensor
//! flattenings from the command line.
//!
//! Exit codes: 0 success, 1 a fixture or assertion failed, 2 bad usage or
//! input.

mod commands;
mod config;
mod fixtures;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{OutputFormat, RunArgs, RunConfig};
use report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "apolar",
    version,
    about = "Exact Waring rank, apolarity and secant variety computations"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

/// A form given as text, or a seeded generic form of the given degree.
#[derive(Clone, Debug, Args)]
pub struct FormArgs {
    /// Homogeneous polynomial in x0, x1, ..., e.g. "x0^2*x1 - 3/2*x1^3".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "generic")]
    pub form: Option<String>,
    /// Number of variables (default: highest index used plus one).
    #[arg(long)]
    pub vars: Option<usize>,
    /// Use a seed-generated generic form of this degree in `--vars` variables.
    #[arg(
        long,
        value_name = "DEGREE",
        conflicts_with = "form",
        requires = "vars"
    )]
    pub generic: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Waring rank of a binary form, a monomial or a quadric.
    Rank {
        #[command(subcommand)]
        kind: RankKind,
    },
    /// Basis of the apolar ideal in one degree, or in every degree up to d+1.
    Perp {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Hilbert function of the apolar algebra.
    Hilbert {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Catalecticant matrix with columns indexed by operators of degree t.
    Catalecticant {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        t: u32,
    },
    /// Solve F = sum c_i L_i^d for linear forms given by points.
    DecomposeCheck {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        vars: Option<usize>,
        /// Points separated by commas, coordinates by colons: "1:1,-1:1,0:1".
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Dimension of a secant variety by Terracini's lemma.
    SecantDim {
        #[command(subcommand)]
        variety: VarietyArgs,
    },
    /// Waring rank of a general form of degree d in n+1 variables.
    AhG {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        /// Also find the filling rank with the dimension engine.
        #[arg(long)]
        verify: bool,
    },
    /// Tensor flattenings and the Strassen equation.
    Tensor {
        #[command(subcommand)]
        op: TensorOp,
    },
    /// Run the built-in suite of reference values.
    PaperFixtures {
        /// Print fixture names without running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Subcommand)]
enum RankKind {
    /// Sylvester's algorithm for a binary form.
    Binary {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Closed formula from an exponent vector.
    Monomial {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
    },
    /// Rank of the symmetric matrix of a quadric.
    Quadratic {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        vars: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum VarietyArgs {
    /// sigma_s of the degree-d Veronese embedding of P^n.
    Veronese {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: usize,
    },
    /// sigma_s of P^n1 x ... x P^nt.
    Segre {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Debug, Subcommand)]
enum TensorOp {
    /// Flattening along a set of modes (1-based), e.g. --modes 1,3.
    Flatten {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        modes: Vec<usize>,
    },
    /// Ranks of the 1-flattenings.
    Mlrank {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// The 9x9 Strassen matrix of a 3x3x3 tensor with its rank and determinant.
    Strassen {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Expand the Strassen determinant of the generic 3x3x3 tensor.
    StrassenExpand {
        /// Include the full polynomial in the output.
        #[arg(long)]
        show: bool,
    },
    /// Structure tensor of n x n matrix multiplication.
    Matmul {
        #[arg(long)]
        n: usize,
    },
    /// Whether all (r+1)-minors of the 1-flattenings vanish.
    Minors {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
        }
    }
}

impl From<apolar_core::Error> for CliError {
    fn from(e: apolar_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn dispatch(command: Command, cfg: &RunConfig) -> Result<Report, CliError> {
    use commands::{forms, secant, tensor};
    match command {
        Command::Rank { kind } => match kind {
            RankKind::Binary { form } => forms::rank_binary(&form, cfg),
            RankKind::Monomial { exponents } => forms::rank_monomial(&exponents, cfg),
            RankKind::Quadratic { form, vars } => forms::rank_quadratic(&form, vars, cfg),
        },
        Command::Perp { form, degree } => forms::perp(&form, degree, cfg),
        Command::Hilbert { form } => forms::hilbert(&form, cfg),
        Command::Catalecticant { form, t } => forms::catalecticant(&form, t, cfg),
        Command::DecomposeCheck { form, vars, points } => {
            forms::decompose_check(&form, vars, &points, cfg)
        }
        Command::SecantDim { variety } => match variety {
            VarietyArgs::Veronese { n, d, s } => secant::veronese(n, d, s, cfg),
            VarietyArgs::Segre { dims, s } => secant::segre(&dims, s, cfg),
        },
        Command::AhG { n, d, verify } => secant::ah_g(n, d, verify, cfg),
        Command::Tensor { op } => match op {
            TensorOp::Flatten { file, modes } => tensor::flatten(file.as_deref(), &modes, cfg),
            TensorOp::Mlrank { file } => tensor::mlrank(file.as_deref(), cfg),
            TensorOp::Strassen { file } => tensor::strassen(file.as_deref(), cfg),
            TensorOp::StrassenExpand { show } => tensor::strassen_expand(show, cfg),
            TensorOp::Matmul { n } => tensor::matmul(n, cfg),
            TensorOp::Minors { file, r } => tensor::minors(file.as_deref(), r, cfg),
        },
        Command::PaperFixtures { list } => fixtures::run(list, cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_args(&cli.run).and_then(|cfg| {
        let report = dispatch(cli.command, &cfg)?;
        Ok((cfg, report))
    });
    match result {
        Ok((cfg, report)) => {
            match cfg.output {
                OutputFormat::Text => println!("{}", report.text.trim_end()),
                OutputFormat::Json => println!("{}", report.to_json()),
            }
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
