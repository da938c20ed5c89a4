use apolar_core::scalar::DEFAULT_MODULUS;
use apolar_core::secant::TrialConfig;
use apolar_core::{Arithmetic, PrimeField};
use clap::{Args, ValueEnum};

use crate::report::Provenance;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArithmeticArg {
    Exact,
    Modular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Master seed; per-trial seeds are derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random trials per dimension count (the maximum rank is kept).
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = ArithmeticArg::Exact)]
    pub arithmetic: ArithmeticArg,
    /// Prime modulus for `--arithmetic modular`.
    #[arg(long, global = true, default_value_t = DEFAULT_MODULUS)]
    pub modulus: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub arithmetic: Arithmetic,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<Self, CliError> {
        if args.trials == 0 {
            return Err(CliError::Input("--trials must be at least 1".into()));
        }
        let arithmetic = match args.arithmetic {
            ArithmeticArg::Exact => Arithmetic::Exact,
            ArithmeticArg::Modular => Arithmetic::Modular(PrimeField::new(args.modulus)?),
        };
        Ok(Self {
            seed: args.seed,
            trials: args.trials,
            arithmetic,
            output: args.output,
        })
    }

    pub fn trial_config(&self) -> TrialConfig {
        TrialConfig {
            seed: self.seed,
            trials: self.trials,
            arithmetic: self.arithmetic,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }

    pub fn provenance(&self, certified: bool) -> Provenance {
        Provenance {
            seed: self.seed,
            trials: self.trials,
            arithmetic_mode: self.arithmetic.mode(),
            certified,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.arithmetic, Arithmetic::Exact)
    }
}
