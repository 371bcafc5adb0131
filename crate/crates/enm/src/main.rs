use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use enm::config::{parse_vec3, Command, FMode, RateConfig, Spacing, Suite, TimeRange};
use enm::output::Format;
use enm::{run, with_thread_limit, CliError, RunConfig};

/// Phase-covariant qubit dynamics: channels, correlations, metrology and
/// process tomography.
#[derive(Parser, Debug)]
#[command(name = "enm", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Common {
    /// Amplitude rate `a`.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    a: f64,
    /// Asymmetry rate `x`.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x: f64,
    /// Dephasing: optimal, zero, constant:<v>, expr:<e> or an expression in t.
    #[arg(long, default_value = "optimal", allow_hyphen_values = true)]
    f: String,
    #[arg(long, default_value_t = 0.0)]
    t_min: f64,
    #[arg(long, default_value_t = 5.0)]
    t_max: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, value_enum, default_value_t = SpacingArg::Linear)]
    spacing: SpacingArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Bloch trajectory from numerical propagation.
    Trajectory {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
        r0: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        omega: f64,
    },
    /// Closed-form channel parameters and complete-positivity checks.
    Choi {
        #[command(flatten)]
        common: Common,
    },
    /// Correlations of the Choi state over time.
    Correlations {
        #[command(flatten)]
        common: Common,
    },
    /// l1 coherence, closed form against propagation.
    Coherence {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
        r0: String,
    },
    /// Quantum Fisher information for phase estimation.
    Qfi {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
        r0: String,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        omega: f64,
    },
    /// Process-matrix spectrum of the optical channel.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3.0)]
        s_max: f64,
    },
    /// Seeded randomized checks.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn build(cli: Cli) -> Result<RunConfig, CliError> {
    let (common, command) = match cli.command {
        Sub::Trajectory { common, r0, omega } => (
            common,
            Command::Trajectory {
                r0: parse_vec3(&r0)?,
                omega,
            },
        ),
        Sub::Choi { common } => (common, Command::Choi),
        Sub::Correlations { common } => (common, Command::Correlations),
        Sub::Coherence { common, r0 } => (common, Command::Coherence { r0: parse_vec3(&r0)? }),
        Sub::Qfi { common, r0, omega } => (
            common,
            Command::Qfi {
                r0: parse_vec3(&r0)?,
                omega,
            },
        ),
        Sub::Spectrum { common, s_max } => {
            let points = common.points;
            (common, Command::Spectrum { s_max, points })
        }
        Sub::Verify { common, suite, cases } => (
            common,
            Command::Verify {
                suite: suite.parse::<Suite>()?,
                cases,
            },
        ),
    };
    Ok(RunConfig {
        command,
        rates: RateConfig {
            a: common.a,
            x: common.x,
            f: common.f.parse::<FMode>()?,
        },
        time: TimeRange {
            t_min: common.t_min,
            t_max: common.t_max,
            points: common.points,
            spacing: match common.spacing {
                SpacingArg::Linear => Spacing::Linear,
                SpacingArg::Log => Spacing::Log,
            },
        },
        format: match common.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        seed: common.seed,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = build(cli).and_then(|config| {
        with_thread_limit(|| {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            let r = run(&config, &mut lock);
            let _ = lock.flush();
            r
        })?
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("enm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
