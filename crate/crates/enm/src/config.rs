//! Validated run configuration.

use std::str::FromStr;

use enm_core::linalg::{linear_grid, log_grid, Vec3};
use enm_core::{CovariantRates, Dephasing, Rate};

use crate::error::CliError;
use crate::expr::RateExpr;
use crate::output::Format;

/// How the dephasing rate `f(t)` is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum FMode {
    Optimal,
    Zero,
    Constant(f64),
    Expr(RateExpr),
}

impl FromStr for FMode {
    type Err = CliError;

    /// `optimal`, `zero`, `constant:<value>`, `expr:<expression>` or a bare
    /// expression in `t`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "optimal" {
            return Ok(FMode::Optimal);
        }
        if s == "zero" {
            return Ok(FMode::Zero);
        }
        if let Some(v) = s.strip_prefix("constant:") {
            return v
                .trim()
                .parse()
                .map(FMode::Constant)
                .map_err(|_| CliError::Config(format!("invalid constant rate {v:?}")));
        }
        let source = s.strip_prefix("expr:").unwrap_or(s);
        Ok(FMode::Expr(source.parse()?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateConfig {
    pub a: f64,
    pub x: f64,
    pub f: FMode,
}

impl RateConfig {
    pub fn rates(&self) -> CovariantRates {
        let f = match &self.f {
            FMode::Optimal => Dephasing::Optimal,
            FMode::Zero => Dephasing::Rate(Rate::Constant(0.0)),
            FMode::Constant(v) => Dephasing::Rate(Rate::Constant(*v)),
            FMode::Expr(e) => {
                let e = e.clone();
                Dephasing::Rate(Rate::function(move |t| e.eval(t)))
            }
        };
        CovariantRates::new(Rate::Constant(self.a), Rate::Constant(self.x), f)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !self.a.is_finite() || !self.x.is_finite() {
            return Err(CliError::Config("rates must be finite".into()));
        }
        if self.a < 0.0 {
            return Err(CliError::Config("--a must be non-negative".into()));
        }
        if self.f == FMode::Optimal && self.x.abs() > self.a {
            return Err(enm_core::Error::InfeasibleRates {
                t: 0.0,
                reason: "optimal dephasing needs |x| <= a",
            }
            .into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl FromStr for Spacing {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            _ => Err(CliError::Config(format!("unknown spacing {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeRange {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl TimeRange {
    pub fn grid(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => linear_grid(self.t_min, self.t_max, self.points),
            Spacing::Log => log_grid(self.t_min, self.t_max, self.points),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.t_min >= 0.0) || !self.t_max.is_finite() {
            return Err(CliError::Config(
                "--t-min must be non-negative and --t-max finite".into(),
            ));
        }
        if self.t_max < self.t_min {
            return Err(CliError::Config("--t-max must not be below --t-min".into()));
        }
        if self.points < 2 {
            return Err(CliError::Config("--points must be at least 2".into()));
        }
        if self.spacing == Spacing::Log && self.t_min <= 0.0 {
            return Err(CliError::Config("log spacing needs --t-min > 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    RoundTrip,
    Subadditivity,
    Monotonicity,
    Discord,
    Saturation,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::RoundTrip,
        Suite::Subadditivity,
        Suite::Monotonicity,
        Suite::Discord,
        Suite::Saturation,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::RoundTrip => "roundtrip",
            Suite::Subadditivity => "subadditivity",
            Suite::Monotonicity => "monotonicity",
            Suite::Discord => "discord",
            Suite::Saturation => "saturation",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Trajectory { r0: Vec3, omega: f64 },
    Choi,
    Correlations,
    Coherence { r0: Vec3 },
    Qfi { r0: Vec3, omega: f64 },
    Spectrum { s_max: f64, points: usize },
    Verify { suite: Suite, cases: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub rates: RateConfig,
    pub time: TimeRange,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        match &self.command {
            Command::Spectrum { s_max, points } => {
                if !(*s_max >= 0.0) || !s_max.is_finite() {
                    return Err(CliError::Config("--s-max must be finite and non-negative".into()));
                }
                if *points < 2 {
                    return Err(CliError::Config("--points must be at least 2".into()));
                }
                Ok(())
            }
            Command::Verify { cases, .. } => {
                if *cases == 0 {
                    return Err(CliError::Config("--cases must be positive".into()));
                }
                Ok(())
            }
            Command::Trajectory { r0, .. } | Command::Coherence { r0 } | Command::Qfi { r0, .. } => {
                if r0.norm() > 1.0 + 1e-9 {
                    return Err(CliError::Config("--r0 lies outside the Bloch ball".into()));
                }
                self.rates.validate()?;
                self.time.validate()
            }
            Command::Choi | Command::Correlations => {
                self.rates.validate()?;
                self.time.validate()
            }
        }
    }
}

/// `"x,y,z"` to a Bloch vector.
pub fn parse_vec3(s: &str) -> Result<Vec3, CliError> {
    let parts: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match parts.as_deref() {
        Ok([x, y, z]) => Ok(Vec3::new(*x, *y, *z)),
        _ => Err(CliError::Config(format!(
            "expected three comma-separated numbers, got {s:?}"
        ))),
    }
}
