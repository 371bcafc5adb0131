//! Rate expressions in `t`: numbers, `+ - * / ^`, parentheses and
//! `exp`, `tanh`, `sinh`, `cosh`.

use std::str::FromStr;
use std::sync::Arc;

use meval::{ContextProvider, Expr, FuncEvalError};

use crate::error::CliError;

/// Only `t`, the constants `pi` and `e`, and the four documented functions.
struct TimeContext(f64);

impl ContextProvider for TimeContext {
    fn get_var(&self, name: &str) -> Option<f64> {
        match name {
            "t" => Some(self.0),
            "pi" => Some(std::f64::consts::PI),
            "e" => Some(std::f64::consts::E),
            _ => None,
        }
    }

    fn eval_func(&self, name: &str, args: &[f64]) -> Result<f64, FuncEvalError> {
        let f: fn(f64) -> f64 = match name {
            "exp" => f64::exp,
            "tanh" => f64::tanh,
            "sinh" => f64::sinh,
            "cosh" => f64::cosh,
            _ => return Err(FuncEvalError::UnknownFunction),
        };
        match args {
            [x] => Ok(f(*x)),
            _ => Err(FuncEvalError::NumberArgs(1)),
        }
    }
}

/// A parsed, thread-safe rate expression.
#[derive(Debug, Clone, PartialEq)]
pub struct RateExpr {
    source: String,
    expr: Arc<Expr>,
}

impl RateExpr {
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Value at `t`; evaluation failures give NaN.
    pub fn eval(&self, t: f64) -> f64 {
        self.expr.eval_with_context(TimeContext(t)).unwrap_or(f64::NAN)
    }
}

impl FromStr for RateExpr {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let expr: Expr = s
            .parse()
            .map_err(|e| CliError::Config(format!("cannot parse rate expression {s:?}: {e}")))?;
        // Unknown names only surface on evaluation.
        expr.eval_with_context(TimeContext(0.0))
            .map_err(|e| CliError::Config(format!("invalid rate expression {s:?}: {e}")))?;
        Ok(Self {
            source: s.to_owned(),
            expr: Arc::new(expr),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_grammar() {
        let e: RateExpr = "-tanh(t)".parse().unwrap();
        assert!((e.eval(1.0) + 1f64.tanh()).abs() < 1e-15);
        let e: RateExpr = "2*t^2 - (1 + exp(-t)) / cosh(t) + sinh(0.5)".parse().unwrap();
        let t = 0.7f64;
        let expected = 2.0 * t * t - (1.0 + (-t).exp()) / t.cosh() + 0.5f64.sinh();
        assert!((e.eval(t) - expected).abs() < 1e-14);
        assert_eq!(e.source(), "2*t^2 - (1 + exp(-t)) / cosh(t) + sinh(0.5)");
    }

    #[test]
    fn rejects_unknown_names() {
        assert!("sqrt(t)".parse::<RateExpr>().is_err());
        assert!("x + 1".parse::<RateExpr>().is_err());
        assert!("1 +".parse::<RateExpr>().is_err());
        assert!("exp(t, 2)".parse::<RateExpr>().is_err());
    }
}
