//! Command-line front end for `enm-core`: configuration, tabular CSV/JSON
//! output and seeded verification suites.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod expr;
pub mod output;
pub mod verify;

pub use commands::run;
pub use config::RunConfig;
pub use error::CliError;

/// Runs `f` on a rayon pool capped by `ENM_THREADS` when set.
pub fn with_thread_limit<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match std::env::var("ENM_THREADS") {
        Ok(v) => {
            let threads: usize = v
                .parse()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| CliError::Config(format!("ENM_THREADS must be a positive integer, got {v:?}")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}
