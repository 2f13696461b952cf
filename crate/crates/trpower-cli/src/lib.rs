//! Command line front end for the `trpower` simulator.
//!
//! Three subcommands cover the full workflow:
//! - `simulate` writes empirical CCDF/CDF curve data per (measure, kind) as
//!   CSV, with analytic Gamma-family overlays where an exact law exists,
//! - `sweep` tabulates tail quantiles in dB against the antenna count,
//! - `verify` compares ensemble moments against the closed-form expectation
//!   and variance table and reports Kolmogorov-Smirnov distances.
//!
//! All CSV output uses LF line endings, `.` decimal points and ten
//! significant digits, so identical flags produce byte-identical files.
//! Exit codes: 0 success, 1 usage error, 2 verification failure under
//! `--strict`, 3 numeric failure.

use std::fmt;

pub mod args;
pub mod csvfmt;
pub mod exec;
pub mod simulate;
pub mod sweep;
pub mod verify;

/// Command level errors, carrying the process exit code.
#[derive(Debug)]
pub enum AppError {
    /// Invalid flags, invalid configuration, IO trouble: exit 1.
    Usage(String),
    /// A `--strict` verification run had failing checks: exit 2.
    Verification(String),
    /// An iterative numeric routine failed to converge: exit 3.
    Numeric(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Verification(_) => 2,
            AppError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(msg) | AppError::Verification(msg) | AppError::Numeric(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<trpower::Error> for AppError {
    fn from(err: trpower::Error) -> Self {
        match err {
            trpower::Error::Convergence { .. } => AppError::Numeric(err.to_string()),
            _ => AppError::Usage(err.to_string()),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(err: std::io::Error) -> Self {
        AppError::Usage(err.to_string())
    }
}
