//! Exact computation of p(n,k), the number of partitions of `n` into exactly
//! `k` parts, and q(n,k), the number of partitions of `n` into `k` distinct
//! parts.
//!
//! Every value is produced by several independent routes that are checked
//! against each other:
//!
//! - [`oracle`]: dynamic programming and tiny-scale enumeration (ground truth)
//! - [`quasipoly`]: the quasi-polynomial p_(1..k)(n), by interpolation and by a
//!   Bernoulli-polynomial linear system
//! - [`waves`]: Sylvester waves and polynomial parts
//! - [`closedform`]: tuple-sum and binomial-convolution formulas built on the
//!   bounded tuple histogram f(n,k)
//! - [`density`]: certified residue densities of p(n,k) mod m
//! - [`cli`]: command line front end, JSON/CSV formats and the `verify` harness

pub mod cli;
pub mod closedform;
pub mod density;
mod error;
pub mod exactnum;
pub mod linalg;
pub mod oracle;
pub mod quasipoly;
pub mod waves;

pub use error::{Error, Result};
pub use exactnum::{Int, Rat};

use std::fmt;
use std::str::FromStr;

/// Selects between partitions into `k` parts and into `k` distinct parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Which {
    P,
    Q,
}

impl Which {
    /// Offset subtracted from `n` before evaluating p_(1..k): `k` for p and
    /// `k + C(k,2)` for q.
    pub fn shift(self, k: u64) -> u64 {
        match self {
            Which::P => k,
            Which::Q => k + k * (k.saturating_sub(1)) / 2,
        }
    }

    /// Smallest `n` with a nonzero value.
    pub fn min_n(self, k: u64) -> u64 {
        self.shift(k)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Which::P => "p",
            Which::Q => "q",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Which::P),
            "q" => Ok(Which::Q),
            other => Err(Error::Domain(format!("unknown partition kind `{other}`"))),
        }
    }
}
