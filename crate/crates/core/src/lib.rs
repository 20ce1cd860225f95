//! Exact Tribonacci arithmetic and a verification harness for weighted,
//! binomial and double-binomial summation identities.
//!
//! * [`triboncore`]: `T_m` for every integer `m` (iterative and logarithmic
//!   paths), Tribonacci–Lucas power sums and decimation coefficients.
//! * [`linrec`]: generic shifted-term recurrences over the rationals, partial
//!   sums, generating functions and power series.
//! * [`identities`]: the identity catalog as paired left/right evaluators and
//!   the grid sweep that compares them.
//! * [`cli`]: the `trisum` command-line front end.

pub mod cli;
pub mod error;
pub mod identities;
pub mod linrec;
pub mod rational;
pub mod triboncore;

pub use error::{Error, Result, Status};
pub use rational::Rational;
