//! Exact Gromov–Witten / Gopakumar–Vafa machinery and high-precision
//! asymptotic analysis of enumerative invariants.
//!
//! * [`arith`]: exact rationals, Bernoulli numbers, polynomials, truncated
//!   series, Dirichlet vectors and the precision-parameterised [`arith::BigScalar`].
//! * [`invariants`]: transforms among GW, GV, abc and Dirichlet representations.
//! * [`geometries`]: generators for the resolved conifold, the local curves
//!   `X_p`, Hurwitz theory, and ingestion of external tables.
//! * [`asymptotics`]: Richardson extrapolation, growth fitters, diagonal and
//!   saddle analysis, large-order predictions.
//! * [`cli`]: the `gwasym` command-line front end.

pub mod arith;
pub mod asymptotics;
pub mod cli;
mod error;
pub mod geometries;
pub mod invariants;

pub use error::{Error, Result};
