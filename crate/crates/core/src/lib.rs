//! Checks of Boole-type inequalities on dichotomic data, on non-negative
//! functions of dichotomic variables, and on small quantum and classical
//! models that produce such data.

pub mod classical;
pub mod dataset;
pub mod error;
pub mod leggett_garg;
pub mod nonneg;
pub mod pipeline;
pub mod quantum;
pub mod report;
pub mod rng;
pub mod signs;

pub use error::{Error, Result};
pub use report::{Clause, InequalityReport, TOL};
