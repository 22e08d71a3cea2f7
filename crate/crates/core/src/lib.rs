//! Exact jet-space stratification for normal crossing resolution data.
//!
//! The crate computes virtual Poincaré polynomials of k-jet strata from the
//! exceptional divisor of a resolution, recovers the residual set by exact
//! subtraction, and runs two scans that force equality of jacobian
//! multiplicity vectors. An arc-level [`oracle`] checks the same exponents on
//! explicit polynomial charts.

pub mod beta;
pub mod bound;
pub mod cli;
pub mod compare;
pub mod config;
pub mod oracle;
pub mod parallel;
pub mod poly;
pub mod strata;

pub use beta::{beta_eval, catalog_beta, Atom, SetExpr};
pub use compare::{
    contact_minimum, lipschitz_verdict, pqq_decomposition, split_a, thm1_verdict, ComparisonReport,
    Mode, Verdict,
};
pub use config::{
    builtin_config, load_config, validate_config, DivisorConfiguration, MultiIndex,
    MultiplicityVector,
};
pub use parallel::Schedule;
pub use poly::{Degree, Poly};
pub use strata::{admissible_multiindices, stratify, stratum_beta, stratum_dim, JetStratification};
