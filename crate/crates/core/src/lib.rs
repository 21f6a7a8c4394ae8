//! Exact truncated q-series arithmetic and a coefficient-level verification
//! harness for a family of double Lambert series identities.
//!
//! - [`series`]: the ring of integer power series modulo `q^N`.
//! - [`constructors`]: Lambert sums, q-Pochhammer products, bilateral sums
//!   and every named series.
//! - [`oracle`]: brute-force lattice expansions used as ground truth.
//! - [`harness`]: the identity registry, sign resolution and suite runner.
//! - [`report`]: JSON/CSV records shared by the CLI and the C bindings.

pub mod cli;
pub mod constructors;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod report;
pub mod series;

pub use constructors::{
    bilateral_sum, bilateral_window, entry29_rhs, lambert_sum, lambert_term, named_series, phi,
    pochhammer, BilateralTerm, LambertSpec, SeriesId, SignedMonomial,
};
pub use error::{Error, Result};
pub use harness::{
    check_identity, run_suite, sign_resolve, Harness, IdentityId, IdentityReport, SeriesSource,
    SignCertificate, Status, SuiteReport,
};
pub use series::{Comparison, MulAlgorithm, Parity, Sign, TruncatedSeries};
