//! Exact continued-fraction expansions of real algebraic numbers and the
//! ladder of connections between the convergents of a pair `(xi, m/xi)`.
//!
//! Every partial quotient is computed by Lagrange's method: each complete
//! quotient is held as an integer polynomial plus a rational isolating
//! interval, so no step depends on floating-point precision.

pub mod algebraic;
pub mod cf;
pub mod error;
pub mod ladder;
pub mod poly;
pub mod stats;

pub use algebraic::{AlgebraicNumber, RationalInterval, RealRoot};
pub use cf::{expand, verify_identities, Check, Expansion, IdentityReport};
pub use error::{CfError, Result};
pub use ladder::{
    build_ladder, figure3_series, lemma22_residual, verify_ladder, Connection, ConnectionVerdict,
    CoverageEntry, CoverageStatus, Ladder, LadderReport, ResidualVerdict, Run,
};
pub use poly::IntPolynomial;
pub use stats::{kuzmin_expected, kuzmin_report, kuzmin_tail, Bucket, KuzminReport, HISTOGRAM_CAP};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
