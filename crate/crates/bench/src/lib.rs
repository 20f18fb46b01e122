//! Benchmark-only crate; see `benches/engine.rs`.

use cfladder_core::{AlgebraicNumber, BigInt};

/// The real cube root of `m`, the usual benchmark input.
pub fn cbrt(m: i64) -> AlgebraicNumber {
    AlgebraicNumber::nth_root(&BigInt::from(m), 3).expect("positive radicand")
}
