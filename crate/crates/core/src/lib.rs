//! Divisor theory of nonsingular 2x2 matrices over commutative principal
//! ideal domains.
//!
//! The crate computes Smith normal forms with transform certificates, left
//! greatest common divisors, left-divisibility tests, and adequate parts:
//! for nonsingular `A` and `B` it factors `B = S * T` so that every nonunit
//! left divisor of `S` shares a nontrivial left divisor with `A`, while any
//! nonunit left divisor `T'` of `T` lets `S * T'` split off a factor that is
//! left coprime to `A`.
//!
//! Two rings are supported: the integers and `F_p[x]`. An integer-only
//! brute-force [`oracle`] enumerates divisor lattices to cross-check the
//! closed-form criteria.

pub mod adequacy;
pub mod divisor;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod ring;

pub use error::{Error, Result};
pub use matrix::{snf, Mat2, SmithDecomposition};
pub use ring::{Domain, FpPoly, Pid};
