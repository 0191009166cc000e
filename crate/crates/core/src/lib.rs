//! Exact computation of the reduced motivic Poincaré series P̄_g(t_1,…,t_r;q)
//! of a plane curve singularity from its embedded resolution graph, or from a
//! value semigroup for irreducible branches.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! ResolutionGraph --validate--> ResolutionData --assemble--> P̄_g
//! SemigroupSpec  --------------semigroup_series------------> P̄_g
//! ```
//!
//! plus a property suite ([`verify`]) for the structural identities the series
//! satisfies (symmetry, Alexander specialisation at q=1, degree bounds,
//! component forgetting) and a bridge ([`hfl`]) to the Poincaré polynomial of
//! Heegaard-Floer knot homology for irreducible curves.
//!
//! All arithmetic is exact: sparse Laurent polynomials over arbitrary-precision
//! integers, with rational-series expansion truncated by weighted degree where
//! arrow-free divisors force genuine power series.

pub mod corpus;
pub mod engine;
pub mod hfl;
pub mod poly;
pub mod resolution;
pub mod verify;

pub use engine::{SemigroupSeries, SemigroupSpec};
pub use poly::{LaurentPoly, Monomial, VarId, VarNames};
pub use resolution::{CurveInvariants, ResolutionData, ResolutionGraph};
