//! Exact, certificate-producing analysis of twisted C*-algebras of finite
//! higher-rank graphs.
//!
//! The pipeline: a [`KGraph`] presentation is validated, its periodicity
//! lattice and cofinality are computed ([`structure`]), a categorical
//! 2-cocycle ([`cocycle`]) is pushed through a brute-force groupoid oracle
//! ([`groupoid`]) to extract the antisymmetrized isotropy bicharacter, and
//! [`decide`] combines the pieces into a simplicity verdict with a
//! machine-checkable certificate.
//!
//! All arithmetic is exact. Phases are exponents in `Q ⊕ Q·ξ1 ⊕ …` over a
//! pluggable integer [`Scalar`]; the aliases below fix it to `BigInt`.

pub mod cocycle;
pub mod decide;
pub mod groupoid;
pub mod io;
pub mod kgraph;
pub mod lattice;
pub mod phase;
pub mod scalar;
pub mod structure;

pub use kgraph::{
    builtin, product_with_tl, validate_kgraph, Degree, EventuallyPeriodicPath, KGraph, Path,
};
pub use scalar::{Exact, Rational, Scalar};

/// Phase exponent over arbitrary-precision integers.
pub type Phase = phase::PhaseExponent<Exact>;
/// Torus point over arbitrary-precision integers.
pub type Phases = phase::PhaseVector<Exact>;
/// Lattice over arbitrary-precision integers.
pub type Lattice = lattice::LatticeBasis<Exact>;
