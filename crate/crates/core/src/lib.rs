//! Exact computation of stringy invariants.
//!
//! Stringy Betti functions, stringy E-functions and stringy Euler numbers of
//! log-terminal varieties are assembled from resolution data: a list of
//! divisors with discrepancies plus the E-polynomials of the intersection
//! strata. The [`toric`] module produces such data for Q-Gorenstein toric
//! varieties directly from a fan, together with the lattice-sum formula and
//! the shed volume as independent routes to the same numbers. [`mori`]
//! classifies torus-equivariant birational moves and checks that the
//! stringy Euler number drops along divisorial contractions and flips.
//!
//! Polynomial and linear algebra is generic over [`Scalar`]; the rest of the
//! crate works with the concrete aliases below.

pub mod error;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod mori;
pub mod orbit;
pub mod ratfun;
pub mod scalar;
pub mod scan;
pub mod stringy;
pub mod toric;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational numbers; the scalar type used throughout.
pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;
pub type Poly = ratfun::Polynomial<Rational>;
pub type Laurent = ratfun::LaurentPoly<Rational>;
pub type RatFun = ratfun::RationalFunction<Rational>;

pub use invariants::{HodgePoly, StringyFunction};
pub use stringy::ResolutionDatum;
pub use toric::Fan;
