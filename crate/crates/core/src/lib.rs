//! Exact Segal–Sugawara vectors at the critical level for centralizers of
//! nilpotent elements in `gl_N`.
//!
//! The nilpotent is given by a [`Pyramid`]. From it the crate builds the
//! centralizer `a = gl_N^e`, its critical-level vacuum module, the
//! column-determinant whose coefficients are central, and the derived
//! shift-of-argument and `U(a)`-center generators. Every identity is
//! checked in exact arithmetic; see [`verify`].
//!
//! All algebra is generic over a [`Scalar`]; the aliases below fix the
//! arbitrary-precision rationals used by the CLI and the test suites.

pub mod detcalc;
pub mod error;
pub mod io;
pub mod pbw;
pub mod pyramid;
pub mod sample;
pub mod scalar;
pub mod shift;
pub mod suga;
pub mod verify;

pub use error::{Error, Result};
pub use pbw::{Element, LieContext, LoopGen, Mode, Monomial, Schedule};
pub use pyramid::{GenId, LieCombo, Pyramid};
pub use scalar::Scalar;

/// Arbitrary-precision rational.
pub type Rat = num_rational::BigRational;

pub type RatElement = pbw::Element<Rat>;
pub type RatLieCombo = pyramid::LieCombo<Rat>;
pub type RatUXElem = detcalc::UXElem<Rat>;
pub type RatTauPoly = detcalc::TauPoly<Rat>;
pub type RatSugaTable = suga::SugaTable<Rat>;
pub type RatChi = shift::Chi<Rat>;
pub type RatZSeries = shift::ZSeries<Rat>;
pub type RatSymPoly = shift::SymPoly<Rat>;
