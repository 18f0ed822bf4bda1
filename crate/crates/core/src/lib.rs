//! Exact motivic Igusa zeta functions.
//!
//! The crate computes motivic zeta functions of polynomials from embedded
//! resolution data, specializes them to topological and p-adic zeta functions
//! and to Hodge spectra, checks the functional equation of homogeneous
//! polynomials, and cross-validates against a brute-force count of truncated
//! arcs over small finite fields.
//!
//! Arithmetic types are generic over their coefficient ring (see [`scalar`]);
//! the aliases below fix the concrete rings used throughout the engine.

pub mod arc_oracle;
pub mod engine;
pub mod kgroup;
pub mod mpoly;
pub mod poly;
pub mod scalar;
pub mod spectrum;
pub mod strata;
pub mod zeta;

mod bigint_serde;

use num_bigint::BigInt;
use num_rational::BigRational;

/// A realized class: integer Laurent polynomial in the Hodge variables.
pub type EPoly = kgroup::HodgePoly<BigInt>;

/// Polynomial in `S = L^{-s}` with class coefficients.
pub type SPoly = poly::Poly<EPoly>;

/// Univariate polynomial over the rationals.
pub type QPoly = poly::Poly<BigRational>;

/// Multivariate input polynomial over the rationals.
pub type QMPoly = mpoly::MPoly<BigRational>;

pub use engine::{PadicZeta, TopoZeta};
pub use spectrum::SpectrumPoly;
pub use kgroup::{Character, HodgePoly};
pub use strata::{Component, RegionSpec, ResolutionData, Stratum};
pub use zeta::{Gate, ZetaFn};
