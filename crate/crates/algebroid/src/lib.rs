//! Finite-dimensional regular multiplier Hopf algebroids over exact fields:
//! construction, axiom verification, integrals and modification.

pub mod exact_linear;

pub use exact_linear::{Extension, Field, LinearMap, QuotientSpace, Scalar};

/// Plain rationals.
pub type Rational = num_rational::BigRational;

pub mod algebra_core;
pub mod balanced_tensor;
pub mod bialgebroid;
pub mod error;
pub mod examples;
pub mod integration;
pub mod io;
pub mod modification;
pub mod report;
pub mod structure_theory;

pub use error::{Error, Result};
pub use report::Report;
