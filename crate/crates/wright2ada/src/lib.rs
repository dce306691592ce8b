//! wright2ada translates Wright architectural descriptions into concurrent
//! Ada programs.
//!
//! The pipeline is: tokenize and parse the Wright text ([`syntax`]), build the
//! normalized model ([`model`]), check its static semantics ([`checks`]),
//! transform it into an Ada subprogram ([`transform`]), check the Ada model
//! ([`ada`]) and print source text ([`emit`]).

pub mod ada;
pub mod checks;
pub mod diag;
pub mod emit;
pub mod model;
pub mod syntax;
pub mod transform;
