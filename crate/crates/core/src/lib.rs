//! Flatness of dual webs of homogeneous pre-foliations of the projective plane.
//!
//! The crate decides exactly whether the Legendre web of a pre-foliation
//! `l ⊠ H` is flat, and cross-checks the answer with a numeric curvature oracle.
//!
//! * [`algebra`]: cyclotomic scalars, polynomials, resultants and roots on P¹.
//! * [`foliation`]: homogeneous foliations, their Gauss map and singularities.
//! * [`prefoliation`]: lines, pre-foliations, Legendre webs, discriminants and the corpus.
//! * [`flatness`]: exact holomorphy criteria and the flat/not-flat decision.
//! * [`webnum`]: numeric web curvature.
//! * [`cli`]: form parser and report rendering for the command-line tool.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod flatness;
pub mod foliation;
pub mod prefoliation;
pub mod webnum;

pub use error::{Error, Result};
