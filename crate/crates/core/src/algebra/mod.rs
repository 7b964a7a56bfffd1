//! Exact coefficient fields, polynomials and root extraction on the projective line.

pub mod cyclo;
pub mod dd;
pub mod hompoly;
pub mod matrix;
pub mod num;
pub mod poly3;
pub mod ratfunc;
pub mod roots;
pub mod scalar;
pub mod unipoly;

pub use cyclo::{Cyc, Q};
pub use dd::{Cdd, Dd};
pub use hompoly::HomPoly2;
pub use num::{Num, P1Point};
pub use poly3::Poly3;
pub use ratfunc::RatFunc;
pub use roots::{roots_p1, roots_p1_in};
pub use scalar::Scalar;
pub use unipoly::UniPoly;

use crate::error::Result;

/// Greatest common divisor of two binary forms.
pub fn hompoly_gcd(p: &HomPoly2, q: &HomPoly2) -> Result<HomPoly2> {
    p.gcd(q)
}

/// Square-free decomposition of a univariate polynomial.
pub fn squarefree_decompose(u: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    u.squarefree()
}
