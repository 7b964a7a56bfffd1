//! Implicit webs `F(p, q, x) = 0` with `x = dq/dp`.

use crate::algebra::{Cdd, Poly3};

/// Variable index of `p`.
pub const P: usize = 0;
/// Variable index of `q`.
pub const Q: usize = 1;
/// Variable index of the slope `x`.
pub const X: usize = 2;

/// Web defined by a polynomial in `(p, q, x)`; leaves missing from the `x`-degree have slope infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct ImplicitWeb {
    f: Poly3,
    order: usize,
}

impl ImplicitWeb {
    /// Web of the given order; `F` must have `x`-degree at most `order`.
    pub fn new(f: Poly3, order: usize) -> ImplicitWeb {
        assert!(!f.is_zero(), "implicit web from the zero polynomial");
        assert!(f.degree_in(X).unwrap_or(0) as usize <= order);
        ImplicitWeb { f, order }
    }

    pub fn poly(&self) -> &Poly3 {
        &self.f
    }

    /// Number of leaves through a generic point.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients `c_k(p, q)` of `x^k`, `k = 0..=order`.
    pub fn slope_coeffs(&self) -> Vec<Poly3> {
        (0..=self.order as u32)
            .map(|k| self.f.coeff_in(X, k))
            .collect()
    }

    /// Multiplies `F` by a polynomial in `(p, q)`; the web is unchanged.
    pub fn rescaled(&self, g: &Poly3) -> ImplicitWeb {
        ImplicitWeb::new(self.f.mul(g), self.order)
    }

    /// Complex value of `F` at `(p, q, x)`.
    pub fn eval_c(&self, p: Cdd, q: Cdd, x: Cdd) -> Cdd {
        self.f.eval_c(&[p, q, x])
    }

    pub fn to_text(&self) -> String {
        self.f.fmt_vars(["p", "q", "x"])
    }
}
