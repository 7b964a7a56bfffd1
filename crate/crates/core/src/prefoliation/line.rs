//! Projective lines `a x + b y + c z = 0`.

use std::fmt;

use crate::algebra::unipoly::{join_terms, term_string};
use crate::algebra::{HomPoly2, Poly3, Scalar};
use crate::error::{Error, Result};

/// Line `a x + b y + c z = 0`, scaled so the first constant nonzero coefficient is one.
#[derive(Clone, Debug)]
pub struct ProjLine {
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

impl ProjLine {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<ProjLine> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::Degenerate("line with all coefficients zero".into()));
        }
        let pivot = [&a, &b, &c]
            .into_iter()
            .find(|s| !s.is_zero() && s.is_const())
            .cloned();
        Ok(match pivot {
            Some(p) => {
                let k = p.inv()?;
                ProjLine {
                    a: &a * &k,
                    b: &b * &k,
                    c: &c * &k,
                }
            }
            None => ProjLine { a, b, c },
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::new(Scalar::int(a), Scalar::int(b), Scalar::int(c)).expect("nonzero line")
    }

    /// The line at infinity `z = 0`.
    pub fn infinity() -> ProjLine {
        ProjLine::from_ints(0, 0, 1)
    }

    /// Line through the origin in direction `[r:1]`, i.e. `y - r x = 0`.
    pub fn through_origin_slope(r: &Scalar) -> ProjLine {
        ProjLine::new(-r, Scalar::one(), Scalar::zero()).expect("nonzero line")
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn coeffs(&self) -> [Scalar; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn through_origin(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_infinity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a x + b y`, the part through the origin.
    pub fn linear_form(&self) -> HomPoly2 {
        HomPoly2::linear(self.a.clone(), self.b.clone())
    }

    /// `a x + b y + c z` in variables `(x, y, z)`.
    pub fn as_poly3(&self) -> Poly3 {
        Poly3::var(0)
            .scale(&self.a)
            .add(&Poly3::var(1).scale(&self.b))
            .add(&Poly3::var(2).scale(&self.c))
    }

    /// Least common conductor of the coefficients.
    pub fn order(&self) -> u32 {
        use num_integer::Integer;
        [self.a.order(), self.b.order(), self.c.order()]
            .into_iter()
            .fold(1, |x, y| x.lcm(&y))
    }

    /// Substitutes the parameter `t := v`.
    pub fn eval_t(&self, v: &Scalar) -> Result<ProjLine> {
        ProjLine::new(self.a.eval_t(v), self.b.eval_t(v), self.c.eval_t(v))
    }

    pub fn is_const(&self) -> bool {
        self.a.is_const() && self.b.is_const() && self.c.is_const()
    }
}

impl PartialEq for ProjLine {
    fn eq(&self, o: &ProjLine) -> bool {
        let s = [&self.a, &self.b, &self.c];
        let t = [&o.a, &o.b, &o.c];
        (0..3).all(|i| (0..3).all(|j| (s[i] * t[j]) == (s[j] * t[i])))
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (s, v) in [(&self.a, "x"), (&self.b, "y"), (&self.c, "z")] {
            if !s.is_zero() {
                parts.push(term_string(s, v));
            }
        }
        write!(f, "{}", join_terms(&parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_unique() {
        let l1 = ProjLine::from_ints(2, 4, 0);
        let l2 = ProjLine::from_ints(1, 2, 0);
        assert_eq!(l1.a(), l2.a());
        assert_eq!(l1.b(), l2.b());
        assert_eq!(l1, l2);
        assert!(l1.through_origin());
        assert!(ProjLine::infinity().is_infinity());
    }

    #[test]
    fn parametric_line_normalizes_on_constant() {
        let l = ProjLine::new(-Scalar::t(), Scalar::int(3), Scalar::zero()).unwrap();
        assert!(l.b().is_one());
        assert_eq!(l.to_string(), "(-1/3)*t*x + y");
    }
}
