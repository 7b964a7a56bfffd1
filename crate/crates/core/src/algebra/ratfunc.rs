//! Rational functions in one variable.

use std::fmt;

use super::scalar::Scalar;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Quotient `num / den` of univariate polynomials, kept reduced when possible.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::Degenerate(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(RatFunc { num, den }.reduced())
    }

    pub fn poly(p: UniPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(s: Scalar) -> RatFunc {
        RatFunc::poly(UniPoly::constant(s))
    }

    pub fn var() -> RatFunc {
        RatFunc::poly(UniPoly::var())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc {
                num: UniPoly::zero(),
                den: UniPoly::one(),
            };
        }
        if let Ok(g) = self.num.gcd(&self.den) {
            if g.degree().unwrap_or(0) > 0 {
                if let (Ok(n), Ok(d)) = (self.num.exact_div(&g), self.den.exact_div(&g)) {
                    return RatFunc { num: n, den: d }.normalized();
                }
            }
        }
        self.normalized()
    }

    fn normalized(self) -> RatFunc {
        match self.den.lc().inv() {
            Ok(k) => RatFunc {
                num: self.num.scale(&k),
                den: self.den.scale(&k),
            },
            Err(_) => self,
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            }
            .reduced();
        }
        RatFunc {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .reduced()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
        .reduced()
    }

    pub fn scale(&self, s: &Scalar) -> RatFunc {
        RatFunc {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
        .reduced()
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::Degenerate(
                "rational function division by zero".into(),
            ));
        }
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn derivative(&self) -> RatFunc {
        RatFunc {
            num: self
                .num
                .derivative()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derivative())),
            den: self.den.mul(&self.den),
        }
        .reduced()
    }

    /// Value at `z`, or an error at a pole.
    pub fn eval(&self, z: &Scalar) -> Result<Scalar> {
        self.num.eval(z).checked_div(&self.den.eval(z))
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &RatFunc) -> Result<RatFunc> {
        let n = self.num.degree().unwrap_or(0);
        let m = self.den.degree().unwrap_or(0);
        let top = n.max(m);
        // Homogenize with the denominator of g to stay polynomial.
        let hom = |p: &UniPoly| -> UniPoly {
            let mut acc = UniPoly::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                let term = g
                    .num
                    .pow(k as u32)
                    .mul(&g.den.pow((top - k) as u32))
                    .scale(c);
                acc = acc.add(&term);
            }
            acc
        };
        RatFunc::new(hom(&self.num), hom(&self.den))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.lc().is_one() {
            write!(f, "{}", self.num.fmt_var("x"))
        } else {
            write!(f, "({})/({})", self.num.fmt_var("x"), self.den.fmt_var("x"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_reciprocal() {
        let x = RatFunc::var();
        let inv = RatFunc::constant(Scalar::one()).div(&x).unwrap();
        let d = inv.derivative();
        let expect = RatFunc::constant(Scalar::int(-1)).div(&x.mul(&x)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn sums_reduce() {
        let x = RatFunc::var();
        let one = RatFunc::constant(Scalar::one());
        let a = one.div(&x).unwrap();
        let s = a.add(&a.neg());
        assert!(s.is_zero());
    }
}
