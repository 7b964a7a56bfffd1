//! Field elements, optionally polynomial in one parameter `t`.
//!
//! A [`Scalar`] is an element of `K[t]` with `K = Q(zeta_n)`. Constants form the
//! coefficient field proper; the parameter is used for symbolic families and as an
//! auxiliary variable in resultants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::cyclo::{q, Cyc, Q};
use super::dd::Cdd;
use crate::error::{Error, Result};

/// Polynomial in `t` over a cyclotomic field, coefficients low to high.
#[derive(Clone, Debug, Default)]
pub struct Scalar {
    c: Vec<Cyc>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { c: Vec::new() }
    }

    pub fn one() -> Scalar {
        Scalar::from_cyc(Cyc::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::rational(q(n))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::rational(super::cyclo::qf(n, d))
    }

    pub fn rational(r: Q) -> Scalar {
        Scalar::from_cyc(Cyc::rational(r))
    }

    pub fn from_cyc(c: Cyc) -> Scalar {
        Scalar::from_t_coeffs(vec![c])
    }

    /// `zeta_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Scalar {
        Scalar::from_cyc(Cyc::zeta_pow(n, k))
    }

    /// The imaginary unit, stored as `zeta_4`.
    pub fn i() -> Scalar {
        Scalar::zeta_pow(4, 1)
    }

    /// The parameter `t`.
    pub fn t() -> Scalar {
        Scalar::from_t_coeffs(vec![Cyc::zero(), Cyc::one()])
    }

    pub fn from_t_coeffs(mut c: Vec<Cyc>) -> Scalar {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Scalar { c }
    }

    pub fn t_coeffs(&self) -> &[Cyc] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// True when the value does not involve `t`.
    pub fn is_const(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree in `t`; `None` for zero.
    pub fn t_degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn as_cyc(&self) -> Option<Cyc> {
        match self.c.len() {
            0 => Some(Cyc::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.as_cyc().and_then(|c| c.as_rational().cloned())
    }

    /// Least common conductor of all coefficients.
    pub fn order(&self) -> u32 {
        use num_integer::Integer;
        self.c.iter().fold(1u32, |acc, c| acc.lcm(&c.order()))
    }

    pub fn scale_cyc(&self, k: &Cyc) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar::from_t_coeffs(self.c.iter().map(|x| x.mul(k)).collect())
    }

    pub fn scale_q(&self, r: &Q) -> Scalar {
        Scalar::from_t_coeffs(self.c.iter().map(|x| x.scale(r)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero constant.
    pub fn inv(&self) -> Result<Scalar> {
        match self.as_cyc() {
            Some(c) => c
                .inv()
                .map(Scalar::from_cyc)
                .ok_or_else(|| Error::Degenerate("division by zero".into())),
            None => Err(Error::InexactDivision(format!(
                "{self} is not invertible in K[t]"
            ))),
        }
    }

    /// Exact quotient in `K[t]`.
    pub fn checked_div(&self, d: &Scalar) -> Result<Scalar> {
        if d.is_zero() {
            return Err(Error::Degenerate("division by zero".into()));
        }
        if d.is_const() {
            let inv = d.c[0].inv().expect("nonzero");
            return Ok(self.scale_cyc(&inv));
        }
        let mut r = self.c.clone();
        let db = d.c.len() - 1;
        let lc_inv = d.c[db].inv().expect("nonzero");
        if r.len() < d.c.len() {
            if r.is_empty() {
                return Ok(Scalar::zero());
            }
            return Err(Error::InexactDivision(format!("{self} by {d}")));
        }
        let mut quo = vec![Cyc::zero(); r.len() - db];
        while r.len() >= d.c.len() {
            let shift = r.len() - d.c.len();
            let c = r[r.len() - 1].mul(&lc_inv);
            for (j, dj) in d.c.iter().enumerate() {
                r[shift + j] = r[shift + j].sub(&c.mul(dj));
            }
            quo[shift] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        if !r.is_empty() {
            return Err(Error::InexactDivision(format!("{self} by {d}")));
        }
        Ok(Scalar::from_t_coeffs(quo))
    }

    /// Substitutes `t := v`.
    pub fn eval_t(&self, v: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * v) + &Scalar::from_cyc(c.clone());
        }
        acc
    }

    /// Complex image of a constant; `None` when `t` occurs.
    pub fn embed(&self) -> Option<Cdd> {
        match self.c.len() {
            0 => Some(Cdd::ZERO),
            1 => Some(self.c[0].embed()),
            _ => None,
        }
    }

    /// Complex image with `t` replaced by a complex number.
    pub fn embed_at(&self, t: Cdd) -> Cdd {
        let mut acc = Cdd::ZERO;
        for c in self.c.iter().rev() {
            acc = acc * t + c.embed();
        }
        acc
    }

    /// Derivative with respect to `t`.
    pub fn dt(&self) -> Scalar {
        Scalar::from_t_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&q(k as i64)))
                .collect(),
        )
    }

    /// True when the printed form needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        let terms: usize = self
            .c
            .iter()
            .map(|c| c.coeffs().iter().filter(|x| !x.is_zero()).count())
            .sum();
        terms > 1
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        self.c.len() == o.c.len() && self.c.iter().zip(&o.c).all(|(a, b)| a == b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<Cyc> for Scalar {
    fn from(c: Cyc) -> Scalar {
        Scalar::from_cyc(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let n = self.c.len().max(o.c.len());
        let zero = Cyc::zero();
        Scalar::from_t_coeffs(
            (0..n)
                .map(|i| {
                    self.c
                        .get(i)
                        .unwrap_or(&zero)
                        .add(o.c.get(i).unwrap_or(&zero))
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let mut out = vec![Cyc::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Scalar::from_t_coeffs(out)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Zero for Scalar {
    fn zero() -> Scalar {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Scalar {
        Scalar::one()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        if self.c.len() == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let tp = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if tp.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{tp}")?;
            } else {
                write!(f, "({c})*{tp}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parametric_division() {
        let t = Scalar::t();
        let a = &t * &t - Scalar::one();
        let b = &t - &Scalar::one();
        assert_eq!(a.checked_div(&b).unwrap(), &t + &Scalar::one());
        assert!(b.checked_div(&a).is_err());
    }

    #[test]
    fn evaluation_at_parameter() {
        let t = Scalar::t();
        let p = &(&t * &t) + &Scalar::int(3);
        assert_eq!(p.eval_t(&Scalar::int(2)), Scalar::int(7));
        assert_eq!(p.dt(), Scalar::int(2) * t);
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::int(-1));
    }
}
