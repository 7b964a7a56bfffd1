//! Dense univariate polynomials over [`Scalar`].

use std::fmt;

use super::dd::Cdd;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Univariate polynomial, coefficients low to high, trimmed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UniPoly {
    c: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> UniPoly {
        UniPoly::new(vec![s])
    }

    /// The variable itself.
    pub fn var() -> UniPoly {
        UniPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `z - r`.
    pub fn linear_root(r: &Scalar) -> UniPoly {
        UniPoly::new(vec![-r, Scalar::one()])
    }

    pub fn new(mut c: Vec<Scalar>) -> UniPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.c.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// True when no coefficient involves the parameter.
    pub fn is_const_coeffs(&self) -> bool {
        self.c.iter().all(|s| s.is_const())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, s: &Scalar) -> UniPoly {
        UniPoly::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x * &Scalar::int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, z: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Evaluation at a complex point; coefficients must be constant.
    pub fn eval_c(&self, z: Cdd) -> Cdd {
        let mut acc = Cdd::ZERO;
        for c in self.c.iter().rev() {
            acc = acc * z + c.embed().expect("constant coefficients");
        }
        acc
    }

    /// Complex images of the coefficients.
    pub fn embed(&self) -> Option<Vec<Cdd>> {
        self.c.iter().map(|c| c.embed()).collect()
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Substitutes the parameter `t := v` in every coefficient.
    pub fn eval_t(&self, v: &Scalar) -> UniPoly {
        UniPoly::new(self.c.iter().map(|c| c.eval_t(v)).collect())
    }

    /// Euclidean division; the divisor's leading coefficient must be invertible.
    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Degenerate("polynomial division by zero".into()))?;
        let lc_inv = d.lc().inv()?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quo = vec![Scalar::zero(); r.len() - dd];
        while r.len() > dd {
            let shift = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &lc_inv;
            if !c.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[shift + j] = &r[shift + j] - &(&c * dj);
                }
            }
            quo[shift] = c;
            r.pop();
        }
        Ok((UniPoly::new(quo), UniPoly::new(r)))
    }

    /// Exact quotient; fails when a remainder is left.
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("({self}) by ({d})")));
        }
        Ok(q)
    }

    /// Rescales to leading coefficient one.
    pub fn monic(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        Ok(self.scale(&self.lc().inv()?))
    }

    fn require_const(&self) -> Result<()> {
        if self.is_const_coeffs() {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "gcd of polynomials with parametric coefficients".into(),
            ))
        }
    }

    /// Monic greatest common divisor; both zero is an error.
    pub fn gcd(&self, o: &UniPoly) -> Result<UniPoly> {
        self.require_const()?;
        o.require_const()?;
        if self.is_zero() && o.is_zero() {
            return Err(Error::Degenerate("gcd(0, 0)".into()));
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r.monic()?;
        }
        a.monic()
    }

    /// Square-free decomposition `U = c * prod f_k^k` with monic, pairwise coprime `f_k`.
    pub fn squarefree(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::Degenerate("square-free decomposition of 0".into()));
        }
        self.require_const()?;
        let mut out = Vec::new();
        if self.degree() == Some(0) {
            return Ok(out);
        }
        // Yun's algorithm.
        let f = self.monic()?;
        let fp = f.derivative();
        let a0 = f.gcd(&fp)?;
        let mut b = f.exact_div(&a0)?;
        let mut c = fp.exact_div(&a0)?;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        loop {
            if b.degree() == Some(0) {
                break;
            }
            let a = b.gcd(&d)?;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a)?;
            c = d.exact_div(&a)?;
            d = c.sub(&b.derivative());
            k += 1;
        }
        Ok(out)
    }

    /// Writes the polynomial in the named variable.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            parts.push(term_string(c, &mono));
        }
        join_terms(&parts)
    }
}

/// Formats `c * mono` with sign handling for joins.
pub(crate) fn term_string(c: &Scalar, mono: &str) -> String {
    let cs = c.to_string();
    if mono.is_empty() {
        return if c.is_compound() {
            format!("({cs})")
        } else {
            cs
        };
    }
    if c.is_one() {
        return mono.to_string();
    }
    if (-c).is_one() {
        return format!("-{mono}");
    }
    if c.is_compound() {
        format!("({cs})*{mono}")
    } else {
        format!("{cs}*{mono}")
    }
}

/// Joins signed terms with ` + ` / ` - `.
pub(crate) fn join_terms(parts: &[String]) -> String {
    let mut s = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            s.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(p);
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    #[test]
    fn squarefree_of_z2_times_z_minus_1() {
        let u = p(&[0, 0, -1, 1]);
        let sf = u.squarefree().unwrap();
        assert_eq!(sf, vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 2)]);
    }

    #[test]
    fn squarefree_of_cube() {
        let u = p(&[1, 0, 1]).pow(3);
        assert_eq!(u.squarefree().unwrap(), vec![(p(&[1, 0, 1]), 3)]);
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b).unwrap(), p(&[1, 1]));
        assert!(a.exact_div(&p(&[2, 1])).is_err());
    }

    #[test]
    fn display_uses_signs() {
        assert_eq!(p(&[1, 0, -2, 1]).to_string(), "z^3 - 2*z^2 + 1");
    }
}
