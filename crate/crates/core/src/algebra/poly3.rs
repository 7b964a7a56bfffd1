//! Sparse polynomials in three variables.

use std::collections::BTreeMap;
use std::fmt;

use super::dd::Cdd;
use super::hompoly::HomPoly2;
use super::scalar::Scalar;
use super::unipoly::{join_terms, term_string};

/// Exponent vector.
pub type Mono = [u32; 3];

/// Sparse polynomial in three variables with [`Scalar`] coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly3 {
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly3 {
    pub fn zero() -> Poly3 {
        Poly3::default()
    }

    pub fn constant(s: Scalar) -> Poly3 {
        let mut p = Poly3::zero();
        p.add_term([0, 0, 0], s);
        p
    }

    pub fn one() -> Poly3 {
        Poly3::constant(Scalar::one())
    }

    /// The `i`-th variable.
    pub fn var(i: usize) -> Poly3 {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = Poly3::zero();
        p.add_term(e, Scalar::one());
        p
    }

    pub fn monomial(e: Mono, s: Scalar) -> Poly3 {
        let mut p = Poly3::zero();
        p.add_term(e, s);
        p
    }

    /// Embeds a binary form in the first two variables.
    pub fn from_hom(h: &HomPoly2) -> Poly3 {
        let d = h.degree() as u32;
        let mut p = Poly3::zero();
        for (i, s) in h.coeffs().iter().enumerate() {
            p.add_term([d - i as u32, i as u32, 0], s.clone());
        }
        p
    }

    pub fn add_term(&mut self, e: Mono, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Scalar::zero);
        *slot = &*slot + &s;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Mono) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    pub fn add(&self, o: &Poly3) -> Poly3 {
        let mut r = self.clone();
        for (e, s) in &o.terms {
            r.add_term(*e, s.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly3) -> Poly3 {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(e, s)| (*e, -s)).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Poly3 {
        let mut r = Poly3::zero();
        for (e, s) in &self.terms {
            r.add_term(*e, s * k);
        }
        r
    }

    pub fn mul(&self, o: &Poly3) -> Poly3 {
        let mut r = Poly3::zero();
        for (e1, s1) in &self.terms {
            for (e2, s2) in &o.terms {
                r.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], s1 * s2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly3 {
        let mut base = self.clone();
        let mut acc = Poly3::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative in variable `v`.
    pub fn deriv(&self, v: usize) -> Poly3 {
        let mut r = Poly3::zero();
        for (e, s) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut f = *e;
            f[v] -= 1;
            r.add_term(f, s * &Scalar::int(e[v] as i64));
        }
        r
    }

    /// Substitutes each variable by a polynomial.
    pub fn compose(&self, subs: &[Poly3; 3]) -> Poly3 {
        let mut cache: [Vec<Poly3>; 3] = Default::default();
        for v in 0..3 {
            cache[v].push(Poly3::one());
        }
        let mut r = Poly3::zero();
        for (e, s) in &self.terms {
            let mut m = Poly3::constant(s.clone());
            for v in 0..3 {
                while cache[v].len() <= e[v] as usize {
                    let next = cache[v].last().unwrap().mul(&subs[v]);
                    cache[v].push(next);
                }
                m = m.mul(&cache[v][e[v] as usize]);
            }
            r = r.add(&m);
        }
        r
    }

    pub fn eval(&self, pt: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, s) in &self.terms {
            let mut m = s.clone();
            for v in 0..3 {
                m = &m * &pt[v].pow(e[v]);
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Complex evaluation; coefficients must be constant.
    pub fn eval_c(&self, pt: &[Cdd; 3]) -> Cdd {
        let mut acc = Cdd::ZERO;
        for (e, s) in &self.terms {
            let c = s.embed().expect("constant coefficients");
            acc = acc + c * pt[0].powi(e[0]) * pt[1].powi(e[1]) * pt[2].powi(e[2]);
        }
        acc
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Poly3 {
        Poly3 {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[0] + e[1] + e[2] == k)
                .map(|(e, s)| (*e, s.clone()))
                .collect(),
        }
    }

    /// Reads a binary form in the first two variables; `None` if other terms occur.
    pub fn to_hom(&self, deg: usize) -> Option<HomPoly2> {
        let mut c = vec![Scalar::zero(); deg + 1];
        for (e, s) in &self.terms {
            if e[2] != 0 || (e[0] + e[1]) as usize != deg {
                return None;
            }
            c[e[1] as usize] = s.clone();
        }
        Some(HomPoly2::new(deg, c))
    }

    /// Coefficient of `var^k` as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: usize, k: u32) -> Poly3 {
        let mut r = Poly3::zero();
        for (e, s) in &self.terms {
            if e[var] == k {
                let mut f = *e;
                f[var] = 0;
                r.add_term(f, s.clone());
            }
        }
        r
    }

    /// Largest exponent `k` such that `var^k` divides every term.
    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).min().unwrap_or(0)
    }

    /// Divides by `var^k`, which must divide every term.
    pub fn shift_down(&self, var: usize, k: u32) -> Poly3 {
        Poly3 {
            terms: self
                .terms
                .iter()
                .map(|(e, s)| {
                    let mut f = *e;
                    f[var] -= k;
                    (f, s.clone())
                })
                .collect(),
        }
    }

    /// Substitutes the parameter `t := v` in every coefficient.
    pub fn eval_t(&self, v: &Scalar) -> Poly3 {
        let mut r = Poly3::zero();
        for (e, s) in &self.terms {
            r.add_term(*e, s.eval_t(v));
        }
        r
    }

    pub fn is_const_coeffs(&self) -> bool {
        self.terms.values().all(|s| s.is_const())
    }

    /// Writes the polynomial with the given variable names, highest terms first.
    pub fn fmt_vars(&self, names: [&str; 3]) -> String {
        let mut parts = Vec::new();
        for (e, s) in self.terms.iter().rev() {
            let mut mono = String::new();
            for v in 0..3 {
                if e[v] == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(names[v]);
                if e[v] > 1 {
                    mono.push_str(&format!("^{}", e[v]));
                }
            }
            parts.push(term_string(s, &mono));
        }
        join_terms(&parts)
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_vars(["x", "y", "z"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_differentiate() {
        let x = Poly3::var(0);
        let y = Poly3::var(1);
        let p = x.mul(&x).add(&y);
        let q = p.compose(&[y.clone(), x.clone(), Poly3::var(2)]);
        assert_eq!(q, y.mul(&y).add(&x));
        assert_eq!(p.deriv(0), x.scale(&Scalar::int(2)));
    }

    #[test]
    fn homogeneous_parts() {
        let x = Poly3::var(0);
        let p = x.add(&Poly3::one()).pow(3);
        assert_eq!(p.homogeneous_part(2), x.mul(&x).scale(&Scalar::int(3)));
        assert_eq!(p.total_degree(), Some(3));
    }
}
