//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! An element is stored as its coordinate vector in the power basis
//! `1, zeta_n, ..., zeta_n^(phi(n)-1)`. Operands from different fields are
//! lifted to the compositum `Q(zeta_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dd::{Cdd, Dd};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense rational polynomial helpers, coefficients low to high.
pub(crate) mod rpoly {
    use super::Q;
    use num_traits::{One, Zero};

    pub fn trim(v: &mut Vec<Q>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = a.len().max(b.len());
        let mut out: Vec<Q> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Q::zero);
                let y = b.get(i).cloned().unwrap_or_else(Q::zero);
                x - y
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be trimmed and nonzero.
    pub fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let mut r: Vec<Q> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lc_inv = Q::one() / &b[db];
        let mut quo = vec![Q::zero(); r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = &r[r.len() - 1] * &lc_inv;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &c * bj;
            }
            quo[shift] = c;
            r.pop();
            trim(&mut r);
        }
        (quo, r)
    }

    /// Inverse of `a` modulo the irreducible `m`.
    pub fn inv_mod(a: &[Q], m: &[Q]) -> Vec<Q> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
        while r1.len() > 1 {
            let (qt, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&qt, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = Q::one() / &r1[0];
        let mut out: Vec<Q> = s1.into_iter().map(|x| x * &c).collect();
        trim(&mut out);
        let (_, rem) = divrem(&out, m);
        rem
    }
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out as usize
}

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Q>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Q>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial, coefficients low to high.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<Q>> {
    assert!(n >= 1);
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p: Vec<Q> = vec![Q::zero(); n as usize + 1];
    p[0] = -Q::one();
    p[n as usize] = Q::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let f = cyclotomic_poly(d);
            p = rpoly::divrem(&p, &f).0;
        }
    }
    let p = Arc::new(p);
    cyclo_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn reduce(mut v: Vec<Q>, n: u32) -> Vec<Q> {
    let phi = totient(n);
    if v.len() > phi {
        let m = cyclotomic_poly(n);
        for i in (phi..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = v[i].clone();
            for j in 0..phi {
                if !m[j].is_zero() {
                    v[i - phi + j] -= &c * &m[j];
                }
            }
            v[i] = Q::zero();
        }
        v.truncate(phi);
    }
    v.resize(phi, Q::zero());
    v
}

/// Element of the cyclotomic field `Q(zeta_n)`.
#[derive(Clone, Debug)]
pub struct Cyc {
    n: u32,
    c: Vec<Q>,
}

impl Cyc {
    pub fn zero() -> Cyc {
        Cyc {
            n: 1,
            c: vec![Q::zero()],
        }
    }

    pub fn one() -> Cyc {
        Cyc::rational(Q::one())
    }

    pub fn rational(r: Q) -> Cyc {
        Cyc { n: 1, c: vec![r] }
    }

    /// `zeta_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Cyc {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        if n <= 2 {
            return if n == 2 && k == 1 {
                Cyc::rational(-Q::one())
            } else {
                Cyc::one()
            };
        }
        let mut v = vec![Q::zero(); k + 1];
        v[k] = Q::one();
        Cyc::from_coeffs(n, v)
    }

    pub fn zeta(n: u32) -> Cyc {
        Cyc::zeta_pow(n, 1)
    }

    /// Builds `sum c_k zeta_n^k`, reducing modulo the cyclotomic polynomial.
    pub fn from_coeffs(n: u32, c: Vec<Q>) -> Cyc {
        let n = if n == 2 { 1 } else { n };
        let c = if n == 1 {
            // zeta_1 = 1.
            let mut s = Q::zero();
            for x in c {
                s += x;
            }
            vec![s]
        } else {
            reduce(c, n)
        };
        Cyc { n, c }.normalized()
    }

    fn normalized(mut self) -> Cyc {
        if self.n > 1 && self.c[1..].iter().all(|x| x.is_zero()) {
            self.c.truncate(1);
            self.n = 1;
        }
        self
    }

    /// Conductor of the field the element is stored in.
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.c[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        if self.n == 1 {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Coordinates in the power basis of `Q(zeta_m)`; `m` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Vec<Q> {
        assert!(
            m.is_multiple_of(self.n),
            "field Q(zeta_{}) not inside Q(zeta_{m})",
            self.n
        );
        let m = if m == 2 { 1 } else { m };
        if m == 1 {
            return self.c.clone();
        }
        let step = (m / self.n) as usize;
        let mut v = vec![Q::zero(); (self.c.len() - 1) * step + 1];
        for (k, x) in self.c.iter().enumerate() {
            v[k * step] = x.clone();
        }
        reduce(v, m)
    }

    fn common(&self, o: &Cyc) -> (u32, Vec<Q>, Vec<Q>) {
        let n = self.n.lcm(&o.n);
        (n, self.lift(n), o.lift(n))
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        if self.n == o.n {
            let c = self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect();
            return Cyc { n: self.n, c }.normalized();
        }
        let (n, a, b) = self.common(o);
        Cyc::from_coeffs(n, a.iter().zip(&b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, o: &Cyc) -> Cyc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        if self.n == 1 {
            return o.scale(&self.c[0]);
        }
        if o.n == 1 {
            return self.scale(&o.c[0]);
        }
        let (n, a, b) = self.common(o);
        Cyc::from_coeffs(n, rpoly::mul(&a, &b))
    }

    pub fn scale(&self, r: &Q) -> Cyc {
        if r.is_zero() {
            return Cyc::zero();
        }
        Cyc {
            n: self.n,
            c: self.c.iter().map(|x| x * r).collect(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Cyc> {
        if self.is_zero() {
            return None;
        }
        if self.n == 1 {
            return Some(Cyc::rational(Q::one() / &self.c[0]));
        }
        let m = cyclotomic_poly(self.n);
        let r = rpoly::inv_mod(&self.c, &m);
        Some(Cyc::from_coeffs(self.n, r))
    }

    pub fn pow(&self, mut e: u32) -> Cyc {
        let mut base = self.clone();
        let mut acc = Cyc::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Image under the embedding `zeta_n -> exp(2 pi i / n)`.
    pub fn embed(&self) -> Cdd {
        let mut acc = Cdd::ZERO;
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let z = Cdd::root_of_unity(self.n, k as i64);
            acc = acc + z.scale(Dd::from_rational(x));
        }
        acc
    }

    /// Exact equality across fields.
    pub fn equals(&self, o: &Cyc) -> bool {
        if self.n == o.n {
            return self.c == o.c;
        }
        let (_, a, b) = self.common(o);
        a == b
    }
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Cyc) -> bool {
        self.equals(o)
    }
}

/// Writes a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", fmt_rational(&self.c[0]));
        }
        let mut first = true;
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let neg = x.is_negative();
            let mag = x.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = match k {
                0 => String::new(),
                1 => format!("zeta({})", self.n),
                _ => format!("zeta({})^{k}", self.n),
            };
            if unit.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{}*{unit}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let p12 = cyclotomic_poly(12);
        assert_eq!(*p12, vec![q(1), q(0), q(-1), q(0), q(1)]);
        let p9 = cyclotomic_poly(9);
        assert_eq!(*p9, vec![q(1), q(0), q(0), q(1), q(0), q(0), q(1)]);
        assert_eq!(totient(40), 16);
    }

    #[test]
    fn zeta_powers_close_up() {
        let z = Cyc::zeta(8);
        assert_eq!(z.pow(8), Cyc::one());
        assert_eq!(z.pow(4), Cyc::rational(q(-1)));
        assert!(z.pow(4).as_rational().is_some());
    }

    #[test]
    fn inverse_and_mixed_fields() {
        let a = Cyc::one().add(&Cyc::zeta(5).scale(&q(2)));
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), Cyc::one());
        // zeta_3 lives in Q(zeta_12) as zeta_12^4.
        assert_eq!(Cyc::zeta(3), Cyc::zeta_pow(12, 4));
        let s = Cyc::zeta(3).add(&Cyc::zeta(4));
        assert_eq!(s.order(), 12);
    }

    #[test]
    fn sqrt5_inside_q_zeta5() {
        let z = Cyc::zeta(5);
        let s = Cyc::one().add(&z.add(&z.pow(4)).scale(&q(2)));
        assert_eq!(s.mul(&s), Cyc::rational(q(5)));
    }

    #[test]
    fn embedding_is_multiplicative() {
        let a = Cyc::zeta(7).add(&Cyc::rational(qf(1, 3)));
        let b = Cyc::zeta(7).pow(3).sub(&Cyc::one());
        let lhs = a.mul(&b).embed();
        let rhs = a.embed() * b.embed();
        assert!((lhs - rhs).abs() < 1e-28);
    }
}
