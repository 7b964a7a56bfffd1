//! Homogeneous polynomials in two variables `x`, `y`.

use std::fmt;

use super::dd::Cdd;
use super::scalar::Scalar;
use super::unipoly::{join_terms, term_string, UniPoly};
use crate::error::{Error, Result};

/// Homogeneous polynomial of declared degree; `c[i]` multiplies `x^(deg-i) y^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly2 {
    deg: usize,
    c: Vec<Scalar>,
}

impl HomPoly2 {
    pub fn new(deg: usize, c: Vec<Scalar>) -> HomPoly2 {
        assert_eq!(c.len(), deg + 1, "coefficient count must be degree + 1");
        HomPoly2 { deg, c }
    }

    pub fn zero(deg: usize) -> HomPoly2 {
        HomPoly2::new(deg, vec![Scalar::zero(); deg + 1])
    }

    pub fn constant(s: Scalar) -> HomPoly2 {
        HomPoly2::new(0, vec![s])
    }

    /// `s * x^(deg-i) y^i`.
    pub fn monomial(deg: usize, i: usize, s: Scalar) -> HomPoly2 {
        let mut p = HomPoly2::zero(deg);
        p.c[i] = s;
        p
    }

    pub fn x() -> HomPoly2 {
        HomPoly2::new(1, vec![Scalar::one(), Scalar::zero()])
    }

    pub fn y() -> HomPoly2 {
        HomPoly2::new(1, vec![Scalar::zero(), Scalar::one()])
    }

    /// `a x + b y`.
    pub fn linear(a: Scalar, b: Scalar) -> HomPoly2 {
        HomPoly2::new(1, vec![a, b])
    }

    pub fn from_ints(c: &[i64]) -> HomPoly2 {
        HomPoly2::new(c.len() - 1, c.iter().map(|&v| Scalar::int(v)).collect())
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|s| s.is_zero())
    }

    pub fn is_const_coeffs(&self) -> bool {
        self.c.iter().all(|s| s.is_const())
    }

    /// Least common conductor of the coefficients.
    pub fn order(&self) -> u32 {
        use num_integer::Integer;
        self.c.iter().fold(1u32, |a, s| a.lcm(&s.order()))
    }

    pub fn add(&self, o: &HomPoly2) -> HomPoly2 {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.deg, o.deg,
            "adding homogeneous polynomials of different degree"
        );
        HomPoly2::new(
            self.deg,
            self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, o: &HomPoly2) -> HomPoly2 {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> HomPoly2 {
        HomPoly2::new(self.deg, self.c.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Scalar) -> HomPoly2 {
        HomPoly2::new(self.deg, self.c.iter().map(|a| a * s).collect())
    }

    pub fn mul(&self, o: &HomPoly2) -> HomPoly2 {
        let mut out = vec![Scalar::zero(); self.deg + o.deg + 1];
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
        HomPoly2::new(self.deg + o.deg, out)
    }

    pub fn pow(&self, e: u32) -> HomPoly2 {
        (0..e).fold(HomPoly2::constant(Scalar::one()), |acc, _| acc.mul(self))
    }

    /// `U(z) = P(1, z)`.
    pub fn dehom(&self) -> UniPoly {
        UniPoly::new(self.c.clone())
    }

    /// Rehomogenizes `U` to degree `deg >= deg U`.
    pub fn from_uni(u: &UniPoly, deg: usize) -> HomPoly2 {
        let du = u.degree().unwrap_or(0);
        assert!(
            du <= deg || u.is_zero(),
            "degree too small for rehomogenization"
        );
        let mut c = vec![Scalar::zero(); deg + 1];
        for (i, s) in u.coeffs().iter().enumerate() {
            c[i] = s.clone();
        }
        HomPoly2::new(deg, c)
    }

    /// Multiplicity of `[x:y] = [0:1]` as a root, i.e. `deg - deg P(1,z)`.
    pub fn x_deficiency(&self) -> usize {
        match self.dehom().degree() {
            Some(k) => self.deg - k,
            None => self.deg,
        }
    }

    /// Exchanges `x` and `y`.
    pub fn swap_xy(&self) -> HomPoly2 {
        let mut c = self.c.clone();
        c.reverse();
        HomPoly2::new(self.deg, c)
    }

    pub fn dx(&self) -> HomPoly2 {
        if self.deg == 0 {
            return HomPoly2::zero(0);
        }
        HomPoly2::new(
            self.deg - 1,
            (0..self.deg)
                .map(|i| &self.c[i] * &Scalar::int((self.deg - i) as i64))
                .collect(),
        )
    }

    pub fn dy(&self) -> HomPoly2 {
        if self.deg == 0 {
            return HomPoly2::zero(0);
        }
        HomPoly2::new(
            self.deg - 1,
            (1..=self.deg)
                .map(|i| &self.c[i] * &Scalar::int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        let mut xp = vec![Scalar::one()];
        let mut yp = vec![Scalar::one()];
        for k in 1..=self.deg {
            xp.push(&xp[k - 1] * x);
            yp.push(&yp[k - 1] * y);
        }
        for (i, s) in self.c.iter().enumerate() {
            if !s.is_zero() {
                acc = &acc + &(&(s * &xp[self.deg - i]) * &yp[i]);
            }
        }
        acc
    }

    /// Complex evaluation; coefficients must be constant.
    pub fn eval_c(&self, x: Cdd, y: Cdd) -> Cdd {
        let mut acc = Cdd::ZERO;
        let mut xp = vec![Cdd::ONE];
        let mut yp = vec![Cdd::ONE];
        for k in 1..=self.deg {
            xp.push(xp[k - 1] * x);
            yp.push(yp[k - 1] * y);
        }
        for (i, s) in self.c.iter().enumerate() {
            if !s.is_zero() {
                let e = s.embed().expect("constant coefficients");
                acc = acc + e * xp[self.deg - i] * yp[i];
            }
        }
        acc
    }

    /// Complex images of the coefficients.
    pub fn embed(&self) -> Option<Vec<Cdd>> {
        self.c.iter().map(|c| c.embed()).collect()
    }

    /// `P(a x + b y, c x + d y)`.
    pub fn subst_linear(&self, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> HomPoly2 {
        let u = HomPoly2::linear(a.clone(), b.clone());
        let v = HomPoly2::linear(c.clone(), d.clone());
        let mut acc = HomPoly2::zero(self.deg);
        for (i, s) in self.c.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let term = u.pow((self.deg - i) as u32).mul(&v.pow(i as u32)).scale(s);
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes the parameter `t := v`.
    pub fn eval_t(&self, v: &Scalar) -> HomPoly2 {
        HomPoly2::new(self.deg, self.c.iter().map(|s| s.eval_t(v)).collect())
    }

    /// Greatest common divisor, monic in its highest power of `y`.
    pub fn gcd(&self, o: &HomPoly2) -> Result<HomPoly2> {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Err(Error::Degenerate("gcd of two zero polynomials".into())),
            (true, false) => return o.normalized(),
            (false, true) => return self.normalized(),
            _ => {}
        }
        let g = self.dehom().gcd(&o.dehom())?;
        let k = self.x_deficiency().min(o.x_deficiency());
        let dg = g.degree().unwrap_or(0);
        Ok(HomPoly2::from_uni(&g, dg).mul(&HomPoly2::x().pow(k as u32)))
    }

    /// Scales so the coefficient of the highest power of `y` is one.
    pub fn normalized(&self) -> Result<HomPoly2> {
        match self.c.iter().rposition(|s| !s.is_zero()) {
            Some(i) => Ok(self.scale(&self.c[i].inv()?)),
            None => Ok(self.clone()),
        }
    }

    /// Exact quotient `self / d`.
    pub fn exact_div(&self, d: &HomPoly2) -> Result<HomPoly2> {
        if d.is_zero() {
            return Err(Error::Degenerate("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            let deg = self.deg.saturating_sub(d.deg);
            return Ok(HomPoly2::zero(deg));
        }
        if d.deg > self.deg {
            return Err(Error::InexactDivision(format!("({self}) by ({d})")));
        }
        let deg = self.deg - d.deg;
        let try_orient = |p: &HomPoly2, q: &HomPoly2| -> Result<HomPoly2> {
            let qu = q.dehom();
            if !qu.lc().is_const() {
                return Err(Error::Unsupported("parametric leading coefficient".into()));
            }
            let (dp, dq) = (p.x_deficiency(), q.x_deficiency());
            if dq > dp {
                return Err(Error::InexactDivision(format!("({p}) by ({q})")));
            }
            let quo = p.dehom().exact_div(&qu)?;
            Ok(HomPoly2::from_uni(&quo, deg))
        };
        match try_orient(self, d) {
            Err(Error::Unsupported(_)) => {
                let r = try_orient(&self.swap_xy(), &d.swap_xy()).map_err(|e| match e {
                    Error::Unsupported(_) => Error::Unsupported(format!(
                        "exact division of ({self}) by ({d}) with parametric leading coefficients"
                    )),
                    e => e,
                })?;
                Ok(r.swap_xy())
            }
            r => r,
        }
    }

    /// Square-free decomposition as homogeneous factors, including powers of `x`.
    pub fn hom_sqfree(&self) -> Result<Vec<(HomPoly2, usize)>> {
        if self.is_zero() {
            return Err(Error::Degenerate("square-free decomposition of 0".into()));
        }
        let mut out: Vec<(HomPoly2, usize)> = Vec::new();
        for (f, k) in self.dehom().squarefree()? {
            let df = f.degree().unwrap_or(0);
            out.push((HomPoly2::from_uni(&f, df), k));
        }
        let def = self.x_deficiency();
        if def > 0 {
            if let Some(slot) = out.iter_mut().find(|(_, k)| *k == def) {
                slot.0 = slot.0.mul(&HomPoly2::x());
            } else {
                out.push((HomPoly2::x(), def));
                out.sort_by_key(|(_, k)| *k);
            }
        }
        Ok(out)
    }

    /// Writes the polynomial in `x` and `y`.
    pub fn fmt_xy(&self, xv: &str, yv: &str) -> String {
        let mut parts = Vec::new();
        for (i, s) in self.c.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let px = self.deg - i;
            let mut mono = String::new();
            for (v, e) in [(xv, px), (yv, i)] {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(v);
                if e > 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            parts.push(term_string(s, &mono));
        }
        join_terms(&parts)
    }
}

impl fmt::Display for HomPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_xy("x", "y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy_y_minus_x() -> HomPoly2 {
        // x*y*(y - x) = -x^2 y + x y^2
        HomPoly2::from_ints(&[0, -1, 1, 0])
    }

    #[test]
    fn gcd_is_monic_in_y() {
        let p = xy_y_minus_x();
        // y (y - x)^2 = x^2 y - 2 x y^2 + y^3
        let q = HomPoly2::from_ints(&[0, 1, -2, 1]);
        let g = p.gcd(&q).unwrap();
        assert_eq!(g, HomPoly2::from_ints(&[0, -1, 1]));
        assert_eq!(p.exact_div(&g).unwrap().mul(&g), p);
        assert_eq!(q.exact_div(&g).unwrap().mul(&g), q);
    }

    #[test]
    fn coprime_monomials() {
        let g = HomPoly2::from_ints(&[0, 0, 1])
            .gcd(&HomPoly2::from_ints(&[-1, 0, 0]))
            .unwrap();
        assert_eq!(g, HomPoly2::constant(Scalar::one()));
    }

    #[test]
    fn gcd_with_zero() {
        let p = HomPoly2::from_ints(&[2, 0, 4]);
        assert_eq!(
            p.gcd(&HomPoly2::zero(2)).unwrap(),
            HomPoly2::from_ints(&[1, 0, 2]).scale(&Scalar::frac(1, 2))
        );
        assert!(HomPoly2::zero(1).gcd(&HomPoly2::zero(1)).is_err());
    }

    #[test]
    fn partials_of_cube() {
        let p = HomPoly2::from_ints(&[1, 0, 0, -1]);
        assert_eq!(p.dx(), HomPoly2::from_ints(&[3, 0, 0]));
        assert_eq!(p.dy(), HomPoly2::from_ints(&[0, 0, -3]));
    }

    #[test]
    fn exact_division_with_parametric_slope() {
        // (x - t y)(x + y) divided by (x - t y).
        let t = Scalar::t();
        let l = HomPoly2::linear(Scalar::one(), -&t);
        let p = l.mul(&HomPoly2::from_ints(&[1, 1]));
        assert_eq!(p.exact_div(&l).unwrap(), HomPoly2::from_ints(&[1, 1]));
    }

    #[test]
    fn squarefree_keeps_x_factor() {
        let p = xy_y_minus_x().mul(&HomPoly2::x());
        let sf = p.hom_sqfree().unwrap();
        let total: usize = sf.iter().map(|(f, k)| f.degree() * k).sum();
        assert_eq!(total, 4);
        assert!(sf.iter().any(|(f, k)| *k == 2 && *f == HomPoly2::x()));
    }
}
