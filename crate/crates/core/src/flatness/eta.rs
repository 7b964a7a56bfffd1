//! Polar part of the fundamental form of `F ⊠ W` along a smooth tangency curve.
//!
//! Coordinates are chosen so the curve is `y = 0`. The web `W` is given by an implicit
//! equation `F(x, y, p) = 0` with `F(x, 0, p) = a0(x) prod (p - phi_a(x))^(nu_a)`, and the
//! foliation by `dy - (phi_1(x) + y f(x, y)) dx`. The polar part is `theta / (6 y)`; the
//! curvature is holomorphic along `y = 0` exactly when two rational identities hold.

use crate::algebra::{HomPoly2, Num, P1Point, Poly3, RatFunc, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::prefoliation::PreFoliation;

use super::{fiber, homogeneous_part, OriginLine};

const X: usize = 0;
const Y: usize = 1;
const P: usize = 2;

/// Input of [`eta_pole_part`].
#[derive(Clone, Debug)]
pub struct SlopeData {
    /// Implicit equation of the web in the variables `(x, y, p)`.
    pub f: Poly3,
    /// Slopes `phi_a` with multiplicities; index 0 is the slope of the foliation.
    pub slopes: Vec<(RatFunc, usize)>,
    /// `f(x, 0)` from the 1-form of the foliation.
    pub f0: RatFunc,
    /// Number of leaves of the web.
    pub web_order: usize,
}

/// Output of [`eta_pole_part`].
#[derive(Clone, Debug)]
pub struct EtaPole {
    pub h: RatFunc,
    /// `psi_a` for every slope with multiplicity at least two; `None` otherwise.
    pub psi: Vec<Option<RatFunc>>,
    /// `dx` coefficient of `theta`.
    pub theta_dx: RatFunc,
    /// `dy` coefficient of `theta`.
    pub theta_dy: RatFunc,
    /// First residue identity: minus the `dx` coefficient.
    pub cond1: RatFunc,
    /// Second residue identity: derivative of the combination multiplying `dy`.
    pub cond2: RatFunc,
}

impl EtaPole {
    /// Whether the curvature is holomorphic along the curve.
    pub fn is_holomorphic(&self) -> bool {
        self.cond1.is_zero() && self.cond2.is_zero()
    }
}

fn rf_int(n: i64) -> RatFunc {
    RatFunc::constant(Scalar::int(n))
}

fn rf_pow(r: &RatFunc, e: u32) -> RatFunc {
    (0..e).fold(rf_int(1), |acc, _| acc.mul(r))
}

/// `F(x, y, p)` with `y` and `p` replaced by rational functions of `x`.
fn eval_rf(f: &Poly3, y: &RatFunc, p: &RatFunc) -> RatFunc {
    let x = RatFunc::var();
    let mut acc = RatFunc::constant(Scalar::zero());
    for (e, s) in f.terms() {
        let t = rf_pow(&x, e[X])
            .mul(&rf_pow(y, e[Y]))
            .mul(&rf_pow(p, e[P]))
            .scale(s);
        acc = acc.add(&t);
    }
    acc
}

/// Univariate polynomial in `x` from a polynomial free of `y` and `p`.
fn as_uni_x(f: &Poly3) -> Result<UniPoly> {
    let n = f.degree_in(X).unwrap_or(0) as usize;
    let mut c = vec![Scalar::zero(); n + 1];
    for (e, s) in f.terms() {
        if e[Y] != 0 || e[P] != 0 {
            return Err(Error::Precondition(
                "expected a polynomial in x alone".into(),
            ));
        }
        c[e[X] as usize] = s.clone();
    }
    Ok(UniPoly::new(c))
}

/// Polar part of the fundamental form along `y = 0` and its holomorphy conditions.
pub fn eta_pole_part(w: &SlopeData) -> Result<EtaPole> {
    let n = w.slopes.len();
    if n == 0 {
        return Err(Error::Precondition("no slopes".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if w.slopes[i].0 == w.slopes[j].0 {
                return Err(Error::Precondition(format!(
                    "slopes {i} and {j} coincide: {}",
                    w.slopes[i].0
                )));
            }
        }
    }
    let zero = RatFunc::constant(Scalar::zero());
    let f_on = w.f.coeff_in(Y, 0);
    let pdeg = f_on.degree_in(P).unwrap_or(0) as usize;
    let total: usize = w.slopes.iter().map(|s| s.1).sum();
    if total != pdeg {
        return Err(Error::Precondition(format!(
            "multiplicities sum to {total}, but F(x, 0, p) has degree {pdeg} in p"
        )));
    }
    for (phi, _) in &w.slopes {
        if !eval_rf(&w.f, &zero, phi).is_zero() {
            return Err(Error::Precondition(format!(
                "{phi} is not a slope of the web"
            )));
        }
    }
    let fy = w.f.deriv(Y);
    let fpy = fy.deriv(P);
    let nw = rf_int(w.web_order as i64);
    let phi = |a: usize| &w.slopes[a].0;
    let nu = |a: usize| w.slopes[a].1 as i64;

    // Sum over b != a of nu_b phi_b / (phi_a - phi_b).
    let cross = |a: usize| -> Result<RatFunc> {
        let mut acc = zero.clone();
        for b in (0..n).filter(|&b| b != a) {
            acc = acc.add(&phi(b).scale(&Scalar::int(nu(b))).div(&phi(a).sub(phi(b)))?);
        }
        Ok(acc)
    };
    // n_W - phi_a (d_p d_y F + extra) / d_y F at (x, 0, phi_a).
    let local = |a: usize, extra: &RatFunc| -> Result<RatFunc> {
        let dy = eval_rf(&fy, &zero, phi(a));
        let dpy = eval_rf(&fpy, &zero, phi(a));
        Ok(nw.sub(&phi(a).mul(&dpy.add(extra).div(&dy)?)))
    };

    let nu1 = nu(0);
    let mut h = cross(0)?.scale(&Scalar::int(-(2 * nu1 + 1)));
    if nu1 >= 2 {
        let extra = if nu1 == 2 {
            let lead = f_on.coeff_in(P, pdeg as u32);
            let mut q = RatFunc::poly(as_uni_x(&lead)?);
            for b in 1..n {
                q = q.mul(&rf_pow(&phi(0).sub(phi(b)), nu(b) as u32));
            }
            w.f0.mul(&q).scale(&Scalar::int(2))
        } else {
            zero.clone()
        };
        h = h.add(&local(0, &extra)?.scale(&Scalar::int(nu1 - 1)));
    }
    let h = h.scale(&Scalar::frac(1, nu1));

    let mut psi = Vec::with_capacity(n);
    for a in 0..n {
        if nu(a) < 2 {
            psi.push(None);
            continue;
        }
        let na = nu(a);
        let v = local(a, &zero)?
            .scale(&Scalar::int(na - 2))
            .sub(&cross(a)?.scale(&Scalar::int(2 * (na + 1))))
            .scale(&Scalar::frac(1, na));
        psi.push(Some(v));
    }

    let k1 = rf_int(nu1 + 1);
    let mut cond1 = k1.mul(phi(0)).mul(&h);
    let mut inner = k1.mul(&h);
    let mut theta_dy = k1.mul(&h.add(&rf_int(nu1 - 1)));
    for a in 1..n {
        let Some(ps) = &psi[a] else { continue };
        let term = ps.add(&phi(0).scale(&Scalar::int(3)).div(&phi(0).sub(phi(a)))?);
        let ka = rf_int(nu(a) - 1);
        cond1 = cond1.add(&ka.mul(phi(a)).mul(&term));
        inner = inner.add(&ka.mul(&term));
        theta_dy = theta_dy.add(&ka.mul(&term.add(&rf_int(nu(a) - 2))));
    }
    Ok(EtaPole {
        h,
        psi,
        theta_dx: cond1.neg(),
        theta_dy,
        cond2: inner.derivative(),
        cond1,
    })
}

/// Slope data of `Leg l ⊠ Leg H` along the line component, in coordinates where it is
/// `y = 0`: `x = q`, `y = p - p0`, slope `1/x` of the original chart.
///
/// Needs an exact finite critical value, an exact finite fiber and a non-vertical line.
pub fn leg_line_slope_data(pref: &PreFoliation) -> Result<SlopeData> {
    let h = homogeneous_part(pref)?;
    let line = OriginLine::of(pref)
        .ok_or_else(|| Error::Precondition("the line is at infinity".into()))?;
    if line.beta.is_zero() {
        return Err(Error::Precondition(
            "vertical line; apply a shear first".into(),
        ));
    }
    let dir = line.direction();
    let p0 = h.gauss_at(&dir)?;
    let p0s = match &p0 {
        P1Point::Finite(Num::Exact(s)) => s.clone(),
        _ => {
            return Err(Error::Precondition(format!(
                "critical value {p0} of the line direction is not exact and finite"
            )))
        }
    };
    let fib = fiber(h, &p0, Some(&dir))?;
    let i0 = fib
        .index_of(&dir)
        .ok_or_else(|| Error::Precondition("line direction missing from its fiber".into()))?;
    let mut slopes = Vec::new();
    let order = std::iter::once(i0).chain((0..fib.points.len()).filter(|&i| i != i0));
    for i in order {
        let fp = &fib.points[i];
        let r = match &fp.point {
            P1Point::Finite(Num::Exact(s)) => s.clone(),
            _ => {
                return Err(Error::Precondition(format!(
                    "fiber point {} is not exact and finite",
                    fp.point
                )))
            }
        };
        let phi = RatFunc::new(UniPoly::constant(&p0s - &r), UniPoly::var())?;
        slopes.push((phi, fp.nu));
    }
    // z = y + p0 - p x and F = A(1, z) + (p0 + y) B(1, z).
    let z = Poly3::var(Y)
        .add(&Poly3::constant(p0s.clone()))
        .sub(&Poly3::var(P).mul(&Poly3::var(X)));
    let at_z = |f: &HomPoly2| {
        f.coeffs()
            .iter()
            .enumerate()
            .fold(Poly3::zero(), |acc, (i, c)| {
                acc.add(&z.pow(i as u32).scale(c))
            })
    };
    let f = at_z(h.a()).add(&Poly3::var(Y).add(&Poly3::constant(p0s)).mul(&at_z(h.b())));
    Ok(SlopeData {
        f,
        slopes,
        f0: RatFunc::new(UniPoly::one(), UniPoly::var())?,
        web_order: h.d() - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flatness::{criterion_component_dell, pq_polynomials, Verdict};
    use crate::foliation::HomFoliation;
    use crate::prefoliation::corpus::h1;
    use crate::prefoliation::ProjLine;

    fn line_slope(r: i64) -> ProjLine {
        ProjLine::through_origin_slope(&Scalar::int(r))
    }

    #[test]
    fn trivial_web_has_no_pole() {
        // One foliation with constant slope against a 1-web `p = 0`.
        let w = SlopeData {
            f: Poly3::var(P),
            slopes: vec![(RatFunc::constant(Scalar::zero()), 1)],
            f0: RatFunc::constant(Scalar::zero()),
            web_order: 1,
        };
        let e = eta_pole_part(&w).unwrap();
        assert!(e.theta_dx.is_zero() && e.theta_dy.is_zero());
        assert!(e.is_holomorphic());
    }

    #[test]
    fn coincident_slopes_rejected() {
        let s = RatFunc::var();
        let w = SlopeData {
            f: Poly3::var(P).sub(&Poly3::var(X)).pow(2),
            slopes: vec![(s.clone(), 1), (s, 1)],
            f0: RatFunc::constant(Scalar::zero()),
            web_order: 2,
        };
        assert!(matches!(eta_pole_part(&w), Err(Error::Precondition(_))));
    }

    #[test]
    fn leg_specialization_matches_line_criterion() {
        for d in 3..=5 {
            for r in [2, 3, -2] {
                let pref = PreFoliation::homogeneous(line_slope(r), h1(d).unwrap()).unwrap();
                let e = eta_pole_part(&leg_line_slope_data(&pref).unwrap()).unwrap();
                let v = criterion_component_dell(&pref).unwrap().verdict;
                assert_eq!(e.is_holomorphic(), v == Verdict::Holomorphic, "d={d} r={r}");
            }
        }
    }

    #[test]
    fn psi_matches_q_over_bp() {
        // Fiber above 0: a double point at 1 and simple points at -1, 2 and the line at 3.
        let u = |r: i64| UniPoly::new(vec![Scalar::int(-r), Scalar::one()]);
        let prod = u(1).pow(2).mul(&u(-1)).mul(&u(2)).mul(&u(3));
        let a = HomPoly2::from_uni(&prod, 5);
        let b = HomPoly2::from_ints(&[1, 0, 0, 0, 0, 2]);
        let h = HomFoliation::new(a, b).unwrap();
        let pref = PreFoliation::homogeneous(line_slope(3), h.clone()).unwrap();
        let sd = leg_line_slope_data(&pref).unwrap();
        let e = eta_pole_part(&sd).unwrap();
        let one = P1Point::exact(Scalar::one());
        let (p, q) = pq_polynomials(&h, &one, 2, (Scalar::zero(), Scalar::int(6))).unwrap();
        let (av, bv) = (Scalar::one(), Scalar::one());
        let qbp = q
            .eval(&bv, &av)
            .checked_div(&(&h.b().eval(&bv, &av) * &p.eval(&bv, &av)))
            .unwrap();
        let k = sd.slopes.iter().position(|s| s.1 == 2).unwrap();
        let psi = e.psi[k].as_ref().unwrap();
        assert_eq!(
            *psi,
            RatFunc::constant(qbp.checked_div(&Scalar::int(2)).unwrap())
        );
    }
}
