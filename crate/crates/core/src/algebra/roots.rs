//! Roots on the projective line: exact where the field allows, numeric otherwise.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::cyclo::{Cyc, Q};
use super::dd::{precision_eps, Cdd, Dd};
use super::hompoly::HomPoly2;
use super::num::{Num, P1Point};
use super::scalar::Scalar;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

const ABERTH_MAX_ITER: usize = 600;
const POLISH_ITER: usize = 12;

/// Simultaneous Aberth iteration in double precision; `c` low to high, nonzero leading term.
fn aberth_f64(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lc).collect();
    // Fujiwara-type bound for the initial circle.
    let mut radius: f64 = 0.0;
    for (k, a) in monic.iter().take(n).enumerate() {
        radius = radius.max(a.norm().powf(1.0 / (n - k) as f64));
    }
    let radius = (2.0 * radius).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * (0.6 + 0.4 * ((k * 7 % 5) as f64) / 5.0), ang)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for a in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..ABERTH_MAX_ITER {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::zero();
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += 1.0 / diff;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn horner_cdd(c: &[Cdd], z: Cdd) -> (Cdd, Cdd) {
    let mut p = Cdd::ZERO;
    let mut dp = Cdd::ZERO;
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *a;
    }
    (p, dp)
}

fn scale_at(c: &[Cdd], z: Cdd) -> f64 {
    let r = z.abs();
    let mut s = 0.0;
    let mut rp = 1.0;
    for a in c {
        s += a.abs() * rp;
        rp *= r;
    }
    s.max(f64::MIN_POSITIVE)
}

/// All roots of a square-free complex polynomial (`c` low to high), polished in double-double.
pub fn simple_roots(c: &[Cdd]) -> Result<Vec<Cdd>> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    if c[0].is_zero() {
        let mut rest = simple_roots(&c[1..])?;
        rest.insert(0, Cdd::ZERO);
        return Ok(rest);
    }
    if c.len() == 2 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let c64: Vec<Complex64> = c.iter().map(|x| x.to_c64()).collect();
    let approx = aberth_f64(&c64);
    let tol = precision_eps().max(1e-30);
    let mut out = Vec::with_capacity(approx.len());
    let mut residuals = Vec::new();
    let mut failed = false;
    for z0 in approx {
        let mut z = Cdd::from_c64(z0);
        for _ in 0..POLISH_ITER {
            let (p, dp) = horner_cdd(&c, z);
            if dp.is_zero() {
                break;
            }
            let step = p / dp;
            z = z - step;
            if step.abs() <= 1e-32 * (1.0 + z.abs()) {
                break;
            }
        }
        let (p, _) = horner_cdd(&c, z);
        let rel = p.abs() / scale_at(&c, z);
        residuals.push(rel);
        if !(rel <= tol) {
            failed = true;
        }
        out.push(z);
    }
    // Distinct roots must stay distinct after polishing.
    for i in 0..out.len() {
        for j in 0..i {
            if (out[i] - out[j]).abs() <= 1e-24 * (1.0 + out[i].abs()) {
                failed = true;
            }
        }
    }
    if failed {
        return Err(Error::Numeric {
            what: "polynomial root finder did not converge".into(),
            residuals,
        });
    }
    Ok(out)
}

/// Rational approximation by continued fractions, or `None` if not close to a small fraction.
pub fn recognize_rational(x: Dd) -> Option<Q> {
    let limit = 100_000_000i64;
    let tol = 1e-24 * x.abs().to_f64().max(1.0);
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut r = x;
    for _ in 0..60 {
        let a = r.floor();
        let ai = BigInt::from(a.hi as i128) + BigInt::from(a.lo as i128);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(limit) {
            return None;
        }
        let cand = Q::new(h2.clone(), k2.clone());
        let err = (x - Dd::from_rational(&cand)).abs().to_f64();
        if err <= tol {
            return Some(cand);
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = r - a;
        if frac.is_zero() || frac.abs().to_f64() < 1e-30 {
            return None;
        }
        r = Dd::ONE / frac;
        if !r.hi.is_finite() || r.hi.abs() > 1e15 {
            return None;
        }
    }
    None
}

/// Candidate exact values near `z` in cyclotomic fields up to order 64.
fn candidates(z: Cdd, extra: u32) -> Vec<Scalar> {
    let mut out = Vec::new();
    let tiny = 1e-22 * (1.0 + z.abs());
    if z.im.to_f64().abs() <= tiny {
        if let Some(r) = recognize_rational(z.re) {
            out.push(Scalar::rational(r));
        }
    }
    // rho * zeta_M^k.
    let r = z.abs();
    if r > 0.0 {
        let turn = z.im.to_f64().atan2(z.re.to_f64()) / (2.0 * std::f64::consts::PI);
        let turn = turn.rem_euclid(1.0);
        for m in 3u32..=64 {
            let k = (turn * m as f64).round();
            if (turn * m as f64 - k).abs() > 1e-10 {
                continue;
            }
            let k = k as i64 % m as i64;
            let rho = z * Cdd::root_of_unity(m, -k);
            if rho.im.to_f64().abs() > tiny {
                continue;
            }
            if let Some(q) = recognize_rational(rho.re) {
                out.push(Scalar::from_cyc(Cyc::zeta_pow(m, k).scale(&q)));
                break;
            }
        }
    }
    // u + v zeta_M with rational u, v.
    let mut orders: Vec<u32> = vec![3, 4, 5, 6, 8, 10, 12];
    if (2..=64).contains(&extra) && !orders.contains(&extra) {
        orders.push(extra);
    }
    for m in orders {
        let w = Cdd::root_of_unity(m, 1);
        if w.im.is_zero() {
            continue;
        }
        let v = z.im / w.im;
        let u = z.re - v * w.re;
        if let (Some(uq), Some(vq)) = (recognize_rational(u), recognize_rational(v)) {
            if vq.is_zero() {
                continue;
            }
            let c = Cyc::rational(uq).add(&Cyc::zeta(m).scale(&vq));
            out.push(Scalar::from_cyc(c));
        }
    }
    out
}

/// Exact root of `f` close to `z`, if one of the candidates verifies.
pub fn recognize_root(f: &UniPoly, z: Cdd, extra: u32) -> Option<Scalar> {
    for c in candidates(z, extra) {
        let e = c.embed().unwrap();
        if (e - z).abs() > 1e-18 * (1.0 + z.abs()) {
            continue;
        }
        if f.eval(&c).is_zero() {
            return Some(c);
        }
    }
    None
}

/// Roots of a nonzero univariate polynomial with constant coefficients, with multiplicities.
pub fn roots_uni(u: &UniPoly, extra: u32) -> Result<Vec<(Num, usize)>> {
    if u.is_zero() {
        return Err(Error::Degenerate("roots of the zero polynomial".into()));
    }
    if !u.is_const_coeffs() {
        return Err(Error::Unsupported(
            "roots of a parametric polynomial".into(),
        ));
    }
    let mut out = Vec::new();
    for (f, k) in u.squarefree()? {
        let mut f = f;
        while f.degree().unwrap_or(0) >= 1 {
            if f.degree() == Some(1) {
                let r = (-&f.coeff(0)).checked_div(&f.coeff(1))?;
                out.push((Num::Exact(r), k));
                break;
            }
            let coeffs = f.embed().expect("constant coefficients");
            let zs = simple_roots(&coeffs)?;
            let mut found = None;
            for z in &zs {
                if let Some(r) = recognize_root(&f, *z, extra) {
                    found = Some(r);
                    break;
                }
            }
            match found {
                Some(r) => {
                    f = f.exact_div(&UniPoly::linear_root(&r))?;
                    out.push((Num::Exact(r), k));
                }
                None => {
                    for z in zs {
                        out.push((Num::Approx(z), k));
                    }
                    break;
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp_embedded(&b.0));
    Ok(out)
}

/// Roots of a binary form on the projective line, in the order finite-by-value then `[1:0]`.
pub fn roots_p1(p: &HomPoly2) -> Result<Vec<(P1Point, usize)>> {
    roots_p1_in(p, 0)
}

/// As [`roots_p1`], also trying exact candidates in `Q(zeta_extra)`.
pub fn roots_p1_in(p: &HomPoly2, extra: u32) -> Result<Vec<(P1Point, usize)>> {
    if p.is_zero() {
        return Err(Error::Degenerate("roots of the zero form".into()));
    }
    let extra = if extra == 0 { p.order() } else { extra };
    let mut out: Vec<(P1Point, usize)> = Vec::new();
    let u = p.dehom();
    if u.degree().unwrap_or(0) >= 1 {
        for (r, k) in roots_uni(&u, extra)? {
            out.push((P1Point::Finite(r), k));
        }
    }
    let def = p.x_deficiency();
    if def > 0 {
        out.push((P1Point::Infinity, def));
    }
    Ok(out)
}

/// Roots of a binary form with complex coefficients (`c[i]` multiplies `x^(n-i) y^i`).
pub fn roots_p1_numeric(c: &[Cdd]) -> Result<Vec<P1Point>> {
    let n = c.len() - 1;
    let scale = c.iter().map(|z| z.abs()).fold(0.0, f64::max);
    let mut top = n;
    while top > 0 && c[top].abs() <= 1e-28 * scale {
        top -= 1;
    }
    let mut out: Vec<P1Point> = simple_roots(&c[..=top])?
        .into_iter()
        .map(|z| P1Point::Finite(Num::Approx(z)))
        .collect();
    out.sort_by(|a, b| a.cmp_order(b));
    for _ in top..n {
        out.push(P1Point::Infinity);
    }
    Ok(out)
}

/// Converts a rational to `f64`.
pub fn q_to_f64(r: &Q) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_roots_of_xy_y_minus_x() {
        let p = HomPoly2::from_ints(&[0, -1, 1, 0]);
        let r = roots_p1(&p).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[0], (P1Point::exact(Scalar::int(0)), 1));
        assert_eq!(r[1], (P1Point::exact(Scalar::int(1)), 1));
        assert_eq!(r[2], (P1Point::Infinity, 1));
    }

    #[test]
    fn triple_root() {
        let p = HomPoly2::from_ints(&[-1, 1]).pow(3);
        assert_eq!(
            roots_p1(&p).unwrap(),
            vec![(P1Point::exact(Scalar::int(1)), 3)]
        );
    }

    #[test]
    fn cube_roots_of_unity_are_exact() {
        let p = HomPoly2::from_ints(&[1, 0, 0, -1]);
        let r = roots_p1(&p).unwrap();
        assert_eq!(r.len(), 3);
        for (pt, k) in &r {
            assert_eq!(*k, 1);
            let s = pt.finite().unwrap().as_exact().expect("exact root");
            assert_eq!(s.pow(3), Scalar::one());
        }
    }

    #[test]
    fn irrational_roots_are_numeric() {
        let p = HomPoly2::from_ints(&[-2, 0, 1]);
        let r = roots_p1(&p).unwrap();
        assert!(r.iter().all(|(pt, _)| !pt.is_exact()));
        let z = r[1].0.finite().unwrap().embed();
        assert!((z * z - Cdd::real(2.0)).abs() < 1e-28);
    }

    #[test]
    fn rational_recognition() {
        let x = Dd::ONE / Dd::new(7.0) * Dd::new(22.0);
        assert_eq!(recognize_rational(x), Some(super::super::cyclo::qf(22, 7)));
    }
}
