//! Holomorphy conditions along the line component as polynomials in the parameter `t`.
//!
//! When the fiber through the line direction has no non-fixed critical point, the line
//! component is decided by one evaluation `Q(beta, -alpha)`. With `t` in the line or in
//! the coefficients of `H` this is a polynomial in `t`.

use crate::algebra::{HomPoly2, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::foliation::HomFoliation;
use crate::prefoliation::corpus::h0;
use crate::prefoliation::{PreFoliation, ProjLine};

use super::{fiber, OriginLine};

/// Parameter values at which the hypotheses are checked.
const PROBES: [(i64, i64); 4] = [(7, 3), (-5, 2), (11, 7), (13, 5)];

fn to_uni(s: &Scalar) -> UniPoly {
    UniPoly::new(s.t_coeffs().iter().cloned().map(Scalar::from_cyc).collect())
}

/// `Q(beta, -alpha)` with `P = det / (alpha x + beta y)` for the line `alpha x + beta y`.
///
/// Equals a third of the line-direction `Q` at `nu = 1`.
fn q_line(h: &HomFoliation, alpha: &Scalar, beta: &Scalar) -> Result<Scalar> {
    let ma = -alpha;
    let (av, bv) = (h.a().eval(beta, &ma), h.b().eval(beta, &ma));
    let det = h.a().scale(&bv).sub(&h.b().scale(&av));
    let l = HomPoly2::linear(alpha.clone(), beta.clone());
    let p = det.exact_div(&l)?;
    Ok(&(&p.dx().eval(beta, &ma) * &bv) - &(&p.dy().eval(beta, &ma) * &av))
}

/// Checks at probe values of `t` that the line is not invariant and its fiber has no
/// non-fixed critical point.
fn check_probes(h: &HomFoliation, line: &ProjLine) -> Result<()> {
    let mut checked = 0;
    for (n, d) in PROBES {
        let v = Scalar::frac(n, d);
        let (Ok(hv), Ok(lv)) = (h.eval_t(&v), line.eval_t(&v)) else {
            continue;
        };
        let Ok(pref) = PreFoliation::homogeneous(lv, hv.clone()) else {
            continue;
        };
        if pref.line_invariant() {
            continue;
        }
        let l = OriginLine::of(&pref).expect("line through the origin");
        let dir = l.direction();
        let p0 = hv.gauss_at(&dir)?;
        if p0.is_infinity() {
            continue;
        }
        if fiber(&hv, &p0, Some(&dir))?.has_nonfixed_critical() {
            return Err(Error::Unsupported(format!(
                "at t = {v} the line fiber has a non-fixed critical point"
            )));
        }
        checked += 1;
    }
    if checked == 0 {
        return Err(Error::Unsupported(
            "no probe value satisfies the hypotheses".into(),
        ));
    }
    Ok(())
}

/// Condition in `t` for holomorphy along the line component of `line ⊠ H`.
///
/// The line must pass through the origin. Either the line or `H` may involve `t`.
pub fn symbolic_condition(h: &HomFoliation, line: &ProjLine) -> Result<UniPoly> {
    if !line.through_origin() || line.is_infinity() {
        return Err(Error::Precondition(format!(
            "{line} is not a line through the origin"
        )));
    }
    check_probes(h, line)?;
    let q = q_line(h, line.a(), line.b())?;
    Ok(to_uni(&q))
}

/// Monic square-free polynomial in `t` vanishing where the line component is holomorphic
/// or the line is invariant.
pub fn flat_locus(h: &HomFoliation, line: &ProjLine) -> Result<UniPoly> {
    let q = symbolic_condition(h, line)?;
    let (al, be) = (line.a(), line.b());
    let tangency = to_uni(&h.tangent_cone().eval(be, &-al));
    let prod = q.mul(&tangency);
    if prod.is_zero() {
        return Err(Error::Unsupported("condition vanishes identically".into()));
    }
    let mut rad = UniPoly::one();
    for (f, _) in prod.squarefree()? {
        rad = rad.mul(&f);
    }
    rad.monic()
}

/// Polynomial in `s = alpha + beta` whose roots are the degenerations of the Fermat family
/// to a flat homogeneous model of degree `d`.
pub fn fermat_degeneration_polynomial(d: usize) -> Result<UniPoly> {
    let line = ProjLine::new(Scalar::one(), -&Scalar::t(), Scalar::zero())?;
    flat_locus(&h0(d)?, &line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefoliation::corpus::{h1, h3, h4, sigma};

    fn rho_line() -> ProjLine {
        ProjLine::through_origin_slope(&Scalar::t())
    }

    fn t_pow(k: usize) -> UniPoly {
        UniPoly::var().pow(k as u32)
    }

    fn c(n: i64) -> UniPoly {
        UniPoly::constant(Scalar::int(n))
    }

    #[test]
    fn h1_closed_form() {
        for d in 3..=6 {
            let got = symbolic_condition(&h1(d).unwrap(), &rho_line()).unwrap();
            let r = t_pow(d - 2);
            let want = r
                .mul(&r.add(&c(1)))
                .scale(&Scalar::frac(((d - 1) * (d - 2)) as i64, 2));
            assert_eq!(got, want, "d={d}");
        }
    }

    #[test]
    fn h4_closed_form() {
        for d in 4..=6 {
            let got = symbolic_condition(&h4(d).unwrap(), &rho_line()).unwrap();
            let r = t_pow(d - 2);
            let want = r
                .add(&c(1))
                .pow(2)
                .mul(&r.sub(&c(1)))
                .scale(&(&sigma(d) * &Scalar::int(-(d as i64 - 2))));
            assert_eq!(got, want, "d={d}");
        }
    }

    #[test]
    fn h0_closed_form() {
        for d in 3..=6 {
            let got = symbolic_condition(&h0(d).unwrap(), &rho_line()).unwrap();
            let r = t_pow(d - 2);
            let k = ((d - 1) * (d - 2) * (d - 2)) as i64;
            let want = r
                .mul(&r.sub(&c(1)))
                .mul(&r.scale(&Scalar::int(2 * d as i64 - 4)).sub(&c(1)))
                .scale(&Scalar::frac(k, 2));
            assert_eq!(got, want, "d={d}");
        }
    }

    #[test]
    fn h3_closed_form() {
        for d in 4..=6usize {
            let di = d as i64;
            let hl = h3(d, &Scalar::t()).unwrap();
            let line = ProjLine::from_ints(3, di, 0);
            let got = symbolic_condition(&hl, &line).unwrap();
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let k =
                &Scalar::frac(-(di - 1) * (di - 2), 6) * &Scalar::int((3 * di).pow(d as u32 - 2));
            let inner = UniPoly::new(vec![
                Scalar::int(-sign * (di + 3) * di.pow(d as u32 - 2)),
                Scalar::int(3i64.pow(d as u32 - 1)),
            ]);
            // The stored line is 3x + dy divided by 3, and the condition has degree 3d - 6 in it.
            let norm = Scalar::frac(1, 3i64.pow(3 * d as u32 - 6));
            let want = UniPoly::var().mul(&inner).scale(&(&k * &norm));
            assert_eq!(got, want, "d={d}");
        }
    }

    #[test]
    fn fermat_polynomial() {
        for d in 3..=6 {
            let got = fermat_degeneration_polynomial(d).unwrap();
            let s = t_pow(d - 2);
            let want = UniPoly::var()
                .mul(&s.sub(&c(1)))
                .mul(&s.sub(&c(2 * (d as i64 - 2))));
            assert_eq!(got, want, "d={d}");
        }
    }
}
