//! Degeneration of a pre-foliation onto a homogeneous one along an invariant line.
//!
//! Coordinates are changed so the invariant line `D` becomes the line at infinity;
//! the top-degree part of the 1-form then defines the homogeneous foliation.

use crate::algebra::{Num, Poly3, Scalar};
use crate::error::{Error, Result};
use crate::foliation::{Chart, HomFoliation};

use super::general::GenFoliation;
use super::line::ProjLine;
use super::{is_line_invariant, Foliation, PreFoliation};

/// Linear change of coordinates sending `D` to `Z = 0`.
struct Frame {
    /// `(x, y, z)` as polynomials in `(X, Y, Z)`.
    to_old: [Poly3; 3],
    /// Rows expressing `(P', Q', R')` as combinations of `(P, Q, R)`.
    mix: [[Scalar; 3]; 3],
}

fn frame(d: &ProjLine) -> Result<Frame> {
    let [a, b, c] = d.coeffs();
    let (xv, yv, zv) = (Poly3::var(0), Poly3::var(1), Poly3::var(2));
    let zero = Scalar::zero;
    let one = Scalar::one;
    Ok(if !c.is_zero() {
        let ci = c.inv()?;
        let z = zv.sub(&xv.scale(&a)).sub(&yv.scale(&b)).scale(&ci);
        Frame {
            to_old: [xv, yv, z],
            mix: [
                [one(), zero(), -(&a * &ci)],
                [zero(), one(), -(&b * &ci)],
                [zero(), zero(), ci],
            ],
        }
    } else if !b.is_zero() {
        let bi = b.inv()?;
        let y = zv.sub(&xv.scale(&a)).scale(&bi);
        Frame {
            to_old: [xv, y, yv],
            mix: [
                [one(), -(&a * &bi), zero()],
                [zero(), zero(), one()],
                [zero(), bi, zero()],
            ],
        }
    } else {
        let ai = a.inv()?;
        Frame {
            to_old: [zv.scale(&ai), xv, yv],
            mix: [
                [zero(), one(), zero()],
                [zero(), zero(), one()],
                [ai, zero(), zero()],
            ],
        }
    })
}

/// Result of moving `D` to infinity: the transformed foliation and the limit pre-foliation.
#[derive(Clone, Debug)]
pub struct Homogenization {
    pub moved: GenFoliation,
    pub limit: PreFoliation,
}

/// Homogeneous pre-foliation obtained by degenerating `pref` along the invariant line `d`.
pub fn homogenize(pref: &PreFoliation, d: &ProjLine) -> Result<PreFoliation> {
    Ok(homogenize_full(pref, d)?.limit)
}

/// As [`homogenize`], also returning the foliation in the new coordinates.
pub fn homogenize_full(pref: &PreFoliation, d: &ProjLine) -> Result<Homogenization> {
    let fol = pref.foliation();
    if !is_line_invariant(fol, d) {
        return Err(Error::Precondition(format!("line {d} is not invariant")));
    }
    let g = fol.to_general();
    if !g.is_const_coeffs() {
        return Err(Error::Unsupported(
            "homogenization of a parametric foliation".into(),
        ));
    }
    let fr = frame(d)?;
    let omega = g.projective();
    let pulled: Vec<Poly3> = omega.iter().map(|w| w.compose(&fr.to_old)).collect();
    let new: Vec<Poly3> = fr
        .mix
        .iter()
        .map(|row| (0..3).fold(Poly3::zero(), |acc, i| acc.add(&pulled[i].scale(&row[i]))))
        .collect();
    let (pn, qn) = (&new[0], &new[1]);
    if pn.min_degree_in(2) < 1 && !pn.is_zero() || qn.min_degree_in(2) < 1 && !qn.is_zero() {
        return Err(Error::Precondition(format!(
            "line {d} is not invariant after the change of coordinates"
        )));
    }
    let n = g.degree();
    let top_of = |w: &Poly3| -> Result<crate::algebra::HomPoly2> {
        w.coeff_in(2, 1)
            .to_hom(n)
            .ok_or_else(|| Error::Precondition("unexpected top-degree part".into()))
    };
    let (a_top, b_top) = (top_of(pn)?, top_of(qn)?);
    let h = HomFoliation::new(a_top, b_top).map_err(|e| {
        Error::Precondition(format!("top-degree part does not define a foliation: {e}"))
    })?;
    let one = Poly3::one();
    let chart = |w: &Poly3| w.compose(&[Poly3::var(0), Poly3::var(1), one.clone()]);
    let moved = GenFoliation::from_affine(&chart(pn), &chart(qn))?;

    // Singularities on D must be non-degenerate.
    let sing_d = moved.infinity_singularities()?;
    for s in &sing_d {
        if s.milnor != Some(1) {
            return Err(Error::Precondition(format!(
                "degenerate singularity on {d} at {}",
                original_point(&fr, s)
            )));
        }
    }

    // Line of the limit pre-foliation.
    let l_new = pref.line().as_poly3().compose(&fr.to_old);
    let lc = |e: [u32; 3]| l_new.coeff(&e);
    let (al, be) = (lc([1, 0, 0]), lc([0, 1, 0]));
    let limit_line = if al.is_zero() && be.is_zero() {
        ProjLine::infinity()
    } else {
        ProjLine::new(al, be, Scalar::zero())?
    };
    let limit = PreFoliation::homogeneous(limit_line, h.clone())?;

    // Same points on D with the same Camacho-Sad indices.
    let hs: Vec<_> = h
        .singularities()?
        .into_iter()
        .filter(|s| s.on_line_infinity)
        .collect();
    if hs.len() != sing_d.len() {
        return Err(Error::Precondition(format!(
            "singular sets on {d} differ: {} vs {}",
            sing_d.len(),
            hs.len()
        )));
    }
    for s in &sing_d {
        let m = hs
            .iter()
            .find(|t| t.chart == s.chart && points_match(&t.coords[0], &s.coords[0]));
        let Some(t) = m else {
            return Err(Error::Precondition(format!(
                "singularity {} on {d} lost by homogenization",
                s.label()
            )));
        };
        if let (Some(c1), Some(c2)) = (&t.cs, &s.cs_infinity) {
            if !points_match(c1, c2) {
                return Err(Error::Precondition(format!(
                    "Camacho-Sad index changed at {}: {c2} vs {c1}",
                    s.label()
                )));
            }
        }
    }
    Ok(Homogenization { moved, limit })
}

fn points_match(a: &Num, b: &Num) -> bool {
    match (a, b) {
        (Num::Exact(x), Num::Exact(y)) => x == y,
        _ => (a.embed() - b.embed()).abs() < 1e-18 * (1.0 + a.embed().abs()),
    }
}

fn original_point(fr: &Frame, s: &super::general::GenSingularity) -> String {
    let (xn, yn) = match s.chart {
        Chart::InfinityU => (Num::int(1), s.coords[0].clone()),
        Chart::InfinitySwapped => (s.coords[0].clone(), Num::int(1)),
        Chart::Affine => (s.coords[0].clone(), s.coords[1].clone()),
    };
    let zn = if s.chart == Chart::Affine {
        Num::int(1)
    } else {
        Num::int(0)
    };
    let vals: Vec<String> = fr
        .to_old
        .iter()
        .map(|p| {
            let v = p.eval_c(&[xn.embed(), yn.embed(), zn.embed()]);
            v.to_string()
        })
        .collect();
    format!("[{}]", vals.join(":"))
}

/// Convenience: homogenize a homogeneous foliation given with any line.
pub fn homogenize_fol(line: ProjLine, fol: Foliation, d: &ProjLine) -> Result<PreFoliation> {
    homogenize(&PreFoliation::new(line, fol), d)
}
