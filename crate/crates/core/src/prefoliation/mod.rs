//! Pre-foliations `l ⊠ F`: a line together with a foliation.
//!
//! Also hosts the Legendre web of a pre-foliation, the discriminant of the dual
//! web for homogeneous pre-foliations, homogenization along an invariant line, and
//! the named corpus of examples.

pub mod corpus;
pub mod discriminant;
pub mod general;
pub mod homogenize;
pub mod line;
pub mod web;

use crate::algebra::{Poly3, Scalar};
use crate::error::{Error, Result};
use crate::foliation::HomFoliation;

pub use discriminant::{discriminant, ComponentTag, DiscComponent, DiscriminantDecomposition};
pub use general::{GenFoliation, GenSingularity};
pub use homogenize::homogenize;
pub use line::ProjLine;
pub use web::ImplicitWeb;

/// Foliation part of a pre-foliation.
#[derive(Clone, Debug)]
pub enum Foliation {
    Hom(HomFoliation),
    General(GenFoliation),
}

impl Foliation {
    /// Degree of the foliation on the projective plane.
    pub fn degree(&self) -> usize {
        match self {
            Foliation::Hom(h) => h.d() - 1,
            Foliation::General(g) => g.degree(),
        }
    }

    pub fn to_general(&self) -> GenFoliation {
        match self {
            Foliation::Hom(h) => GenFoliation::from_hom(h),
            Foliation::General(g) => g.clone(),
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            Foliation::Hom(h) => h.order(),
            Foliation::General(g) => g.order(),
        }
    }
}

/// Pre-foliation of co-degree one.
#[derive(Clone, Debug)]
pub struct PreFoliation {
    line: ProjLine,
    fol: Foliation,
}

impl PreFoliation {
    /// Pairs a line with a foliation; a homogeneous foliation with a line that
    /// neither passes through the origin nor is the line at infinity is kept as a general one.
    pub fn new(line: ProjLine, fol: Foliation) -> PreFoliation {
        let fol = match fol {
            Foliation::Hom(h) if !(line.through_origin() || line.is_infinity()) => {
                Foliation::General(GenFoliation::from_hom(&h))
            }
            f => f,
        };
        PreFoliation { line, fol }
    }

    /// Homogeneous pre-foliation; the line must pass through the origin or be at infinity.
    pub fn homogeneous(line: ProjLine, h: HomFoliation) -> Result<PreFoliation> {
        if !(line.through_origin() || line.is_infinity()) {
            return Err(Error::Unsupported(format!(
                "line {line} neither passes through the origin nor is the line at infinity"
            )));
        }
        Ok(PreFoliation {
            line,
            fol: Foliation::Hom(h),
        })
    }

    pub fn line(&self) -> &ProjLine {
        &self.line
    }

    pub fn foliation(&self) -> &Foliation {
        &self.fol
    }

    pub fn hom(&self) -> Option<&HomFoliation> {
        match &self.fol {
            Foliation::Hom(h) => Some(h),
            Foliation::General(_) => None,
        }
    }

    /// Degree `d` of the pre-foliation.
    pub fn d(&self) -> usize {
        self.fol.degree() + 1
    }

    /// Whether the line of the pre-foliation is invariant by the foliation.
    pub fn line_invariant(&self) -> bool {
        is_line_invariant(&self.fol, &self.line)
    }

    /// Least common conductor of all coefficients.
    pub fn order(&self) -> u32 {
        use num_integer::Integer;
        self.fol.order().lcm(&self.line.order())
    }
}

/// Whether `line` is invariant by the foliation, tested exactly.
pub fn is_line_invariant(fol: &Foliation, line: &ProjLine) -> bool {
    match fol {
        Foliation::Hom(_) if line.is_infinity() => true,
        _ => fol.to_general().is_line_invariant(line),
    }
}

/// Legendre web `F(p, q, x) = f(x, px - q) (A + p B)(x, px - q)`; `f = 1` for the line at infinity.
pub fn legendre_web(pref: &PreFoliation) -> ImplicitWeb {
    let g = pref.fol.to_general();
    let (a, b) = g.affine();
    let p = Poly3::var(web::P);
    let q = Poly3::var(web::Q);
    let x = Poly3::var(web::X);
    let y = p.mul(&x).sub(&q);
    let subs = [x.clone(), y.clone(), Poly3::zero()];
    let core = a.compose(&subs).add(&p.mul(&b.compose(&subs)));
    let line = &pref.line;
    let f = if line.is_infinity() {
        Poly3::one()
    } else {
        x.scale(line.a())
            .add(&y.scale(line.b()))
            .add(&Poly3::constant(line.c().clone()))
    };
    ImplicitWeb::new(f.mul(&core), pref.d())
}

/// Whether every candidate is invariant, there are `3 deg F` of them, and the line is invariant.
pub fn is_convex_reduced(pref: &PreFoliation, candidates: &[ProjLine]) -> Result<bool> {
    for i in 0..candidates.len() {
        for j in 0..i {
            if candidates[i] == candidates[j] {
                return Err(Error::Precondition(format!(
                    "duplicate candidate line {}",
                    candidates[i]
                )));
            }
        }
    }
    if candidates.len() != 3 * pref.fol.degree() {
        return Ok(false);
    }
    if !candidates.iter().all(|l| is_line_invariant(&pref.fol, l)) {
        return Ok(false);
    }
    Ok(pref.line_invariant())
}

/// Substitutes the parameter `t := v` in line and foliation.
pub fn eval_t(pref: &PreFoliation, v: &Scalar) -> Result<PreFoliation> {
    let line = pref.line.eval_t(v)?;
    let fol = match &pref.fol {
        Foliation::Hom(h) => Foliation::Hom(h.eval_t(v)?),
        Foliation::General(g) => Foliation::General(g.eval_t(v)?),
    };
    Ok(PreFoliation::new(line, fol))
}
