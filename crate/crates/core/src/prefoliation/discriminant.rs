//! Discriminant of the Legendre web of a homogeneous pre-foliation.
//!
//! Every component except the dual of the origin is a vertical line `p = p0` of the
//! dual chart `y = p x - q`; the dual of the origin is `q = 0`.

use std::fmt;

use crate::algebra::{roots_p1_in, Num, P1Point, Scalar};
use crate::error::{Error, Result};
use crate::foliation::HomFoliation;

use super::PreFoliation;

/// Origin of a discriminant component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentTag {
    /// Gauss image of a transverse inflection line.
    TransverseInflectionImage,
    /// Dual line of a radial singularity on the line at infinity.
    RadialDual,
    /// Dual line of the origin, `q = 0`.
    DualOfOrigin,
    /// Component contributed by the line of the pre-foliation.
    LineComponent,
    /// Dual line of a non-radial singularity on the line at infinity.
    InfinityPointDual,
}

impl ComponentTag {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentTag::TransverseInflectionImage => "gauss-image-of-transverse-inflection",
            ComponentTag::RadialDual => "dual-of-radial-singularity",
            ComponentTag::DualOfOrigin => "dual-of-origin",
            ComponentTag::LineComponent => "line-component",
            ComponentTag::InfinityPointDual => "dual-of-infinity-singularity",
        }
    }
}

impl fmt::Display for ComponentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// One irreducible component of the discriminant.
#[derive(Clone, Debug)]
pub struct DiscComponent {
    pub tag: ComponentTag,
    /// `p0` of the vertical line `p = p0`; `None` for the dual of the origin.
    pub p0: Option<P1Point>,
    /// Directions `[a:b]` generating the component.
    pub sources: Vec<P1Point>,
}

impl DiscComponent {
    /// Defining equation in the `(p, q)` chart.
    pub fn equation(&self) -> String {
        match &self.p0 {
            None => "q = 0".into(),
            Some(P1Point::Infinity) => "p = ∞".into(),
            Some(P1Point::Finite(n)) => format!("p = {n}"),
        }
    }
}

/// Components of the discriminant of `Leg(l ⊠ H)`.
#[derive(Clone, Debug)]
pub struct DiscriminantDecomposition {
    pub components: Vec<DiscComponent>,
}

impl DiscriminantDecomposition {
    pub fn by_tag(&self, tag: ComponentTag) -> impl Iterator<Item = &DiscComponent> {
        self.components.iter().filter(move |c| c.tag == tag)
    }
}

fn push_merged(out: &mut Vec<DiscComponent>, tag: ComponentTag, p0: P1Point, src: P1Point) {
    if let Some(c) = out
        .iter_mut()
        .find(|c| c.tag == tag && c.p0.as_ref().is_some_and(|q| q.close_to(&p0, 1e-20)))
    {
        c.sources.push(src);
        return;
    }
    out.push(DiscComponent {
        tag,
        p0: Some(p0),
        sources: vec![src],
    });
}

/// Direction `[-a:b]` of a line `a x + b y = 0` through the origin.
pub fn line_direction(pref: &PreFoliation) -> P1Point {
    let l = pref.line();
    if l.b().is_zero() {
        P1Point::Infinity
    } else {
        P1Point::Finite(Num::Exact((-l.a()).checked_div(l.b()).expect("nonzero")))
    }
}

/// Components of `G_H(I_tr)`, one per critical value of a non-fixed critical point.
pub fn transverse_images(h: &HomFoliation) -> Result<Vec<DiscComponent>> {
    let mut out = Vec::new();
    for c in h.gauss_map()?.critical.iter().filter(|c| !c.fixed) {
        let p0 = h.gauss_at(&c.point)?;
        push_merged(
            &mut out,
            ComponentTag::TransverseInflectionImage,
            p0,
            c.point.clone(),
        );
    }
    Ok(out)
}

/// Decomposes the discriminant of the Legendre web of a homogeneous pre-foliation.
pub fn discriminant(pref: &PreFoliation) -> Result<DiscriminantDecomposition> {
    let h = pref.hom().ok_or_else(|| {
        Error::Unsupported("discriminant of a non-homogeneous pre-foliation".into())
    })?;
    let line = pref.line();
    if !(line.through_origin() || line.is_infinity()) {
        return Err(Error::Unsupported(format!(
            "line {line} neither passes through the origin nor is the line at infinity"
        )));
    }
    let g = h.gauss_map()?;
    let mut out = transverse_images(h)?;
    let radial_dual = |out: &mut Vec<DiscComponent>, pt: &P1Point| {
        push_merged(out, ComponentTag::RadialDual, pt.clone(), pt.clone());
    };
    if line.is_infinity() {
        for (pt, _) in roots_p1_in(h.tangent_cone(), h.order())? {
            let radial = g
                .critical
                .iter()
                .any(|c| c.fixed && c.point.close_to(&pt, 1e-20));
            if radial {
                radial_dual(&mut out, &pt);
            } else {
                push_merged(&mut out, ComponentTag::InfinityPointDual, pt.clone(), pt);
            }
        }
    } else {
        for c in g.critical.iter().filter(|c| c.fixed) {
            radial_dual(&mut out, &c.point);
        }
        let dir = line_direction(pref);
        let p0 = if pref.line_invariant() {
            dir.clone()
        } else {
            h.gauss_at(&dir)?
        };
        out.push(DiscComponent {
            tag: ComponentTag::LineComponent,
            p0: Some(p0),
            sources: vec![dir],
        });
    }
    out.push(DiscComponent {
        tag: ComponentTag::DualOfOrigin,
        p0: None,
        sources: Vec::new(),
    });
    out.sort_by(|a, b| {
        a.tag.cmp(&b.tag).then_with(|| match (&a.p0, &b.p0) {
            (Some(x), Some(y)) => x.cmp_order(y),
            _ => std::cmp::Ordering::Equal,
        })
    });
    Ok(DiscriminantDecomposition { components: out })
}

/// Exact `p0` of a component, if it has one.
pub fn exact_p0(c: &DiscComponent) -> Option<Scalar> {
    match &c.p0 {
        Some(P1Point::Finite(Num::Exact(s))) => Some(s.clone()),
        _ => None,
    }
}
