//! Flat models among homogeneous pre-foliations whose foliation has inflection degree two.
//!
//! For `d >= 4` there are ten flat models up to automorphism; for `d = 3` there are six
//! isolated examples and two families. Each model is paired with perturbations that are not
//! flat, and every entry is run through [`is_flat`].

use rayon::prelude::*;

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::foliation::HomFoliation;
use crate::prefoliation::corpus::{h0, h1, h2, h3};
use crate::prefoliation::{PreFoliation, ProjLine};

use super::{is_flat, FlatnessDecision, Overall};

/// One classified pre-foliation.
#[derive(Clone, Debug)]
pub struct ClassifiedModel {
    pub label: String,
    pub pref: PreFoliation,
    /// Answer the classification predicts.
    pub expected: Overall,
    pub decision: FlatnessDecision,
}

impl ClassifiedModel {
    pub fn agrees(&self) -> bool {
        self.decision.overall == self.expected
    }
}

/// `lambda0 = (-1)^d (d+3) d^(d-2) / 3^(d-1)`.
pub fn lambda0(d: usize) -> Scalar {
    h3_constant(d, d as i64 + 3)
}

/// `lambda1 = (-1)^d (d-3) d^(d-2) / 3^(d-1)`.
pub fn lambda1(d: usize) -> Scalar {
    h3_constant(d, d as i64 - 3)
}

fn h3_constant(d: usize, k: i64) -> Scalar {
    let di = d as i64;
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    &Scalar::int(sign * k * di.pow(d as u32 - 2)) * &Scalar::frac(1, 3i64.pow(d as u32 - 1))
}

struct Entry {
    label: String,
    line: ProjLine,
    h: HomFoliation,
    expected: Overall,
}

fn slope(r: Scalar) -> ProjLine {
    ProjLine::through_origin_slope(&r)
}

fn x_axis_normal() -> ProjLine {
    ProjLine::from_ints(1, 0, 0)
}

fn entry(
    label: String,
    line: ProjLine,
    h: Result<HomFoliation>,
    expected: Overall,
) -> Result<Entry> {
    Ok(Entry {
        label,
        line,
        h: h?,
        expected,
    })
}

fn flat_models(d: usize) -> Result<Vec<Entry>> {
    let flat = Overall::Flat;
    let di = d as i64;
    let zero = Scalar::zero();
    let one = Scalar::one();
    let mut out = Vec::new();
    if d == 3 {
        out.push(entry("L∞ ⊠ H1".into(), ProjLine::infinity(), h1(3), flat)?);
        out.push(entry("{x} ⊠ H1".into(), x_axis_normal(), h1(3), flat)?);
        out.push(entry("{y-x} ⊠ H1".into(), slope(one.clone()), h1(3), flat)?);
        out.push(entry("{y+x} ⊠ H1".into(), slope(-&one), h1(3), flat)?);
        out.push(entry(
            "{x} ⊠ H2(0,0)".into(),
            x_axis_normal(),
            h2(3, &zero, &zero),
            flat,
        )?);
        out.push(entry(
            "{y+x} ⊠ H3(-2)".into(),
            slope(-&one),
            h3(3, &Scalar::int(-2)),
            flat,
        )?);
        for lam in [Scalar::int(1), Scalar::frac(-5, 2), Scalar::i()] {
            out.push(entry(
                format!("L∞ ⊠ H3({lam})"),
                ProjLine::infinity(),
                h3(3, &lam),
                flat,
            )?);
        }
        for (lam, mu) in [(0, 0), (1, 1), (2, -3), (-4, 5)] {
            let (l, m) = (Scalar::int(lam), Scalar::int(mu));
            out.push(entry(
                format!("L∞ ⊠ H2({lam},{mu})"),
                ProjLine::infinity(),
                h2(3, &l, &m),
                flat,
            )?);
        }
        return Ok(out);
    }
    let xi = Scalar::zeta_pow(2 * (d as u32 - 2), 1);
    let xi2 = Scalar::zeta_pow(2 * d as u32, 1);
    let d_line = ProjLine::from_ints(3, di, 0);
    let three_over_d = Scalar::frac(3, di);
    out.push(entry(
        "1: L∞ ⊠ H1".into(),
        ProjLine::infinity(),
        h1(d),
        flat,
    )?);
    out.push(entry("2: {x} ⊠ H1".into(), x_axis_normal(), h1(d), flat)?);
    out.push(entry(
        "3: {y-x} ⊠ H1".into(),
        slope(one.clone()),
        h1(d),
        flat,
    )?);
    out.push(entry(
        format!("4: {{y-ζ{}x}} ⊠ H1", 2 * (d - 2)),
        slope(xi.clone()),
        h1(d),
        flat,
    )?);
    out.push(entry(
        "5: {x} ⊠ H2(0,0)".into(),
        x_axis_normal(),
        h2(d, &zero, &zero),
        flat,
    )?);
    out.push(entry(
        format!("6: {{{d}y+3x}} ⊠ H3({})", lambda0(d)),
        d_line.clone(),
        h3(d, &lambda0(d)),
        flat,
    )?);
    out.push(entry(
        format!("7: {{{d}y+3x}} ⊠ H3({})", lambda1(d)),
        d_line,
        h3(d, &lambda1(d)),
        flat,
    )?);
    out.push(entry(
        "8: L∞ ⊠ H2(0,0)".into(),
        ProjLine::infinity(),
        h2(d, &zero, &zero),
        flat,
    )?);
    out.push(entry(
        format!("9: {{y-x}} ⊠ H2(3/{d},-3/{d})"),
        slope(one),
        h2(d, &three_over_d, &-&three_over_d),
        flat,
    )?);
    let lam = &three_over_d * &xi2;
    let mu = -&(&three_over_d * &xi2.inv()?);
    out.push(entry(
        format!("10: {{y-ζ{}x}} ⊠ H2(3ζ/{d},-3/({d}ζ))", 2 * d),
        slope(xi2),
        h2(d, &lam, &mu),
        flat,
    )?);
    Ok(out)
}

fn perturbations(d: usize) -> Result<Vec<Entry>> {
    let nf = Overall::NotFlat;
    let di = d as i64;
    let int = Scalar::int;
    let one = Scalar::one();
    let zero = Scalar::zero();
    Ok(vec![
        entry("{y-2x} ⊠ H1".into(), slope(int(2)), h1(d), nf)?,
        entry("{y-3x} ⊠ H1".into(), slope(int(3)), h1(d), nf)?,
        entry(
            "{x} ⊠ H2(1,0)".into(),
            x_axis_normal(),
            h2(d, &one, &zero),
            nf,
        )?,
        entry(
            "{x} ⊠ H2(0,1)".into(),
            x_axis_normal(),
            h2(d, &zero, &one),
            nf,
        )?,
        entry(
            "{y} ⊠ H3(1)".into(),
            ProjLine::from_ints(0, 1, 0),
            h3(d, &one),
            nf,
        )?,
        entry(
            format!("{{{d}y+3x}} ⊠ H3(1)"),
            ProjLine::from_ints(3, di, 0),
            h3(d, &one),
            nf,
        )?,
        entry("{y-x} ⊠ H3(1)".into(), slope(one.clone()), h3(d, &one), nf)?,
        entry("{y-2x} ⊠ H0".into(), slope(int(2)), h0(d), nf)?,
        entry(
            "{y-2x} ⊠ H2(1,1)".into(),
            slope(int(2)),
            h2(d, &one, &one),
            nf,
        )?,
        entry(
            "{x} ⊠ H2(1,1)".into(),
            x_axis_normal(),
            h2(d, &one, &one),
            nf,
        )?,
    ])
}

/// Runs the flat models of degree `d` and their perturbations through [`is_flat`].
///
/// Entries come back in a fixed order: flat models first, then perturbations.
pub fn classify(d: usize) -> Result<Vec<ClassifiedModel>> {
    if d < 3 {
        return Err(Error::Unsupported(format!(
            "classification needs d >= 3, got {d}"
        )));
    }
    let mut entries = flat_models(d)?;
    entries.extend(perturbations(d)?);
    entries
        .into_par_iter()
        .map(|e| {
            let pref = PreFoliation::homogeneous(e.line, e.h)?;
            let decision = is_flat(&pref).map_err(|err| {
                Error::Precondition(format!("classification entry {}: {err}", e.label))
            })?;
            Ok(ClassifiedModel {
                label: e.label,
                pref,
                expected: e.expected,
                decision,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda0_degree_four() {
        assert_eq!(lambda0(4), Scalar::frac(112, 27));
    }

    #[test]
    fn classification_agrees() {
        for d in 3..=5 {
            let models = classify(d).unwrap();
            for m in &models {
                assert!(m.agrees(), "d={d} {}: {:?}", m.label, m.decision);
            }
            let flat = models
                .iter()
                .filter(|m| m.expected == Overall::Flat)
                .count();
            if d >= 4 {
                assert_eq!(flat, 10);
            }
        }
    }
}
