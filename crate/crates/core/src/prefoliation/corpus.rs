//! Named examples: convex reduced foliations and the homogeneous families.
//!
//! Constants live in cyclotomic fields; `sqrt(5)` is taken as `1 + 2(z + z^4)` with `z = zeta(5)`.

use crate::algebra::{HomPoly2, Poly3, Scalar};
use crate::error::{Error, Result};
use crate::foliation::HomFoliation;

use super::general::GenFoliation;
use super::line::ProjLine;
use super::Foliation;

/// Corpus names accepted by [`by_name`].
pub const NAMES: [&str; 9] = [
    "fermat", "hesse4", "hilbert5", "hesse7", "H0", "H1", "H2", "H3", "H4",
];

/// Parameters of a corpus lookup.
#[derive(Clone, Debug)]
pub struct CorpusParams {
    /// Degree `d` of the homogeneous pre-foliation.
    pub degree: Option<usize>,
    /// Degree of the Fermat foliation.
    pub fdeg: Option<usize>,
    pub lambda: Scalar,
    pub mu: Scalar,
}

impl Default for CorpusParams {
    fn default() -> CorpusParams {
        CorpusParams {
            degree: None,
            fdeg: None,
            lambda: Scalar::zero(),
            mu: Scalar::zero(),
        }
    }
}

/// Looks up a corpus member by name.
pub fn by_name(name: &str, p: &CorpusParams) -> Result<Foliation> {
    let need_d = || {
        p.degree
            .ok_or_else(|| Error::Parameter(format!("corpus {name} needs a degree")))
    };
    Ok(match name {
        "fermat" => {
            let f = p
                .fdeg
                .or(p.degree.map(|d| d - 1))
                .ok_or_else(|| Error::Parameter("corpus fermat needs --fdeg".into()))?;
            Foliation::General(fermat(f)?)
        }
        "hesse4" => Foliation::General(hesse4()),
        "hilbert5" => Foliation::General(hilbert5()),
        "hesse7" => Foliation::General(hesse7()),
        "H0" => Foliation::Hom(h0(need_d()?)?),
        "H1" => Foliation::Hom(h1(need_d()?)?),
        "H2" => Foliation::Hom(h2(need_d()?, &p.lambda, &p.mu)?),
        "H3" => Foliation::Hom(h3(need_d()?, &p.lambda)?),
        "H4" => Foliation::Hom(h4(need_d()?)?),
        _ => {
            return Err(Error::Parameter(format!(
                "unknown corpus '{name}'; expected one of {}",
                NAMES.join(", ")
            )))
        }
    })
}

/// `c x^i y^j` in the affine chart.
fn m(c: Scalar, i: u32, j: u32) -> Poly3 {
    Poly3::monomial([i, j, 0], c)
}

fn mi(c: i64, i: u32, j: u32) -> Poly3 {
    m(Scalar::int(c), i, j)
}

fn sum(ps: &[Poly3]) -> Poly3 {
    ps.iter().fold(Poly3::zero(), |acc, p| acc.add(p))
}

fn check_degree(d: usize, min: usize) -> Result<()> {
    if d < min {
        return Err(Error::Parameter(format!(
            "degree must be at least {min}, got {d}"
        )));
    }
    Ok(())
}

/// Fermat foliation of degree `n`: `x dy - y dx + y^n dx - x^n dy`.
pub fn fermat(n: usize) -> Result<GenFoliation> {
    check_degree(n, 2)?;
    let n = n as u32;
    let a = mi(-1, 0, 1).add(&mi(1, 0, n));
    let b = mi(1, 1, 0).add(&mi(-1, n, 0));
    GenFoliation::from_affine(&a, &b)
}

/// The `3n` invariant lines of the Fermat foliation of degree `n`.
pub fn fermat_lines(n: usize) -> Vec<ProjLine> {
    let e = (n - 1) as u32;
    let mut out = vec![
        ProjLine::from_ints(1, 0, 0),
        ProjLine::from_ints(0, 1, 0),
        ProjLine::from_ints(0, 0, 1),
    ];
    let line = |a: Scalar, b: Scalar, c: Scalar| ProjLine::new(a, b, c).expect("nonzero line");
    for k in 0..e {
        let z = Scalar::zeta_pow(e, k as i64);
        out.push(line(-&z, Scalar::one(), Scalar::zero()));
        out.push(line(Scalar::zero(), Scalar::one(), -&z));
        out.push(line(Scalar::one(), Scalar::zero(), -&z));
    }
    out
}

/// Hesse foliation of degree 4: `y(2x^3 - y^3 - 1) dx + x(2y^3 - x^3 - 1) dy`.
pub fn hesse4() -> GenFoliation {
    let a = sum(&[mi(2, 3, 1), mi(-1, 0, 4), mi(-1, 0, 1)]);
    let b = sum(&[mi(2, 1, 3), mi(-1, 4, 0), mi(-1, 1, 0)]);
    GenFoliation::from_affine(&a, &b).expect("valid form")
}

/// The twelve invariant lines of the Hesse foliation of degree 4.
pub fn hesse4_lines() -> Vec<ProjLine> {
    let z = Scalar::zeta_pow(3, 1);
    let z2 = Scalar::zeta_pow(3, 2);
    let o = Scalar::one;
    let zero = Scalar::zero;
    let l = |a: Scalar, b: Scalar, c: Scalar| ProjLine::new(a, b, c).expect("nonzero line");
    vec![
        l(o(), zero(), zero()),
        l(zero(), o(), zero()),
        l(zero(), zero(), o()),
        l(o(), o(), o()),
        l(z.clone(), o(), o()),
        l(o(), z.clone(), o()),
        l(o(), o(), z.clone()),
        l(z2.clone(), o(), o()),
        l(o(), z2.clone(), o()),
        l(o(), o(), z2.clone()),
        l(z2.clone(), z.clone(), o()),
        l(z, z2, o()),
    ]
}

/// `sqrt(5)` inside the fifth cyclotomic field.
pub fn sqrt5() -> Scalar {
    &Scalar::one() + &(&Scalar::int(2) * &(&Scalar::zeta_pow(5, 1) + &Scalar::zeta_pow(5, 4)))
}

/// Hilbert modular foliation of degree 5.
pub fn hilbert5() -> GenFoliation {
    let s = sqrt5();
    let r = &s - &Scalar::int(2);
    let r2 = &r * &r;
    let quad = |v: (u32, u32)| mi(1, 2 * v.0, 2 * v.1).sub(&mi(1, 0, 0));
    let quad_r = |v: (u32, u32)| mi(1, 2 * v.0, 2 * v.1).sub(&m(r2.clone(), 0, 0));
    let a = quad((0, 1))
        .mul(&quad_r((0, 1)))
        .mul(&mi(1, 0, 1).add(&m(s.clone(), 1, 0)));
    let b = quad((1, 0))
        .mul(&quad_r((1, 0)))
        .mul(&mi(1, 1, 0).add(&m(s.clone(), 0, 1)))
        .neg();
    GenFoliation::from_affine(&a, &b).expect("valid form")
}

/// Hesse foliation of degree 7.
pub fn hesse7() -> GenFoliation {
    let a = mi(1, 0, 3)
        .sub(&mi(1, 0, 0))
        .mul(&sum(&[mi(1, 0, 3), mi(7, 3, 0), mi(1, 0, 0)]))
        .mul(&mi(1, 0, 1));
    let b = mi(1, 3, 0)
        .sub(&mi(1, 0, 0))
        .mul(&sum(&[mi(1, 3, 0), mi(7, 0, 3), mi(1, 0, 0)]))
        .mul(&mi(1, 1, 0))
        .neg();
    GenFoliation::from_affine(&a, &b).expect("valid form")
}

/// Binary form of degree `n` from `(coefficient, y-exponent)` pairs.
fn form(n: usize, terms: &[(Scalar, usize)]) -> HomPoly2 {
    let mut c = vec![Scalar::zero(); n + 1];
    for (s, j) in terms {
        c[*j] = &c[*j] + s;
    }
    HomPoly2::new(n, c)
}

/// `(d-2) y^(d-1) dx + x(x^(d-2) - (d-1) y^(d-2)) dy`.
pub fn h0(d: usize) -> Result<HomFoliation> {
    check_degree(d, 3)?;
    let n = d - 1;
    let a = form(n, &[(Scalar::int(d as i64 - 2), n)]);
    let b = form(n, &[(Scalar::one(), 0), (Scalar::int(-(n as i64)), n - 1)]);
    HomFoliation::new(a, b)
}

/// `y^(d-1) dx - x^(d-1) dy`.
pub fn h1(d: usize) -> Result<HomFoliation> {
    check_degree(d, 3)?;
    let n = d - 1;
    HomFoliation::new(
        form(n, &[(Scalar::one(), n)]),
        form(n, &[(Scalar::int(-1), 0)]),
    )
}

/// `(x^(d-1) + l y^(d-1)) dx + (m x^(d-1) - y^(d-1)) dy` with `l m != -1`.
pub fn h2(d: usize, lambda: &Scalar, mu: &Scalar) -> Result<HomFoliation> {
    check_degree(d, 3)?;
    if (&(lambda * mu) + &Scalar::one()).is_zero() {
        return Err(Error::Parameter(
            "the family requires lambda*mu != -1".into(),
        ));
    }
    let n = d - 1;
    let a = form(n, &[(Scalar::one(), 0), (lambda.clone(), n)]);
    let b = form(n, &[(mu.clone(), 0), (Scalar::int(-1), n)]);
    HomFoliation::new(a, b)
}

/// `(x^(d-1) + l y^(d-1)) dx + x^(d-1) dy` with `l != 0`.
pub fn h3(d: usize, lambda: &Scalar) -> Result<HomFoliation> {
    check_degree(d, 3)?;
    if lambda.is_zero() {
        return Err(Error::Parameter("the family requires lambda != 0".into()));
    }
    let n = d - 1;
    let a = form(n, &[(Scalar::one(), 0), (lambda.clone(), n)]);
    let b = form(n, &[(Scalar::one(), 0)]);
    HomFoliation::new(a, b)
}

/// `1 + 2/(d-3)`.
pub fn sigma(d: usize) -> Scalar {
    Scalar::frac(d as i64 - 1, d as i64 - 3)
}

/// `y(s x^(d-2) - y^(d-2)) dx + x(s y^(d-2) - x^(d-2)) dy` with `s = 1 + 2/(d-3)`.
pub fn h4(d: usize) -> Result<HomFoliation> {
    check_degree(d, 4)?;
    let n = d - 1;
    let s = sigma(d);
    let a = form(n, &[(s.clone(), 1), (Scalar::int(-1), n)]);
    let b = form(n, &[(s, n - 1), (Scalar::int(-1), 0)]);
    HomFoliation::new(a, b)
}

/// Invariant lines of a corpus member, when known.
pub fn known_lines(name: &str, p: &CorpusParams) -> Option<Vec<ProjLine>> {
    match name {
        "fermat" => p.fdeg.or(p.degree.map(|d| d - 1)).map(fermat_lines),
        "hesse4" => Some(hesse4_lines()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefoliation::is_line_invariant;

    #[test]
    fn fermat_lines_invariant() {
        for n in 2..=4 {
            let f = Foliation::General(fermat(n).unwrap());
            let lines = fermat_lines(n);
            assert_eq!(lines.len(), 3 * n);
            assert!(lines.iter().all(|l| is_line_invariant(&f, l)), "degree {n}");
        }
    }

    #[test]
    fn hesse4_lines_invariant() {
        let f = Foliation::General(hesse4());
        assert_eq!(f.degree(), 4);
        for l in hesse4_lines() {
            assert!(is_line_invariant(&f, &l), "{l}");
        }
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let s = sqrt5();
        assert_eq!(&s * &s, Scalar::int(5));
    }

    #[test]
    fn degrees() {
        assert_eq!(hilbert5().degree(), 5);
        assert_eq!(hesse7().degree(), 7);
        assert_eq!(h4(5).unwrap().d(), 5);
    }

    #[test]
    fn family_constraints() {
        assert!(h2(3, &Scalar::one(), &Scalar::int(-1)).is_err());
        assert!(h3(3, &Scalar::zero()).is_err());
        assert!(h4(3).is_err());
    }
}
