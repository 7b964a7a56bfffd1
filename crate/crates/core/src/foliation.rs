//! Homogeneous foliations `A dx + B dy` of the projective plane.
//!
//! Covers the Gauss map `z -> -A(1,z)/B(1,z)`, its critical points and their
//! fixedness, the foliation type, the inflection divisor, singularities with their
//! local indices, the Camacho-Sad polynomial along the line at infinity, and the
//! global index identities.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::algebra::matrix::resultant;
use crate::algebra::roots::roots_uni;
use crate::algebra::{roots_p1_in, Cdd, HomPoly2, Num, P1Point, Poly3, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::prefoliation::line::ProjLine;

/// Parameter values used to certify generic coprimality of parametric pairs.
pub const PARAM_PROBES: [(i64, i64); 2] = [(7, 3), (11, 5)];

/// Critical point of the Gauss map.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    /// Point `[a:b]` of the projective line; the direction of the line `b y - a x = 0`.
    pub point: P1Point,
    /// Ramification index, at least two.
    pub nu: usize,
    /// Whether the Gauss map fixes the point.
    pub fixed: bool,
    /// Multiplicity as a root of the tangent cone, zero when not fixed.
    pub fixed_mult: usize,
}

/// Critical points of the Gauss map with their exact defining factors.
#[derive(Clone, Debug)]
pub struct GaussAnalysis {
    pub critical: Vec<CriticalPoint>,
    /// `(factor, k)`: fixed critical points of ramification `k + 1` are the roots of `factor`.
    pub fixed_factors: Vec<(HomPoly2, usize)>,
    /// `(factor, k)`: non-fixed critical points of ramification `k + 1`.
    pub nonfixed_factors: Vec<(HomPoly2, usize)>,
}

impl GaussAnalysis {
    /// `sum (nu - 1)` over critical points.
    pub fn ramification_total(&self) -> usize {
        self.critical.iter().map(|c| c.nu - 1).sum()
    }

    pub fn is_convex(&self) -> bool {
        self.critical.iter().all(|c| c.fixed)
    }
}

/// Counts of radial singularities `R_k` and transverse inflection lines `T_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoliationType {
    pub radial: BTreeMap<usize, usize>,
    pub transverse: BTreeMap<usize, usize>,
}

impl FoliationType {
    /// Number of distinct critical points.
    pub fn degree(&self) -> usize {
        self.radial.values().chain(self.transverse.values()).sum()
    }

    /// `sum k (r_k + t_k)`.
    pub fn weight(&self) -> usize {
        self.radial
            .iter()
            .chain(self.transverse.iter())
            .map(|(k, n)| k * n)
            .sum()
    }
}

impl fmt::Display for FoliationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, n) in &self.radial {
            parts.push(format!("{n}·R_{k}"));
        }
        for (k, n) in &self.transverse {
            parts.push(format!("{n}·T_{k}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Inflection divisor split into its invariant and transverse parts.
#[derive(Clone, Debug)]
pub struct InflectionDivisor {
    /// `z * C_H * prod g_k^k` over fixed critical factors.
    pub invariant: Poly3,
    /// `prod h_k^k` over non-fixed critical factors.
    pub transverse: HomPoly2,
}

/// Chart in which a singularity is located.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Affine chart `z = 1`, coordinates `(x, y)`.
    Affine,
    /// Chart `(u, v) = (y/x, 1/x)` around `[1:u:0]`.
    InfinityU,
    /// Chart `(u, v) = (x/y, 1/y)` around `[0:1:0]`.
    InfinitySwapped,
}

impl Chart {
    pub fn name(&self) -> &'static str {
        match self {
            Chart::Affine => "affine",
            Chart::InfinityU => "L∞-chart-u",
            Chart::InfinitySwapped => "L∞-chart-swapped",
        }
    }
}

/// Local data of a singular point.
#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub chart: Chart,
    pub coords: Vec<Num>,
    pub on_line_infinity: bool,
    /// Milnor number, `None` when not determined.
    pub milnor: Option<usize>,
    /// `(tangent, transverse)` eigenvalues along the invariant line.
    pub eigenvalues: Option<(Num, Num)>,
    /// Camacho-Sad index along the line at infinity.
    pub cs: Option<Num>,
    /// Baum-Bott index.
    pub bb: Option<Num>,
    pub radial_order: usize,
}

impl SingularityReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.milnor == Some(1)
    }

    /// Homogeneous coordinates `[x:y:z]` as complex numbers.
    pub fn projective_point(&self) -> [Cdd; 3] {
        let c: Vec<Cdd> = self.coords.iter().map(|n| n.embed()).collect();
        match self.chart {
            Chart::Affine => [c[0], c[1], Cdd::ONE],
            Chart::InfinityU => [Cdd::ONE, c[0], Cdd::ZERO],
            Chart::InfinitySwapped => [c[0], Cdd::ONE, Cdd::ZERO],
        }
    }

    pub fn label(&self) -> String {
        let c: Vec<String> = self.coords.iter().map(|n| n.to_string()).collect();
        match self.chart {
            Chart::Affine => format!("[{}:{}:1]", c[0], c[1]),
            Chart::InfinityU => format!("[1:{}:0]", c[0]),
            Chart::InfinitySwapped => format!("[{}:1:0]", c[0]),
        }
    }
}

/// Outcome of one global identity.
#[derive(Clone, Debug, PartialEq)]
pub enum IdentityStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

/// Named identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub status: IdentityStatus,
}

/// Invariant line of a homogeneous foliation.
#[derive(Clone, Debug)]
pub enum InvariantLine {
    Exact(ProjLine),
    /// Line `y - r x = 0` with a non-exact slope.
    Approx {
        slope: Cdd,
    },
}

/// Homogeneous foliation given by `A dx + B dy` with coprime `A`, `B` of degree `d - 1`.
#[derive(Clone, Debug)]
pub struct HomFoliation {
    d: usize,
    a: HomPoly2,
    b: HomPoly2,
    c: HomPoly2,
    gauss: OnceLock<Result<GaussAnalysis>>,
}

/// Validates `A dx + B dy` and caches the tangent cone.
pub fn make_hom_foliation(a: HomPoly2, b: HomPoly2) -> Result<HomFoliation> {
    HomFoliation::new(a, b)
}

fn is_unit(g: &HomPoly2) -> bool {
    g.degree() == 0
}

impl HomFoliation {
    pub fn new(a: HomPoly2, b: HomPoly2) -> Result<HomFoliation> {
        if a.degree() != b.degree() {
            return Err(Error::Precondition(format!(
                "components of different degree {} and {}",
                a.degree(),
                b.degree()
            )));
        }
        if a.degree() == 0 {
            return Err(Error::Precondition(
                "components must have degree at least 1".into(),
            ));
        }
        if a.is_zero() && b.is_zero() {
            return Err(Error::Degenerate("A = B = 0".into()));
        }
        let parametric = !(a.is_const_coeffs() && b.is_const_coeffs());
        if parametric {
            let mut ok = false;
            let mut witness = String::new();
            for (n, dn) in PARAM_PROBES {
                let v = Scalar::frac(n, dn);
                let (av, bv) = (a.eval_t(&v), b.eval_t(&v));
                if av.is_zero() && bv.is_zero() {
                    continue;
                }
                let g = av.gcd(&bv)?;
                if is_unit(&g) {
                    ok = true;
                    break;
                }
                witness = g.to_string();
            }
            if !ok {
                return Err(Error::NonSaturated(witness));
            }
        } else {
            let g = a.gcd(&b)?;
            if !is_unit(&g) {
                return Err(Error::NonSaturated(g.to_string()));
            }
        }
        let c = HomPoly2::x().mul(&a).add(&HomPoly2::y().mul(&b));
        Ok(HomFoliation {
            d: a.degree() + 1,
            a,
            b,
            c,
            gauss: OnceLock::new(),
        })
    }

    /// Degree of the pre-foliation `l ⊠ H`; the foliation itself has degree `d - 1`.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &HomPoly2 {
        &self.a
    }

    pub fn b(&self) -> &HomPoly2 {
        &self.b
    }

    /// Tangent cone `x A + y B`.
    pub fn tangent_cone(&self) -> &HomPoly2 {
        &self.c
    }

    pub fn is_parametric(&self) -> bool {
        !(self.a.is_const_coeffs() && self.b.is_const_coeffs())
    }

    /// Least common conductor of the coefficients.
    pub fn order(&self) -> u32 {
        use num_integer::Integer;
        self.a.order().lcm(&self.b.order())
    }

    /// Substitutes the parameter `t := v`.
    pub fn eval_t(&self, v: &Scalar) -> Result<HomFoliation> {
        HomFoliation::new(self.a.eval_t(v), self.b.eval_t(v))
    }

    /// `(A_x B_y - A_y B_x)/(d - 1)`, whose dehomogenization is `a b' - a' b`.
    pub fn wronskian(&self) -> HomPoly2 {
        let n = Scalar::int((self.d - 1) as i64);
        let w = self
            .a
            .dx()
            .mul(&self.b.dy())
            .sub(&self.a.dy().mul(&self.b.dx()));
        w.scale(&n.inv().expect("nonzero"))
    }

    /// Gauss map at an exact point; `Infinity` where `B` vanishes.
    pub fn gauss_at(&self, p: &P1Point) -> Result<P1Point> {
        let (x, y) = match p {
            P1Point::Finite(Num::Exact(r)) => (Scalar::one(), r.clone()),
            P1Point::Infinity => (Scalar::zero(), Scalar::one()),
            P1Point::Finite(Num::Approx(z)) => return Ok(self.gauss_at_c(Cdd::ONE, *z)),
        };
        let av = self.a.eval(&x, &y);
        let bv = self.b.eval(&x, &y);
        P1Point::from_pair(&Num::Exact(-av), &Num::Exact(bv))
    }

    /// Gauss map at the direction `(x, y)` given numerically.
    pub fn gauss_at_c(&self, x: Cdd, y: Cdd) -> P1Point {
        let av = self.a.eval_c(x, y);
        let bv = self.b.eval_c(x, y);
        let scale = av.abs().max(bv.abs());
        if bv.abs() <= 1e-28 * scale {
            P1Point::Infinity
        } else {
            P1Point::Finite(Num::Approx(-av / bv))
        }
    }

    /// Critical points of the Gauss map.
    pub fn gauss_map(&self) -> Result<&GaussAnalysis> {
        self.gauss
            .get_or_init(|| self.compute_gauss())
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn compute_gauss(&self) -> Result<GaussAnalysis> {
        if self.is_parametric() {
            return Err(Error::Unsupported(
                "Gauss map analysis of a parametric foliation".into(),
            ));
        }
        let extra = self.order();
        let w = self.wronskian();
        let mut critical = Vec::new();
        let mut fixed_factors = Vec::new();
        let mut nonfixed_factors = Vec::new();
        if w.degree() == 0 {
            return Ok(GaussAnalysis {
                critical,
                fixed_factors,
                nonfixed_factors,
            });
        }
        let cone_sqf = if self.c.is_zero() {
            Vec::new()
        } else {
            self.c.hom_sqfree()?
        };
        for (f, k) in w.hom_sqfree()? {
            let mut fixed_part = HomPoly2::constant(Scalar::one());
            for (cj, j) in &cone_sqf {
                let g = f.gcd(cj)?;
                if g.degree() == 0 {
                    continue;
                }
                for (pt, m) in roots_p1_in(&g, extra)? {
                    debug_assert_eq!(m, 1);
                    critical.push(CriticalPoint {
                        point: pt,
                        nu: k + 1,
                        fixed: true,
                        fixed_mult: *j,
                    });
                }
                fixed_part = fixed_part.mul(&g);
            }
            let h = f.exact_div(&fixed_part)?;
            if fixed_part.degree() > 0 {
                fixed_factors.push((fixed_part, k));
            }
            if h.degree() > 0 {
                for (pt, _) in roots_p1_in(&h, extra)? {
                    critical.push(CriticalPoint {
                        point: pt,
                        nu: k + 1,
                        fixed: false,
                        fixed_mult: 0,
                    });
                }
                nonfixed_factors.push((h, k));
            }
        }
        critical.sort_by(|a, b| a.point.cmp_order(&b.point));
        Ok(GaussAnalysis {
            critical,
            fixed_factors,
            nonfixed_factors,
        })
    }

    /// Type of the foliation: radial `R_k` and transverse `T_k` counts with `k = nu - 1`.
    pub fn foliation_type(&self) -> Result<FoliationType> {
        let g = self.gauss_map()?;
        let mut t = FoliationType::default();
        for c in &g.critical {
            let slot = if c.fixed {
                t.radial.entry(c.nu - 1)
            } else {
                t.transverse.entry(c.nu - 1)
            };
            *slot.or_insert(0) += 1;
        }
        Ok(t)
    }

    pub fn is_convex(&self) -> Result<bool> {
        Ok(self.gauss_map()?.is_convex())
    }

    /// Inflection divisor `I = I_inv * I_tr`.
    pub fn inflection_divisor(&self) -> Result<InflectionDivisor> {
        let g = self.gauss_map()?;
        let mut tr = HomPoly2::constant(Scalar::one());
        for (h, k) in &g.nonfixed_factors {
            tr = tr.mul(&h.pow(*k as u32));
        }
        let mut inv = self.c.clone();
        for (f, k) in &g.fixed_factors {
            inv = inv.mul(&f.pow(*k as u32));
        }
        let invariant = Poly3::from_hom(&inv).mul(&Poly3::var(2));
        Ok(InflectionDivisor {
            invariant,
            transverse: tr,
        })
    }

    fn radial_order_at(&self, p: &P1Point) -> Result<usize> {
        let g = self.gauss_map()?;
        Ok(g.critical
            .iter()
            .find(|c| c.fixed && c.point.close_to(p, 1e-20))
            .map(|c| c.nu - 1)
            .unwrap_or(0))
    }

    /// Singular points: the origin and the points of the line at infinity on the tangent cone.
    pub fn singularities(&self) -> Result<Vec<SingularityReport>> {
        let mut out = Vec::new();
        let d = self.d;
        // Origin.
        let mut origin = SingularityReport {
            chart: Chart::Affine,
            coords: vec![Num::int(0), Num::int(0)],
            on_line_infinity: false,
            milnor: Some((d - 1) * (d - 1)),
            eigenvalues: None,
            cs: None,
            bb: None,
            radial_order: 0,
        };
        if d == 2 {
            // Linear field (B, -A).
            let bx = self.b.dx().coeff(0).clone();
            let by = self.b.dy().coeff(0).clone();
            let ax = self.a.dx().coeff(0).clone();
            let ay = self.a.dy().coeff(0).clone();
            let tr = &bx - &ay;
            let det = &(&(-&bx) * &ay) + &(&by * &ax);
            if !det.is_zero() {
                origin.bb = Some(Num::Exact((&tr * &tr).checked_div(&det)?));
            }
        }
        out.push(origin);
        if self.c.is_zero() {
            return Ok(out);
        }
        let extra = self.order();
        for (pt, mult) in roots_p1_in(&self.c, extra)? {
            let radial = self.radial_order_at(&pt)?;
            let rep = match &pt {
                P1Point::Finite(u0) => {
                    let cu = self.c.dehom();
                    let bu = self.b.dehom();
                    let (lt, ltr) = match u0 {
                        Num::Exact(s) => (
                            Num::Exact(-cu.derivative().eval(s)),
                            Num::Exact(-bu.eval(s)),
                        ),
                        Num::Approx(z) => (
                            Num::Approx(-cu.derivative().eval_c(*z)),
                            Num::Approx(-bu.eval_c(*z)),
                        ),
                    };
                    self.report(Chart::InfinityU, u0.clone(), mult, lt, ltr, radial)?
                }
                P1Point::Infinity => {
                    // C(u', 1) has linear coefficient c_{d-1}.
                    let lt = -self.c.coeff(d - 1);
                    let ltr = -self.a.coeff(d - 1);
                    self.report(
                        Chart::InfinitySwapped,
                        Num::int(0),
                        mult,
                        Num::Exact(lt),
                        Num::Exact(ltr),
                        radial,
                    )?
                }
            };
            out.push(rep);
        }
        Ok(out)
    }

    fn report(
        &self,
        chart: Chart,
        u: Num,
        mult: usize,
        lt: Num,
        ltr: Num,
        radial: usize,
    ) -> Result<SingularityReport> {
        let nondeg = mult == 1;
        let (eig, cs, bb) = if nondeg {
            let cs = ltr.div(&lt)?;
            let sum = lt.add(&ltr);
            let bb = sum.mul(&sum).div(&lt.mul(&ltr))?;
            (Some((lt, ltr)), Some(cs), Some(bb))
        } else {
            (None, None, None)
        };
        Ok(SingularityReport {
            chart,
            coords: vec![u, Num::int(0)],
            on_line_infinity: true,
            milnor: Some(mult),
            eigenvalues: eig,
            cs,
            bb,
            radial_order: radial,
        })
    }

    /// Camacho-Sad polynomial `prod (lambda - CS(s))` over the points of the line at infinity.
    pub fn cs_polynomial(&self) -> Result<UniPoly> {
        if self.c.is_zero() {
            return Err(Error::Unsupported(
                "tangent cone vanishes identically".into(),
            ));
        }
        let def = self.c.x_deficiency();
        if def > 1 {
            return Err(Error::Unsupported(
                "degenerate singularity [0:1:0] on the line at infinity".into(),
            ));
        }
        let cu = self.c.dehom();
        if !self.is_parametric() {
            for (f, k) in cu.squarefree()? {
                if k > 1 {
                    let pts = roots_uni(&f, self.order())?;
                    return Err(Error::Unsupported(format!(
                        "degenerate singularity [1:{}:0] on the line at infinity",
                        pts[0].0
                    )));
                }
            }
        } else {
            return Err(Error::Unsupported(
                "Camacho-Sad polynomial of a parametric foliation".into(),
            ));
        }
        let mut poly = UniPoly::one();
        if cu.degree().unwrap_or(0) > 0 {
            // Res_u(C(1,u), t C'(u) - B(1,u)) in the auxiliary variable t.
            let g = cu.derivative().scale(&Scalar::t()).sub(&self.b.dehom());
            let r = resultant(&cu, &g)?;
            poly = UniPoly::new(r.t_coeffs().iter().cloned().map(Scalar::from_cyc).collect())
                .monic()?;
        }
        if def == 1 {
            let cs_inf = self
                .a
                .coeff(self.d - 1)
                .checked_div(self.c.coeff(self.d - 1))?;
            poly = poly.mul(&UniPoly::linear_root(&cs_inf));
        }
        Ok(poly)
    }

    /// Riemann-Hurwitz, Milnor, Camacho-Sad and Baum-Bott sums.
    pub fn check_global_identities(&self) -> Result<Vec<IdentityCheck>> {
        let d = self.d;
        let mut out = Vec::new();
        let g = self.gauss_map()?;
        let rh = g.ramification_total();
        out.push(IdentityCheck {
            name: "riemann-hurwitz",
            status: if rh == 2 * d - 4 {
                IdentityStatus::Pass
            } else {
                IdentityStatus::Fail(format!("sum (nu-1) = {rh}, expected {}", 2 * d - 4))
            },
        });
        let sings = self.singularities()?;
        let n = d - 1;
        if self.c.is_zero() {
            out.push(IdentityCheck {
                name: "milnor-sum",
                status: IdentityStatus::Skipped("tangent cone vanishes identically".into()),
            });
        } else {
            let mu: usize = sings.iter().map(|s| s.milnor.unwrap_or(0)).sum();
            let want = n * n + n + 1;
            out.push(IdentityCheck {
                name: "milnor-sum",
                status: if mu == want {
                    IdentityStatus::Pass
                } else {
                    IdentityStatus::Fail(format!("sum mu = {mu}, expected {want}"))
                },
            });
        }
        let at_inf: Vec<&SingularityReport> = sings.iter().filter(|s| s.on_line_infinity).collect();
        if !at_inf.is_empty() && at_inf.iter().all(|s| s.cs.is_some()) {
            let sum = at_inf
                .iter()
                .fold(Num::int(0), |acc, s| acc.add(s.cs.as_ref().unwrap()));
            out.push(IdentityCheck {
                name: "camacho-sad-sum",
                status: num_equals(&sum, &Num::int(1)),
            });
        } else {
            out.push(IdentityCheck {
                name: "camacho-sad-sum",
                status: IdentityStatus::Skipped(
                    "degenerate singularity on the line at infinity".into(),
                ),
            });
        }
        if sings.iter().all(|s| s.bb.is_some()) {
            let sum = sings
                .iter()
                .fold(Num::int(0), |acc, s| acc.add(s.bb.as_ref().unwrap()));
            let want = ((n + 2) * (n + 2)) as i64;
            out.push(IdentityCheck {
                name: "baum-bott-sum",
                status: num_equals(&sum, &Num::int(want)),
            });
        } else {
            out.push(IdentityCheck {
                name: "baum-bott-sum",
                status: IdentityStatus::Skipped("degenerate singularity present".into()),
            });
        }
        Ok(out)
    }

    /// The line at infinity and the lines through the origin over the roots of the tangent cone.
    pub fn invariant_lines(&self) -> Result<Vec<InvariantLine>> {
        let mut out = vec![InvariantLine::Exact(ProjLine::infinity())];
        if self.c.is_zero() {
            return Ok(out);
        }
        for (pt, _) in roots_p1_in(&self.c, self.order())? {
            out.push(match pt {
                P1Point::Finite(Num::Exact(r)) => {
                    InvariantLine::Exact(ProjLine::through_origin_slope(&r))
                }
                P1Point::Finite(Num::Approx(z)) => InvariantLine::Approx { slope: z },
                P1Point::Infinity => InvariantLine::Exact(ProjLine::from_ints(1, 0, 0)),
            });
        }
        Ok(out)
    }

    /// Canonical text `A dx + B dy`.
    pub fn form_string(&self) -> String {
        crate::cli::parser::format_form(&self.a, &self.b)
    }
}

fn num_equals(a: &Num, b: &Num) -> IdentityStatus {
    match (a, b) {
        (Num::Exact(x), Num::Exact(y)) => {
            if x == y {
                IdentityStatus::Pass
            } else {
                IdentityStatus::Fail(format!("got {x}, expected {y}"))
            }
        }
        _ => {
            let diff = (a.embed() - b.embed()).abs();
            if diff <= 1e-20 * (1.0 + b.embed().abs()) {
                IdentityStatus::Pass
            } else {
                IdentityStatus::Fail(format!("got {a}, expected {b} (|diff| = {diff:e})"))
            }
        }
    }
}

impl fmt::Display for HomFoliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h1_2() -> HomFoliation {
        HomFoliation::new(
            HomPoly2::from_ints(&[0, 0, 1]),
            HomPoly2::from_ints(&[-1, 0, 0]),
        )
        .unwrap()
    }

    #[test]
    fn tangent_cone_of_h1() {
        assert_eq!(*h1_2().tangent_cone(), HomPoly2::from_ints(&[0, -1, 1, 0]));
    }

    #[test]
    fn common_factor_is_rejected() {
        let r = HomFoliation::new(
            HomPoly2::from_ints(&[0, 0, 1]),
            HomPoly2::from_ints(&[0, 1, 0]),
        );
        assert!(matches!(r, Err(Error::NonSaturated(_))));
        let z = HomFoliation::new(HomPoly2::zero(2), HomPoly2::zero(2));
        assert!(matches!(z, Err(Error::Degenerate(_))));
    }

    #[test]
    fn wronskian_matches_dehomogenized_form() {
        let h = HomFoliation::new(
            HomPoly2::from_ints(&[1, 2, -1, 3]),
            HomPoly2::from_ints(&[0, 1, 1, -2]),
        )
        .unwrap();
        let a = h.a().dehom();
        let b = h.b().dehom();
        let w = a.mul(&b.derivative()).sub(&a.derivative().mul(&b));
        assert_eq!(h.wronskian().dehom(), w);
    }

    #[test]
    fn type_of_h1() {
        assert_eq!(h1_2().foliation_type().unwrap().to_string(), "2·R_1");
    }

    #[test]
    fn cs_of_h1() {
        let p = h1_2().cs_polynomial().unwrap();
        let expect = UniPoly::new(vec![
            Scalar::int(1),
            Scalar::int(-1),
            Scalar::int(-1),
            Scalar::int(1),
        ]);
        assert_eq!(p, expect);
    }
}
