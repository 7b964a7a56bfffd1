//! Exact flatness criteria for the Legendre web of a homogeneous pre-foliation.
//!
//! Each discriminant component `p = p0` other than the dual of the origin is tested by a
//! sum over the fiber of the Gauss map above `p0`. Two evaluation routes are kept:
//!
//! * the polynomial route through `P_i` and `Q_i`, exact whenever the critical points are;
//! * the fiber-sum route through pairwise sums over every fiber point, which also works
//!   when the fiber is only known numerically.
//!
//! The decision uses the first available route and checks it against the second.

pub mod classify;
pub mod eta;
pub mod symbolic;

use std::fmt;

use crate::algebra::{roots_p1_in, Cdd, HomPoly2, Num, P1Point, Scalar};
use crate::error::{Error, Result};
use crate::foliation::HomFoliation;
use crate::prefoliation::discriminant::{discriminant, line_direction, transverse_images};
use crate::prefoliation::{ComponentTag, PreFoliation, ProjLine};

pub use classify::{classify, ClassifiedModel};
pub use eta::{eta_pole_part, leg_line_slope_data, EtaPole, SlopeData};
pub use symbolic::{fermat_degeneration_polynomial, flat_locus, symbolic_condition};

/// Relative threshold below which a numeric criterion sum counts as zero.
pub const ZERO_TOL: f64 = 1e-25;

/// Threshold for two evaluation routes of the same sum to count as equal.
const ROUTE_TOL: f64 = 1e-15;

/// Tolerance used to match numeric points of the projective line.
const POINT_TOL: f64 = 1e-20;

/// Holomorphy verdict of the curvature along one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The criterion sum vanishes.
    Holomorphic,
    /// The criterion sum does not vanish: the curvature has a pole.
    Pole,
    /// Holomorphic without testing, by the structure of the component.
    AutoHolomorphic,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Holomorphic => "holomorphic",
            Verdict::Pole => "pole",
            Verdict::AutoHolomorphic => "auto-holomorphic",
        }
    }

    /// Whether the curvature is holomorphic along the component.
    pub fn is_regular(&self) -> bool {
        !matches!(self, Verdict::Pole)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Overall answer of [`is_flat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    Flat,
    NotFlat,
}

impl Overall {
    pub fn name(&self) -> &'static str {
        match self {
            Overall::Flat => "flat",
            Overall::NotFlat => "not_flat",
        }
    }
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One point of a fiber of the Gauss map.
#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub point: P1Point,
    /// Ramification index.
    pub nu: usize,
    /// Whether the point is fixed by the Gauss map.
    pub fixed: bool,
}

impl FiberPoint {
    pub fn is_nonfixed_critical(&self) -> bool {
        self.nu >= 2 && !self.fixed
    }
}

/// Fiber of the Gauss map above `p0`.
#[derive(Clone, Debug)]
pub struct FiberAnalysis {
    pub p0: P1Point,
    pub points: Vec<FiberPoint>,
    /// Whether the direction of the line of the pre-foliation lies in the fiber.
    pub contains_line_direction: bool,
}

impl FiberAnalysis {
    pub fn nonfixed_critical(&self) -> impl Iterator<Item = &FiberPoint> {
        self.points.iter().filter(|p| p.is_nonfixed_critical())
    }

    pub fn has_nonfixed_critical(&self) -> bool {
        self.nonfixed_critical().next().is_some()
    }

    pub fn is_exact(&self) -> bool {
        self.points.iter().all(|p| p.point.is_exact())
    }

    /// Index of the point matching `pt`.
    pub fn index_of(&self, pt: &P1Point) -> Option<usize> {
        self.points
            .iter()
            .position(|p| p.point.close_to(pt, POINT_TOL))
    }
}

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionValue {
    pub verdict: Verdict,
    /// Identifier of the rule that decided the verdict.
    pub rule: &'static str,
    /// Value of the criterion expression; `None` when nothing was evaluated.
    pub residual: Option<Num>,
    /// Normalized residual of the independent second route, when it ran.
    pub second_route: Option<f64>,
}

impl CriterionValue {
    fn auto(rule: &'static str) -> CriterionValue {
        CriterionValue {
            verdict: Verdict::AutoHolomorphic,
            rule,
            residual: None,
            second_route: None,
        }
    }
}

/// Verdict for one discriminant component.
#[derive(Clone, Debug)]
pub struct ComponentVerdict {
    pub tag: ComponentTag,
    /// `p0` of the component; `None` for the dual of the origin.
    pub p0: Option<P1Point>,
    pub verdict: Verdict,
    pub rule: &'static str,
    pub residual: Option<Num>,
    pub second_route: Option<f64>,
}

/// Flat or not, with the per-component evidence.
#[derive(Clone, Debug)]
pub struct FlatnessDecision {
    pub overall: Overall,
    pub components: Vec<ComponentVerdict>,
    /// Shear `(x, y) -> (x + k y, y)` applied before testing, if one was needed.
    pub rotation: Option<i64>,
}

impl FlatnessDecision {
    pub fn is_flat(&self) -> bool {
        self.overall == Overall::Flat
    }
}

// ---------------------------------------------------------------------------
// Numeric helpers

/// Running sum that also tracks the magnitude of its terms.
#[derive(Clone, Debug)]
struct Sum {
    value: Num,
    scale: f64,
}

impl Sum {
    fn new() -> Sum {
        Sum {
            value: Num::int(0),
            scale: 0.0,
        }
    }

    fn push(&mut self, t: Num) {
        self.scale += t.embed().abs();
        self.value = self.value.add(&t);
    }

    fn is_zero(&self) -> bool {
        match &self.value {
            Num::Exact(s) => s.is_zero(),
            Num::Approx(z) => z.abs() <= ZERO_TOL * self.scale,
        }
    }

    fn normalized(&self) -> f64 {
        let a = self.value.embed().abs();
        if self.scale == 0.0 {
            a
        } else {
            a / self.scale
        }
    }

    fn verdict(&self) -> Verdict {
        if self.is_zero() {
            Verdict::Holomorphic
        } else {
            Verdict::Pole
        }
    }
}

fn ev(p: &HomPoly2, x: &Num, y: &Num) -> Num {
    match (x, y) {
        (Num::Exact(a), Num::Exact(b)) => Num::Exact(p.eval(a, b)),
        _ => Num::Approx(p.eval_c(x.embed(), y.embed())),
    }
}

fn sc(n: i64) -> Num {
    Num::int(n)
}

fn frac(n: i64, d: i64) -> Num {
    Num::Exact(Scalar::frac(n, d))
}

fn exact_pair(pt: &P1Point) -> Option<(Scalar, Scalar)> {
    let (a, b) = pt.homogeneous();
    Some((a.as_exact()?.clone(), b.as_exact()?.clone()))
}

fn finite_p0(p0: &P1Point) -> Result<Num> {
    p0.finite().cloned().ok_or_else(|| {
        Error::Precondition("criterion needs a finite critical value; apply a shear first".into())
    })
}

// ---------------------------------------------------------------------------
// Fibers

/// Fiber of the Gauss map of `h` above `p0`, with ramification indices.
///
/// `line_dir` is the direction `[-a:b]` of the line of the pre-foliation, if any.
pub fn fiber(h: &HomFoliation, p0: &P1Point, line_dir: Option<&P1Point>) -> Result<FiberAnalysis> {
    let g = h.gauss_map()?;
    let mut points: Vec<FiberPoint> = Vec::new();
    if p0.is_exact() {
        let form = match p0 {
            P1Point::Infinity => h.b().clone(),
            P1Point::Finite(n) => {
                let s = n.as_exact().expect("exact point");
                h.a().add(&h.b().scale(s))
            }
        };
        for (pt, nu) in roots_p1_in(&form, h.order())? {
            let fixed = pt.close_to(p0, POINT_TOL);
            points.push(FiberPoint {
                point: pt,
                nu,
                fixed,
            });
        }
    } else {
        let z0 = p0.finite().expect("numeric points are finite").embed();
        let mut coeffs: Vec<Cdd> = h
            .a()
            .coeffs()
            .iter()
            .zip(h.b().coeffs())
            .map(|(a, b)| embed(a) + z0 * embed(b))
            .collect();
        for c in &g.critical {
            if !h.gauss_at(&c.point)?.close_to(p0, 1e-18) {
                continue;
            }
            match &c.point {
                P1Point::Infinity => {
                    let n = coeffs.len();
                    coeffs.truncate(n - c.nu);
                }
                P1Point::Finite(r) => {
                    for _ in 0..c.nu {
                        coeffs = deflate(&coeffs, r.embed());
                    }
                }
            }
            points.push(FiberPoint {
                point: c.point.clone(),
                nu: c.nu,
                fixed: c.fixed,
            });
        }
        if coeffs.len() > 1 {
            for pt in crate::algebra::roots::roots_p1_numeric(&coeffs)? {
                let fixed = pt.close_to(p0, 1e-18);
                points.push(FiberPoint {
                    point: pt,
                    nu: 1,
                    fixed,
                });
            }
        }
    }
    // Ramification from the Gauss map analysis must agree with root multiplicities.
    for fp in &points {
        if fp.nu >= 2 {
            let known = g
                .critical
                .iter()
                .find(|c| c.point.close_to(&fp.point, POINT_TOL))
                .map(|c| c.nu);
            if known != Some(fp.nu) {
                return Err(Error::Precondition(format!(
                    "fiber point {} has multiplicity {} but ramification {:?}",
                    fp.point, fp.nu, known
                )));
            }
        }
    }
    let total: usize = points.iter().map(|p| p.nu).sum();
    if total != h.d() - 1 {
        return Err(Error::Numeric {
            what: format!(
                "fiber above {p0} has total multiplicity {total}, expected {}",
                h.d() - 1
            ),
            residuals: Vec::new(),
        });
    }
    points.sort_by(|a, b| a.point.cmp_order(&b.point));
    let contains_line_direction =
        line_dir.is_some_and(|d| points.iter().any(|p| p.point.close_to(d, POINT_TOL)));
    Ok(FiberAnalysis {
        p0: p0.clone(),
        points,
        contains_line_direction,
    })
}

fn embed(s: &Scalar) -> Cdd {
    s.embed().expect("constant coefficient")
}

/// Divides `sum c[i] z^i` by `z - r`, dropping the remainder.
fn deflate(c: &[Cdd], r: Cdd) -> Vec<Cdd> {
    let n = c.len() - 1;
    let mut out = vec![Cdd::ZERO; n];
    let mut acc = Cdd::ZERO;
    for i in (1..=n).rev() {
        acc = acc * r + c[i];
        out[i - 1] = acc;
    }
    out
}

// ---------------------------------------------------------------------------
// The polynomials P and Q

/// `P = det[[A, A(b,a)], [B, B(b,a)]] / (b y - a x)^nu` and
/// `Q = c1 (B_x - A_y) P + c2 (P_x B - P_y A)` for the exact point `[a:b]`.
///
/// Ordinary fiber points use `(c1, c2) = (nu - 2, 2(nu + 1))`; the line direction uses
/// `(nu - 1, 2 nu + 1)`.
pub fn pq_polynomials(
    h: &HomFoliation,
    point: &P1Point,
    nu: usize,
    coeffs: (Scalar, Scalar),
) -> Result<(HomPoly2, HomPoly2)> {
    let (a, b) = exact_pair(point)
        .ok_or_else(|| Error::Precondition(format!("point {point} is not exact")))?;
    let (av, bv) = (h.a().eval(&b, &a), h.b().eval(&b, &a));
    let det = h.a().scale(&bv).sub(&h.b().scale(&av));
    let l = HomPoly2::linear(-&a, b.clone());
    let p = det.exact_div(&l.pow(nu as u32)).map_err(|_| {
        Error::Precondition(format!(
            "({l})^{nu} does not divide the determinant at {point}: wrong ramification"
        ))
    })?;
    let (c1, c2) = coeffs;
    let curl = h.b().dx().sub(&h.a().dy());
    let q = curl
        .mul(&p)
        .scale(&c1)
        .add(&p.dx().mul(h.b()).sub(&p.dy().mul(h.a())).scale(&c2));
    Ok((p, q))
}

fn ordinary_coeffs(nu: usize) -> (Scalar, Scalar) {
    let n = nu as i64;
    (Scalar::int(n - 2), Scalar::int(2 * (n + 1)))
}

fn line_coeffs(nu: usize) -> (Scalar, Scalar) {
    let n = nu as i64;
    (Scalar::int(n - 1), Scalar::int(2 * n + 1))
}

/// `Q / (B P)` at `(b, a)` through [`pq_polynomials`]; `None` for a numeric point.
fn qbp_poly(
    h: &HomFoliation,
    point: &P1Point,
    nu: usize,
    coeffs: (Scalar, Scalar),
) -> Result<Option<Num>> {
    let Some((a, b)) = exact_pair(point) else {
        return Ok(None);
    };
    let (p, q) = pq_polynomials(h, point, nu, coeffs)?;
    let den = &h.b().eval(&b, &a) * &p.eval(&b, &a);
    Ok(Some(Num::Exact(q.eval(&b, &a).checked_div(&den)?)))
}

/// `Q / (B P)` at `(b, a)` through sums over the other fiber points:
/// `c1 (B_x - A_y)/B + c2 sum_j nu_j (p0 b_j - a_j)/(a b_j - a_j b)`.
fn qbp_sum(
    h: &HomFoliation,
    (a, b): (&Num, &Num),
    others: &[&FiberPoint],
    p0: &Num,
    (c1, c2): (i64, i64),
) -> Result<Num> {
    let curl = h.b().dx().sub(&h.a().dy());
    let mut acc = ev(&curl, b, a).mul(&sc(c1)).div(&ev(h.b(), b, a))?;
    for fp in others {
        let (aj, bj) = fp.point.homogeneous();
        let num = p0.mul(&bj).sub(&aj).mul(&sc(fp.nu as i64));
        let den = a.mul(&bj).sub(&aj.mul(b));
        acc = acc.add(&num.div(&den)?.mul(&sc(c2)));
    }
    Ok(acc)
}

/// Line `alpha x + beta y` through the origin.
#[derive(Clone, Debug)]
struct OriginLine {
    alpha: Scalar,
    beta: Scalar,
}

impl OriginLine {
    fn of(pref: &PreFoliation) -> Option<OriginLine> {
        let l = pref.line();
        if l.is_infinity() {
            None
        } else {
            Some(OriginLine {
                alpha: l.a().clone(),
                beta: l.b().clone(),
            })
        }
    }

    /// `alpha + p0 beta`.
    fn at(&self, p0: &Num) -> Num {
        Num::Exact(self.alpha.clone()).add(&p0.mul(&Num::Exact(self.beta.clone())))
    }

    /// `alpha b + beta a`.
    fn pair(&self, a: &Num, b: &Num) -> Num {
        b.mul(&Num::Exact(self.alpha.clone()))
            .add(&a.mul(&Num::Exact(self.beta.clone())))
    }

    fn direction(&self) -> P1Point {
        if self.beta.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::exact((-&self.alpha).checked_div(&self.beta).expect("nonzero"))
        }
    }
}

// ---------------------------------------------------------------------------
// Criteria for components other than the line component

/// Sum over the fiber for a component `p = p0`; `line = None` drops the line terms.
fn fiber_criterion_sum(
    h: &HomFoliation,
    fib: &FiberAnalysis,
    line: Option<&OriginLine>,
    poly_route: bool,
) -> Result<Option<Sum>> {
    let p0 = finite_p0(&fib.p0)?;
    let mut s = Sum::new();
    for (i, fp) in fib.points.iter().enumerate() {
        if !fp.is_nonfixed_critical() {
            continue;
        }
        let (a, b) = fp.point.homogeneous();
        let qbp = if poly_route {
            match qbp_poly(h, &fp.point, fp.nu, ordinary_coeffs(fp.nu))? {
                Some(v) => v,
                None => return Ok(None),
            }
        } else {
            let others: Vec<&FiberPoint> = fib
                .points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q)
                .collect();
            let nu = fp.nu as i64;
            qbp_sum(h, (&a, &b), &others, &p0, (nu - 2, 2 * (nu + 1)))?
        };
        let mut inner = qbp;
        if let Some(l) = line {
            let extra = l.at(&p0).mul(&sc(3 * fp.nu as i64)).div(&l.pair(&a, &b))?;
            inner = inner.add(&extra);
        }
        let coef = frac(fp.nu as i64 - 1, fp.nu as i64).mul(&p0.mul(&b).sub(&a));
        s.push(coef.mul(&inner));
    }
    Ok(Some(s))
}

/// Formula for fibers whose points all have the same ramification `nu >= 2`.
fn equal_nu_sum(h: &HomFoliation, fib: &FiberAnalysis, line: Option<&OriginLine>) -> Result<Sum> {
    let p0 = finite_p0(&fib.p0)?;
    let curl = h.b().dx().sub(&h.a().dy());
    let mut s = Sum::new();
    for fp in fib.points.iter().filter(|p| !p.fixed) {
        let (a, b) = fp.point.homogeneous();
        let nu = fp.nu as i64;
        let mut inner = ev(&curl, &b, &a).mul(&sc(nu - 2)).div(&ev(h.b(), &b, &a))?;
        if let Some(l) = line {
            inner = inner.add(&l.at(&p0).mul(&sc(3 * nu)).div(&l.pair(&a, &b))?);
        }
        s.push(p0.mul(&b).sub(&a).mul(&inner));
    }
    Ok(s)
}

fn has_equal_nu(fib: &FiberAnalysis) -> bool {
    let nu = fib.points[0].nu;
    nu >= 2 && fib.points.iter().all(|p| p.nu == nu)
}

/// Runs the primary route and checks it against the fiber-sum route.
fn decide_with_routes(
    rule: &'static str,
    primary: Sum,
    second: Option<Sum>,
) -> Result<CriterionValue> {
    let verdict = primary.verdict();
    let second_route = match &second {
        Some(s) => {
            if s.verdict() != verdict {
                return Err(Error::Numeric {
                    what: format!(
                        "criterion routes disagree under rule {rule}: {} vs {}",
                        primary.value, s.value
                    ),
                    residuals: vec![primary.normalized(), s.normalized()],
                });
            }
            Some(s.normalized())
        }
        None => None,
    };
    Ok(CriterionValue {
        verdict,
        rule,
        residual: Some(primary.value),
        second_route,
    })
}

fn component_criterion(
    h: &HomFoliation,
    fib: &FiberAnalysis,
    line: Option<&OriginLine>,
    sum_rule: &'static str,
) -> Result<CriterionValue> {
    if !fib.points.iter().any(|p| p.nu >= 2) {
        return Err(Error::Precondition(format!(
            "{} is not a critical value",
            fib.p0
        )));
    }
    if !fib.has_nonfixed_critical() {
        return Ok(CriterionValue {
            residual: Some(Num::int(0)),
            ..CriterionValue::auto("no-nonfixed-critical")
        });
    }
    let second = fiber_criterion_sum(h, fib, line, false)?;
    if has_equal_nu(fib) {
        let primary = equal_nu_sum(h, fib, line)?;
        return decide_with_routes("fiber-sum-equal-nu", primary, second);
    }
    match fiber_criterion_sum(h, fib, line, true)? {
        Some(primary) => {
            if let (Some(s), true) = (&second, primary.value.is_exact()) {
                let gap = primary.value.sub(&s.value).embed().abs();
                if gap > ROUTE_TOL * (primary.scale + s.scale).max(1e-300) {
                    return Err(Error::Numeric {
                        what: format!("polynomial and fiber-sum routes differ under {sum_rule}"),
                        residuals: vec![gap],
                    });
                }
            }
            decide_with_routes(sum_rule, primary, second)
        }
        None => decide_with_routes(sum_rule, second.expect("fiber-sum route"), None),
    }
}

/// Holomorphy of the curvature along a component `p = p0` other than the line component.
pub fn criterion_component_d(pref: &PreFoliation, p0: &P1Point) -> Result<CriterionValue> {
    let h = homogeneous_part(pref)?;
    let line = OriginLine::of(pref).ok_or_else(|| {
        Error::Precondition("the line is at infinity; use criterion_legh_component".into())
    })?;
    let dir = line.direction();
    let fib = fiber(h, p0, Some(&dir))?;
    if fib.contains_line_direction && !pref.line_invariant() {
        return Err(Error::Precondition(
            "the line direction lies in the fiber; use criterion_component_dell".into(),
        ));
    }
    component_criterion(h, &fib, Some(&line), "fiber-sum")
}

/// Holomorphy along `p = p0` of the curvature of the Legendre web of `H` alone.
pub fn criterion_legh_component(h: &HomFoliation, p0: &P1Point) -> Result<CriterionValue> {
    let fib = fiber(h, p0, None)?;
    component_criterion(h, &fib, None, "leg-h-fiber-sum")
}

// ---------------------------------------------------------------------------
// The line component

/// Holomorphy of the curvature along the component `G(l)` contributed by a non-invariant line.
pub fn criterion_component_dell(pref: &PreFoliation) -> Result<CriterionValue> {
    let h = homogeneous_part(pref)?;
    let line = OriginLine::of(pref).ok_or_else(|| {
        Error::Precondition("the line is at infinity: no line component to test".into())
    })?;
    if pref.line_invariant() {
        return Err(Error::Precondition(
            "the line is invariant: its component is not tested separately".into(),
        ));
    }
    let dir = line.direction();
    let p0 = h.gauss_at(&dir)?;
    let fib = fiber(h, &p0, Some(&dir))?;
    let i0 = fib.index_of(&dir).ok_or_else(|| Error::Numeric {
        what: "line direction missing from its own fiber".into(),
        residuals: Vec::new(),
    })?;
    let second = dell_sum(h, &fib, i0, &line, false)?;
    let (beta, malpha) = (Num::Exact(line.beta.clone()), Num::Exact(-&line.alpha));
    if !fib.has_nonfixed_critical() {
        let (be, ma) = (line.beta.clone(), -&line.alpha);
        if h.d() == 3 {
            let (av, bv) = (h.a().eval(&be, &ma), h.b().eval(&be, &ma));
            let r = h.tangent_cone().eval(&bv, &(-&av));
            let mut s = Sum::new();
            s.push(Num::Exact(r));
            return decide_with_routes("line-fiber-tangent-cone-d3", s, second);
        }
        let (p, _) = pq_polynomials(h, &dir, 1, line_coeffs(1))?;
        let (av, bv) = (h.a().eval(&be, &ma), h.b().eval(&be, &ma));
        let q = p.dx().scale(&bv).sub(&p.dy().scale(&av));
        let mut s = Sum::new();
        s.push(ev(&q, &beta, &malpha));
        return decide_with_routes("line-fiber-no-nonfixed", s, second);
    }
    match dell_sum(h, &fib, i0, &line, true)? {
        Some(primary) => decide_with_routes("line-fiber-sum", primary, second),
        None => decide_with_routes("line-fiber-sum", second.expect("fiber-sum route"), None),
    }
}

/// The full sum for the line component, by either route.
fn dell_sum(
    h: &HomFoliation,
    fib: &FiberAnalysis,
    i0: usize,
    line: &OriginLine,
    poly_route: bool,
) -> Result<Option<Sum>> {
    let p0 = finite_p0(&fib.p0)?;
    let nu0 = fib.points[i0].nu;
    let (a0, b0) = (Num::Exact(-&line.alpha), Num::Exact(line.beta.clone()));
    let lp = line.at(&p0);
    let mut s = Sum::new();
    let lead = if poly_route {
        match qbp_poly(h, &fib.points[i0].point, nu0, line_coeffs(nu0))? {
            Some(v) => v,
            None => return Ok(None),
        }
    } else {
        let others: Vec<&FiberPoint> = fib
            .points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i0)
            .map(|(_, q)| q)
            .collect();
        let n = nu0 as i64;
        qbp_sum(h, (&a0, &b0), &others, &p0, (n - 1, 2 * n + 1))?
    };
    s.push(frac(nu0 as i64 + 1, nu0 as i64).mul(&lp).mul(&lead));
    for (i, fp) in fib.points.iter().enumerate() {
        if i == i0 || !fp.is_nonfixed_critical() {
            continue;
        }
        let (a, b) = fp.point.homogeneous();
        let qbp = if poly_route {
            match qbp_poly(h, &fp.point, fp.nu, ordinary_coeffs(fp.nu))? {
                Some(v) => v,
                None => return Ok(None),
            }
        } else {
            let others: Vec<&FiberPoint> = fib
                .points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q)
                .collect();
            let nu = fp.nu as i64;
            qbp_sum(h, (&a, &b), &others, &p0, (nu - 2, 2 * (nu + 1)))?
        };
        let extra = lp.mul(&sc(3 * fp.nu as i64)).div(&line.pair(&a, &b))?;
        let coef = frac(fp.nu as i64 - 1, fp.nu as i64).mul(&p0.mul(&b).sub(&a));
        s.push(coef.mul(&qbp.add(&extra)));
    }
    Ok(Some(s))
}

// ---------------------------------------------------------------------------
// Transverse inflection lines

/// Closed-form criteria attached to a transverse inflection line `t` through the origin.
///
/// When `t` is the line of the pre-foliation and has maximal order the verdict is whether
/// `d(A dx + B dy)` vanishes on it. When the line is alone among the non-fixed critical
/// points of its fiber, a single evaluation of `P` and `Q` decides. Otherwise the general
/// criteria are used.
pub fn inflection_line_criteria(pref: &PreFoliation, t: &ProjLine) -> Result<CriterionValue> {
    let h = homogeneous_part(pref)?;
    if !t.through_origin() || t.is_infinity() {
        return Err(Error::Precondition(format!(
            "{t} is not a line through the origin"
        )));
    }
    let tl = OriginLine {
        alpha: t.a().clone(),
        beta: t.b().clone(),
    };
    let tdir = tl.direction();
    let crit = h
        .gauss_map()?
        .critical
        .iter()
        .find(|c| !c.fixed && c.point.close_to(&tdir, POINT_TOL))
        .ok_or_else(|| Error::Precondition(format!("{t} is not a transverse inflection line")))?;
    let nu = crit.nu;
    let d = h.d();
    let p0 = h.gauss_at(&tdir)?;
    let is_line = pref.line() == t;
    let curl = h.b().dx().sub(&h.a().dy());
    let (be, ma) = (t.b().clone(), -t.a());
    if is_line {
        if nu == d - 1 {
            let mut s = Sum::new();
            s.push(Num::Exact(curl.eval(&be, &ma)));
            return decide_with_routes("line-inflection-maximal", s, None);
        }
        let fib = fiber(h, &p0, Some(&tdir))?;
        if fib.nonfixed_critical().count() == 1 {
            let (p, q) = pq_polynomials(h, &tdir, nu, line_coeffs(nu))?;
            let _ = p;
            let mut s = Sum::new();
            s.push(Num::Exact(q.eval(&be, &ma)));
            return decide_with_routes("line-inflection-sole-critical", s, None);
        }
        return criterion_component_dell(pref);
    }
    let line = OriginLine::of(pref);
    let Some(line) = line else {
        return criterion_legh_component(h, &p0);
    };
    let (al, bl) = (line.alpha.clone(), line.beta.clone());
    // `alpha b - beta a` and `alpha B - beta A` at `(b, -a)` for `t = a x + b y`.
    let cross = &(&al * t.b()) - &(&bl * t.a());
    let mixed = &(&al * &h.b().eval(&be, &ma)) - &(&bl * &h.a().eval(&be, &ma));
    if nu == d - 1 {
        let v = &(&Scalar::int(d as i64 - 3) * &(&cross * &curl.eval(&be, &ma)))
            + &(&Scalar::int(3 * (d as i64 - 1)) * &mixed);
        let mut s = Sum::new();
        s.push(Num::Exact(v));
        return decide_with_routes("inflection-maximal", s, None);
    }
    let dir = line.direction();
    let fib = fiber(h, &p0, Some(&dir))?;
    if fib.nonfixed_critical().count() == 1 && !fib.contains_line_direction {
        let (p, q) = pq_polynomials(h, &tdir, nu, ordinary_coeffs(nu))?;
        let v = &(&cross * &q.eval(&be, &ma))
            + &(&Scalar::int(3 * nu as i64) * &(&mixed * &p.eval(&be, &ma)));
        let mut s = Sum::new();
        s.push(Num::Exact(v));
        return decide_with_routes("inflection-sole-critical", s, None);
    }
    criterion_component_d(pref, &p0)
}

// ---------------------------------------------------------------------------
// Decision

fn homogeneous_part(pref: &PreFoliation) -> Result<&HomFoliation> {
    let h = pref.hom().ok_or_else(|| {
        Error::Unsupported("exact criteria need a homogeneous pre-foliation".into())
    })?;
    if h.is_parametric() || !pref.line().is_const() {
        return Err(Error::Unsupported(
            "exact criteria need numeric parameters; substitute t first".into(),
        ));
    }
    Ok(h)
}

/// Shear `(x, y) -> (x + k y, y)` applied to a homogeneous pre-foliation.
pub fn shear(pref: &PreFoliation, k: i64) -> Result<PreFoliation> {
    let h = homogeneous_part(pref)?;
    let (one, zero, ks) = (Scalar::one(), Scalar::zero(), Scalar::int(k));
    let a = h.a().subst_linear(&one, &ks, &zero, &one);
    let b = h.b().subst_linear(&one, &ks, &zero, &one);
    let b = a.scale(&ks).add(&b);
    let h2 = HomFoliation::new(a, b)?;
    let l = pref.line();
    let line = if l.is_infinity() {
        ProjLine::infinity()
    } else {
        let beta = &(l.a() * &ks) + l.b();
        ProjLine::new(l.a().clone(), beta, Scalar::zero())?
    };
    PreFoliation::homogeneous(line, h2)
}

fn needs_shear(pref: &PreFoliation) -> Result<bool> {
    let h = homogeneous_part(pref)?;
    let line = pref.line();
    if line.is_infinity() && h.d() == 3 {
        return Ok(false);
    }
    if transverse_images(h)?
        .iter()
        .any(|c| c.p0.as_ref().is_some_and(|p| p.is_infinity()))
    {
        return Ok(true);
    }
    if !line.is_infinity() && !pref.line_invariant() {
        return Ok(h.gauss_at(&line_direction(pref))?.is_infinity());
    }
    Ok(false)
}

/// Largest shear tried before giving up.
const MAX_SHEAR: i64 = 64;

/// Decides whether the Legendre web of a homogeneous pre-foliation is flat.
pub fn is_flat(pref: &PreFoliation) -> Result<FlatnessDecision> {
    let h = homogeneous_part(pref)?;
    if h.d() < 3 {
        return Err(Error::Unsupported(format!(
            "flatness criteria need degree at least 3, got {}",
            h.d()
        )));
    }
    if !needs_shear(pref)? {
        return decide(pref, None);
    }
    for k in 1..=MAX_SHEAR {
        let moved = shear(pref, k)?;
        if !needs_shear(&moved)? {
            return decide(&moved, Some(k));
        }
    }
    Err(Error::Numeric {
        what: "no shear makes the critical values finite".into(),
        residuals: Vec::new(),
    })
}

fn decide(pref: &PreFoliation, rotation: Option<i64>) -> Result<FlatnessDecision> {
    let h = homogeneous_part(pref)?;
    let disc = discriminant(pref)?;
    let at_infinity = pref.line().is_infinity();
    let invariant = pref.line_invariant();
    let line = OriginLine::of(pref);
    let dir = line.as_ref().map(|l| l.direction());

    // Tested components first, so coinciding lines reuse their verdicts.
    let mut tested: Vec<(P1Point, CriterionValue)> = Vec::new();
    let dell_p0 = match (&line, invariant) {
        (Some(_), false) => {
            let p0 = h.gauss_at(dir.as_ref().expect("line direction"))?;
            tested.push((p0.clone(), criterion_component_dell(pref)?));
            Some(p0)
        }
        _ => None,
    };
    for c in disc.by_tag(ComponentTag::TransverseInflectionImage) {
        let p0 = c.p0.clone().expect("vertical component");
        if tested.iter().any(|(q, _)| q.close_to(&p0, POINT_TOL)) {
            continue;
        }
        let v = if at_infinity {
            if h.d() == 3 {
                CriterionValue::auto("d3-line-at-infinity")
            } else {
                criterion_legh_component(h, &p0)?
            }
        } else {
            let fib = fiber(h, &p0, dir.as_ref())?;
            component_criterion(h, &fib, line.as_ref(), "fiber-sum")?
        };
        tested.push((p0, v));
    }
    let lookup = |p0: &P1Point| {
        tested
            .iter()
            .find(|(q, _)| q.close_to(p0, POINT_TOL))
            .map(|(_, v)| v.clone())
    };

    let mut components = Vec::new();
    for c in &disc.components {
        let v = match (&c.tag, &c.p0) {
            (ComponentTag::DualOfOrigin, _) | (_, None) => CriterionValue::auto("dual-of-origin"),
            (ComponentTag::LineComponent, Some(p0)) if invariant => match lookup(p0) {
                Some(v) => v,
                None => {
                    let fib = fiber(h, p0, dir.as_ref())?;
                    if fib.has_nonfixed_critical() {
                        return Err(Error::Precondition(format!(
                            "invariant line component {p0} meets a transverse inflection image"
                        )));
                    }
                    CriterionValue::auto("invariant-line")
                }
            },
            (_, Some(p0)) => match lookup(p0) {
                Some(v) => v,
                None => {
                    debug_assert!(dell_p0.as_ref().is_none_or(|q| !q.close_to(p0, POINT_TOL)));
                    CriterionValue::auto("outside-transverse-image")
                }
            },
        };
        components.push(ComponentVerdict {
            tag: c.tag,
            p0: c.p0.clone(),
            verdict: v.verdict,
            rule: v.rule,
            residual: v.residual,
            second_route: v.second_route,
        });
    }
    let overall = if components.iter().all(|c| c.verdict.is_regular()) {
        Overall::Flat
    } else {
        Overall::NotFlat
    };
    Ok(FlatnessDecision {
        overall,
        components,
        rotation,
    })
}

#[cfg(test)]
mod tests;
