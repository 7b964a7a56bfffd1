//! Foliations given by an affine 1-form with graded homogeneous components.

use crate::algebra::matrix::resultant;
use crate::algebra::roots::{roots_uni, simple_roots};
use crate::algebra::{Cdd, Cyc, HomPoly2, Num, Poly3, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::foliation::{Chart, HomFoliation};

/// Affine 1-form `sum_i (A_i dx + B_i dy)` with `A_i`, `B_i` homogeneous of degree `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenFoliation {
    comps: Vec<(HomPoly2, HomPoly2)>,
}

/// Local data at a singular point of a general foliation.
#[derive(Clone, Debug)]
pub struct GenSingularity {
    pub chart: Chart,
    pub coords: Vec<Num>,
    /// `Some(1)` when the Jacobian is invertible, `None` otherwise.
    pub milnor: Option<usize>,
    pub trace: Num,
    pub det: Num,
    pub bb: Option<Num>,
    /// Jacobian is a nonzero multiple of the identity.
    pub radial: bool,
    /// Camacho-Sad index along the line at infinity, for points on it.
    pub cs_infinity: Option<Num>,
}

impl GenSingularity {
    pub fn on_line_infinity(&self) -> bool {
        self.chart != Chart::Affine
    }

    pub fn label(&self) -> String {
        let c: Vec<String> = self.coords.iter().map(|n| n.to_string()).collect();
        match self.chart {
            Chart::Affine => format!("[{}:{}:1]", c[0], c[1]),
            Chart::InfinityU => format!("[1:{}:0]", c[0]),
            Chart::InfinitySwapped => format!("[{}:1:0]", c[0]),
        }
    }

    /// Direction on the line at infinity as a slope `y/x`, `None` for `[0:1:0]`.
    pub fn infinity_slope(&self) -> Option<&Num> {
        match self.chart {
            Chart::InfinityU => Some(&self.coords[0]),
            _ => None,
        }
    }
}

fn split_homogeneous(p: &Poly3) -> Result<Vec<HomPoly2>> {
    if p.terms().any(|(e, _)| e[2] != 0) {
        return Err(Error::Precondition(
            "affine form must only involve x and y".into(),
        ));
    }
    let top = p.total_degree().unwrap_or(0) as usize;
    Ok((0..=top)
        .map(|k| {
            p.homogeneous_part(k as u32)
                .to_hom(k)
                .expect("homogeneous part")
        })
        .collect())
}

impl GenFoliation {
    /// Builds the form from graded components `(A_i, B_i)` indexed by degree.
    pub fn new(comps: Vec<(HomPoly2, HomPoly2)>) -> Result<GenFoliation> {
        for (i, (a, b)) in comps.iter().enumerate() {
            if a.degree() != i || b.degree() != i {
                return Err(Error::Precondition(format!(
                    "component {i} must be homogeneous of degree {i}"
                )));
            }
        }
        let mut comps = comps;
        while comps
            .last()
            .is_some_and(|(a, b)| a.is_zero() && b.is_zero())
        {
            comps.pop();
        }
        if comps.is_empty() {
            return Err(Error::Degenerate("zero 1-form".into()));
        }
        Ok(GenFoliation { comps })
    }

    /// Builds the form `A dx + B dy` from affine polynomials in `x`, `y`.
    pub fn from_affine(a: &Poly3, b: &Poly3) -> Result<GenFoliation> {
        let pa = split_homogeneous(a)?;
        let pb = split_homogeneous(b)?;
        let n = pa.len().max(pb.len());
        let comps = (0..n)
            .map(|i| {
                (
                    pa.get(i).cloned().unwrap_or_else(|| HomPoly2::zero(i)),
                    pb.get(i).cloned().unwrap_or_else(|| HomPoly2::zero(i)),
                )
            })
            .collect();
        GenFoliation::new(comps)
    }

    /// A homogeneous foliation seen as a general one.
    pub fn from_hom(h: &HomFoliation) -> GenFoliation {
        let n = h.d() - 1;
        let comps = (0..=n)
            .map(|i| {
                if i == n {
                    (h.a().clone(), h.b().clone())
                } else {
                    (HomPoly2::zero(i), HomPoly2::zero(i))
                }
            })
            .collect();
        GenFoliation { comps }
    }

    pub fn components(&self) -> &[(HomPoly2, HomPoly2)] {
        &self.comps
    }

    fn top(&self) -> usize {
        self.comps.len() - 1
    }

    /// Whether the top component satisfies `x A_N + y B_N = 0`.
    fn top_cone_vanishes(&self) -> bool {
        let (a, b) = &self.comps[self.top()];
        HomPoly2::x().mul(a).add(&HomPoly2::y().mul(b)).is_zero()
    }

    /// Degree of the foliation on the projective plane.
    pub fn degree(&self) -> usize {
        if self.top_cone_vanishes() {
            self.top() - 1
        } else {
            self.top()
        }
    }

    /// Whether the line at infinity is invariant.
    pub fn infinity_invariant(&self) -> bool {
        !self.top_cone_vanishes()
    }

    pub fn is_const_coeffs(&self) -> bool {
        self.comps
            .iter()
            .all(|(a, b)| a.is_const_coeffs() && b.is_const_coeffs())
    }

    /// Least common conductor of the coefficients.
    pub fn order(&self) -> u32 {
        use num_integer::Integer;
        self.comps
            .iter()
            .fold(1u32, |acc, (a, b)| acc.lcm(&a.order()).lcm(&b.order()))
    }

    /// Affine components `(A, B)` as polynomials in `x`, `y`.
    pub fn affine(&self) -> (Poly3, Poly3) {
        let mut a = Poly3::zero();
        let mut b = Poly3::zero();
        for (ai, bi) in &self.comps {
            a = a.add(&Poly3::from_hom(ai));
            b = b.add(&Poly3::from_hom(bi));
        }
        (a, b)
    }

    /// Homogeneous projective form `(P, Q, R)` with `x P + y Q + z R = 0`, saturated by `z`.
    pub fn projective(&self) -> [Poly3; 3] {
        let n = self.top() as u32;
        let z = Poly3::var(2);
        let mut p = Poly3::zero();
        let mut q = Poly3::zero();
        let mut r = Poly3::zero();
        for (i, (a, b)) in self.comps.iter().enumerate() {
            let zp = Poly3::monomial([0, 0, n - i as u32], Scalar::one());
            let pa = Poly3::from_hom(a);
            let pb = Poly3::from_hom(b);
            p = p.add(&pa.mul(&zp));
            q = q.add(&pb.mul(&zp));
            let cone = Poly3::var(0).mul(&pa).add(&Poly3::var(1).mul(&pb));
            r = r.sub(&cone.mul(&zp));
        }
        p = p.mul(&z);
        q = q.mul(&z);
        let k = [&p, &q, &r]
            .iter()
            .filter(|w| !w.is_zero())
            .map(|w| w.min_degree_in(2))
            .min()
            .unwrap_or(0);
        [p.shift_down(2, k), q.shift_down(2, k), r.shift_down(2, k)]
    }

    /// Whether the line `a x + b y + c z = 0` is invariant, tested exactly.
    pub fn is_line_invariant(&self, line: &crate::prefoliation::line::ProjLine) -> bool {
        let [a, b, c] = line.coeffs();
        let zero = Scalar::zero;
        let one = Scalar::one;
        // Two points spanning the kernel of (a, b, c).
        let (p1, p2) = if !a.is_zero() {
            ([-&b, a.clone(), zero()], [-&c, zero(), a.clone()])
        } else if !b.is_zero() {
            ([one(), zero(), zero()], [zero(), -&c, b.clone()])
        } else {
            ([one(), zero(), zero()], [zero(), one(), zero()])
        };
        let lam = Poly3::var(0);
        let mu = Poly3::var(1);
        let subs: [Poly3; 3] = std::array::from_fn(|i| lam.scale(&p1[i]).add(&mu.scale(&p2[i])));
        let omega = self.projective();
        let pulled: Vec<Poly3> = omega.iter().map(|w| w.compose(&subs)).collect();
        let mut c1 = Poly3::zero();
        let mut c2 = Poly3::zero();
        for i in 0..3 {
            c1 = c1.add(&pulled[i].scale(&p1[i]));
            c2 = c2.add(&pulled[i].scale(&p2[i]));
        }
        c1.is_zero() && c2.is_zero()
    }

    /// Substitutes the parameter `t := v`.
    pub fn eval_t(&self, v: &Scalar) -> Result<GenFoliation> {
        GenFoliation::new(
            self.comps
                .iter()
                .map(|(a, b)| (a.eval_t(v), b.eval_t(v)))
                .collect(),
        )
    }

    /// Singular points in the affine chart and on the line at infinity.
    pub fn singularities(&self) -> Result<Vec<GenSingularity>> {
        if !self.is_const_coeffs() {
            return Err(Error::Unsupported(
                "singularities of a parametric foliation".into(),
            ));
        }
        let mut out = self.affine_singularities()?;
        out.extend(self.infinity_singularities()?);
        Ok(out)
    }

    fn affine_singularities(&self) -> Result<Vec<GenSingularity>> {
        let (a, b) = self.affine();
        if a.is_zero() || b.is_zero() {
            return Err(Error::NonSaturated("one component vanishes".into()));
        }
        let extra = self.order();
        // Resultant in y with x carried by the parameter slot.
        let as_y = |p: &Poly3| -> UniPoly {
            let dy = p.degree_in(1).unwrap_or(0) as usize;
            let mut c = vec![Scalar::zero(); dy + 1];
            for (e, s) in p.terms() {
                let mut tc = vec![Cyc::zero(); e[0] as usize + 1];
                tc[e[0] as usize] = s.as_cyc().expect("constant coefficients");
                c[e[1] as usize] = &c[e[1] as usize] + &Scalar::from_t_coeffs(tc);
            }
            UniPoly::new(c)
        };
        let (ua, ub) = (as_y(&a), as_y(&b));
        if ua.degree() == Some(0) && ub.degree() == Some(0) {
            return Err(Error::NonSaturated("components free of y".into()));
        }
        let r = resultant(&ua, &ub)?;
        if r.is_zero() {
            return Err(Error::NonSaturated("components share a factor".into()));
        }
        let rx = UniPoly::new(r.t_coeffs().iter().cloned().map(Scalar::from_cyc).collect());
        let mut pts: Vec<(Num, Num)> = Vec::new();
        if rx.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        for (x0, _) in roots_uni(&rx, extra)? {
            match &x0 {
                Num::Exact(xs) => {
                    let fa = ua.eval_t(xs);
                    let fb = ub.eval_t(xs);
                    let g = if fa.is_zero() {
                        fb
                    } else if fb.is_zero() {
                        fa
                    } else {
                        fa.gcd(&fb)?
                    };
                    if g.degree().unwrap_or(0) == 0 {
                        continue;
                    }
                    for (y0, _) in roots_uni(&g, extra)? {
                        pts.push((x0.clone(), y0));
                    }
                }
                Num::Approx(xz) => {
                    for y in numeric_common_roots(&a, &b, *xz)? {
                        if !pts.iter().any(|(px, py)| {
                            (px.embed() - *xz).abs() < 1e-18 && (py.embed() - y).abs() < 1e-18
                        }) {
                            pts.push((Num::Approx(*xz), Num::Approx(y)));
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        // Vector field (B, -A).
        let f1 = b.clone();
        let f2 = a.neg();
        for (x0, y0) in pts {
            out.push(jacobian_report(
                Chart::Affine,
                &f1,
                &f2,
                [0, 1],
                &[x0.clone(), y0.clone()],
                2,
                None,
            )?);
        }
        Ok(out)
    }

    /// Singular points on the line at infinity.
    pub fn infinity_singularities(&self) -> Result<Vec<GenSingularity>> {
        let [p, q, r] = self.projective();
        let extra = self.order();
        let mut out = Vec::new();
        let one = Poly3::one();
        // Chart [1:u:v], field (R, -Q) in (u, v) = (y, z) at x = 1.
        let chart_u = |w: &Poly3| w.compose(&[one.clone(), Poly3::var(0), Poly3::var(1)]);
        let (ru, qu) = (chart_u(&r), chart_u(&q).neg());
        let pu = chart_u(&p);
        // Points with v = 0 where all three components vanish.
        let at_v0 = |w: &Poly3| -> UniPoly {
            let dy = w.degree_in(0).unwrap_or(0) as usize;
            let mut c = vec![Scalar::zero(); dy + 1];
            for (e, s) in w.terms() {
                if e[1] == 0 {
                    c[e[0] as usize] = &c[e[0] as usize] + s;
                }
            }
            UniPoly::new(c)
        };
        let polys: Vec<UniPoly> = [&ru, &qu, &pu]
            .iter()
            .map(|w| at_v0(w))
            .filter(|u| !u.is_zero())
            .collect();
        let mut g: Option<UniPoly> = None;
        for u in polys {
            g = Some(match g {
                None => u,
                Some(h) => h.gcd(&u)?,
            });
        }
        let g = g.unwrap_or_else(UniPoly::zero);
        if g.is_zero() {
            return Err(Error::NonSaturated("line at infinity is singular".into()));
        }
        if g.degree().unwrap_or(0) > 0 {
            for (u0, _) in roots_uni(&g, extra)? {
                out.push(jacobian_report(
                    Chart::InfinityU,
                    &ru,
                    &qu,
                    [0, 1],
                    &[u0, Num::int(0)],
                    2,
                    Some(()),
                )?);
            }
        }
        // Point [0:1:0], chart (u', v') = (x, z) at y = 1, field (R, -P).
        let chart_s = |w: &Poly3| w.compose(&[Poly3::var(0), one.clone(), Poly3::var(1)]);
        let (rs, ps, qs) = (chart_s(&r), chart_s(&p).neg(), chart_s(&q));
        let origin = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        if rs.eval(&origin).is_zero() && ps.eval(&origin).is_zero() && qs.eval(&origin).is_zero() {
            out.push(jacobian_report(
                Chart::InfinitySwapped,
                &rs,
                &ps,
                [0, 1],
                &[Num::int(0), Num::int(0)],
                2,
                Some(()),
            )?);
        }
        Ok(out)
    }

    /// Vector field `(B, -A)` evaluated at a complex affine point.
    pub fn field_c(&self, x: Cdd, y: Cdd) -> (Cdd, Cdd) {
        let (a, b) = self.affine();
        let pt = [x, y, Cdd::ZERO];
        (b.eval_c(&pt), -a.eval_c(&pt))
    }
}

/// Common roots in `y` of `A(x0, y)` and `B(x0, y)` at a numeric abscissa.
fn numeric_common_roots(a: &Poly3, b: &Poly3, x0: Cdd) -> Result<Vec<Cdd>> {
    let coeffs_y = |p: &Poly3| -> Vec<Cdd> {
        let dy = p.degree_in(1).unwrap_or(0) as usize;
        let mut c = vec![Cdd::ZERO; dy + 1];
        for (e, s) in p.terms() {
            let v = s.embed().expect("constant coefficients") * x0.powi(e[0]);
            c[e[1] as usize] = c[e[1] as usize] + v;
        }
        c
    };
    let ca = coeffs_y(a);
    let cb = coeffs_y(b);
    let base = if ca.len() >= 2 { &ca } else { &cb };
    let other = if ca.len() >= 2 { &cb } else { &ca };
    let cands = simple_roots(base).unwrap_or_default();
    let eval = |c: &[Cdd], y: Cdd| c.iter().rev().fold(Cdd::ZERO, |acc, k| acc * y + *k);
    let scale: f64 = other.iter().map(|z| z.abs()).sum::<f64>().max(1e-300);
    let mut out = Vec::new();
    for y in cands {
        let v = eval(other, y).abs() / (scale * (1.0 + y.abs()).powi(other.len() as i32));
        if v < 1e-14 {
            out.push(y);
        }
    }
    Ok(out)
}

/// Jacobian data of the planar field `(f1, f2)` in the variables `vars` at `pt`.
fn jacobian_report(
    chart: Chart,
    f1: &Poly3,
    f2: &Poly3,
    vars: [usize; 2],
    pt: &[Num],
    _n: usize,
    infinity: Option<()>,
) -> Result<GenSingularity> {
    let exact = pt.iter().all(|n| n.is_exact());
    let j: Vec<Num> = [
        f1.deriv(vars[0]),
        f1.deriv(vars[1]),
        f2.deriv(vars[0]),
        f2.deriv(vars[1]),
    ]
    .iter()
    .map(|d| {
        if exact {
            let s: Vec<Scalar> = pt.iter().map(|n| n.as_exact().unwrap().clone()).collect();
            Num::Exact(d.eval(&[s[0].clone(), s[1].clone(), Scalar::zero()]))
        } else {
            let c: Vec<Cdd> = pt.iter().map(|n| n.embed()).collect();
            Num::Approx(d.eval_c(&[c[0], c[1], Cdd::ZERO]))
        }
    })
    .collect();
    let trace = j[0].add(&j[3]);
    let det = j[0].mul(&j[3]).sub(&j[1].mul(&j[2]));
    let tiny = |n: &Num| match n {
        Num::Exact(s) => s.is_zero(),
        Num::Approx(z) => z.abs() < 1e-20,
    };
    let nondeg = !tiny(&det);
    let bb = if nondeg {
        Some(trace.mul(&trace).div(&det)?)
    } else {
        None
    };
    let radial = tiny(&j[1]) && tiny(&j[2]) && tiny(&j[0].sub(&j[3])) && !tiny(&j[0]);
    // Along v = 0 the field is triangular: tangent eigenvalue j[0], transverse j[3].
    let cs_infinity = match infinity {
        Some(()) if nondeg && tiny(&j[2]) => Some(j[3].div(&j[0])?),
        _ => None,
    };
    Ok(GenSingularity {
        chart,
        coords: pt.to_vec(),
        milnor: if nondeg { Some(1) } else { None },
        trace,
        det,
        bb,
        radial,
        cs_infinity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefoliation::line::ProjLine;

    fn fermat2() -> GenFoliation {
        // x dy - y dx + y^2 dx - x^2 dy
        GenFoliation::new(vec![
            (HomPoly2::zero(0), HomPoly2::zero(0)),
            (HomPoly2::from_ints(&[0, -1]), HomPoly2::from_ints(&[1, 0])),
            (
                HomPoly2::from_ints(&[0, 0, 1]),
                HomPoly2::from_ints(&[-1, 0, 0]),
            ),
        ])
        .unwrap()
    }

    #[test]
    fn fermat_lines_are_invariant() {
        let f = fermat2();
        for l in [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (-1, 1, 0),
            (0, 1, -1),
            (1, 0, -1),
        ] {
            assert!(
                f.is_line_invariant(&ProjLine::from_ints(l.0, l.1, l.2)),
                "{l:?}"
            );
        }
        assert!(!f.is_line_invariant(&ProjLine::from_ints(1, 1, -1)));
    }

    #[test]
    fn fermat_singularities() {
        let s = fermat2().singularities().unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(s.iter().filter(|p| p.radial).count(), 4);
    }
}
