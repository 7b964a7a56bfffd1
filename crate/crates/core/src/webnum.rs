//! Numeric curvature of implicit planar webs.
//!
//! Slopes come from root solving `F(p, q, x) = 0` in double-double precision with first
//! partials by implicit differentiation. The fundamental form is the sum of the three-web
//! forms over all triples of leaves and the curvature `K = d eta` is obtained by central
//! differences with one Richardson step. Webs with a leaf of infinite slope are handled by
//! a shear of the `(p, q)` plane, which leaves the `dp ∧ dq` coefficient unchanged.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::roots::simple_roots;
use crate::algebra::{Cdd, Poly3, Scalar};
use crate::error::{Error, Result};
use crate::prefoliation::web::{ImplicitWeb, P, Q, X};
use crate::prefoliation::{legendre_web, Foliation, PreFoliation, ProjLine};

/// Slopes closer than this, relative to their size, count as colliding.
pub const GAP_TOL: f64 = 1e-10;

/// Default relative finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Shear used when a leaf has infinite slope.
const SHEAR: (i64, i64) = (2, 7);

/// Slopes and their first partials at one point.
#[derive(Clone, Debug)]
pub struct WebPointState {
    pub p: Cdd,
    pub q: Cdd,
    /// Slopes `dq/dp` of the leaves, in the working chart.
    pub slopes: Vec<Cdd>,
    pub d_p: Vec<Cdd>,
    pub d_q: Vec<Cdd>,
    /// Smallest pairwise slope distance, relative to `1 + max |slope|`.
    pub min_gap: f64,
    /// `|dF/dx|` at each slope.
    pub fx_abs: Vec<f64>,
}

/// One curvature evaluation.
#[derive(Clone, Debug)]
pub struct CurvatureSample {
    pub p: Cdd,
    pub q: Cdd,
    /// `eta = a dp + b dq`.
    pub eta: (Cdd, Cdd),
    /// Coefficient of `dp ∧ dq` in `K`.
    pub k: Cdd,
    pub step: f64,
    /// Richardson error estimate of `k`.
    pub error: f64,
    /// Largest `|eta|` over the stencil.
    pub eta_max: f64,
}

impl CurvatureSample {
    fn norm(&self) -> f64 {
        (self.eta_max * self.eta_max).max(1e-300)
    }

    /// `|K|` relative to the square of the largest `|eta|` on the stencil.
    pub fn normalized_k(&self) -> f64 {
        let k = self.k.abs();
        if k <= 1e-28 {
            0.0
        } else {
            k / self.norm()
        }
    }

    pub fn normalized_error(&self) -> f64 {
        if self.error <= 1e-28 {
            0.0
        } else {
            self.error / self.norm()
        }
    }
}

/// Web prepared for repeated evaluation, possibly in sheared coordinates `u = p - c q`, `v = q`.
#[derive(Clone, Debug)]
pub struct PreparedWeb {
    order: usize,
    coeffs: Vec<Poly3>,
    f: Poly3,
    fu: Poly3,
    fv: Poly3,
    fs: Poly3,
    shear: Cdd,
}

fn cdd_of(s: &Scalar) -> Cdd {
    s.embed().expect("constant coefficient")
}

impl PreparedWeb {
    pub fn new(web: &ImplicitWeb) -> Result<PreparedWeb> {
        if !web.poly().is_const_coeffs() {
            return Err(Error::Unsupported(
                "numeric curvature of a parametric web".into(),
            ));
        }
        let order = web.order();
        if order == 0 {
            return Err(Error::Unsupported("web without leaves".into()));
        }
        let full = web.poly().degree_in(X).unwrap_or(0) as usize == order;
        let (f, c) = if full {
            (web.poly().clone(), Scalar::zero())
        } else {
            let c = Scalar::frac(SHEAR.0, SHEAR.1);
            (sheared(web, &c), c)
        };
        let coeffs = (0..=order as u32).map(|k| f.coeff_in(X, k)).collect();
        Ok(PreparedWeb {
            order,
            coeffs,
            fu: f.deriv(P),
            fv: f.deriv(Q),
            fs: f.deriv(X),
            f,
            shear: cdd_of(&c),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn to_work(&self, p: Cdd, q: Cdd) -> (Cdd, Cdd) {
        (p - self.shear * q, q)
    }

    /// Slopes and partials at working coordinates `(u, v)`.
    fn state_uv(&self, u: Cdd, v: Cdd, gap_tol: f64) -> Result<WebPointState> {
        let c: Vec<Cdd> = self
            .coeffs
            .iter()
            .map(|k| k.eval_c(&[u, v, Cdd::ZERO]))
            .collect();
        let scale = c.iter().map(|z| z.abs()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::NearDiscriminant { gap: 0.0 });
        }
        if c[self.order].abs() <= 1e-24 * scale {
            return Err(Error::NearDiscriminant { gap: 0.0 });
        }
        let slopes = simple_roots(&c)?;
        if slopes.len() != self.order {
            return Err(Error::NearDiscriminant { gap: 0.0 });
        }
        let size = 1.0 + slopes.iter().map(|z| z.abs()).fold(0.0, f64::max);
        let mut gap = f64::INFINITY;
        for i in 0..slopes.len() {
            for j in 0..i {
                gap = gap.min((slopes[i] - slopes[j]).abs() / size);
            }
        }
        if gap < gap_tol {
            return Err(Error::NearDiscriminant { gap });
        }
        let mut d_p = Vec::with_capacity(self.order);
        let mut d_q = Vec::with_capacity(self.order);
        let mut fx_abs = Vec::with_capacity(self.order);
        for &s in &slopes {
            let pt = [u, v, s];
            let norm: f64 = c
                .iter()
                .enumerate()
                .map(|(k, ck)| ck.abs() * s.abs().powi(k as i32))
                .sum();
            let res = self.f.eval_c(&pt).abs();
            if res > 1e-20 * norm.max(1e-300) {
                return Err(Error::Numeric {
                    what: format!("slope residual at {s}"),
                    residuals: vec![res / norm],
                });
            }
            let fs = self.fs.eval_c(&pt);
            fx_abs.push(fs.abs());
            d_p.push(-(self.fu.eval_c(&pt) / fs));
            d_q.push(-(self.fv.eval_c(&pt) / fs));
        }
        Ok(WebPointState {
            p: u + self.shear * v,
            q: v,
            slopes,
            d_p,
            d_q,
            min_gap: gap,
            fx_abs,
        })
    }

    /// Sum of the three-web forms over all triples, in working coordinates; zero below three leaves.
    fn eta_uv(&self, st: &WebPointState) -> Result<(Cdd, Cdd)> {
        let n = st.slopes.len();
        let leaf = |i: usize| Leaf {
            slope: st.slopes[i],
            d_x: st.d_p[i],
            d_y: st.d_q[i],
        };
        let (mut a, mut b) = (Cdd::ZERO, Cdd::ZERO);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (li, lj, lk) = (leaf(i), leaf(j), leaf(k));
                    let (ai, bi) = eta_triple(&li, &lj, &lk)?;
                    let res = eta_system_residual([&li, &lj, &lk], (ai, bi));
                    if !(res <= ETA_RESIDUAL_TOL) {
                        return Err(Error::Numeric {
                            what: "three-web form fails its defining system".into(),
                            residuals: vec![res],
                        });
                    }
                    a = a + ai;
                    b = b + bi;
                }
            }
        }
        Ok((a, b))
    }
}

/// `F(u + c v, v, s / (1 + c s)) (1 + c s)^order`.
fn sheared(web: &ImplicitWeb, c: &Scalar) -> Poly3 {
    let (u, v, s) = (Poly3::var(P), Poly3::var(Q), Poly3::var(X));
    let subs = [u.add(&v.scale(c)), v, Poly3::zero()];
    let one_cs = Poly3::one().add(&s.scale(c));
    let order = web.order() as u32;
    web.slope_coeffs()
        .iter()
        .enumerate()
        .fold(Poly3::zero(), |acc, (k, ck)| {
            let k = k as u32;
            acc.add(&ck.compose(&subs).mul(&s.pow(k)).mul(&one_cs.pow(order - k)))
        })
}

/// Slope `dy/dx` of a leaf and its first partials.
#[derive(Clone, Copy, Debug)]
pub struct Leaf {
    pub slope: Cdd,
    pub d_x: Cdd,
    pub d_y: Cdd,
}

/// Relative residual above which a three-web form is rejected.
pub const ETA_RESIDUAL_TOL: f64 = 1e-12;

/// Fundamental form `a dx + b dy` of the 3-web of leaves `dy - slope dx = 0`.
pub fn eta_triple(r: &Leaf, s: &Leaf, t: &Leaf) -> Result<(Cdd, Cdd)> {
    let size = 1.0 + r.slope.abs().max(s.slope.abs()).max(t.slope.abs());
    for (u, w) in [(r, s), (s, t), (t, r)] {
        if (u.slope - w.slope).abs() <= 1e-30 * size {
            return Err(Error::Precondition("colliding slopes in a 3-web".into()));
        }
    }
    // d_y(l_u l_w) - d_x l_z over (l_u - l_z)(l_w - l_z), cyclically.
    let term = |u: &Leaf, w: &Leaf, z: &Leaf| {
        let num = u.d_y * w.slope + u.slope * w.d_y - z.d_x;
        num / ((u.slope - z.slope) * (w.slope - z.slope))
    };
    let (t0, t1, t2) = (term(s, t, r), term(s, r, t), term(t, r, s));
    let a = -(t0 * r.slope + t1 * t.slope + t2 * s.slope);
    let b = t0 + t1 + t2;
    Ok((a, b))
}

/// Residuals of the defining system `d(delta_st w_r) = eta ∧ delta_st w_r` over the three
/// cyclic choices, with `w_r = dy - l_r dx` and `delta_st = l_t - l_s`.
///
/// Exact partials of `delta_st` are used, so the residual only measures `eta`.
pub fn eta_system_residual(leaves: [&Leaf; 3], eta: (Cdd, Cdd)) -> f64 {
    let (a, b) = eta;
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        let (r, s, t) = (leaves[i], leaves[(i + 1) % 3], leaves[(i + 2) % 3]);
        let delta = t.slope - s.slope;
        let ddx = t.d_x - s.d_x;
        let ddy = t.d_y - s.d_y;
        // d(delta w_r) = (d_x delta + d_y(delta l_r)) dx ∧ dy.
        let lhs = ddx + ddy * r.slope + delta * r.d_y;
        let rhs = delta * (a + b * r.slope);
        let scale = lhs.abs() + rhs.abs() + 1e-300;
        worst = worst.max((lhs - rhs).abs() / scale.max(1.0));
    }
    worst
}

/// Slopes and partials of a web at `(p, q)`; slopes are `dq/dp` in the working chart.
pub fn slopes_at(web: &ImplicitWeb, p: Cdd, q: Cdd) -> Result<WebPointState> {
    let pw = PreparedWeb::new(web)?;
    let (u, v) = pw.to_work(p, q);
    pw.state_uv(u, v, GAP_TOL)
}

/// Fundamental form `a dp + b dq` at one point.
pub fn eta_at(web: &PreparedWeb, p: Cdd, q: Cdd) -> Result<(Cdd, Cdd)> {
    let (u, v) = web.to_work(p, q);
    let st = web.state_uv(u, v, GAP_TOL)?;
    let (a, b) = web.eta_uv(&st)?;
    Ok((a, b - web.shear * a))
}

/// Matches slopes at a stencil point to the predictions from the base point.
fn track(base: &WebPointState, st: &WebPointState, du: Cdd, dv: Cdd) -> Result<()> {
    let n = base.slopes.len();
    let mut used = vec![false; n];
    for i in 0..n {
        let pred = base.slopes[i] + base.d_p[i] * du + base.d_q[i] * dv;
        let (j, dist) = st
            .slopes
            .iter()
            .enumerate()
            .map(|(j, s)| (j, (*s - pred).abs()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("nonempty");
        if used[j] {
            return Err(Error::NearDiscriminant { gap: dist });
        }
        used[j] = true;
    }
    Ok(())
}

/// Curvature at `(p, q)` with relative step `step`.
pub fn curvature_at(web: &PreparedWeb, p: Cdd, q: Cdd, step: f64) -> Result<CurvatureSample> {
    let (u, v) = web.to_work(p, q);
    let base = web.state_uv(u, v, GAP_TOL)?;
    let eta0 = web.eta_uv(&base)?;
    let h = step * 1f64.max(u.abs()).max(v.abs());
    let mut eta_max = eta0.0.abs().max(eta0.1.abs());
    let mut diff = |h: f64| -> Result<Cdd> {
        let hd = Cdd::real(h);
        let mut eval = |du: Cdd, dv: Cdd| -> Result<(Cdd, Cdd)> {
            let st = web.state_uv(u + du, v + dv, GAP_TOL)?;
            track(&base, &st, du, dv)?;
            let e = web.eta_uv(&st)?;
            eta_max = eta_max.max(e.0.abs()).max(e.1.abs());
            Ok(e)
        };
        let (_, b_plus) = eval(hd, Cdd::ZERO)?;
        let (_, b_minus) = eval(-hd, Cdd::ZERO)?;
        let (a_plus, _) = eval(Cdd::ZERO, hd)?;
        let (a_minus, _) = eval(Cdd::ZERO, -hd)?;
        let two_h = Cdd::real(2.0 * h);
        Ok((b_plus - b_minus) / two_h - (a_plus - a_minus) / two_h)
    };
    let d1 = diff(h)?;
    let d2 = diff(h / 2.0)?;
    let k = (Cdd::real(4.0) * d2 - d1) / Cdd::real(3.0);
    let error = (k - d2).abs();
    Ok(CurvatureSample {
        p,
        q,
        eta: (eta0.0, eta0.1 - web.shear * eta0.0),
        k,
        step: h,
        error,
        eta_max,
    })
}

/// Outcome of [`flatness_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    ProbablyFlat,
    NotFlat,
    /// Reliable samples exist, but none is decisive either way.
    Indeterminate,
}

impl ProbeVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ProbeVerdict::ProbablyFlat => "probably_flat",
            ProbeVerdict::NotFlat => "not_flat",
            ProbeVerdict::Indeterminate => "indeterminate",
        }
    }
}

/// Sampling parameters.
#[derive(Clone, Debug)]
pub struct ProbeConfig {
    pub samples: usize,
    pub tol_accept: f64,
    pub tol_reject: f64,
    pub seed: u64,
    /// Worker threads; `0` uses the global pool.
    pub jobs: usize,
    pub step: f64,
    /// Candidate points tried per requested sample before giving up.
    pub budget_factor: usize,
}

impl Default for ProbeConfig {
    fn default() -> ProbeConfig {
        ProbeConfig {
            samples: 8,
            tol_accept: 1e-6,
            tol_reject: 1e-3,
            seed: 0x5eed,
            jobs: 0,
            step: DEFAULT_STEP,
            budget_factor: 20,
        }
    }
}

/// Result of [`flatness_probe`].
#[derive(Clone, Debug)]
pub struct ProbeResult {
    pub verdict: ProbeVerdict,
    /// Reliable samples in sampling order.
    pub samples: Vec<CurvatureSample>,
    /// First sample with a large curvature, if any.
    pub witness: Option<CurvatureSample>,
    /// Reliable samples neither clearly flat nor clearly curved.
    pub indeterminate: usize,
    /// Candidate points discarded as unreliable.
    pub rejected: usize,
}

/// Deterministic candidate points: complex `p`, `q` with modulus in `[0.5, 2]`.
pub fn sample_points(seed: u64, n: usize) -> Vec<(Cdd, Cdd)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| {
        let r: f64 = rng.gen_range(0.5..2.0);
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        Cdd::from_f64(r * th.cos(), r * th.sin())
    };
    (0..n).map(|_| (pick(&mut rng), pick(&mut rng))).collect()
}

/// Well-conditioned points used for sampling.
const SAMPLE_GAP: f64 = 1e-3;

fn sample_one(web: &PreparedWeb, p: Cdd, q: Cdd, cfg: &ProbeConfig) -> Option<CurvatureSample> {
    let (u, v) = web.to_work(p, q);
    let st = web.state_uv(u, v, SAMPLE_GAP).ok()?;
    if st.min_gap < SAMPLE_GAP {
        return None;
    }
    let s = curvature_at(web, p, q, cfg.step).ok()?;
    (s.normalized_error() < cfg.tol_accept / 10.0 && s.k.abs().is_finite()).then_some(s)
}

fn run_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Reliable curvature samples at the first well-conditioned candidate points.
fn collect_samples(
    webs: &[&PreparedWeb],
    cfg: &ProbeConfig,
) -> Result<(Vec<Vec<CurvatureSample>>, usize)> {
    if cfg.samples == 0 {
        return Err(Error::Usage("at least one sample is required".into()));
    }
    let budget = cfg.samples * cfg.budget_factor.max(1);
    let points = sample_points(cfg.seed, budget);
    let mut out: Vec<Vec<CurvatureSample>> = Vec::new();
    let mut rejected = 0;
    for chunk in points.chunks(cfg.samples.max(4)) {
        let evaluated: Vec<Option<Vec<CurvatureSample>>> = run_pool(cfg.jobs, || {
            chunk
                .par_iter()
                .map(|&(p, q)| webs.iter().map(|w| sample_one(w, p, q, cfg)).collect())
                .collect()
        });
        for e in evaluated {
            match e {
                Some(v) if out.len() < cfg.samples => out.push(v),
                Some(_) => {}
                None => rejected += 1,
            }
        }
        if out.len() >= cfg.samples {
            return Ok((out, rejected));
        }
    }
    Err(Error::Sampling {
        found: out.len(),
        wanted: cfg.samples,
    })
}

/// Samples the curvature at seeded points and decides flatness numerically.
pub fn flatness_probe(web: &ImplicitWeb, cfg: &ProbeConfig) -> Result<ProbeResult> {
    let pw = PreparedWeb::new(web)?;
    let (samples, rejected) = collect_samples(&[&pw], cfg)?;
    let samples: Vec<CurvatureSample> = samples.into_iter().map(|mut v| v.remove(0)).collect();
    let witness = samples
        .iter()
        .find(|s| s.normalized_k() > cfg.tol_reject)
        .cloned();
    let indeterminate = samples
        .iter()
        .filter(|s| {
            let k = s.normalized_k();
            k >= cfg.tol_accept && k <= cfg.tol_reject
        })
        .count();
    let verdict = if witness.is_some() {
        ProbeVerdict::NotFlat
    } else if indeterminate == 0 {
        ProbeVerdict::ProbablyFlat
    } else {
        ProbeVerdict::Indeterminate
    };
    Ok(ProbeResult {
        verdict,
        samples,
        witness,
        indeterminate,
        rejected,
    })
}

/// Largest `|K_A - K_B|` over shared reliable samples.
pub fn curvature_gap(a: &ImplicitWeb, b: &ImplicitWeb, cfg: &ProbeConfig) -> Result<f64> {
    let (pa, pb) = (PreparedWeb::new(a)?, PreparedWeb::new(b)?);
    let (samples, _) = collect_samples(&[&pa, &pb], cfg)?;
    Ok(samples
        .iter()
        .map(|v| (v[0].k - v[1].k).abs())
        .fold(0.0, f64::max))
}

/// Whether two webs have the same curvature, up to `tol`, at shared reliable samples.
pub fn curvature_equal(
    a: &ImplicitWeb,
    b: &ImplicitWeb,
    cfg: &ProbeConfig,
    tol: f64,
) -> Result<bool> {
    Ok(curvature_gap(a, b, cfg)? < tol)
}

/// Legendre web of a foliation alone, without the line.
pub fn foliation_web(fol: &Foliation) -> ImplicitWeb {
    let pref = PreFoliation::new(ProjLine::infinity(), fol.clone());
    let w = legendre_web(&pref);
    ImplicitWeb::new(w.poly().clone(), fol.degree())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(a: i64, b: i64, c: i64) -> Poly3 {
        // a p + b q + c
        Poly3::var(P)
            .scale(&Scalar::int(a))
            .add(&Poly3::var(Q).scale(&Scalar::int(b)))
            .add(&Poly3::constant(Scalar::int(c)))
    }

    fn x() -> Poly3 {
        Poly3::var(X)
    }

    fn pencils() -> ImplicitWeb {
        let c = |k: i64| x().sub(&Poly3::constant(Scalar::int(k)));
        ImplicitWeb::new(c(1).mul(&c(2)).mul(&c(3)), 3)
    }

    /// Leaves `(p^2 + q^2) dp - 2pq dq`, `(p + q) dp - 2q dq`, `(p - q) dp - 2q dq`.
    fn pulled_back_web() -> ImplicitWeb {
        let (p, q) = (Poly3::var(P), Poly3::var(Q));
        let two = Scalar::int(2);
        let f1 = p
            .mul(&q)
            .mul(&x())
            .scale(&two)
            .sub(&p.mul(&p).add(&q.mul(&q)));
        let f2 = q.mul(&x()).scale(&two).sub(&lin(1, 1, 0));
        let f3 = q.mul(&x()).scale(&two).sub(&lin(1, -1, 0));
        ImplicitWeb::new(f1.mul(&f2).mul(&f3), 3)
    }

    fn c(re: f64, im: f64) -> Cdd {
        Cdd::from_f64(re, im)
    }

    #[test]
    fn constant_slopes() {
        let st = slopes_at(&pencils(), c(0.3, 0.1), c(-0.7, 0.2)).unwrap();
        let mut re: Vec<f64> = st.slopes.iter().map(|s| s.to_c64().re).collect();
        re.sort_by(f64::total_cmp);
        for (r, w) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - w).abs() < 1e-25);
        }
        assert!(st.d_p.iter().chain(&st.d_q).all(|z| z.abs() < 1e-25));
        let pw = PreparedWeb::new(&pencils()).unwrap();
        let s = curvature_at(&pw, c(0.3, 0.1), c(-0.7, 0.2), DEFAULT_STEP).unwrap();
        assert!(s.k.abs() < 1e-20 && s.eta.0.abs() < 1e-20);
    }

    #[test]
    fn pulled_back_web_curvature() {
        let pw = PreparedWeb::new(&pulled_back_web()).unwrap();
        let s = curvature_at(&pw, c(1.0, 0.0), c(2.0, 0.0), DEFAULT_STEP).unwrap();
        assert!((s.k - c(-0.25, 0.0)).abs() < 1e-10, "{}", s.k);
    }

    #[test]
    fn pulled_back_web_curvature_complex() {
        // K = -2p / q^3 on this web.
        let pw = PreparedWeb::new(&pulled_back_web()).unwrap();
        let (p, q) = (c(0.7, 0.3), c(1.9, -0.4));
        let s = curvature_at(&pw, p, q, DEFAULT_STEP).unwrap();
        let want = -(Cdd::real(2.0) * p / (q * q * q));
        assert!((s.k - want).abs() < 1e-10, "{} vs {}", s.k, want);
    }

    #[test]
    fn eta_triple_solves_defining_system() {
        let st = slopes_at(&pulled_back_web(), c(0.4, 0.9), c(1.3, 0.2)).unwrap();
        let l: Vec<Leaf> = (0..3)
            .map(|i| Leaf {
                slope: st.slopes[i],
                d_x: st.d_p[i],
                d_y: st.d_q[i],
            })
            .collect();
        let eta = eta_triple(&l[0], &l[1], &l[2]).unwrap();
        assert!(eta_system_residual([&l[0], &l[1], &l[2]], eta) < 1e-25);
    }

    #[test]
    fn rescaling_keeps_curvature() {
        let w = pulled_back_web();
        let f = Poly3::one().add(&Poly3::var(P).pow(2));
        let (a, b) = (
            PreparedWeb::new(&w).unwrap(),
            PreparedWeb::new(&w.rescaled(&f)).unwrap(),
        );
        let (p, q) = (c(0.6, 0.2), c(1.4, 0.5));
        let ka = curvature_at(&a, p, q, DEFAULT_STEP).unwrap().k;
        let kb = curvature_at(&b, p, q, DEFAULT_STEP).unwrap().k;
        assert!((ka - kb).abs() < 1e-12);
    }

    #[test]
    fn collision_rejected() {
        let r = Leaf {
            slope: Cdd::ONE,
            d_x: Cdd::ZERO,
            d_y: Cdd::ZERO,
        };
        assert!(eta_triple(&r, &r, &r).is_err());
    }

    #[test]
    fn near_discriminant_reported() {
        // Slopes p and -p collide on p = 0.
        let w = ImplicitWeb::new(
            x().sub(&Poly3::var(P))
                .mul(&x().add(&Poly3::var(P)))
                .mul(&x().sub(&Poly3::one())),
            3,
        );
        assert!(matches!(
            slopes_at(&w, c(1e-14, 0.0), c(1.0, 0.0)),
            Err(Error::NearDiscriminant { .. })
        ));
    }

    #[test]
    fn sample_points_deterministic() {
        assert_eq!(
            format!("{:?}", sample_points(7, 5)),
            format!("{:?}", sample_points(7, 5))
        );
    }
}

#[cfg(test)]
mod legendre_tests {
    use super::*;
    use crate::prefoliation::corpus::{fermat, h1, h2, h3};

    fn cfg() -> ProbeConfig {
        ProbeConfig {
            samples: 5,
            ..ProbeConfig::default()
        }
    }

    fn hom(line: ProjLine, h: crate::foliation::HomFoliation) -> ImplicitWeb {
        legendre_web(&PreFoliation::homogeneous(line, h).unwrap())
    }

    #[test]
    fn probe_homogeneous() {
        let flat = hom(
            ProjLine::through_origin_slope(&Scalar::one()),
            h1(3).unwrap(),
        );
        assert_eq!(
            flatness_probe(&flat, &cfg()).unwrap().verdict,
            ProbeVerdict::ProbablyFlat
        );
        let curved = hom(
            ProjLine::through_origin_slope(&Scalar::int(2)),
            h1(3).unwrap(),
        );
        let r = flatness_probe(&curved, &cfg()).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::NotFlat);
        assert!(r.witness.is_some());
    }

    #[test]
    fn probe_fermat_line() {
        let f = Foliation::General(fermat(2).unwrap());
        let w = legendre_web(&PreFoliation::new(ProjLine::from_ints(1, 1, -1), f.clone()));
        assert_eq!(
            flatness_probe(&w, &cfg()).unwrap().verdict,
            ProbeVerdict::ProbablyFlat
        );
        let w = legendre_web(&PreFoliation::new(ProjLine::from_ints(1, 2, -1), f));
        assert_eq!(
            flatness_probe(&w, &cfg()).unwrap().verdict,
            ProbeVerdict::NotFlat
        );
    }

    #[test]
    fn line_at_infinity_keeps_curvature() {
        let hs = [
            h1(4).unwrap(),
            h3(4, &Scalar::one()).unwrap(),
            h2(4, &Scalar::one(), &Scalar::one()).unwrap(),
            h3(3, &Scalar::int(5)).unwrap(),
        ];
        for h in hs {
            let with_line = hom(ProjLine::infinity(), h.clone());
            let alone = foliation_web(&Foliation::Hom(h));
            let gap = curvature_gap(&with_line, &alone, &cfg()).unwrap();
            assert!(gap < 1e-6, "{gap}");
        }
    }

    #[test]
    fn curvature_of_leg_is_nonzero_for_h3() {
        let w = hom(ProjLine::infinity(), h3(4, &Scalar::one()).unwrap());
        assert_eq!(
            flatness_probe(&w, &cfg()).unwrap().verdict,
            ProbeVerdict::NotFlat
        );
    }
}
