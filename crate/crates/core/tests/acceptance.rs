//! Acceptance suite: one PASS/FAIL line per criterion, with its time budget.
//!
//! Run with `cargo test --test acceptance`. The process exits non-zero when any
//! criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use webfolio::algebra::{Cdd, HomPoly2, Poly3, Scalar, UniPoly};
use webfolio::flatness::classify::{lambda0, lambda1};
use webfolio::flatness::{
    classify, fermat_degeneration_polynomial, is_flat, symbolic_condition, Overall,
};
use webfolio::foliation::{HomFoliation, IdentityStatus};
use webfolio::prefoliation::corpus::{
    fermat, fermat_lines, h0, h1, h2, h3, h4, hesse4, hesse4_lines, sigma,
};
use webfolio::prefoliation::web::{P, Q, X};
use webfolio::prefoliation::{legendre_web, Foliation, ImplicitWeb, PreFoliation, ProjLine};
use webfolio::webnum::{
    curvature_at, curvature_gap, flatness_probe, foliation_web, sample_points, PreparedWeb,
    ProbeConfig, ProbeVerdict, DEFAULT_STEP,
};

type Check = Result<String, String>;

/// Name, time budget and check of one criterion.
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lin(r: Scalar) -> UniPoly {
    UniPoly::linear_root(&r)
}

/// Camacho-Sad polynomials and types of the three degree-3 reference foliations.
fn cs_polynomials() -> Check {
    let q = Scalar::frac;
    let one = Scalar::one();
    let cases = [
        (
            h1(3).map_err(err)?,
            lin(one.clone()).pow(2).mul(&lin(-&one)),
            "2·R_1",
        ),
        (
            h2(3, &Scalar::zero(), &Scalar::zero()).map_err(err)?,
            lin(q(1, 3)).pow(3),
            "2·T_1",
        ),
        (
            h3(3, &Scalar::int(-2)).map_err(err)?,
            lin(one).mul(&lin(q(1, 3))).mul(&lin(q(-1, 3))),
            "1·R_1+1·T_1",
        ),
    ];
    for (h, want, ty) in cases {
        let got = h.cs_polynomial().map_err(err)?;
        ensure(got == want, || {
            format!("cs polynomial {got}, expected {want}")
        })?;
        let t = h.foliation_type().map_err(err)?.to_string();
        ensure(t == ty, || format!("type {t}, expected {ty}"))?;
    }
    Ok("3 polynomials and types exact".into())
}

/// Degree-3 classification: six isolated examples, two families, ten perturbations.
fn classify_three() -> Check {
    let models = classify(3).map_err(err)?;
    let mut isolated = 0;
    let mut family = 0;
    let mut perturbed = 0;
    for m in &models {
        ensure(m.agrees(), || {
            format!("{} decided {}", m.label, m.decision.overall)
        })?;
        match m.expected {
            Overall::Flat if m.label.contains("H3(") && m.label.starts_with("L∞") => family += 1,
            Overall::Flat if m.label.contains("H2(") && m.label.starts_with("L∞") => family += 1,
            Overall::Flat => isolated += 1,
            Overall::NotFlat => perturbed += 1,
        }
    }
    ensure(isolated == 6 && perturbed == 10 && family > 0, || {
        format!("{isolated} isolated, {family} family members, {perturbed} perturbations")
    })?;
    ensure(h2(3, &Scalar::one(), &Scalar::int(-1)).is_err(), || {
        "family member with lambda mu = -1 accepted".into()
    })?;
    Ok(format!(
        "6 isolated + {family} family members flat, 10 perturbations not flat"
    ))
}

/// The ten flat models in degrees 4 and 5, and the two special constants.
fn classify_four_five() -> Check {
    for d in [4, 5] {
        let models = classify(d).map_err(err)?;
        let flat: Vec<_> = models
            .iter()
            .filter(|m| m.expected == Overall::Flat)
            .collect();
        ensure(flat.len() == 10, || {
            format!("d={d}: {} flat models", flat.len())
        })?;
        for m in &models {
            ensure(m.agrees(), || {
                format!("d={d} {} decided {}", m.label, m.decision.overall)
            })?;
        }
    }
    ensure(lambda0(4) == Scalar::frac(112, 27), || {
        format!("lambda0(4) = {}", lambda0(4))
    })?;
    ensure(lambda1(4) == Scalar::frac(16, 27), || {
        format!("lambda1(4) = {}", lambda1(4))
    })?;
    for d in 4..=7 {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        let di = d as i64;
        for (k, got) in [(di + 3, lambda0(d)), (di - 3, lambda1(d))] {
            let want = Scalar::frac(sign * k * di.pow(d as u32 - 2), 3i64.pow(d as u32 - 1));
            ensure(got == want, || format!("d={d}: {got} vs {want}"))?;
        }
    }
    Ok("ten models flat for d=4,5; constants match".into())
}

fn same_up_to_unit(got: &UniPoly, want: &UniPoly) -> bool {
    match (got.monic(), want.monic()) {
        (Ok(a), Ok(b)) => a == b,
        _ => got.is_zero() && want.is_zero(),
    }
}

/// Closed-form holomorphy conditions along the line component.
fn closed_forms() -> Check {
    let rho_line = ProjLine::through_origin_slope(&Scalar::t());
    let c = |n: i64| UniPoly::constant(Scalar::int(n));
    for d in 3..=6usize {
        let r = UniPoly::var().pow(d as u32 - 2);
        let got = symbolic_condition(&h1(d).map_err(err)?, &rho_line).map_err(err)?;
        let want = r
            .mul(&r.add(&c(1)))
            .scale(&Scalar::frac(((d - 1) * (d - 2)) as i64, 2));
        ensure(got == want, || format!("H1 d={d}: {got} vs {want}"))?;

        let got = symbolic_condition(&h0(d).map_err(err)?, &rho_line).map_err(err)?;
        let locus = r.scale(&Scalar::int(2 * d as i64 - 4)).sub(&c(1));
        let (_, rem) = got.divrem(&locus).map_err(err)?;
        ensure(rem.is_zero(), || {
            format!("H0 d={d}: {got} lacks the factor {locus}")
        })?;
    }
    for d in 4..=6usize {
        let r = UniPoly::var().pow(d as u32 - 2);
        let got = symbolic_condition(&h4(d).map_err(err)?, &rho_line).map_err(err)?;
        let want = r
            .add(&c(1))
            .pow(2)
            .mul(&r.sub(&c(1)))
            .scale(&(&sigma(d) * &Scalar::int(-(d as i64 - 2))));
        ensure(same_up_to_unit(&got, &want), || {
            format!("H4 d={d}: {got} vs {want}")
        })?;
    }
    for d in 3..=6usize {
        let f = fermat_degeneration_polynomial(d).map_err(err)?;
        let xi = Scalar::zeta_pow(2 * (d as u32 - 2), 1);
        let at = |a: &Scalar, b: &Scalar| f.eval(&(a + b));
        let zero = Scalar::zero();
        let one = Scalar::one();
        ensure(!at(&zero, &xi).is_zero(), || {
            format!("f_{d}(0, xi) vanishes")
        })?;
        ensure(at(&one, &one).is_zero() == (d <= 4), || {
            format!("f_{d}(1, 1) wrong")
        })?;
        ensure(at(&one, &xi).is_zero() == (d == 3), || {
            format!("f_{d}(1, xi) wrong")
        })?;
        ensure(!at(&xi, &xi).is_zero(), || {
            format!("f_{d}(xi, xi) vanishes")
        })?;
    }
    Ok("H1, H0, H4 conditions and Fermat evaluations exact".into())
}

fn corpus_homogeneous() -> Result<Vec<(String, HomFoliation)>, String> {
    let mut out = Vec::new();
    for d in 3..=6usize {
        out.push((format!("H0 d={d}"), h0(d).map_err(err)?));
        out.push((format!("H1 d={d}"), h1(d).map_err(err)?));
        for (l, m) in [(0, 0), (1, 1), (2, -3)] {
            out.push((
                format!("H2({l},{m}) d={d}"),
                h2(d, &Scalar::int(l), &Scalar::int(m)).map_err(err)?,
            ));
        }
        for l in [Scalar::one(), Scalar::int(-2), lambda0(d)] {
            out.push((format!("H3({l}) d={d}"), h3(d, &l).map_err(err)?));
        }
        if d >= 4 {
            out.push((format!("H4 d={d}"), h4(d).map_err(err)?));
        }
    }
    Ok(out)
}

/// Index identities on the homogeneous corpus and the Fermat foliation of degree two.
fn global_identities() -> Check {
    let corpus = corpus_homogeneous()?;
    for (name, h) in &corpus {
        for c in h.check_global_identities().map_err(err)? {
            match (&c.status, c.name) {
                (IdentityStatus::Fail(m), _) => return Err(format!("{name} {}: {m}", c.name)),
                (IdentityStatus::Skipped(m), "riemann-hurwitz" | "milnor-sum") => {
                    return Err(format!("{name} {} skipped: {m}", c.name))
                }
                _ => {}
            }
        }
    }
    let f = fermat(2).map_err(err)?;
    let sings = f.singularities().map_err(err)?;
    let mu: usize = sings.iter().map(|s| s.milnor.unwrap_or(0)).sum();
    ensure(mu == 7, || format!("Fermat sum mu = {mu}"))?;
    let mut bb = Vec::new();
    for s in &sings {
        let v = s.bb.as_ref().and_then(|b| b.as_exact().cloned());
        bb.push(v.ok_or_else(|| format!("Baum-Bott index at {} not exact", s.label()))?);
    }
    let total = bb.iter().fold(Scalar::zero(), |a, b| &a + b);
    ensure(total == Scalar::int(16), || {
        format!("Fermat sum BB = {total}")
    })?;
    let radial = sings.iter().filter(|s| s.radial).count();
    ensure(radial == 4 && sings.len() - radial == 3, || {
        format!("split ({radial}, {})", sings.len() - radial)
    })?;
    for (s, b) in sings.iter().zip(&bb) {
        let want = if s.radial {
            Scalar::int(4)
        } else {
            Scalar::zero()
        };
        ensure(*b == want, || format!("BB at {} = {b}", s.label()))?;
    }
    Ok(format!(
        "{} homogeneous foliations; Fermat sums 7 and 16, split (4,3)",
        corpus.len()
    ))
}

fn pulled_back_web() -> ImplicitWeb {
    let (p, q, x) = (Poly3::var(P), Poly3::var(Q), Poly3::var(X));
    let two = Scalar::int(2);
    let f1 = p
        .mul(&q)
        .mul(&x)
        .scale(&two)
        .sub(&p.mul(&p).add(&q.mul(&q)));
    let f2 = q.mul(&x).scale(&two).sub(&p.add(&q));
    let f3 = q.mul(&x).scale(&two).sub(&p.sub(&q));
    ImplicitWeb::new(f1.mul(&f2).mul(&f3), 3)
}

/// Curvature of a known web and of three parallel pencils.
fn oracle_calibration() -> Check {
    let web = PreparedWeb::new(&pulled_back_web()).map_err(err)?;
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for (p, q) in sample_points(61, 40) {
        let Ok(s) = curvature_at(&web, p, q, DEFAULT_STEP) else {
            continue;
        };
        let want = -(Cdd::real(2.0) * p / (q * q * q));
        worst = worst.max((s.k - want).abs() / want.abs());
        checked += 1;
        if checked == 10 {
            break;
        }
    }
    ensure(checked == 10, || format!("only {checked} points evaluated"))?;
    ensure(worst < 1e-6, || format!("relative error {worst:e}"))?;
    let x = Poly3::var(X);
    let pencil = |k: i64| x.sub(&Poly3::constant(Scalar::int(k)));
    let flat = PreparedWeb::new(&ImplicitWeb::new(
        pencil(1).mul(&pencil(2)).mul(&pencil(-3)),
        3,
    ))
    .map_err(err)?;
    for (p, q) in sample_points(62, 10) {
        let k = curvature_at(&flat, p, q, DEFAULT_STEP)
            .map_err(err)?
            .k
            .abs();
        ensure(k < 1e-10, || format!("parallel pencils |K| = {k:e}"))?;
    }
    Ok(format!(
        "max relative error {worst:.1e} at 10 points; pencils flat"
    ))
}

fn probe_cfg() -> ProbeConfig {
    ProbeConfig {
        samples: 8,
        ..ProbeConfig::default()
    }
}

fn probe(pref: &PreFoliation) -> Result<ProbeVerdict, String> {
    Ok(flatness_probe(&legendre_web(pref), &probe_cfg())
        .map_err(err)?
        .verdict)
}

fn random_form(rng: &mut ChaCha8Rng) -> HomPoly2 {
    HomPoly2::new(
        2,
        (0..3).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect(),
    )
}

/// Numeric probe against the exact criteria in degree 3.
fn criterion_oracle_agreement() -> Check {
    let models = classify(3).map_err(err)?;
    let mut flat = 0;
    for m in models.iter().filter(|m| m.expected == Overall::Flat) {
        let v = probe(&m.pref)?;
        ensure(v == ProbeVerdict::ProbablyFlat, || {
            format!("{}: probe {}", m.label, v.name())
        })?;
        flat += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut not_flat = 0;
    let mut tries = 0;
    while not_flat < 20 {
        tries += 1;
        if tries > 2000 {
            return Err(format!("only {not_flat} non-flat samples generated"));
        }
        let Ok(h) = HomFoliation::new(random_form(&mut rng), random_form(&mut rng)) else {
            continue;
        };
        let slope = Scalar::frac(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let Ok(pref) = PreFoliation::homogeneous(ProjLine::through_origin_slope(&slope), h) else {
            continue;
        };
        let Ok(decision) = is_flat(&pref) else {
            continue;
        };
        let v = probe(&pref)?;
        let agree = match decision.overall {
            Overall::Flat => v == ProbeVerdict::ProbablyFlat,
            Overall::NotFlat => v == ProbeVerdict::NotFlat,
        };
        ensure(agree, || {
            format!(
                "{} with slope {slope}: exact {}, probe {}",
                pref.hom().expect("homogeneous"),
                decision.overall,
                v.name()
            )
        })?;
        if decision.overall == Overall::NotFlat {
            not_flat += 1;
        }
    }
    Ok(format!(
        "{flat} flat models and {not_flat} random non-flat pre-foliations agree"
    ))
}

/// The line at infinity does not change the curvature of a homogeneous Legendre web.
fn line_at_infinity_curvature() -> Check {
    let cfg = ProbeConfig {
        samples: 5,
        ..ProbeConfig::default()
    };
    let hs = [
        ("H1", h1(4).map_err(err)?),
        ("H3(1)", h3(4, &Scalar::one()).map_err(err)?),
        (
            "H2(1,1)",
            h2(4, &Scalar::one(), &Scalar::one()).map_err(err)?,
        ),
    ];
    let mut worst: f64 = 0.0;
    for (name, h) in hs {
        let with_line =
            legendre_web(&PreFoliation::homogeneous(ProjLine::infinity(), h.clone()).map_err(err)?);
        let alone = foliation_web(&Foliation::Hom(h));
        let gap = curvature_gap(&with_line, &alone, &cfg).map_err(err)?;
        ensure(gap < 1e-6, || format!("{name}: |K difference| = {gap:e}"))?;
        worst = worst.max(gap);
    }
    Ok(format!("max |K difference| {worst:.1e} at 5 points"))
}

fn general(f: webfolio::prefoliation::GenFoliation, line: ProjLine) -> PreFoliation {
    PreFoliation::new(line, Foliation::General(f))
}

fn expect_probe(label: &str, pref: &PreFoliation, want: ProbeVerdict) -> Result<(), String> {
    let v = probe(pref)?;
    ensure(v == want, || {
        format!("{label}: probe {}, expected {}", v.name(), want.name())
    })
}

/// Convex reduced foliations with an invariant line.
fn invariant_line_spot_check() -> Check {
    let flat = ProbeVerdict::ProbablyFlat;
    let mut count = 0;
    for n in [2, 3] {
        for line in fermat_lines(n) {
            let pref = general(fermat(n).map_err(err)?, line.clone());
            expect_probe(&format!("Fermat {n} with {line}"), &pref, flat)?;
            count += 1;
        }
    }
    for line in hesse4_lines() {
        expect_probe(
            &format!("hesse4 with {line}"),
            &general(hesse4(), line.clone()),
            flat,
        )?;
        count += 1;
    }
    expect_probe(
        "Fermat 2 with x+2y-z",
        &general(fermat(2).map_err(err)?, ProjLine::from_ints(1, 2, -1)),
        ProbeVerdict::NotFlat,
    )?;
    Ok(format!(
        "{count} invariant lines flat; generic line not flat"
    ))
}

/// Non-invariant lines on Fermat foliations.
fn fermat_line_endpoints() -> Check {
    let flat = ProbeVerdict::ProbablyFlat;
    let l1 = ProjLine::from_ints(1, 1, -1);
    let l2 = ProjLine::from_ints(1, -1, -1);
    expect_probe(
        "d=3 x+y-z",
        &general(fermat(2).map_err(err)?, l1.clone()),
        flat,
    )?;
    expect_probe("d=3 x-y-z", &general(fermat(2).map_err(err)?, l2), flat)?;
    expect_probe(
        "d=4 x+y-z",
        &general(fermat(3).map_err(err)?, l1.clone()),
        flat,
    )?;
    expect_probe(
        "d=5 x+y-z",
        &general(fermat(4).map_err(err)?, l1),
        ProbeVerdict::NotFlat,
    )?;
    Ok("d=3,4 flat; d=5 not flat".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "1 Camacho-Sad polynomials and types",
            Duration::from_secs(1),
            cs_polynomials,
        ),
        (
            "2 degree-3 classification",
            Duration::from_secs(10),
            classify_three,
        ),
        (
            "3 ten flat models, d=4,5",
            Duration::from_secs(30),
            classify_four_five,
        ),
        (
            "4 closed-form conditions",
            Duration::from_secs(60),
            closed_forms,
        ),
        (
            "5 global identities",
            Duration::from_secs(5),
            global_identities,
        ),
        (
            "6 curvature oracle calibration",
            Duration::from_secs(10),
            oracle_calibration,
        ),
        (
            "7 criterion/oracle agreement",
            Duration::from_secs(120),
            criterion_oracle_agreement,
        ),
        (
            "8 line at infinity keeps curvature",
            Duration::from_secs(30),
            line_at_infinity_curvature,
        ),
        (
            "9 invariant lines on convex reduced",
            Duration::from_secs(180),
            invariant_line_spot_check,
        ),
        (
            "10 lines on Fermat foliations",
            Duration::from_secs(180),
            fermat_line_endpoints,
        ),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let verdict = match &result {
            Ok(_) if took <= budget => "PASS",
            _ => "FAIL",
        };
        let detail = match result {
            Ok(m) if took <= budget => m,
            Ok(m) => format!("{m}; over budget {budget:?}"),
            Err(e) => e,
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "{verdict} criterion {name} ({:.2}s): {detail}",
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
