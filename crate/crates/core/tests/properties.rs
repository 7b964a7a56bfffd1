//! Property tests over random homogeneous foliations and random webs.

use proptest::prelude::*;

use webfolio::algebra::{Cdd, HomPoly2, Poly3, Scalar};
use webfolio::cli::parser::{format_form, parse_form};
use webfolio::flatness::{
    criterion_component_dell, eta_pole_part, is_flat, leg_line_slope_data, shear, Overall, Verdict,
};
use webfolio::foliation::{HomFoliation, IdentityStatus};
use webfolio::prefoliation::web::{P, Q, X};
use webfolio::prefoliation::{legendre_web, Foliation, ImplicitWeb, PreFoliation, ProjLine};
use webfolio::webnum::{curvature_at, slopes_at, PreparedWeb, DEFAULT_STEP};

fn form(deg: usize) -> impl Strategy<Value = HomPoly2> {
    prop::collection::vec(-4i64..=4, deg + 1)
        .prop_map(move |c| HomPoly2::new(deg, c.into_iter().map(Scalar::int).collect()))
}

/// Saturated homogeneous foliation of degree `d - 1`.
fn foliation(d: usize) -> impl Strategy<Value = HomFoliation> {
    (form(d - 1), form(d - 1))
        .prop_filter_map("not saturated", |(a, b)| HomFoliation::new(a, b).ok())
}

fn slope() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn point() -> impl Strategy<Value = (Cdd, Cdd)> {
    let c = (0.4f64..1.8, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(r, t)| Cdd::from_f64(r * t.cos(), r * t.sin()));
    (c.clone(), c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ramification_total(h in prop_oneof![foliation(3), foliation(4), foliation(5)]) {
        let g = h.gauss_map().unwrap();
        prop_assert_eq!(g.ramification_total(), 2 * h.d() - 4);
    }

    #[test]
    fn global_identities_hold(h in prop_oneof![foliation(3), foliation(4)]) {
        for c in h.check_global_identities().unwrap() {
            prop_assert!(!matches!(c.status, IdentityStatus::Fail(_)), "{}: {:?}", c.name, c.status);
        }
    }

    #[test]
    fn degree_three_at_infinity_is_flat(h in foliation(3)) {
        let pref = PreFoliation::homogeneous(ProjLine::infinity(), h).unwrap();
        prop_assert_eq!(is_flat(&pref).unwrap().overall, Overall::Flat);
    }

    #[test]
    fn eta_pole_part_matches_line_criterion(
        h in prop_oneof![foliation(3), foliation(4)],
        r in slope(),
    ) {
        let pref = PreFoliation::homogeneous(ProjLine::through_origin_slope(&r), h).unwrap();
        prop_assume!(!pref.line_invariant());
        let Ok(data) = leg_line_slope_data(&pref) else {
            return Err(TestCaseError::reject("fiber not exact"));
        };
        let Ok(eta) = eta_pole_part(&data) else {
            return Err(TestCaseError::reject("slopes collide"));
        };
        let Ok(crit) = criterion_component_dell(&pref) else {
            return Err(TestCaseError::reject("criterion outside its hypotheses"));
        };
        prop_assert_eq!(eta.is_holomorphic(), crit.verdict != Verdict::Pole);
    }

    #[test]
    fn shear_keeps_decision(h in foliation(4), r in slope(), k in 1i64..4) {
        let pref = PreFoliation::homogeneous(ProjLine::through_origin_slope(&r), h).unwrap();
        let (Ok(a), Ok(b)) = (is_flat(&pref), shear(&pref, k).and_then(|s| is_flat(&s))) else {
            return Err(TestCaseError::reject("criteria not applicable"));
        };
        prop_assert_eq!(a.overall, b.overall);
    }

    #[test]
    fn form_round_trip(h in prop_oneof![foliation(3), foliation(4), foliation(5)]) {
        let text = format_form(h.a(), h.b());
        let back = parse_form(&text).unwrap();
        prop_assert_eq!(format_form(
            &back.a.to_hom(h.d() - 1).unwrap(),
            &back.b.to_hom(h.d() - 1).unwrap(),
        ), text);
    }

    #[test]
    fn slopes_solve_the_web(h in foliation(4), r in slope(), (p, q) in point()) {
        let pref = PreFoliation::homogeneous(ProjLine::through_origin_slope(&r), h).unwrap();
        let web = legendre_web(&pref);
        let Ok(st) = slopes_at(&web, p, q) else {
            return Err(TestCaseError::reject("near the discriminant"));
        };
        prop_assert_eq!(st.slopes.len(), web.order());
        prop_assert!(st.min_gap > 0.0);
    }

    #[test]
    fn curvature_ignores_rescaling(h in foliation(4), r in slope(), (p, q) in point()) {
        let pref = PreFoliation::homogeneous(ProjLine::through_origin_slope(&r), h).unwrap();
        let web = legendre_web(&pref);
        let f = Poly3::one().add(&Poly3::var(P).pow(2));
        let (a, b) = (PreparedWeb::new(&web).unwrap(), PreparedWeb::new(&web.rescaled(&f)).unwrap());
        let (Ok(ka), Ok(kb)) = (curvature_at(&a, p, q, DEFAULT_STEP), curvature_at(&b, p, q, DEFAULT_STEP)) else {
            return Err(TestCaseError::reject("near the discriminant"));
        };
        prop_assume!(ka.normalized_error() < 1e-8 && kb.normalized_error() < 1e-8);
        prop_assert!((ka.k - kb.k).abs() <= 1e-6 * (1.0 + ka.k.abs()));
    }

    #[test]
    fn curvature_pulls_back_under_scaling(
        (a, b) in (1i64..=5, 1i64..=5),
        (sa, sb) in (prop::bool::ANY, prop::bool::ANY),
        (p, q) in point(),
    ) {
        // phi(p, q) = (alpha p, beta q); slopes scale by alpha / beta.
        let alpha = Scalar::frac(if sa { a } else { -a }, 2);
        let beta = Scalar::frac(if sb { b } else { -b }, 3);
        let web = pulled_back_web();
        let ratio = &beta * &alpha.inv().unwrap();
        let subs = [
            Poly3::var(P).scale(&alpha),
            Poly3::var(Q).scale(&beta),
            Poly3::var(X).scale(&ratio),
        ];
        let moved = ImplicitWeb::new(web.poly().compose(&subs), 3);
        let (al, be) = (alpha.embed().unwrap(), beta.embed().unwrap());
        let base = PreparedWeb::new(&web).unwrap();
        let pulled = PreparedWeb::new(&moved).unwrap();
        let (Ok(k0), Ok(k1)) = (
            curvature_at(&base, al * p, be * q, DEFAULT_STEP),
            curvature_at(&pulled, p, q, DEFAULT_STEP),
        ) else {
            return Err(TestCaseError::reject("near the discriminant"));
        };
        let want = al * be * k0.k;
        prop_assert!((k1.k - want).abs() <= 1e-6 * (1.0 + want.abs()), "{} vs {}", k1.k, want);
    }
}

/// Leaves `(p^2 + q^2) dp - 2pq dq`, `(p + q) dp - 2q dq`, `(p - q) dp - 2q dq`.
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

#[test]
fn foliation_kind_from_form() {
    let f = parse_form("y^2 dx - x^2 dy")
        .unwrap()
        .to_foliation()
        .unwrap();
    assert!(matches!(f, Foliation::Hom(_)));
}
