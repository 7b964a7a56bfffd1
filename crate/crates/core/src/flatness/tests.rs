use super::*;
use crate::prefoliation::corpus::{h0, h1, h2, h3};

fn slope(r: i64) -> ProjLine {
    ProjLine::through_origin_slope(&Scalar::int(r))
}

fn pref(line: ProjLine, h: HomFoliation) -> PreFoliation {
    PreFoliation::homogeneous(line, h).unwrap()
}

#[test]
fn p_for_h1_line_direction() {
    for d in 3..=6usize {
        for rho in [2i64, -3] {
            let h = h1(d).unwrap();
            let dir = P1Point::exact(Scalar::int(rho));
            let (p, _) = pq_polynomials(&h, &dir, 1, line_coeffs(1)).unwrap();
            let mut c = vec![Scalar::zero(); d - 1];
            for i in 0..=d - 2 {
                // coefficient of x^i y^(d-2-i) sits at index d-2-i.
                c[d - 2 - i] = Scalar::int(-rho.pow(i as u32));
            }
            assert_eq!(p, HomPoly2::new(d - 2, c), "d={d} rho={rho}");
        }
    }
}

#[test]
fn wrong_ramification_rejected() {
    let h = h1(4).unwrap();
    let zero = P1Point::exact(Scalar::zero());
    assert!(pq_polynomials(&h, &zero, 3, ordinary_coeffs(3)).is_ok());
    assert!(matches!(
        pq_polynomials(&h, &P1Point::exact(Scalar::one()), 2, ordinary_coeffs(2)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn fiber_multiplicities_sum() {
    let h = h2(5, &Scalar::int(2), &Scalar::int(3)).unwrap();
    for c in h.gauss_map().unwrap().critical.clone() {
        let p0 = h.gauss_at(&c.point).unwrap();
        let f = fiber(&h, &p0, None).unwrap();
        assert_eq!(f.points.iter().map(|p| p.nu).sum::<usize>(), 4);
    }
}

#[test]
fn h1_line_slopes() {
    for d in 3..=6usize {
        for (rho, flat) in [(1, true), (-1, true), (2, false), (3, false)] {
            let dec = is_flat(&pref(slope(rho), h1(d).unwrap())).unwrap();
            // rho = -1 is flat for odd d and an invariant line for even d.
            assert_eq!(dec.is_flat(), flat, "d={d} rho={rho}: {dec:?}");
        }
    }
}

#[test]
fn d3_line_at_infinity_always_flat() {
    for (l, m) in [(0, 0), (1, 2), (-3, 5)] {
        let h = h2(3, &Scalar::int(l), &Scalar::int(m)).unwrap();
        assert!(is_flat(&pref(ProjLine::infinity(), h)).unwrap().is_flat());
    }
}

#[test]
fn h3_never_flat_at_infinity() {
    for d in 4..=5 {
        let h = h3(d, &Scalar::int(1)).unwrap();
        assert!(!is_flat(&pref(ProjLine::infinity(), h)).unwrap().is_flat());
    }
}

#[test]
fn h2_at_infinity_flat_iff_zero() {
    for d in 4..=5 {
        let z = Scalar::zero();
        let h = h2(d, &z, &z).unwrap();
        assert!(is_flat(&pref(ProjLine::infinity(), h)).unwrap().is_flat());
        let h = h2(d, &Scalar::int(1), &z).unwrap();
        assert!(!is_flat(&pref(ProjLine::infinity(), h)).unwrap().is_flat());
    }
}

#[test]
fn routes_agree_on_h0() {
    for d in 4..=6 {
        let dec = is_flat(&pref(slope(2), h0(d).unwrap())).unwrap();
        for c in &dec.components {
            if let Some(g) = c.second_route {
                if c.verdict == Verdict::Holomorphic {
                    assert!(g < 1e-20, "{c:?}");
                }
            }
        }
    }
}

#[test]
fn degree_two_unsupported() {
    let h = HomFoliation::new(HomPoly2::from_ints(&[0, 1]), HomPoly2::from_ints(&[1, 0])).unwrap();
    assert!(matches!(
        is_flat(&pref(ProjLine::infinity(), h)),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn vertical_line_uses_shear() {
    // Direction of {x = 0} is [1:0]; for H1 it is fixed, so try a foliation where it is not.
    let h = h2(4, &Scalar::int(1), &Scalar::int(2)).unwrap();
    let dec = is_flat(&pref(ProjLine::from_ints(1, 0, 0), h)).unwrap();
    assert!(dec
        .components
        .iter()
        .all(|c| c.p0.as_ref().is_none_or(|p| !p.is_infinity())));
}

#[test]
fn maximal_inflection_line_rule() {
    // H2(0,0) has maximal-order inflection lines along x = 0 and y = 0.
    let z = Scalar::zero();
    let h = h2(4, &z, &z).unwrap();
    let v = inflection_line_criteria(
        &pref(ProjLine::from_ints(1, 0, 0), h.clone()),
        &ProjLine::from_ints(1, 0, 0),
    );
    let v = v.unwrap();
    assert_eq!(v.rule, "line-inflection-maximal");
    assert_eq!(v.verdict, Verdict::Holomorphic);
    let h = h2(4, &Scalar::int(1), &z).unwrap();
    let v = inflection_line_criteria(
        &pref(ProjLine::from_ints(1, 0, 0), h),
        &ProjLine::from_ints(1, 0, 0),
    )
    .unwrap();
    assert_eq!(v.verdict, Verdict::Pole);
}
