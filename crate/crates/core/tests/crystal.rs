use std::collections::BTreeSet;
use std::time::Instant;

use ballquot::crystal::*;
use ballquot::cyclo::CyclotomicField;
use ballquot::hermlin::{
    find_isomorphism, gl2_f3_generators, group_closure, preserves_form, ClosureMode, SquareMatrix,
};
use proptest::prelude::*;

fn crystal() -> Crystal {
    Crystal::build().unwrap()
}

fn pt(z1: QI2, z2: QI2) -> TorusPoint {
    TorusPoint::new(&[z1, z2])
}

#[test]
fn quotient_group_has_order_48() {
    let c = crystal();
    let f = &c.group;
    assert_eq!(f.order(), 48);
    assert!(f.element(0).is_identity());
    assert_eq!(f.reflections().len(), 12);
    assert!(f.reflections().iter().all(|&r| f.element_order(r) == 2));
    // one torus map per linear part
    let linear: BTreeSet<String> = f
        .elements()
        .iter()
        .map(|g| format!("{:?}", g.linear()))
        .collect();
    assert_eq!(linear.len(), 48);
}

#[test]
fn linear_parts_form_gl2_f3() {
    let lin: Vec<Mat2> = build_g().iter().map(|g| g.linear.clone()).collect();
    let psi = group_closure(&lin, 1000, ClosureMode::Linear).unwrap();
    let gl = group_closure(&gl2_f3_generators(), 1000, ClosureMode::Linear).unwrap();
    assert_eq!(psi.order(), 48);
    assert!(psi.elements().all(preserves_invariant_form));
    assert!(find_isomorphism(&psi, &gl).is_some());
}

#[test]
fn invariant_form_in_cyclotomic_field() {
    let k = CyclotomicField::new(72).unwrap();
    let h = invariant_form_cyc(&k).unwrap();
    assert_eq!(h.signature().unwrap().positive, 2);
    for g in build_g() {
        let e: Vec<_> = g
            .linear
            .entries()
            .iter()
            .map(|x| x.to_cyc(&k).unwrap())
            .collect();
        assert!(preserves_form(&SquareMatrix::new(2, e), &h));
    }
}

#[test]
fn every_element_is_identity_reflection_or_has_isolated_points() {
    let c = crystal();
    let mut kinds = [0usize; 3];
    for g in c.group.elements() {
        if g.is_identity() {
            kinds[0] += 1;
            assert_eq!(fixed_locus(g), Err(CrystalError::IdentityFixedLocus));
            continue;
        }
        match fixed_locus(g).unwrap() {
            FixedLocus::Curves(l) => {
                assert!(g.is_reflection() && !l.is_empty());
                kinds[1] += 1;
            }
            FixedLocus::Points(p) => {
                assert!(!p.is_empty());
                assert!(p.iter().all(|x| g.apply(x) == *x));
                kinds[2] += 1;
            }
            FixedLocus::Empty => panic!("no element of F acts freely: {g}"),
        }
    }
    assert_eq!(kinds, [1, 12, 35]);
}

#[test]
fn fixed_locus_examples() {
    let c = crystal();
    let f = &c.group;
    let curves = |w: &str| match fixed_locus(f.element(f.word(w).unwrap())).unwrap() {
        FixedLocus::Curves(l) => l,
        other => panic!("{other:?}"),
    };
    let z1_zero = TorusLine::z1_equals(QI2::zero(), QI2::zero()).unwrap();
    assert!(curves("212").contains(&z1_zero));
    let m1 = TorusLine::z2_equals(QI2::frac(1, 2, -1, 2), QI2::zero()).unwrap();
    assert!(curves("1").contains(&m1));
    let FixedLocus::Points(p) = fixed_locus(f.element(f.word("13").unwrap())).unwrap() else {
        panic!("order-3 element fixes points");
    };
    assert!(p.contains(&pt(QI2::frac(1, 3, 1, 3), QI2::frac(1, 6, 1, 3))));
}

#[test]
fn mirrors_are_connected_and_permuted_transitively() {
    let c = crystal();
    assert!(c.mirrors.iter().all(|m| m.components.len() == 1));
    let orbit: BTreeSet<_> = c
        .group
        .elements()
        .iter()
        .map(|g| c.mirrors[0].image(g))
        .collect();
    let all: BTreeSet<_> = c.mirrors.iter().map(|m| m.key()).collect();
    assert_eq!(orbit, all);
    assert_eq!(all.len(), 12);
}

#[test]
fn intersections_agree_with_brute_force_on_all_pairs() {
    let c = crystal();
    let start = Instant::now();
    let mut pairs = 0;
    for i in 0..12 {
        for j in i + 1..12 {
            let (a, b) = (&c.mirrors[i].components[0], &c.mirrors[j].components[0]);
            let fast: BTreeSet<_> = line_intersections(a, b).unwrap().into_iter().collect();
            let slow = line_intersections_brute(a, b, 3);
            assert_eq!(
                fast, slow,
                "{} x {}",
                c.mirrors[i].label, c.mirrors[j].label
            );
            assert!(fast.iter().all(|p| a.contains(p) && b.contains(p)));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 66);
    eprintln!("66 pairs checked in {:?}", start.elapsed());
}

#[test]
fn parallel_translate_does_not_meet() {
    let a = TorusLine::z1_equals(QI2::zero(), QI2::zero()).unwrap();
    let b = TorusLine::z1_equals(QI2::zero(), QI2::frac(1, 3, 0, 1)).unwrap();
    assert!(line_intersections(&a, &b).unwrap().is_empty());
}

#[test]
fn mirror_1_meets_mirror_212_in_four_points() {
    let c = crystal();
    let (m1, m212) = (c.mirror_index("1").unwrap(), c.mirror_index("212").unwrap());
    let pts = mirror_intersections(&c.mirrors[m1], &c.mirrors[m212]).unwrap();
    let expected: BTreeSet<_> = [
        QI2::zero(),
        QI2::frac(0, 1, -1, 2),
        QI2::frac(1, 2, 0, 1),
        QI2::frac(1, 2, 1, 2),
    ]
    .into_iter()
    .map(|z2| pt(QI2::zero(), z2))
    .collect();
    assert_eq!(pts, expected);
    let m232 = c.mirror_index("232").unwrap();
    let pts = mirror_intersections(&c.mirrors[m232], &c.mirrors[m212]).unwrap();
    for z2 in [
        QI2::frac(1, 6, 1, 6),
        QI2::frac(-1, 6, -1, 6),
        QI2::frac(1, 2, 1, 2),
    ] {
        assert!(pts.contains(&pt(QI2::zero(), z2)));
    }
}

#[test]
fn intersection_totals_are_24() {
    let c = crystal();
    for k in 0..12 {
        assert_eq!(
            mirror_intersection_total(&c.mirrors, k).unwrap(),
            24,
            "{}",
            c.mirrors[k].label
        );
    }
    // decomposition over the special points of 212
    let k = c.mirror_index("212").unwrap();
    let special = special_points(&c.group).unwrap();
    let mut through: Vec<usize> = special
        .iter()
        .filter(|p| c.mirrors[k].contains(p))
        .map(|p| c.mirrors.iter().filter(|m| m.contains(p)).count() - 1)
        .collect();
    through.sort();
    assert_eq!(through, vec![2, 2, 2, 2, 3, 3, 5, 5]);
    assert_eq!(through.iter().sum::<usize>(), 24);
}

#[test]
fn stabilizer_examples() {
    let c = crystal();
    let f = &c.group;
    let s = stabilizer(f, &pt(QI2::frac(1, 2, 0, 1), QI2::frac(1, 2, 1, 2)));
    assert_eq!((s.order(), s.reflections.len()), (8, 0));
    assert_eq!(f.generated(&[f.word("123").unwrap()]), s.elements);
    let s = stabilizer(f, &pt(QI2::zero(), QI2::zero()));
    assert_eq!((s.order(), s.reflections.len()), (8, 4));
    let s = stabilizer(f, &pt(QI2::zero(), QI2::frac(1, 2, 0, 1)));
    assert_eq!((s.order(), s.reflections.len()), (12, 6));
}

#[test]
fn census() {
    let c = crystal();
    let census = c.census().unwrap();
    let isolated: Vec<(usize, usize)> = census
        .orbits
        .iter()
        .filter(|o| !o.on_mirror)
        .map(|o| (o.size, o.stabilizer_order))
        .collect();
    assert_eq!(isolated, vec![(16, 3), (6, 8)]);
    let on: Vec<(usize, usize, usize)> = census
        .orbits
        .iter()
        .filter(|o| o.on_mirror)
        .map(|o| (o.size, o.stabilizer_order, o.reflections))
        .collect();
    assert_eq!(on, vec![(8, 6, 3), (8, 6, 3), (6, 8, 4), (4, 12, 6)]);
    assert!(census
        .orbits
        .iter()
        .all(|o| o.size * o.stabilizer_order == 48));
    assert!(census
        .orbits
        .iter()
        .filter(|o| o.on_mirror)
        .all(|o| o.generated_by_reflections));
    assert_eq!(census.special_points, 48);
    assert_eq!(census.special_per_mirror, vec![8; 12]);
    assert_eq!(census.chi_v, q(48, 1));
    assert_eq!(census.chi_u, q(1, 1));
    assert_eq!(census.chi_mirror_open, q(-4, 1));
    assert_eq!(census.chi_x, q(3, 1));
}

#[test]
fn mirror_212_quotient() {
    let c = crystal();
    let f = &c.group;
    let k = c.mirror_index("212").unwrap();
    let special = special_points(f).unwrap();
    let mq = mirror_curve_quotient(f, &c.mirrors, &special, k);
    assert_eq!(mq.setwise_stabilizer.len(), 4);
    let r1 = f.word("1").unwrap();
    assert_eq!(mq.other_reflections, vec![r1]);
    assert_eq!(mq.special_points.len(), 8);
    assert_eq!(mq.fixed.len(), 4);
    let swapped: BTreeSet<BTreeSet<TorusPoint>> =
        mq.swapped.iter().map(|(a, b)| [*a, *b].into()).collect();
    let pair =
        |a: QI2| -> BTreeSet<TorusPoint> { [pt(QI2::zero(), a), pt(QI2::zero(), -a)].into() };
    let expected: BTreeSet<_> = [pair(QI2::frac(1, 6, 1, 6)), pair(QI2::frac(1, 6, 1, 3))].into();
    assert_eq!(swapped, expected);
    // R1 acts on z1 = 0 by z2 -> -z2
    let g = f.element(r1);
    for z2 in [QI2::frac(1, 7, 2, 5), QI2::frac(-3, 4, 1, 9)] {
        assert_eq!(g.apply(&pt(QI2::zero(), z2)), pt(QI2::zero(), -z2));
    }
}

#[test]
fn all_table_rows_hold() {
    let c = crystal();
    let checks = tables::check_tables(&c).unwrap();
    assert_eq!(checks.iter().filter(|t| t.table == 1).count(), 12);
    for t in &checks {
        assert!(t.holds, "{t:?}");
    }
}

fn small_point() -> impl Strategy<Value = TorusPoint> {
    proptest::collection::vec((-12i64..12, 1i64..7), 4)
        .prop_map(|v| TorusPoint::from_coords(&v.iter().map(|&(n, d)| q(n, d)).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_idempotent(p in small_point()) {
        prop_assert_eq!(TorusPoint::new(&p.z()), p);
    }

    #[test]
    fn orbit_stabilizer(p in small_point()) {
        let c = crystal();
        let orbit: BTreeSet<_> = c.group.elements().iter().map(|g| g.apply(&p)).collect();
        prop_assert_eq!(orbit.len() * stabilizer(&c.group, &p).order(), 48);
    }

    #[test]
    fn line_images_round_trip(i in 0usize..12, g in 0usize..48) {
        let c = crystal();
        let l = &c.mirrors[i].components[0];
        let h = c.group.element(g);
        prop_assert_eq!(l.image(h).image(&h.inverse()), l.clone());
    }
}
