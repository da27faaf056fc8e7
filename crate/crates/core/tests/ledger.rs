use ballquot::crystal::Crystal;
use ballquot::cyclo::ReflectionOrder;
use ballquot::ledger::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn base() -> BaseNumbers {
    base_numbers(12, 24, 48)
}

fn model(p: ReflectionOrder) -> SurfaceModel {
    builtin_model(model_for(p).unwrap()).unwrap()
}

#[test]
fn base_numbers_from_the_crystal() {
    let c = Crystal::build().unwrap();
    let total = ballquot::crystal::mirror_intersection_total(&c.mirrors, 0).unwrap() as i64;
    let b = base_numbers(c.mirrors.len() as i64, total, c.group.order() as i64);
    assert_eq!(b, base());
    assert_eq!((b.m2, b.km, b.k2), (q(24, 1), q(-12, 1), q(6, 1)));
}

#[test]
fn surviving_self_intersections() {
    let w = builtin_model("W").unwrap();
    let kept: Vec<(String, Q)> = kept_curves(&w)
        .unwrap()
        .into_iter()
        .map(|c| (c.name, c.self_intersection))
        .collect();
    assert_eq!(
        kept,
        vec![
            ("E".into(), q(-1, 3)),
            ("F".into(), q(-1, 2)),
            ("G".into(), q(-1, 6)),
            ("H".into(), q(-1, 6))
        ]
    );
}

#[test]
fn c1_squared_values_and_dual_evaluation() {
    let expected = [q(2, 3), q(21, 16), q(43, 24), q(9, 8)];
    for (p, want) in LEDGER_PS.into_iter().zip(expected) {
        let c = c1_squared(&model(p), p, &base()).unwrap();
        assert!(c.agree(), "p = {p}: {c:?}");
        assert_eq!(c.bilinear, want, "p = {p}");
    }
}

#[test]
fn orbifold_euler_numbers() {
    let expected = [q(2, 9), q(7, 16), q(43, 72), q(3, 8)];
    for (p, want) in LEDGER_PS.into_iter().zip(expected) {
        assert_eq!(chi_orb(&model(p), p).unwrap().total, want, "p = {p}");
    }
    let terms: Vec<Q> = chi_orb(
        &model(ReflectionOrder::Finite(3)),
        ReflectionOrder::Finite(3),
    )
    .unwrap()
    .terms
    .into_iter()
    .map(|(_, v)| v)
    .collect();
    assert_eq!(
        terms,
        vec![q(1, 3), q(1, 8), q(1, 72), q(2, 24), q(-4, 3), q(1, 1)]
    );
}

#[test]
fn strata_agree_with_the_census() {
    let census = Crystal::build().unwrap().census().unwrap();
    for p in LEDGER_PS {
        let m = model(p);
        let spec = m.pair(p).unwrap();
        let find = |label: &str| spec.strata.iter().find(|s| s.label == label);
        assert_eq!(find("open").unwrap().chi, census.chi_u);
        assert_eq!(find("sing3").unwrap().order, 3);
        assert_eq!(find("sing8").unwrap().order, 8);
        if let Some(s) = find("M-open") {
            assert_eq!(s.chi, census.chi_mirror_open);
        }
    }
    let isolated: Vec<usize> = census
        .orbits
        .iter()
        .filter(|o| !o.on_mirror)
        .map(|o| o.stabilizer_order)
        .collect();
    assert_eq!(isolated, vec![3, 8]);
}

#[test]
fn miyaoka_yau_equality() {
    for p in LEDGER_PS {
        let my = check_miyaoka_yau(&model(p), p, &base()).unwrap();
        assert!(my.holds(), "p = {p}: {my:?}");
    }
}

#[test]
fn perturbations_break_equality() {
    for p in LEDGER_PS {
        let per = perturb_weights(&model(p), p, &base(), q(1, 100)).unwrap();
        assert!(!per.is_empty());
        for x in per {
            assert!(!x.equality_holds, "p = {p}: {x:?}");
        }
    }
}

#[test]
fn ampleness() {
    let b = base();
    let a3 = check_ampleness(
        &model(ReflectionOrder::Finite(3)),
        ReflectionOrder::Finite(3),
        &b,
    )
    .unwrap();
    assert_eq!(a3.values, vec![("M".to_string(), q(4, 1))]);
    let a4 = check_ampleness(
        &model(ReflectionOrder::Finite(4)),
        ReflectionOrder::Finite(4),
        &b,
    )
    .unwrap();
    assert_eq!(
        a4.values,
        vec![("M".to_string(), q(9, 2)), ("E".to_string(), q(1, 4))]
    );
    let a6 = check_ampleness(
        &model(ReflectionOrder::Finite(6)),
        ReflectionOrder::Finite(6),
        &b,
    )
    .unwrap();
    assert_eq!(
        a6.values,
        vec![
            ("M".to_string(), q(4, 1)),
            ("E".to_string(), q(1, 2)),
            ("F".to_string(), q(1, 4))
        ]
    );
    assert!(a3.all_positive() && a4.all_positive() && a6.all_positive());
    // at p = ∞ the class is orthogonal to the boundary curve
    let ai = check_ampleness(
        &model(ReflectionOrder::Infinite),
        ReflectionOrder::Infinite,
        &b,
    )
    .unwrap();
    assert_eq!(
        ai.values,
        vec![
            ("M".to_string(), q(0, 1)),
            ("E".to_string(), q(1, 1)),
            ("F".to_string(), q(3, 4)),
            ("G".to_string(), q(1, 4)),
            ("H".to_string(), q(1, 4)),
        ]
    );
    assert!(!ai.all_positive());
}

#[test]
fn p3_log_canonical_class_is_a_sixth_of_m() {
    let x = model(ReflectionOrder::Finite(3));
    let form = IntersectionForm::new(&x, &base()).unwrap();
    let l = form.log_canonical(&x.pair(ReflectionOrder::Finite(3)).unwrap().weights);
    assert_eq!(l, vec![q(1, 6)]);
}

fn small_q() -> impl Strategy<Value = Q> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| Q::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // exceptional curves are orthogonal to pulled-back classes on the full resolution
    #[test]
    fn pullback_orthogonality(a in small_q(), b in small_q(), pt in 0usize..4) {
        let w = builtin_model("W").unwrap();
        let chain = &w.chains[pt];
        let m = chain.matrix();
        for (i, c) in chain.curves.iter().enumerate() {
            // (a π*M + b π*K_X)·eᵢ with π*M = M̂ + Σ mⱼeⱼ and π*K = K̂ − Σ aⱼeⱼ
            let pm: Q = chain.curves.iter().zip(&m[i]).map(|(d, x)| *x * d.multiplicity).sum::<Q>() + c.meets_m;
            let k_hat = Q::from_integer(-2 - c.self_intersection);
            let pk: Q = k_hat - chain.curves.iter().zip(&m[i]).map(|(d, x)| *x * d.discrepancy).sum::<Q>();
            prop_assert_eq!(a * pm + b * pk, Q::from_integer(0));
        }
    }

    // pullback to any model is an isometry on classes from X
    #[test]
    fn pullback_isometry(a in small_q(), b in small_q(), k in 0usize..4) {
        let m = builtin_model(MODEL_NAMES[k]).unwrap();
        let base = base();
        let form = IntersectionForm::new(&m, &base).unwrap();
        let mut v = vec![Q::from_integer(0); form.gram.len()];
        v[0] = a - b / 2; // a·M + b·K_X with K_X ≡ −½M
        let on_x = a * a * base.m2 + Q::from_integer(2) * a * b * base.km + b * b * base.k2;
        prop_assert_eq!(form.dot(&v, &v), on_x);
    }

    #[test]
    fn lct_separates_log_canonical(pt in 0usize..4, lam in small_q()) {
        let w = builtin_model("W").unwrap();
        let chain = &w.chains[pt];
        let t = lct(chain);
        let ok = chain.curves.iter().all(|c| Q::from_integer(c.discrepancy) - lam * c.multiplicity >= Q::from_integer(-1));
        prop_assert_eq!(ok, lam <= t);
    }

    #[test]
    fn random_perturbations_break_equality(p in 0usize..4, num in 1i64..10, den in 101i64..400) {
        let p = LEDGER_PS[p];
        let per = perturb_weights(&model(p), p, &base(), Q::new(num, den)).unwrap();
        prop_assert!(per.iter().all(|x| !x.equality_holds));
    }
}
