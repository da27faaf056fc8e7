//! Algebraic invariants of the field, matrix and isometry layers.

use std::sync::{Arc, OnceLock};

use ballquot::crystal::{build_g, Mat2};
use ballquot::cyclo::{
    enclose, galois_norm, root_of_unity_enclosure, sign_of_real, ComplexInterval, Constants,
    CycNum, CycPoly, CyclotomicField, ReflectionOrder, Sign,
};
use ballquot::hermlin::{
    braid_length, gl2_f3_generators, group_closure, verify_relation, ClosureMode, CycMatrix,
    GroupClosure, HermitianForm, SquareMatrix, F3,
};
use ballquot::isometry::{
    classify, det_normalizer, eigenvalue_order_profile, goldman_f, IsometryTag,
};
use ballquot::sporadic::{build_sporadic, SporadicGroupData, TraceChoice};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn k72() -> &'static Arc<CyclotomicField> {
    static K: OnceLock<Arc<CyclotomicField>> = OnceLock::new();
    K.get_or_init(|| CyclotomicField::new(72).unwrap())
}

fn cyc(coeffs: &[i64]) -> CycNum {
    let c: Vec<BigRational> = coeffs
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    CycNum::from_coeffs(k72(), &c)
}

fn small_cyc() -> impl Strategy<Value = CycNum> {
    proptest::collection::vec(-3i64..4, 24).prop_map(|v| cyc(&v))
}

fn psi() -> &'static GroupClosure<ballquot::crystal::QI2> {
    static G: OnceLock<GroupClosure<ballquot::crystal::QI2>> = OnceLock::new();
    G.get_or_init(|| {
        let lin: Vec<Mat2> = build_g().iter().map(|g| g.linear.clone()).collect();
        group_closure(&lin, 1000, ClosureMode::Linear).unwrap()
    })
}

fn gl2() -> &'static GroupClosure<F3> {
    static G: OnceLock<GroupClosure<F3>> = OnceLock::new();
    G.get_or_init(|| group_closure(&gl2_f3_generators(), 1000, ClosureMode::Linear).unwrap())
}

fn sporadic(p: u32) -> SporadicGroupData {
    let tau = TraceChoice::Sigma1.value(k72()).unwrap();
    build_sporadic(k72(), ReflectionOrder::Finite(p), &tau).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn conjugation_is_a_ring_involution(x in small_cyc(), y in small_cyc()) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn inverse_is_exact(x in small_cyc()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn sign_zero_iff_zero(x in small_cyc()) {
        let r = &x + &x.conj();
        let s = sign_of_real(&r).unwrap();
        prop_assert_eq!(s == Sign::Zero, r.is_zero());
        // |x|^2 is never negative
        prop_assert_ne!(sign_of_real(&x.abs_sq()).unwrap(), Sign::Negative);
    }

    #[test]
    fn galois_norm_is_rational(a in small_cyc(), b in small_cyc()) {
        // the norm of x^2 + a x + b descends to Q; errors would mean an
        // imaginary coefficient survived
        let q = CycPoly::new(k72(), vec![b, a, CycNum::one(k72())]);
        let n = galois_norm(&q).unwrap();
        prop_assert_eq!(n.degree(), Some(48));
    }

    #[test]
    fn enclosure_agrees_with_direct_sum(v in proptest::collection::vec(-5i64..6, 24)) {
        // Horner evaluation against an independent sum of coefficient * zeta^k
        let x = cyc(&v);
        let bits = 140;
        let horner = enclose(&x, bits);
        let mut direct = ComplexInterval::real(BigRational::zero());
        for (k, c) in v.iter().enumerate() {
            let z = root_of_unity_enclosure(k as i64, 72, bits);
            direct = direct.add(&z.scale(&BigRational::from_integer(BigInt::from(*c))));
        }
        prop_assert!(horner.intersects(&direct));
        let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(40));
        prop_assert!(horner.re.width() < tol && horner.im.width() < tol);
    }

    #[test]
    fn braid_length_is_symmetric(a in 0usize..48, b in 0usize..48) {
        let g = gl2();
        let (x, y) = (g.element(a), g.element(b));
        prop_assert_eq!(braid_length(x, y, 24), braid_length(y, x, 24));
    }

    #[test]
    fn relations_survive_conjugation(h in 0usize..48) {
        let g = psi();
        let h = g.element(h);
        let hi = h.inverse().unwrap();
        let gens: Vec<Mat2> = g.generators().to_vec();
        let conj: Vec<Mat2> = gens.iter().map(|x| h.mul(x).mul(&hi)).collect();
        let words: [&[(usize, i64)]; 6] = [
            &[(0, 2)],
            &[(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)],
            &[(1, 1), (2, 1), (1, 1), (2, 1), (1, 1), (2, 1)],
            &[(2, 1), (0, 1), (2, 1), (0, 1), (2, 1), (0, 1)],
            // not relations
            &[(0, 1), (1, 1)],
            &[(1, 1), (2, 1), (1, 1), (2, 1)],
        ];
        for w in words {
            prop_assert_eq!(
                verify_relation(w, &gens, ClosureMode::Linear).unwrap(),
                verify_relation(w, &conj, ClosureMode::Linear).unwrap()
            );
        }
    }

    #[test]
    fn signature_is_a_congruence_invariant(e in proptest::collection::vec(0usize..4, 9)) {
        let c = Constants::new(k72()).unwrap();
        let pick = [c.int(-1), c.int(0), c.int(1), c.isqrt2.clone()];
        let p = CycMatrix::new(3, e.iter().map(|&i| pick[i].clone()).collect());
        prop_assume!(!p.det().is_zero());
        let h = sporadic(3).h;
        prop_assert_eq!(h.congruent(&p).unwrap().signature().unwrap(), h.signature().unwrap());
    }

    #[test]
    fn classification_is_conjugation_invariant(word in proptest::collection::vec(0usize..4, 1..6)) {
        let d = sporadic(4);
        let gens = [&d.r1, &d.j, &d.r2, &d.r3];
        let p = word.iter().fold(CycMatrix::identity(3, &CycNum::one(k72())), |acc, &i| acc.mul(gens[i]));
        let m = d.r1.mul(&d.j);
        let m = m.scale(&det_normalizer(&m).unwrap());
        let conj = p.mul(&m).mul(&p.inverse().unwrap());
        let (a, b) = (classify(&m, &d.h).unwrap(), classify(&conj, &d.h).unwrap());
        prop_assert_eq!(a.tag, b.tag);
        prop_assert_eq!(a.goldman, b.goldman);
    }
}

#[test]
fn lagrange_on_linear_parts() {
    for g in [psi().order(), gl2().order()] {
        assert_eq!(g, 48);
    }
    let g = psi();
    for i in 0..g.order() {
        assert_eq!(48 % g.element_order(i), 0);
    }
    let g = gl2();
    for i in 0..g.order() {
        assert_eq!(48 % g.element_order(i), 0);
    }
}

#[test]
fn projective_keys_are_injective() {
    let lin: Vec<Mat2> = build_g().iter().map(|g| g.linear.clone()).collect();
    let pg = group_closure(&lin, 1000, ClosureMode::Projective).unwrap();
    // the centre of the linear group is {±1}
    assert_eq!(pg.order(), 24);
    let elems: Vec<&Mat2> = pg.elements().collect();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            assert!(!a.mul(&b.inverse().unwrap()).is_scalar());
        }
    }
}

#[test]
fn goldman_of_inverse_is_conjugate() {
    for p in [3, 4, 6] {
        let d = sporadic(p);
        for m in [d.r1.mul(&d.j), d.r3.mul(&d.r1).mul(&d.r2).mul(&d.j)] {
            let m = m.scale(&det_normalizer(&m).unwrap());
            let mi = m.inverse().unwrap();
            assert_eq!(mi.trace(), m.trace().conj());
            assert_eq!(goldman_f(&mi.trace()), goldman_f(&m.trace().conj()));
            assert_eq!(goldman_f(&mi.trace()), goldman_f(&m.trace()));
        }
    }
}

#[test]
fn eigenvalue_orders_divide_element_order() {
    let g = psi();
    for i in 0..g.order() {
        let e: Vec<CycNum> = g
            .element(i)
            .entries()
            .iter()
            .map(|x| x.to_cyc(k72()).unwrap())
            .collect();
        let m = SquareMatrix::new(2, e);
        let k = g.element_order(i) as u32;
        for f in eigenvalue_order_profile(&m).unwrap() {
            for o in f.orders() {
                let o = o.expect("finite order elements have root-of-unity eigenvalues");
                assert_eq!(k % o, 0, "element {i}");
            }
        }
    }
}

#[test]
fn regular_elliptic_has_squarefree_char_poly() {
    let mut seen = 0;
    for p in [3, 4, 6] {
        let d = sporadic(p);
        let words = [
            d.r1.mul(&d.j),
            d.r1.mul(&d.r2),
            d.r3.mul(&d.r1).mul(&d.r2).mul(&d.j),
            d.r1.mul(&d.r2).mul(&d.r3),
        ];
        for m in words {
            let m = m.scale(&det_normalizer(&m).unwrap());
            if classify(&m, &d.h).unwrap().tag == IsometryTag::RegularElliptic {
                let cp = m.char_poly();
                assert_eq!(cp.gcd(&cp.derivative()).degree(), Some(0));
                seen += 1;
            }
        }
    }
    assert!(seen >= 3);
}

#[test]
fn limit_form_is_hermitian() {
    let tau = TraceChoice::Sigma1.value(k72()).unwrap();
    let d = build_sporadic(k72(), ReflectionOrder::Infinite, &tau).unwrap();
    assert!(HermitianForm::new(d.h.matrix().clone()).is_ok());
    assert!(d.h.matrix().get(0, 0).is_zero());
}
