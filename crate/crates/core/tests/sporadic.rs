use std::sync::Arc;

use ballquot::cyclo::{enclose, Constants, CycNum, CyclotomicField, ReflectionOrder, Sign};
use ballquot::hermlin::Signature;
use ballquot::isometry::{classify, IsometryTag};
use ballquot::sporadic::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn field() -> Arc<CyclotomicField> {
    CyclotomicField::new(72).unwrap()
}

fn orders() -> Vec<ReflectionOrder> {
    let mut v: Vec<_> = [2, 3, 4, 6]
        .into_iter()
        .map(ReflectionOrder::Finite)
        .collect();
    v.push(ReflectionOrder::Infinite);
    v
}

#[test]
fn traces_forms_and_r1j_order() {
    let k = field();
    let sigma = TraceChoice::Sigma1.value(&k).unwrap();
    for p in orders() {
        let d = build_sporadic(&k, p, &sigma).unwrap();
        assert!(d.trace_conditions().unwrap(), "p={p}");
        assert!(d.preserves_form(), "p={p}");
        assert_eq!(verify_r1j_order(&d).unwrap(), 8, "p={p}");
        assert!(d.j_identity(), "p={p}");
        let tr = d.r1.mul(&d.j.inverse().unwrap()).trace();
        assert_eq!(tr, -&(&d.u * &d.r1.mul(&d.j).trace().conj()));
    }
}

#[test]
fn signatures() {
    let k = field();
    let sigma = TraceChoice::Sigma1.value(&k).unwrap();
    for p in orders() {
        let d = build_sporadic(&k, p, &sigma).unwrap();
        let s = d.signature().unwrap();
        match p {
            // the printed form degenerates at p = 2
            ReflectionOrder::Finite(2) => assert_eq!(s, Signature::new(2, 0, 1)),
            _ => assert_eq!(s, Signature::new(2, 1, 0), "p={p}"),
        }
    }
}

#[test]
fn thompson_profile() {
    let k = field();
    let sigma = TraceChoice::Sigma1.value(&k).unwrap();
    for p in orders() {
        let d = build_sporadic(&k, p, &sigma).unwrap();
        let t = thompson_change_of_generators(&d).unwrap();
        assert!(t.recovers_standard(&d).unwrap());
        if p != ReflectionOrder::Finite(2) {
            assert_eq!(
                t.braid_profile(12).unwrap(),
                [Some(3), Some(3), Some(4), Some(6)],
                "p={p}"
            );
        }
        let rrr = t.r1.mul(&t.r2).mul(&t.r3);
        assert_eq!(
            ballquot::isometry::projective_order(&rrr, 100),
            Some(8),
            "p={p}"
        );
    }
}

#[test]
fn generator_classes() {
    let k = field();
    let sigma = TraceChoice::Sigma1.value(&k).unwrap();
    let d = build_sporadic(&k, ReflectionOrder::Finite(3), &sigma).unwrap();
    assert_eq!(
        classify(&d.r1, &d.h).unwrap().tag,
        IsometryTag::ComplexReflection
    );
    let d = build_sporadic(&k, ReflectionOrder::Infinite, &sigma).unwrap();
    assert_eq!(
        classify(&d.r1, &d.h).unwrap().tag,
        IsometryTag::Parabolic { unipotent: true }
    );
    for p in [3, 4, 6] {
        let d = build_sporadic(&k, ReflectionOrder::Finite(p), &sigma).unwrap();
        let m = d.r1.mul(&d.j);
        let c = ballquot::isometry::det_normalizer(&m).unwrap();
        let class = classify(&m.scale(&c), &d.h).unwrap();
        assert_eq!(class.tag, IsometryTag::RegularElliptic, "p={p}");
    }
}

#[test]
fn witness() {
    let k = field();
    let c = Constants::new(&k).unwrap();
    let w = nondiscreteness_witness_s4bar(&k).unwrap();
    let expected = &c.int(88) - &(&c.int(64) * &c.sqrt2);
    assert!(w.det.is_one());
    assert_eq!(w.tau_m, w.tau_closed_form);
    assert_eq!(w.goldman, expected);
    assert_eq!(w.goldman_sign, Sign::Negative);
    assert!(w.char_poly_matches);
    assert_eq!(w.roots_of_unity, vec![(witness_root(&c).unwrap(), 12)]);
    assert_eq!(w.minimal_degree(), Some(16));
    assert_eq!(w.norm_exponent, Some(3));
    assert!(w.cyclotomic_factors.is_empty());
    assert!(w.irreducibility_prime.is_some());
    assert_eq!(w.counterpart_sign, Sign::Positive);
    assert_eq!(w.counterpart_goldman, &c.int(88) + &(&c.int(64) * &c.sqrt2));
    assert!(w.holds(&expected, &witness_root(&c).unwrap()));
    let class = {
        let d = build_sporadic(
            &k,
            ReflectionOrder::Finite(4),
            &TraceChoice::Sigma1Bar.value(&k).unwrap(),
        )
        .unwrap();
        classify(&d.r3.mul(&d.r1).mul(&d.r2).mul(&d.j), &d.h).unwrap()
    };
    assert_eq!(class.tag, IsometryTag::RegularElliptic);
}

type C = (BigRational, BigRational);

fn cmul(a: &C, b: &C) -> C {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn cadd(a: &C, b: &C) -> C {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn truncate(a: &C) -> C {
    let s = BigRational::from_integer(BigInt::one() << 256);
    let t = |q: &BigRational| (q * &s).round() / &s;
    (t(&a.0), t(&a.1))
}

fn horner(coeffs: &[C], x: &C) -> C {
    let zero = (BigRational::zero(), BigRational::zero());
    coeffs
        .iter()
        .rev()
        .fold(zero, |acc, c| truncate(&cadd(&cmul(&acc, x), c)))
}

fn to_c(x: &CycNum) -> C {
    let e = enclose(x, 300);
    (e.re.midpoint(), e.im.midpoint())
}

fn abs_sq(a: &C) -> BigRational {
    &a.0 * &a.0 + &a.1 * &a.1
}

/// Newton's method on the residual quadratic in dyadic complex arithmetic,
/// then the degree-16 polynomial evaluated at both roots.
#[test]
fn residual_roots_satisfy_minimal_polynomial_numerically() {
    let k = field();
    let w = nondiscreteness_witness_s4bar(&k).unwrap();
    let q = w.residual.unwrap();
    let qc: Vec<C> = q.coeffs().iter().map(to_c).collect();
    let dq: Vec<C> = q.derivative().coeffs().iter().map(to_c).collect();
    let m: Vec<C> = w
        .minimal
        .unwrap()
        .coeffs()
        .iter()
        .map(|c| (c.clone(), BigRational::zero()))
        .collect();
    let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(60));
    let mut found: Vec<C> = Vec::new();
    for start in [(1, 1), (-1, -1), (1, -1), (-1, 1)] {
        let mut x: C = (
            BigRational::from_integer(start.0.into()),
            BigRational::from_integer(start.1.into()),
        );
        for _ in 0..80 {
            let f = horner(&qc, &x);
            let d = horner(&dq, &x);
            let n = abs_sq(&d);
            // x - f/d with f/d = f·conj(d)/|d|²
            let step = cmul(&f, &(d.0.clone(), -d.1.clone()));
            x = truncate(&(&x.0 - &step.0 / &n, &x.1 - &step.1 / &n));
        }
        if abs_sq(&horner(&qc, &x)) < tol {
            // |m(x)|² < 1e-60, i.e. |m(x)| < 1e-30
            assert!(abs_sq(&horner(&m, &x)) < tol);
            found.push(x);
        }
    }
    // both roots of the quadratic are reached
    let gap = BigRational::new(BigInt::one(), BigInt::from(1000));
    let distinct = found.iter().any(|a| {
        found
            .iter()
            .any(|b| abs_sq(&(&a.0 - &b.0, &a.1 - &b.1)) > gap)
    });
    assert!(distinct);
}
