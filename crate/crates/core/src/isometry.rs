//! Classification of isometries of a Hermitian form of signature (2,1).

use std::fmt;

use thiserror::Error;

use crate::cyclo::{
    cyclotomic_factor_scan, galois_norm, is_root_of_unity, sign_of_real, CycError, CycNum, CycPoly,
    RatPoly, Sign,
};
use crate::hermlin::{preserves_form, CycMatrix, HermError, HermitianForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("matrix does not preserve the form")]
    FormNotPreserved,
    #[error("determinant is not 1; normalize by a cube root first")]
    DetNotOne,
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error(transparent)]
    Herm(#[from] HermError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum IsometryTag {
    Identity,
    RegularElliptic,
    EllipticNonRegular,
    ComplexReflection,
    Parabolic { unipotent: bool },
    Loxodromic,
}

impl fmt::Display for IsometryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsometryTag::Identity => "identity",
            IsometryTag::RegularElliptic => "regular-elliptic",
            IsometryTag::EllipticNonRegular => "elliptic-non-regular",
            IsometryTag::ComplexReflection => "complex-reflection",
            IsometryTag::Parabolic { unipotent: true } => "parabolic(unipotent)",
            IsometryTag::Parabolic { unipotent: false } => "parabolic(ellipto-parabolic)",
            IsometryTag::Loxodromic => "loxodromic",
        };
        f.write_str(s)
    }
}

/// One piece of the factorization of a characteristic polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EigenFactor {
    /// An eigenvalue in `Q(ζ_N)` that is a root of unity.
    RootOfUnity {
        value: CycNum,
        multiplicity: usize,
        order: u32,
    },
    /// The remaining factor, with no root-of-unity roots in `Q(ζ_N)`.
    ///
    /// `norm` is its Galois norm to `Q`, `minimal` the squarefree part of the
    /// norm, and `cyclotomic` lists the `n` with `Φ_n | minimal`; an empty
    /// list certifies that no root is a root of unity.
    Residual {
        factor: CycPoly,
        norm: RatPoly,
        minimal: RatPoly,
        cyclotomic: Vec<u64>,
    },
}

impl EigenFactor {
    /// Root-of-unity orders, one entry per eigenvalue counted with multiplicity.
    pub fn orders(&self) -> Vec<Option<u32>> {
        match self {
            EigenFactor::RootOfUnity {
                multiplicity,
                order,
                ..
            } => vec![Some(*order); *multiplicity],
            EigenFactor::Residual { factor, .. } => vec![None; factor.degree().unwrap_or(0)],
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsometryClass {
    pub tag: IsometryTag,
    pub goldman: CycNum,
    pub eigen: Vec<EigenFactor>,
}

/// `|τ|⁴ − 8 Re(τ³) + 18 |τ|² − 27`, real for every `τ`.
pub fn goldman_f(tau: &CycNum) -> CycNum {
    let k = tau.field();
    let a = tau.abs_sq();
    let t3 = &(tau * tau) * tau;
    &(&(&(&a * &a) - &(&CycNum::from_int(k, 8) * &t3.re())) + &(&CycNum::from_int(k, 18) * &a))
        - &CycNum::from_int(k, 27)
}

fn all_roots_of_unity(field: &std::sync::Arc<crate::cyclo::CyclotomicField>) -> Vec<CycNum> {
    // ±ζ^k exhausts the roots of unity of Q(ζ_N)
    let n = field.order() as i64;
    (0..n)
        .flat_map(|k| {
            let z = CycNum::zeta_pow(field, k);
            [z.clone(), -&z]
        })
        .collect()
}

/// Splits off every root-of-unity eigenvalue in `Q(ζ_N)` and descends the
/// rest to `Q` through the Galois norm.
pub fn eigenvalue_order_profile(m: &CycMatrix) -> Result<Vec<EigenFactor>, IsoError> {
    let mut rest = m.char_poly();
    let field = rest.field().clone();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for r in all_roots_of_unity(&field) {
        if !seen.insert(r.clone()) {
            continue;
        }
        let lin = CycPoly::linear_root(&r);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.div_rem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            let order = is_root_of_unity(&r).expect("candidate is a root of unity");
            out.push(EigenFactor::RootOfUnity {
                value: r,
                multiplicity: mult,
                order,
            });
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let norm = galois_norm(&rest)?;
        let minimal = norm.squarefree_part();
        let cyclotomic = cyclotomic_factor_scan(&minimal);
        out.push(EigenFactor::Residual {
            factor: rest,
            norm,
            minimal,
            cyclotomic,
        });
    }
    Ok(out)
}

/// The matrix has a double eigenvalue, is diagonalizable, and the simple
/// eigenvalue's eigenvector has positive norm.
pub fn is_complex_reflection(m: &CycMatrix, h: &HermitianForm) -> Result<bool, IsoError> {
    if !preserves_form(m, h) {
        return Err(IsoError::FormNotPreserved);
    }
    let cp = m.char_poly();
    let g = cp.gcd(&cp.derivative());
    if g.degree() != Some(1) || !is_diagonalizable(m) {
        return Ok(false);
    }
    // cp = (x - λ)^2 (x - μ); the gcd is x - λ
    let double = &g * &g;
    let (simple, rem) = cp.div_rem(&double)?;
    debug_assert!(rem.is_zero() && simple.degree() == Some(1));
    let mu = -&simple.coeff(0);
    let shifted = m.sub(&CycMatrix::scalar(m.dim(), &mu));
    let v = match shifted.kernel_vector() {
        Some(v) => v,
        None => return Ok(false),
    };
    Ok(sign_of_real(&h.norm(&v))? == Sign::Positive)
}

/// The squarefree part of the characteristic polynomial kills the matrix.
pub fn is_diagonalizable(m: &CycMatrix) -> bool {
    let s = m.char_poly().squarefree_part();
    m.eval_poly(&s).entries().iter().all(|a| a.is_zero())
}

/// Classifies a determinant-one isometry by the sign of Goldman's
/// discriminant of its trace, refining the zero case by diagonalizability.
pub fn classify(m: &CycMatrix, h: &HermitianForm) -> Result<IsometryClass, IsoError> {
    if !preserves_form(m, h) {
        return Err(IsoError::FormNotPreserved);
    }
    if !m.det().is_one() {
        return Err(IsoError::DetNotOne);
    }
    let f = goldman_f(&m.trace());
    let tag = match sign_of_real(&f)? {
        Sign::Negative => IsometryTag::RegularElliptic,
        Sign::Positive => IsometryTag::Loxodromic,
        Sign::Zero => {
            if m.is_scalar() {
                IsometryTag::Identity
            } else if is_diagonalizable(m) {
                if is_complex_reflection(m, h)? {
                    IsometryTag::ComplexReflection
                } else {
                    IsometryTag::EllipticNonRegular
                }
            } else {
                let one = CycNum::one(m.get(0, 0).field());
                let unipotent = m.char_poly() == CycPoly::linear_root(&one).pow(3);
                IsometryTag::Parabolic { unipotent }
            }
        }
    };
    let eigen = eigenvalue_order_profile(m)?;
    Ok(IsometryClass {
        tag,
        goldman: f,
        eigen,
    })
}

/// A root of unity `c ∈ Q(ζ_N)` with `det(cM) = 1`, if one exists.
pub fn det_normalizer(m: &CycMatrix) -> Option<CycNum> {
    let d = m.det();
    let n = m.dim() as i64;
    all_roots_of_unity(d.field())
        .into_iter()
        .find(|c| c.pow(n).map(|p| (&p * &d).is_one()).unwrap_or(false))
}

/// Smallest `k <= cap` with `M^k` scalar.
pub fn projective_order(m: &CycMatrix, cap: usize) -> Option<usize> {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_scalar() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{Constants, CyclotomicField};

    fn consts() -> Constants {
        Constants::new(&CyclotomicField::new(72).unwrap()).unwrap()
    }

    #[test]
    fn goldman_values() {
        let c = consts();
        assert_eq!(goldman_f(&c.int(3)), c.int(0));
        assert_eq!(goldman_f(&c.int(0)), c.int(-27));
        let s3 = c.sqrt3().unwrap();
        let tau = &(&(&s3 + &c.i) * &(&c.i - &(&(&c.int(1) + &c.i) * &c.sqrt2))) * &c.ratio(1, 2);
        let expect = &c.int(88) - &(&c.int(64) * &c.sqrt2);
        assert_eq!(goldman_f(&tau), expect);
        assert_eq!(goldman_f(&tau.conj()), expect);
    }

    #[test]
    fn permutation_eigenvalues() {
        let c = consts();
        let (z, o) = (c.int(0), c.int(1));
        let j = CycMatrix::from_rows(vec![
            vec![z.clone(), z.clone(), o.clone()],
            vec![o.clone(), z.clone(), z.clone()],
            vec![z.clone(), o.clone(), z.clone()],
        ]);
        let mut orders: Vec<_> = eigenvalue_order_profile(&j)
            .unwrap()
            .iter()
            .flat_map(|e| e.orders())
            .collect();
        orders.sort();
        assert_eq!(orders, vec![Some(1), Some(3), Some(3)]);
        assert_eq!(projective_order(&j, 100), Some(3));
        // J preserves the identity form but is not a reflection
        let h = HermitianForm::new(CycMatrix::identity(3, &o)).unwrap();
        assert!(!is_complex_reflection(&j, &h).unwrap());
        assert!(!is_complex_reflection(&CycMatrix::identity(3, &o), &h).unwrap());
        let ij = j.scale(&c.i);
        let n = det_normalizer(&ij).unwrap();
        assert!(ij.scale(&n).det().is_one());
    }

    #[test]
    fn reflection_with_positive_vector() {
        let c = consts();
        let (z, o) = (c.int(0), c.int(1));
        let h = HermitianForm::new(CycMatrix::from_rows(vec![
            vec![o.clone(), z.clone(), z.clone()],
            vec![z.clone(), o.clone(), z.clone()],
            vec![z.clone(), z.clone(), c.int(-1)],
        ]))
        .unwrap();
        let diag = |a: &CycNum, b: &CycNum, d: &CycNum| {
            CycMatrix::from_rows(vec![
                vec![a.clone(), z.clone(), z.clone()],
                vec![z.clone(), b.clone(), z.clone()],
                vec![z.clone(), z.clone(), d.clone()],
            ])
        };
        let w = &CycNum::zeta_pow(&c.field, 8);
        let wb = w.conj();
        // eigenvector of the simple eigenvalue is e1, positive
        let r = diag(&(w * w), &wb, &wb);
        assert!(is_complex_reflection(&r, &h).unwrap());
        assert_eq!(
            classify(&r, &h).unwrap().tag,
            IsometryTag::ComplexReflection
        );
        // simple eigenvalue on the negative vector: a complex reflection in a point
        let p = diag(&wb, &wb, &(w * w));
        assert!(!is_complex_reflection(&p, &h).unwrap());
        assert_eq!(
            classify(&p, &h).unwrap().tag,
            IsometryTag::EllipticNonRegular
        );
    }
}
