//! Univariate polynomials with coefficients in `Q(ζ_N)`, and the Galois norm
//! that descends them to `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{CycError, CycNum, CyclotomicField, RatPoly};

/// Dense, low degree first, trimmed so the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycPoly {
    field: Arc<CyclotomicField>,
    coeffs: Vec<CycNum>,
}

impl CycPoly {
    pub fn new(field: &Arc<CyclotomicField>, mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::new(field, vec![])
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::new(field, vec![CycNum::one(field)])
    }

    /// `x - r`
    pub fn linear_root(r: &CycNum) -> Self {
        Self::new(r.field(), vec![-r, r.one_like()])
    }

    pub fn from_ratpoly(field: &Arc<CyclotomicField>, p: &RatPoly) -> Self {
        let c = p
            .coeffs()
            .iter()
            .map(|q| CycNum::from_rational(field, q))
            .collect();
        Self::new(field, c)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycNum {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| CycNum::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&CycNum> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        self.coeffs
            .iter()
            .rev()
            .fold(CycNum::zero(&self.field), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * &CycNum::from_int(&self.field, i as i64))
            .collect();
        Self::new(&self.field, c)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), CycError> {
        let dd = d.degree().ok_or(CycError::DivisionByZero)?;
        let inv = d.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![CycNum::zero(&self.field); r.len().saturating_sub(dd)];
        while r.len() > dd {
            let top = r.len() - 1;
            let f = &r[top] * &inv;
            for (j, c) in d.coeffs.iter().enumerate() {
                let t = &r[top - dd + j] - &(&f * c);
                r[top - dd + j] = t;
            }
            q[top - dd] = f;
            r.pop();
        }
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Applies `ζ ↦ ζ^k` to every coefficient.
    pub fn galois(&self, k: i64) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|c| c.galois(k)).collect(),
        )
    }

    pub fn to_ratpoly(&self) -> Result<RatPoly, CycError> {
        self.coeffs
            .iter()
            .map(|c| c.to_rational().ok_or(CycError::NotRational))
            .collect::<Result<Vec<_>, _>>()
            .map(RatPoly::new)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.field), |acc, _| &acc * self)
    }
}

impl Add for &CycPoly {
    type Output = CycPoly;
    fn add(self, o: &CycPoly) -> CycPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        CycPoly::new(
            &self.field,
            (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect(),
        )
    }
}

impl Sub for &CycPoly {
    type Output = CycPoly;
    fn sub(self, o: &CycPoly) -> CycPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        CycPoly::new(
            &self.field,
            (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect(),
        )
    }
}

impl Neg for &CycPoly {
    type Output = CycPoly;
    fn neg(self) -> CycPoly {
        CycPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &CycPoly {
    type Output = CycPoly;
    fn mul(self, o: &CycPoly) -> CycPoly {
        if self.is_zero() || o.is_zero() {
            return CycPoly::zero(&self.field);
        }
        let mut c = vec![CycNum::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        CycPoly::new(&self.field, c)
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `Π_σ q^σ` over the whole Galois group of `Q(ζ_N)`, which lies in `Q[x]`.
///
/// Conjugates are multiplied pairwise in a balanced tree to keep the
/// intermediate degrees even.
pub fn galois_norm(q: &CycPoly) -> Result<RatPoly, CycError> {
    let mut layer: Vec<CycPoly> = q
        .field()
        .galois_exponents()
        .into_iter()
        .map(|k| q.galois(k as i64))
        .collect();
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|c| {
                if c.len() == 2 {
                    &c[0] * &c[1]
                } else {
                    c[0].clone()
                }
            })
            .collect();
    }
    layer
        .pop()
        .unwrap_or_else(|| CycPoly::one(q.field()))
        .to_ratpoly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{embed_constant, Constant};

    #[test]
    fn norm_of_linear_factors() {
        let k = CyclotomicField::new(72).unwrap();
        let s2 = embed_constant(&k, Constant::Sqrt2).unwrap();
        let n = galois_norm(&CycPoly::linear_root(&s2)).unwrap();
        assert_eq!(n, RatPoly::from_ints(&[-2, 0, 1]).pow(12));
        let one = CycNum::one(&k);
        let n = galois_norm(&CycPoly::linear_root(&one)).unwrap();
        assert_eq!(n, RatPoly::from_ints(&[-1, 1]).pow(24));
    }

    #[test]
    fn division_and_gcd() {
        let k = CyclotomicField::new(24).unwrap();
        let i = embed_constant(&k, Constant::I).unwrap();
        let a = CycPoly::linear_root(&i);
        let b = CycPoly::linear_root(&-&i);
        let p = &a * &b;
        // (x - i)(x + i) = x^2 + 1
        assert_eq!(p.to_ratpoly().unwrap(), RatPoly::from_ints(&[1, 0, 1]));
        let (q, r) = p.div_rem(&a).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(p.gcd(&(&a * &a)), a);
        assert_eq!((&p * &a).squarefree_part(), p);
        assert!(p.eval(&i).is_zero());
    }
}
