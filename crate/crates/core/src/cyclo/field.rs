use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ratpoly::{cyclotomic_poly, euler_phi};
use super::CycError;

/// The cyclotomic field `Q(ζ_N)` with the power basis `1, ζ, …, ζ^{φ(N)-1}`.
///
/// `fold[k]` holds the reduction of `ζ^k` modulo `Φ_N` for `0 <= k < N`, as a
/// sparse list of `(basis index, integer coefficient)`.
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    fold: Vec<Vec<(usize, i64)>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

// A field is determined by its order; `fold` is derived data.
impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

impl Hash for CyclotomicField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
    }
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>, CycError> {
        if order == 0 {
            return Err(CycError::InvalidOrder(order));
        }
        let degree = euler_phi(order as u64) as usize;
        let modulus: Vec<i64> = cyclotomic_poly(order as u64)
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).expect("cyclotomic coefficient fits i64"))
            .collect();
        let mut fold = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            fold.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
            // multiply by ζ and reduce with the monic modulus
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1] - top * modulus[i];
            }
            cur[0] = -top * modulus[0];
        }
        Ok(Arc::new(Self {
            order,
            degree,
            fold,
        }))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    fn fold_of(&self, k: usize) -> &[(usize, i64)] {
        &self.fold[k % self.order as usize]
    }

    /// Exponents `k` in `1..N` coprime to `N`; `ζ ↦ ζ^k` runs over the Galois group.
    pub fn galois_exponents(&self) -> Vec<u32> {
        (1..=self.order.max(1))
            .filter(|k| k.gcd(&self.order) == 1 && (*k < self.order || self.order == 1))
            .collect()
    }
}

/// An element of `Q(ζ_N)`: `(Σ num_k ζ^k) / den` in the reduced power basis.
///
/// The representation is canonical (`den > 0`, `gcd(num, den) = 1`), so
/// equality and hashing are coefficient comparisons.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl CycNum {
    fn from_parts(field: Arc<CyclotomicField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.degree);
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        }
        Self { field, num, den }
    }

    /// Builds from rational coefficients on the power basis.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Self {
        assert!(coeffs.len() <= field.degree, "too many coefficients");
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); field.degree];
        for (slot, c) in num.iter_mut().zip(coeffs) {
            *slot = (c * &den).to_integer();
        }
        Self::from_parts(field.clone(), num, den)
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_parts(
            field.clone(),
            vec![BigInt::zero(); field.degree],
            BigInt::one(),
        )
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, &BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(field: &Arc<CyclotomicField>, n: i64, d: i64) -> Self {
        Self::from_rational(field, &BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = q.numer().clone();
        Self::from_parts(field.clone(), num, q.denom().clone())
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.order as i64;
        let idx = k.rem_euclid(n) as usize;
        let mut num = vec![BigInt::zero(); field.degree];
        for &(i, c) in field.fold_of(idx) {
            num[i] += c;
        }
        Self::from_parts(field.clone(), num, BigInt::one())
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }

    pub fn one_like(&self) -> Self {
        Self::one(&self.field)
    }

    /// Rational coefficients on the power basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixed cyclotomic fields in one operation"
        );
    }

    /// Maps `Σ c_j ζ^j` to `Σ c_j ζ^{jk}`; a field automorphism when `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.field.order as i64;
        let mut num = vec![BigInt::zero(); self.field.degree];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as i64) * k).rem_euclid(n) as usize;
            for &(i, f) in self.field.fold_of(e) {
                num[i] += c * f;
            }
        }
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `(x + conj x) / 2`
    pub fn re(&self) -> Self {
        &(self + &self.conj()) * &Self::from_ratio(&self.field, 1, 2)
    }

    /// `x · conj x`
    pub fn abs_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Field norm down to `Q`, the product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let prod = self
            .field
            .galois_exponents()
            .into_iter()
            .fold(self.one_like(), |acc, k| &acc * &self.galois(k as i64));
        prod.to_rational().expect("field norm is rational")
    }

    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(&self.field, &q.recip()));
        }
        // x^{-1} = (product of the other conjugates) / N(x)
        let others = self
            .field
            .galois_exponents()
            .into_iter()
            .filter(|&k| k != 1)
            .fold(self.one_like(), |acc, k| &acc * &self.galois(k as i64));
        let n = (self * &others)
            .to_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(&others * &Self::from_rational(&self.field, &n.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CycError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, CycError> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }
}

impl fmt::Display for CycNum {
    /// Coefficient list on the power basis, e.g. `zeta72[1, 0, -1/2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let coeffs = self.coeffs();
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        write!(f, "zeta{}[", self.field.order)?;
        for (i, c) in coeffs[..=last].iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.check_field(rhs);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        CycNum::from_parts(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.check_field(rhs);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den - b * &self.den)
            .collect();
        CycNum::from_parts(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.check_field(rhs);
        let d = self.field.degree;
        let mut raw = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = raw.drain(..d).collect();
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, f) in self.field.fold_of(d + k) {
                num[i] += &c * f;
            }
        }
        CycNum::from_parts(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl Div for &CycNum {
    type Output = CycNum;
    /// Panics on division by zero; use [`CycNum::checked_div`] to handle it.
    fn div(self, rhs: &CycNum) -> CycNum {
        self.checked_div(rhs)
            .expect("division by zero in Q(zeta_N)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum { (&self).$m(&rhs) }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}
