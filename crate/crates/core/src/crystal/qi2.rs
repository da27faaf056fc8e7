use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::cyclo::{embed_constant, Constant, CycError, CycNum, CyclotomicField};
use crate::hermlin::Scalar;

pub type Q = Rational64;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// `a + b·i√2` with rational `a`, `b`: the field `Q(i√2)` in which all of the
/// affine group's matrices live.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct QI2 {
    pub a: Q,
    pub b: Q,
}

impl QI2 {
    pub const fn new(a: Q, b: Q) -> Self {
        Self { a, b }
    }

    pub fn int(n: i64) -> Self {
        Self::new(Q::from_integer(n), Q::zero())
    }

    /// `(an/ad) + (bn/bd)·i√2`
    pub fn frac(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(q(an, ad), q(bn, bd))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `i√2`
    pub fn isqrt2() -> Self {
        Self::new(Q::zero(), Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a, -self.b)
    }

    /// `|x|² = a² + 2b²`
    pub fn norm(&self) -> Q {
        self.a * self.a + Q::from_integer(2) * self.b * self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        (!n.is_zero()).then(|| {
            let c = self.conj();
            Self::new(c.a / n, c.b / n)
        })
    }

    /// Real 2×2 matrix of multiplication by `self` on coordinates `(a, b)`.
    pub fn real_matrix(&self) -> [[Q; 2]; 2] {
        [[self.a, -Q::from_integer(2) * self.b], [self.b, self.a]]
    }

    pub fn to_cyc(&self, field: &Arc<CyclotomicField>) -> Result<CycNum, CycError> {
        let is2 = embed_constant(field, Constant::ISqrt2)?;
        let r = |x: Q| CycNum::from_ratio(field, *x.numer(), *x.denom());
        Ok(&r(self.a) + &(&r(self.b) * &is2))
    }
}

impl Add for QI2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QI2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QI2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for QI2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = Q::from_integer(2);
        Self::new(
            self.a * o.a - two * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )
    }
}

impl Div for QI2 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in Q(i√2)")
    }
}

fn fmt_q(x: Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for QI2 {
    /// `a+b*i*sqrt2` over a common denominator, e.g. `(1+i*sqrt2)/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_q(self.a));
        }
        let den = num_integer::lcm(*self.a.denom(), *self.b.denom());
        let (an, bn) = ((self.a * den).to_integer(), (self.b * den).to_integer());
        let imag = match bn {
            1 => "i*sqrt2".to_string(),
            -1 => "-i*sqrt2".to_string(),
            _ => format!("{bn}*i*sqrt2"),
        };
        let body = if an == 0 {
            imag
        } else if bn > 0 {
            format!("{an}+{imag}")
        } else {
            format!("{an}{imag}")
        };
        if den == 1 {
            write!(f, "{body}")
        } else if an == 0 && bn.abs() == 1 || an == 0 {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

impl Scalar for QI2 {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn inv(&self) -> Option<Self> {
        QI2::inv(self)
    }
    fn conj(&self) -> Self {
        QI2::conj(self)
    }
    fn is_zero(&self) -> bool {
        QI2::is_zero(self)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let s = QI2::isqrt2();
        assert_eq!(s * s, QI2::int(-2));
        let x = QI2::frac(-1, 1, 1, 1);
        assert_eq!(x * x.conj(), QI2::int(3));
        assert_eq!(x * x.inv().unwrap(), QI2::one());
        assert!(QI2::zero().inv().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(QI2::frac(1, 2, 1, 2).to_string(), "(1+i*sqrt2)/2");
        assert_eq!(QI2::frac(0, 1, -1, 2).to_string(), "-i*sqrt2/2");
        assert_eq!(QI2::frac(1, 2, 0, 1).to_string(), "1/2");
        assert_eq!(QI2::frac(1, 1, -1, 1).to_string(), "1-i*sqrt2");
        assert_eq!(QI2::frac(1, 6, 1, 3).to_string(), "(1+2*i*sqrt2)/6");
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let k = CyclotomicField::new(8).unwrap();
        let x = QI2::frac(1, 2, -3, 4);
        let y = QI2::frac(-2, 1, 1, 3);
        let (cx, cy) = (x.to_cyc(&k).unwrap(), y.to_cyc(&k).unwrap());
        assert_eq!((x * y).to_cyc(&k).unwrap(), &cx * &cy);
        assert_eq!(x.conj().to_cyc(&k).unwrap(), cx.conj());
    }
}
