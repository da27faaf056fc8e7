use std::fmt;
use std::hash::Hash;

use crate::cyclo::CycNum;

/// Coefficient ring for [`SquareMatrix`](super::SquareMatrix).
///
/// Constructors take a witness element so that field parameters (such as the
/// cyclotomic order) travel with the values.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64_like(&self, n: i64) -> Self;
}

impl Scalar for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero_like(self)
    }
    fn one_like(&self) -> Self {
        CycNum::one_like(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        CycNum::inv(self).ok()
    }
    fn conj(&self) -> Self {
        CycNum::conj(self)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        CycNum::from_int(self.field(), n)
    }
}

/// The prime field with three elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct F3(u8);

impl F3 {
    pub fn new(n: i64) -> Self {
        F3(n.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn all() -> [F3; 3] {
        [F3(0), F3(1), F3(2)]
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for F3 {
    fn zero_like(&self) -> Self {
        F3(0)
    }
    fn one_like(&self) -> Self {
        F3(1)
    }
    fn add(&self, o: &Self) -> Self {
        F3((self.0 + o.0) % 3)
    }
    fn sub(&self, o: &Self) -> Self {
        F3((self.0 + 3 - o.0) % 3)
    }
    fn mul(&self, o: &Self) -> Self {
        F3((self.0 * o.0) % 3)
    }
    fn neg(&self) -> Self {
        F3((3 - self.0) % 3)
    }
    fn inv(&self) -> Option<Self> {
        // 1 and 2 are their own inverses
        (self.0 != 0).then_some(*self)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64_like(&self, n: i64) -> Self {
        F3::new(n)
    }
}
