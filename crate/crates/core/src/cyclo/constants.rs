//! Named constants of the verification: `i`, `√2`, `√3`, `i√2`, `ω`, `ζ_k`
//! and the reflection eigenvalue parameter `u(p) = e^{2πi/3p}`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;

use super::{CycError, CycNum, CyclotomicField};

/// Rotation order of a generating reflection; `Infinite` is the unipotent limit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ReflectionOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for ReflectionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReflectionOrder::Finite(p) => write!(f, "{p}"),
            ReflectionOrder::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ReflectionOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinity" | "oo" => Ok(ReflectionOrder::Infinite),
            _ => s
                .parse::<u32>()
                .ok()
                .filter(|p| *p >= 1)
                .map(ReflectionOrder::Finite)
                .ok_or_else(|| {
                    format!("invalid order `{s}`, expected a positive integer or `inf`")
                }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Constant {
    I,
    Sqrt2,
    Sqrt3,
    ISqrt2,
    Omega,
    /// Primitive `k`-th root of unity `e^{2πi/k}`.
    Zeta(u32),
    U(ReflectionOrder),
}

impl Constant {
    /// Smallest field order that contains the constant.
    pub fn required_order(self) -> u32 {
        match self {
            Constant::I => 4,
            Constant::Sqrt2 | Constant::ISqrt2 => 8,
            Constant::Sqrt3 => 12,
            Constant::Omega => 3,
            Constant::Zeta(k) => k.max(1),
            Constant::U(ReflectionOrder::Finite(p)) => 3 * p,
            Constant::U(ReflectionOrder::Infinite) => 1,
        }
    }

    pub fn name(self) -> String {
        match self {
            Constant::I => "i".into(),
            Constant::Sqrt2 => "sqrt2".into(),
            Constant::Sqrt3 => "sqrt3".into(),
            Constant::ISqrt2 => "isqrt2".into(),
            Constant::Omega => "omega".into(),
            Constant::Zeta(k) => format!("zeta({k})"),
            Constant::U(p) => format!("u({p})"),
        }
    }
}

/// Exact value of a named constant in `Q(ζ_N)`.
pub fn embed_constant(field: &Arc<CyclotomicField>, c: Constant) -> Result<CycNum, CycError> {
    let n = field.order();
    let need = c.required_order();
    if !n.is_multiple_of(need) {
        return Err(CycError::Config {
            constant: c.name(),
            required: n.lcm(&need),
            actual: n,
        });
    }
    // ζ_N^{N/k} is the primitive k-th root
    let root = |k: u32, e: i64| CycNum::zeta_pow(field, (n / k) as i64 * e);
    Ok(match c {
        Constant::I => root(4, 1),
        Constant::Sqrt2 => &root(8, 1) + &root(8, 7),
        Constant::ISqrt2 => &root(8, 1) + &root(8, 3),
        Constant::Sqrt3 => &root(12, 1) + &root(12, 11),
        Constant::Omega => root(3, 1),
        Constant::Zeta(k) => root(k.max(1), 1),
        Constant::U(ReflectionOrder::Finite(p)) => root(3 * p, 1),
        Constant::U(ReflectionOrder::Infinite) => CycNum::one(field),
    })
}

/// Frequently used constants bundled for one field.
#[derive(Clone, Debug)]
pub struct Constants {
    pub field: Arc<CyclotomicField>,
    pub i: CycNum,
    pub sqrt2: CycNum,
    pub isqrt2: CycNum,
    pub omega: CycNum,
}

impl Constants {
    /// Requires `8 | N` and `3 | N`.
    pub fn new(field: &Arc<CyclotomicField>) -> Result<Self, CycError> {
        Ok(Self {
            field: field.clone(),
            i: embed_constant(field, Constant::I)?,
            sqrt2: embed_constant(field, Constant::Sqrt2)?,
            isqrt2: embed_constant(field, Constant::ISqrt2)?,
            omega: embed_constant(field, Constant::Omega)?,
        })
    }

    pub fn int(&self, n: i64) -> CycNum {
        CycNum::from_int(&self.field, n)
    }

    pub fn ratio(&self, n: i64, d: i64) -> CycNum {
        CycNum::from_ratio(&self.field, n, d)
    }

    /// `a + b·i√2` with rational `a = an/ad`, `b = bn/bd`.
    pub fn qi2(&self, an: i64, ad: i64, bn: i64, bd: i64) -> CycNum {
        &self.ratio(an, ad) + &(&self.ratio(bn, bd) * &self.isqrt2)
    }

    /// `σ₁ = -1 + i√2`
    pub fn sigma1(&self) -> CycNum {
        self.qi2(-1, 1, 1, 1)
    }

    pub fn sqrt3(&self) -> Result<CycNum, CycError> {
        embed_constant(&self.field, Constant::Sqrt3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_identities() {
        let k = CyclotomicField::new(72).unwrap();
        let e = |c| embed_constant(&k, c).unwrap();
        let one = CycNum::one(&k);
        assert_eq!(
            &e(Constant::Sqrt2) * &e(Constant::Sqrt2),
            CycNum::from_int(&k, 2)
        );
        assert_eq!(
            &e(Constant::Sqrt3) * &e(Constant::Sqrt3),
            CycNum::from_int(&k, 3)
        );
        assert_eq!(&e(Constant::I) * &e(Constant::I), -&one);
        let w = e(Constant::Omega);
        assert!((&(&(&w * &w) + &w) + &one).is_zero());
        let is2 = e(Constant::ISqrt2);
        assert_eq!(&is2 * &is2, CycNum::from_int(&k, -2));
        // i√2 = ζ₈ + ζ₈³
        let z8 = e(Constant::Zeta(8));
        assert_eq!(is2, &z8 + &z8.pow(3).unwrap());
        assert_eq!(is2, &e(Constant::I) * &e(Constant::Sqrt2));
        for p in [2u32, 3, 4, 6] {
            let u = e(Constant::U(ReflectionOrder::Finite(p)));
            assert!(u.pow(3 * p as i64).unwrap().is_one());
            assert!(!u.pow(p as i64).unwrap().is_one());
        }
        assert!(e(Constant::U(ReflectionOrder::Infinite)).is_one());
    }

    #[test]
    fn config_error_names_required_order() {
        let k = CyclotomicField::new(24).unwrap();
        match embed_constant(&k, Constant::U(ReflectionOrder::Finite(3))) {
            Err(CycError::Config {
                required, actual, ..
            }) => {
                assert_eq!(required, 72);
                assert_eq!(actual, 24);
            }
            other => panic!("expected configuration error, got {other:?}"),
        }
        assert!(embed_constant(&k, Constant::U(ReflectionOrder::Finite(4))).is_ok());
    }

    #[test]
    fn parse_orders() {
        assert_eq!(
            "inf".parse::<ReflectionOrder>().unwrap(),
            ReflectionOrder::Infinite
        );
        assert_eq!(
            "4".parse::<ReflectionOrder>().unwrap(),
            ReflectionOrder::Finite(4)
        );
        assert!("0".parse::<ReflectionOrder>().is_err());
        assert!("x".parse::<ReflectionOrder>().is_err());
    }
}
