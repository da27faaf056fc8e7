//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Everything downstream lives in one field, by default `N = 72`, which holds
//! `i`, `√2`, `√3`, `ω`, `ζ_8` and `e^{2πi/3p}` for `p ∈ {2, 3, 4, 6}`.

mod constants;
mod cycpoly;
mod enclosure;
mod field;
pub mod modp;
mod ratpoly;

use thiserror::Error;

pub use constants::{embed_constant, Constant, Constants, ReflectionOrder};
pub use cycpoly::{galois_norm, CycPoly};
pub use enclosure::{
    approx, compare_real, enclose, pi_enclosure, root_of_unity_enclosure, sign_of_real,
    ComplexInterval, Interval, Sign,
};
pub use field::{CycNum, CyclotomicField};
pub use ratpoly::{
    cyclotomic_factor_scan, cyclotomic_poly, divisors, euler_phi, primitive_integer_part, RatPoly,
};

/// Default order of the ambient root of unity.
pub const DEFAULT_ZETA_ORDER: u32 = 72;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("cyclotomic order must be positive, got {0}")]
    InvalidOrder(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("constant {constant} needs zeta order divisible by its order; use --zeta-order {required} (currently {actual})")]
    Config {
        constant: String,
        required: u32,
        actual: u32,
    },
    #[error("element is not real: {0}")]
    NotReal(String),
    #[error("sign undecided at {0} bits")]
    PrecisionExhausted(u32),
    #[error("polynomial coefficients are not rational")]
    NotRational,
}

/// Multiplicative order of `x` if it is a root of unity.
///
/// Roots of unity in `Q(ζ_N)` have order dividing `2N`, so `x^{2N} = 1` decides.
pub fn is_root_of_unity(x: &CycNum) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let two_n = 2 * x.field().order();
    if !x.pow(two_n as i64).ok()?.is_one() {
        return None;
    }
    divisors(two_n as u64)
        .into_iter()
        .map(|d| d as u32)
        .find(|&d| x.pow(d as i64).map(|y| y.is_one()).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        let k = CyclotomicField::new(72).unwrap();
        let c = Constants::new(&k).unwrap();
        let s3 = c.sqrt3().unwrap();
        let x = -&(&(&c.i + &s3) * &c.ratio(1, 2));
        assert_eq!(is_root_of_unity(&x), Some(12));
        assert_eq!(is_root_of_unity(&c.int(1)), Some(1));
        assert_eq!(is_root_of_unity(&c.int(-1)), Some(2));
        assert_eq!(is_root_of_unity(&c.sigma1()), None);
        assert_eq!(is_root_of_unity(&c.int(0)), None);
        assert_eq!(is_root_of_unity(&CycNum::zeta_pow(&k, 5)), Some(72));
    }
}
