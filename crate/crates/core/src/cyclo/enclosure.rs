//! Rigorous rational interval enclosures of cyclotomic numbers, and the
//! certified sign of real elements built on them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CycError, CycNum};

/// Closed interval with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn floor_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    BigRational::new(
        (q * BigRational::from_integer(scale.clone()))
            .floor()
            .to_integer(),
        scale,
    )
}

fn ceil_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    BigRational::new(
        (q * BigRational::from_integer(scale.clone()))
            .ceil()
            .to_integer(),
        scale,
    )
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Self {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    /// `[q - r, q + r]`
    pub fn ball(q: &BigRational, r: &BigRational) -> Self {
        Self::new(q - r, q + r)
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let (a, b) = (&self.lo * q, &self.hi * q);
        if a <= b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }

    /// Widens outward to endpoints with denominator `2^bits`.
    pub fn round_out(&self, bits: u32) -> Self {
        Self::new(floor_dyadic(&self.lo, bits), ceil_dyadic(&self.hi, bits))
    }

    pub fn widen(&self, r: &BigRational) -> Self {
        Self::new(&self.lo - r, &self.hi + r)
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// Strict sign if the interval excludes zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

/// Rectangular complex enclosure.
#[derive(Clone, Debug)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn real(q: BigRational) -> Self {
        Self {
            re: Interval::point(q),
            im: Interval::zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn round_out(&self, bits: u32) -> Self {
        Self {
            re: self.re.round_out(bits),
            im: self.im.round_out(bits),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            re: self.re.scale(q),
            im: self.im.scale(q),
        }
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.re.intersects(&o.re) && self.im.intersects(&o.im)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `arctan(1/x)` by its alternating series, remainder bounded by the next term.
fn atan_recip(x: i64, bits: u32) -> Interval {
    let tol = BigRational::new(BigInt::one(), pow2(bits + 4));
    let x2 = BigInt::from(x) * x;
    let mut power = BigInt::from(x); // x^{2k+1}
    let mut acc = Interval::zero();
    let mut k: i64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &power * (2 * k + 1));
        if term < tol {
            return acc.widen(&term).round_out(bits + 4);
        }
        let t = Interval::new(floor_dyadic(&term, bits + 8), ceil_dyadic(&term, bits + 8));
        acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        power *= &x2;
        k += 1;
    }
}

/// `π` from Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_enclosure(bits: u32) -> Interval {
    let a = atan_recip(5, bits + 8).scale(&rat(16, 1));
    let b = atan_recip(239, bits + 8).scale(&rat(4, 1));
    a.sub(&b).round_out(bits + 4)
}

/// Enclosures of `cos θ` and `sin θ` for `θ` in the given interval, from the
/// Taylor expansion at the midpoint plus the Lipschitz bound `|Δθ|`.
///
/// Requires `|θ| <= 4`. Terms `m^j/j!` are truncated to dyadics as they are
/// generated; `err` bounds the accumulated truncation error of the current term.
fn cos_sin(theta: &Interval, bits: u32) -> (Interval, Interval) {
    let m = floor_dyadic(&theta.midpoint(), bits + 8);
    assert!(m.abs() <= rat(4, 1), "cos_sin expects a reduced angle");
    let radius = std::cmp::max(&theta.hi - &m, &m - &theta.lo);
    let ulp = BigRational::new(BigInt::one(), pow2(bits + 20));
    let tol = BigRational::new(BigInt::one(), pow2(bits + 6));
    let mut cos = BigRational::zero();
    let mut sin = BigRational::zero();
    let mut total_err = BigRational::zero();
    let mut term = BigRational::one();
    let mut err = BigRational::zero();
    let mut j: i64 = 0;
    loop {
        match j % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        total_err += &err;
        j += 1;
        term = floor_dyadic(
            &(&term * &m / BigRational::from_integer(j.into())),
            bits + 20,
        );
        err = &err * rat(4, j) + &ulp;
        // for j >= 8 the tail is dominated by twice its first term
        if j >= 8 && term.abs() + &err < tol {
            let bound = (term.abs() + &err) * rat(2, 1) + &total_err + &radius;
            return (
                Interval::ball(&cos, &bound).round_out(bits + 4),
                Interval::ball(&sin, &bound).round_out(bits + 4),
            );
        }
    }
}

/// Enclosure of `(cos 2πk/N, sin 2πk/N)`.
pub fn root_of_unity_enclosure(k: i64, n: u32, bits: u32) -> ComplexInterval {
    let n = n as i64;
    let k = k.rem_euclid(n);
    let (kk, flip) = if 2 * k > n { (n - k, true) } else { (k, false) };
    let theta = pi_enclosure(bits + 8).scale(&rat(2 * kk, n));
    let (c, s) = cos_sin(&theta, bits + 4);
    let s = if flip { s.neg() } else { s };
    ComplexInterval {
        re: c.round_out(bits),
        im: s.round_out(bits),
    }
}

/// Encloses the complex value of `x` by Horner evaluation in an enclosure of `ζ_N`.
pub fn enclose(x: &CycNum, bits: u32) -> ComplexInterval {
    let n = x.field().order();
    let zeta = root_of_unity_enclosure(1, n, bits + 16);
    let mut acc = ComplexInterval::real(BigRational::zero());
    for c in x.numerators().iter().rev() {
        acc = acc
            .mul(&zeta)
            .add(&ComplexInterval::real(BigRational::from_integer(c.clone())))
            .round_out(bits + 16);
    }
    acc.scale(&BigRational::new(BigInt::one(), x.denominator().clone()))
        .round_out(bits + 8)
}

/// Sign of a real cyclotomic number.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        }
    }
}

const MAX_BITS: u32 = 1 << 14;

/// Certified sign: exact zero test first, then enclosures at doubling
/// precision until one excludes zero. A nonzero element always separates.
pub fn sign_of_real(x: &CycNum) -> Result<Sign, CycError> {
    if !x.is_real() {
        return Err(CycError::NotReal(x.to_string()));
    }
    if x.is_zero() {
        return Ok(Sign::Zero);
    }
    if let Some(q) = x.to_rational() {
        return Ok(if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        });
    }
    let mut bits = 64;
    while bits <= MAX_BITS {
        match enclose(x, bits).re.sign() {
            Some(Ordering::Greater) => return Ok(Sign::Positive),
            Some(Ordering::Less) => return Ok(Sign::Negative),
            _ => bits *= 2,
        }
    }
    Err(CycError::PrecisionExhausted(MAX_BITS))
}

/// Compares two real cyclotomic numbers.
pub fn compare_real(a: &CycNum, b: &CycNum) -> Result<Ordering, CycError> {
    Ok(match sign_of_real(&(a - b))? {
        Sign::Negative => Ordering::Less,
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Greater,
    })
}

/// Crude `f64` approximation, for diagnostics and numeric cross-checks only.
pub fn approx(x: &CycNum) -> (f64, f64) {
    let e = enclose(x, 64);
    let f = |q: &BigRational| {
        let (n, d) = (q.numer(), q.denom());
        let shift = d.bits().saturating_sub(60).max(n.bits().saturating_sub(60));
        let n = (n >> shift).to_string().parse::<f64>().unwrap_or(0.0);
        let d = (d >> shift).to_string().parse::<f64>().unwrap_or(1.0);
        n / d
    };
    (f(&e.re.midpoint()), f(&e.im.midpoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{embed_constant, Constant, CyclotomicField};

    #[test]
    fn pi_digits() {
        let p = pi_enclosure(128);
        assert!(p.lo > rat(3141592653589793, 1000000000000000));
        assert!(p.hi < rat(3141592653589794, 1000000000000000));
        assert!(p.width() < BigRational::new(BigInt::one(), pow2(120)));
    }

    #[test]
    fn quarter_turn() {
        let z = root_of_unity_enclosure(18, 72, 100);
        assert!(z.re.contains(&BigRational::zero()));
        assert!(z.im.contains(&BigRational::one()));
        assert!(z.re.width() < BigRational::new(BigInt::one(), pow2(90)));
    }

    #[test]
    fn signs_of_paper_constants() {
        let k = CyclotomicField::new(72).unwrap();
        let s2 = embed_constant(&k, Constant::Sqrt2).unwrap();
        let s3 = embed_constant(&k, Constant::Sqrt3).unwrap();
        let x = &CycNum::from_int(&k, 88) - &(&CycNum::from_int(&k, 64) * &s2);
        assert_eq!(sign_of_real(&x).unwrap(), Sign::Negative);
        assert_eq!(sign_of_real(&CycNum::zero(&k)).unwrap(), Sign::Zero);
        let y = &CycNum::from_int(&k, 2) - &s3;
        assert_eq!(sign_of_real(&y).unwrap(), Sign::Positive);
        let i = embed_constant(&k, Constant::I).unwrap();
        assert!(matches!(sign_of_real(&i), Err(CycError::NotReal(_))));
    }

    #[test]
    fn separates_nearly_cancelling_values() {
        // the convergent 665857/470832 exceeds √2 by about 1.6e-12
        let k = CyclotomicField::new(72).unwrap();
        let s2 = embed_constant(&k, Constant::Sqrt2).unwrap();
        let x = &s2 - &CycNum::from_ratio(&k, 665857, 470832);
        assert_eq!(sign_of_real(&x).unwrap(), Sign::Negative);
        assert_eq!(sign_of_real(&-&x).unwrap(), Sign::Positive);
    }
}
