//! Dense polynomials over a small prime field, used only to certify that a
//! rational polynomial fails to split completely modulo a prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::RatPoly;

/// Coefficients low degree first, trimmed, reduced into `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyModP {
    p: u64,
    c: Vec<u64>,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PolyModP {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    /// Reduction of a rational polynomial; `None` if a denominator vanishes mod `p`.
    pub fn from_ratpoly(f: &RatPoly, p: u64) -> Option<Self> {
        let mut c = Vec::with_capacity(f.coeffs().len());
        for q in f.coeffs() {
            let d = reduce_int(q.denom(), p);
            if d == 0 {
                return None;
            }
            c.push(mulm(reduce_int(q.numer(), p), invm(d, p), p));
        }
        Some(Self::new(p, c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mulm(*a, *b, self.p)) % self.p;
            }
        }
        Self::new(self.p, c)
    }

    pub fn rem(&self, m: &Self) -> Self {
        let dm = m.degree().expect("division by the zero polynomial");
        let inv_lead = invm(m.c[dm], self.p);
        let mut r = self.c.clone();
        while r.len() > dm && !r.is_empty() {
            let top = r.len() - 1;
            let f = mulm(r[top], inv_lead, self.p);
            if f != 0 {
                for (j, mc) in m.c.iter().enumerate() {
                    let idx = top - dm + j;
                    r[idx] = (r[idx] + self.p - mulm(f, *mc, self.p)) % self.p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Self::new(self.p, r)
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| mulm(*a, i as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, c)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let inv = invm(a.c[d], a.p);
            let c = a.c.iter().map(|x| mulm(*x, inv, a.p)).collect();
            a = Self::new(a.p, c);
        }
        a
    }

    /// `base^e mod m` by square and multiply.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Number of distinct roots in `F_p`, `deg gcd(x^p - x, f)`.
    pub fn distinct_root_count(&self) -> usize {
        let xp = Self::x(self.p).powmod(self.p, self);
        xp.sub(&Self::x(self.p)).gcd(self).degree().unwrap_or(0)
    }
}

/// Outcome of testing a squarefree rational polynomial modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitTest {
    /// `p` divides a denominator, the leading coefficient or the discriminant.
    BadPrime,
    SplitsCompletely,
    DoesNotSplit {
        roots: usize,
        degree: usize,
    },
}

pub fn split_test(f: &RatPoly, p: u64) -> SplitTest {
    let deg = match f.degree() {
        Some(d) => d,
        None => return SplitTest::BadPrime,
    };
    let g = match PolyModP::from_ratpoly(f, p) {
        Some(g) if g.degree() == Some(deg) => g,
        _ => return SplitTest::BadPrime,
    };
    if g.gcd(&g.derivative()).degree() != Some(0) {
        return SplitTest::BadPrime;
    }
    let roots = g.distinct_root_count();
    if roots == deg {
        SplitTest::SplitsCompletely
    } else {
        SplitTest::DoesNotSplit { roots, degree: deg }
    }
}

/// First prime `p ≡ 1 (mod n)`, `p <= limit`, at which `f` is squarefree of
/// full degree and does not split completely.
///
/// Every prime `p ≡ 1 (mod n)` splits completely in `Q(ζ_n)`, so a polynomial
/// whose roots all lie in `Q(ζ_n)` splits completely modulo each good such
/// prime. A returned prime therefore certifies that some root of `f` lies
/// outside `Q(ζ_n)`.
pub fn non_split_prime(f: &RatPoly, n: u64, limit: u64) -> Option<(u64, SplitTest)> {
    let mut p = n + 1;
    while p <= limit {
        if is_prime(p) {
            let t = split_test(f, p);
            if matches!(t, SplitTest::DoesNotSplit { .. }) {
                return Some((p, t));
            }
        }
        p += n;
    }
    None
}
