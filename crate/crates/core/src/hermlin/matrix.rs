use std::fmt;
use std::hash::Hash;

use crate::cyclo::{CycNum, CycPoly};

use super::{HermError, Scalar};

/// A dense `n × n` matrix, row-major. Only `n ∈ {2, 3}` occurs in practice,
/// and determinants are expanded explicitly for those sizes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SquareMatrix<T> {
    n: usize,
    e: Vec<T>,
}

pub type CycMatrix = SquareMatrix<CycNum>;

impl<T: Scalar> SquareMatrix<T> {
    pub fn new(n: usize, e: Vec<T>) -> Self {
        assert_eq!(e.len(), n * n, "expected {} entries", n * n);
        assert!(n >= 1);
        Self { n, e }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// Identity of size `n` with entries in the ring of `like`.
    pub fn identity(n: usize, like: &T) -> Self {
        let e = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    like.one_like()
                } else {
                    like.zero_like()
                }
            })
            .collect();
        Self::new(n, e)
    }

    pub fn scalar(n: usize, c: &T) -> Self {
        let e = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    c.clone()
                } else {
                    c.zero_like()
                }
            })
            .collect();
        Self::new(n, e)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[T] {
        &self.e
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.e[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.e[i * self.n..(i + 1) * self.n]
    }

    fn like(&self) -> &T {
        &self.e[0]
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Self::new(self.n, self.e.iter().map(f).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.get(i, 0).mul(o.get(0, j));
                for k in 1..n {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                e.push(acc);
            }
        }
        Self::new(n, e)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.n,
            self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            self.n,
            self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Self::new(
            n,
            (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect(),
        )
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().map(|a| a.conj())
    }

    pub fn trace(&self) -> T {
        (1..self.n).fold(self.get(0, 0).clone(), |acc, i| acc.add(self.get(i, i)))
    }

    fn minor2(&self, r: [usize; 2], c: [usize; 2]) -> T {
        self.get(r[0], c[0])
            .mul(self.get(r[1], c[1]))
            .sub(&self.get(r[0], c[1]).mul(self.get(r[1], c[0])))
    }

    pub fn det(&self) -> T {
        match self.n {
            1 => self.e[0].clone(),
            2 => self.minor2([0, 1], [0, 1]),
            3 => {
                let a = self.get(0, 0).mul(&self.minor2([1, 2], [1, 2]));
                let b = self.get(0, 1).mul(&self.minor2([1, 2], [0, 2]));
                let c = self.get(0, 2).mul(&self.minor2([1, 2], [0, 1]));
                a.sub(&b).add(&c)
            }
            n => panic!("determinant implemented for n <= 3, got {n}"),
        }
    }

    /// Adjugate, the transpose of the cofactor matrix.
    fn adjugate(&self) -> Self {
        let n = self.n;
        match n {
            1 => Self::identity(1, self.like()),
            2 => Self::from_rows(vec![
                vec![self.get(1, 1).clone(), self.get(0, 1).neg()],
                vec![self.get(1, 0).neg(), self.get(0, 0).clone()],
            ]),
            3 => {
                let others = |k: usize| -> [usize; 2] {
                    match k {
                        0 => [1, 2],
                        1 => [0, 2],
                        _ => [0, 1],
                    }
                };
                let mut e = Vec::with_capacity(9);
                for i in 0..3 {
                    for j in 0..3 {
                        // cofactor of entry (j, i)
                        let m = self.minor2(others(j), others(i));
                        e.push(if (i + j) % 2 == 0 { m } else { m.neg() });
                    }
                }
                Self::new(3, e)
            }
            n => panic!("inverse implemented for n <= 3, got {n}"),
        }
    }

    pub fn inverse(&self) -> Result<Self, HermError> {
        let d = self.det().inv().ok_or(HermError::Singular)?;
        Ok(self.adjugate().scale(&d))
    }

    /// `M^k`; negative exponents go through the inverse.
    pub fn pow(&self, k: i64) -> Result<Self, HermError> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.n, self.like());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.like())
    }

    /// `Some(c)` if the matrix is `c·I`.
    pub fn scalar_value(&self) -> Option<T> {
        let c = self.get(0, 0).clone();
        (*self == Self::scalar(self.n, &c)).then_some(c)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    /// Canonical representative of the line `T^× · M`: the matrix divided by
    /// its first nonzero entry.
    pub fn projective_key(&self) -> Self {
        match self.e.iter().find(|a| !a.is_zero()) {
            Some(a) => self.scale(&a.inv().expect("nonzero entry is invertible")),
            None => self.clone(),
        }
    }

    /// Characteristic polynomial `det(λI - M)`, monic, low degree first.
    ///
    /// Coefficients come from sums of principal minors.
    pub fn char_poly_coeffs(&self) -> Vec<T> {
        let one = self.like().one_like();
        match self.n {
            1 => vec![self.e[0].neg(), one],
            2 => vec![self.det(), self.trace().neg(), one],
            3 => {
                let c2 = self
                    .minor2([0, 1], [0, 1])
                    .add(&self.minor2([0, 2], [0, 2]))
                    .add(&self.minor2([1, 2], [1, 2]));
                vec![self.det().neg(), c2, self.trace().neg(), one]
            }
            n => panic!("characteristic polynomial implemented for n <= 3, got {n}"),
        }
    }

    /// `M v` for a column vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                (1..self.n).fold(self.get(i, 0).mul(&v[0]), |acc, k| {
                    acc.add(&self.get(i, k).mul(&v[k]))
                })
            })
            .collect()
    }

    /// A nonzero vector of the kernel, when the rank is exactly `n - 1`.
    pub fn kernel_vector(&self) -> Option<Vec<T>> {
        let n = self.n;
        if n == 1 {
            return self.e[0].is_zero().then(|| vec![self.like().one_like()]);
        }
        // rows of the adjugate span the kernel when rank = n - 1
        let adj = self.adjugate();
        (0..n)
            .map(|j| (0..n).map(|i| adj.get(i, j).clone()).collect::<Vec<_>>())
            .find(|v| v.iter().any(|a| !a.is_zero()))
            .filter(|v| self.apply(v).iter().all(|a| a.is_zero()))
    }
}

impl CycMatrix {
    pub fn char_poly(&self) -> CycPoly {
        CycPoly::new(self.get(0, 0).field(), self.char_poly_coeffs())
    }

    /// Evaluates a polynomial at the matrix.
    pub fn eval_poly(&self, p: &CycPoly) -> CycMatrix {
        let like = self.get(0, 0);
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::scalar(self.n, &like.zero_like()), |acc, c| {
                acc.mul(self).add(&Self::scalar(self.n, c))
            })
    }
}

impl<T: Scalar> fmt::Display for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|a| a.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{Constants, CyclotomicField};
    use crate::hermlin::F3;

    fn f3(rows: [[i64; 2]; 2]) -> SquareMatrix<F3> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| F3::new(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn inverse_and_det_over_f3() {
        let m = f3([[1, 1], [0, 1]]);
        assert_eq!(m.det(), F3::new(1));
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        assert_eq!(m.pow(3).unwrap(), SquareMatrix::identity(2, &F3::new(0)));
        assert!(f3([[1, 2], [2, 1]]).inverse().is_err());
    }

    #[test]
    fn cyclic_permutation() {
        let k = CyclotomicField::new(72).unwrap();
        let c = Constants::new(&k).unwrap();
        let (z, o) = (c.int(0), c.int(1));
        let j = SquareMatrix::from_rows(vec![
            vec![z.clone(), z.clone(), o.clone()],
            vec![o.clone(), z.clone(), z.clone()],
            vec![z.clone(), o.clone(), z.clone()],
        ]);
        assert!(j.det().is_one());
        assert!(j.pow(3).unwrap().is_identity());
        assert_eq!(j.inverse().unwrap(), j.transpose());
        // λ^3 - 1
        let cp = j.char_poly();
        assert_eq!(cp.to_ratpoly().unwrap().to_string(), "x^3 - 1");
        let id = SquareMatrix::identity(3, &o);
        assert_eq!(
            id.char_poly().to_ratpoly().unwrap().to_string(),
            "x^3 - 3*x^2 + 3*x - 1"
        );
        assert!(j.eval_poly(&cp).entries().iter().all(|a| a.is_zero()));
    }

    #[test]
    fn projective_key_ignores_scalars() {
        let k = CyclotomicField::new(24).unwrap();
        let c = Constants::new(&k).unwrap();
        let m = SquareMatrix::from_rows(vec![
            vec![c.int(0), c.i.clone()],
            vec![c.int(2), c.sqrt2.clone()],
        ]);
        assert_eq!(m.projective_key(), m.scale(&c.omega).projective_key());
        assert_ne!(m.projective_key(), m.transpose().projective_key());
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let c = Constants::new(&CyclotomicField::new(24).unwrap()).unwrap();
        let m = SquareMatrix::from_rows(vec![
            vec![c.int(1), c.int(2), c.int(3)],
            vec![c.int(2), c.int(4), c.int(6)],
            vec![c.int(0), c.int(1), c.int(1)],
        ]);
        let v = m.kernel_vector().unwrap();
        assert!(m.apply(&v).iter().all(|a| a.is_zero()));
    }
}
