use std::fmt;

use num_traits::Zero;

use crate::hermlin::SquareMatrix;

use super::qi2::{Q, QI2};

pub type Mat2 = SquareMatrix<QI2>;
pub type Point = [QI2; 2];

/// `z ↦ Az + t` on `C²`, stored as linear part and translation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineIsoC2 {
    pub linear: Mat2,
    pub translation: Point,
}

impl AffineIsoC2 {
    pub fn new(linear: Mat2, translation: Point) -> Self {
        assert_eq!(linear.dim(), 2);
        Self {
            linear,
            translation,
        }
    }

    pub fn identity() -> Self {
        Self::new(Mat2::identity(2, &QI2::one()), [QI2::zero(); 2])
    }

    pub fn translation_by(v: Point) -> Self {
        Self::new(Mat2::identity(2, &QI2::one()), v)
    }

    /// Reads a 3×3 matrix acting on `(1, z₁, z₂)ᵀ`: the lower-right block is
    /// the linear part and the lower-left column the translation.
    pub fn from_block(rows: [[QI2; 3]; 3]) -> Self {
        assert!(rows[0][0] == QI2::one() && rows[0][1].is_zero() && rows[0][2].is_zero());
        let linear = Mat2::from_rows(vec![
            vec![rows[1][1], rows[1][2]],
            vec![rows[2][1], rows[2][2]],
        ]);
        Self::new(linear, [rows[1][0], rows[2][0]])
    }

    /// `self ∘ other`, which is the product of the 3×3 block matrices.
    pub fn compose(&self, other: &Self) -> Self {
        let s = apply_linear(&self.linear, &other.translation);
        Self::new(
            self.linear.mul(&other.linear),
            [s[0] + self.translation[0], s[1] + self.translation[1]],
        )
    }

    pub fn inverse(&self) -> Self {
        let inv = self
            .linear
            .inverse()
            .expect("affine maps here are invertible");
        let t = apply_linear(&inv, &self.translation);
        Self::new(inv, [-t[0], -t[1]])
    }

    pub fn apply(&self, z: &Point) -> Point {
        let a = apply_linear(&self.linear, z);
        [a[0] + self.translation[0], a[1] + self.translation[1]]
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }
}

impl fmt::Display for AffineIsoC2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.linear;
        write!(
            f,
            "[[{}, {}], [{}, {}]] + ({}, {})",
            l.get(0, 0),
            l.get(0, 1),
            l.get(1, 0),
            l.get(1, 1),
            self.translation[0],
            self.translation[1]
        )
    }
}

pub fn apply_linear(m: &Mat2, z: &Point) -> Point {
    [
        *m.get(0, 0) * z[0] + *m.get(0, 1) * z[1],
        *m.get(1, 0) * z[0] + *m.get(1, 1) * z[1],
    ]
}

/// Left-to-right product of a word in the given maps (index, exponent).
pub fn eval_affine_word(word: &[(usize, i64)], gens: &[AffineIsoC2]) -> AffineIsoC2 {
    word.iter().fold(AffineIsoC2::identity(), |acc, &(g, e)| {
        acc.compose(&gens[g].pow(e))
    })
}

/// Rational `Λ`-coordinates `(a₁, b₁, a₂, b₂)` of `(a₁ + b₁i√2, a₂ + b₂i√2)`.
pub fn to_coords(z: &Point) -> [Q; 4] {
    [z[0].a, z[0].b, z[1].a, z[1].b]
}

pub fn from_coords(x: &[Q]) -> Point {
    [QI2::new(x[0], x[1]), QI2::new(x[2], x[3])]
}

/// The real 4×4 matrix of a complex 2×2 matrix in `Λ`-coordinates.
pub fn real_matrix(m: &Mat2) -> Vec<Vec<Q>> {
    let mut out = vec![vec![Q::zero(); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            let b = m.get(i, j).real_matrix();
            for r in 0..2 {
                for c in 0..2 {
                    out[2 * i + r][2 * j + c] = b[r][c];
                }
            }
        }
    }
    out
}

/// A point of `A = C²/Λ`, with all four `Λ`-coordinates in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: [Q; 4],
}

impl TorusPoint {
    pub fn from_coords(x: &[Q]) -> Self {
        let mut coords = [Q::zero(); 4];
        for (c, v) in coords.iter_mut().zip(x) {
            *c = v - v.floor();
        }
        Self { coords }
    }

    pub fn new(z: &Point) -> Self {
        Self::from_coords(&to_coords(z))
    }

    pub fn coords(&self) -> &[Q; 4] {
        &self.coords
    }

    pub fn z(&self) -> Point {
        from_coords(&self.coords)
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.z();
        write!(f, "({}, {})", z[0], z[1])
    }
}

/// An element of `F = G/T_Λ`: linear part and translation reduced mod `Λ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TorusAffineMap {
    linear: Mat2,
    translation: TorusPoint,
}

impl TorusAffineMap {
    /// Fails unless the linear part preserves `Λ`.
    pub fn new(g: &AffineIsoC2) -> Option<Self> {
        let r = real_matrix(&g.linear);
        if !r.iter().flatten().all(|x| x.is_integer()) {
            return None;
        }
        Some(Self {
            linear: g.linear.clone(),
            translation: TorusPoint::new(&g.translation),
        })
    }

    pub fn identity() -> Self {
        Self::new(&AffineIsoC2::identity()).expect("identity preserves the lattice")
    }

    pub fn linear(&self) -> &Mat2 {
        &self.linear
    }

    pub fn translation(&self) -> &TorusPoint {
        &self.translation
    }

    /// A lift to `C²` with translation in the fundamental domain.
    pub fn lift(&self) -> AffineIsoC2 {
        AffineIsoC2::new(self.linear.clone(), self.translation.z())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(&self.lift().compose(&other.lift())).expect("closed under composition")
    }

    pub fn inverse(&self) -> Self {
        Self::new(&self.lift().inverse()).expect("closed under inversion")
    }

    pub fn apply(&self, x: &TorusPoint) -> TorusPoint {
        TorusPoint::new(&self.lift().apply(&x.z()))
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_origin()
    }

    /// Complex rank of `A − I`.
    pub fn linear_rank_defect(&self) -> usize {
        let d = self.linear.sub(&Mat2::identity(2, &QI2::one()));
        if d.entries().iter().all(|x| x.is_zero()) {
            0
        } else if d.det().is_zero() {
            1
        } else {
            2
        }
    }

    /// The linear part is a reflection: `A − I` has rank one.
    pub fn is_reflection(&self) -> bool {
        self.linear_rank_defect() == 1
    }
}

impl fmt::Display for TorusAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}
