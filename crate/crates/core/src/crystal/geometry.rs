//! Curves and points on `A = C²/Λ`: canonical mirror equations, fixed loci of
//! torus maps, and intersections of elliptic curves.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use super::affine::{
    apply_linear, from_coords, real_matrix, to_coords, Point, TorusAffineMap, TorusPoint,
};
use super::lattice::{
    coset_representatives, lattice_basis, qmat_inverse, qmat_vec, reduce_mod_lattice,
    smith_normal_form, to_integer_matrix, QMat,
};
use super::qi2::{Q, QI2};
use super::CrystalError;

/// The image in `A` of the complex line `a₁z₁ + a₂z₂ = c`.
///
/// The covector is scaled so that its first nonzero entry is 1, and `c` is
/// reduced modulo the rank-2 lattice `a(Λ)`; two lines are the same curve on
/// `A` exactly when these canonical forms agree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TorusLine {
    a: [QI2; 2],
    c: QI2,
}

fn to_q2(x: QI2) -> Vec<Q> {
    vec![x.a, x.b]
}

impl TorusLine {
    pub fn new(a: [QI2; 2], c: QI2) -> Result<Self, CrystalError> {
        let lead = if !a[0].is_zero() { a[0] } else { a[1] };
        if lead.is_zero() {
            return Err(CrystalError::DegenerateLine);
        }
        let inv = lead.inv().expect("nonzero");
        let a = [a[0] * inv, a[1] * inv];
        let basis = covector_lattice(&a)?;
        let c = reduce_mod_lattice(&to_q2(c * inv), &basis);
        Ok(Self {
            a,
            c: QI2::new(c[0], c[1]),
        })
    }

    /// `z₂ = m·z₁ + k`
    pub fn z2_equals(m: QI2, k: QI2) -> Result<Self, CrystalError> {
        Self::new([-m, QI2::one()], k)
    }

    /// `z₁ = m·z₂ + k`
    pub fn z1_equals(m: QI2, k: QI2) -> Result<Self, CrystalError> {
        Self::new([QI2::one(), -m], k)
    }

    pub fn covector(&self) -> &[QI2; 2] {
        &self.a
    }

    pub fn constant(&self) -> QI2 {
        self.c
    }

    pub fn eval(&self, z: &Point) -> QI2 {
        self.a[0] * z[0] + self.a[1] * z[1]
    }

    pub fn lattice(&self) -> Vec<Vec<Q>> {
        covector_lattice(&self.a).expect("validated at construction")
    }

    pub fn contains(&self, p: &TorusPoint) -> bool {
        let v = self.eval(&p.z()) - self.c;
        reduce_mod_lattice(&to_q2(v), &self.lattice())
            .iter()
            .all(|x| x.is_zero())
    }

    pub fn is_parallel(&self, other: &Self) -> bool {
        self.a == other.a
    }

    /// `g(ℓ)`: if `a·z = c` then `g z = Az + t` satisfies `aA⁻¹·w = c + aA⁻¹·t`.
    pub fn image(&self, g: &TorusAffineMap) -> Self {
        let inv = g.linear().inverse().expect("invertible");
        let a2 = [
            self.a[0] * *inv.get(0, 0) + self.a[1] * *inv.get(1, 0),
            self.a[0] * *inv.get(0, 1) + self.a[1] * *inv.get(1, 1),
        ];
        let t = g.translation().z();
        let c2 = self.c + a2[0] * t[0] + a2[1] * t[1];
        Self::new(a2, c2).expect("image of a line is a line")
    }

    /// A real 2×4 matrix sending `Λ`-coordinates to the value `a·z` in `(a, b)` form.
    fn real_covector(&self) -> QMat {
        let (m1, m2) = (self.a[0].real_matrix(), self.a[1].real_matrix());
        (0..2)
            .map(|r| vec![m1[r][0], m1[r][1], m2[r][0], m2[r][1]])
            .collect()
    }
}

impl fmt::Display for TorusLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2] = self.a;
        if a1.is_zero() {
            write!(f, "z2 = {}", self.c)
        } else if a2.is_zero() {
            write!(f, "z1 = {}", self.c)
        } else {
            write!(f, "z1 + ({})*z2 = {}", a2, self.c)
        }
    }
}

/// Basis of `a(Λ) ⊂ Q(i√2) ≅ Q²`; an error if its rank is not 2.
fn covector_lattice(a: &[QI2; 2]) -> Result<Vec<Vec<Q>>, CrystalError> {
    let s = QI2::isqrt2();
    let gens = [a[0], a[0] * s, a[1], a[1] * s].map(to_q2);
    let basis = lattice_basis(&gens);
    if basis.len() != 2 {
        return Err(CrystalError::NotClosed);
    }
    Ok(basis)
}

/// Fixed-point set of a nonidentity element of `F`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FixedLocus {
    /// A reflection fixes a disjoint union of parallel elliptic curves.
    Curves(Vec<TorusLine>),
    Points(Vec<TorusPoint>),
    /// A nonzero translation.
    Empty,
}

fn minus_identity(g: &TorusAffineMap) -> QMat {
    let mut l = real_matrix(g.linear());
    for (i, row) in l.iter_mut().enumerate() {
        row[i] -= Q::one();
    }
    l
}

/// Solves `(A − I)x + t ∈ Z⁴` in `Λ`-coordinates.
pub fn fixed_locus(g: &TorusAffineMap) -> Result<FixedLocus, CrystalError> {
    let t = to_coords(&g.translation().z());
    match g.linear_rank_defect() {
        0 if g.is_identity() => Err(CrystalError::IdentityFixedLocus),
        0 => Ok(FixedLocus::Empty),
        2 => {
            let l = minus_identity(g);
            let cols: Vec<Vec<Q>> = (0..4).map(|j| (0..4).map(|i| l[i][j]).collect()).collect();
            let unit: Vec<Vec<Q>> = (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| if i == j { Q::one() } else { Q::zero() })
                        .collect()
                })
                .collect();
            let linv = qmat_inverse(&l).expect("rank 4");
            let mut pts: Vec<TorusPoint> = coset_representatives(&unit, &cols)
                .into_iter()
                .map(|lam| {
                    let rhs: Vec<Q> = lam.iter().zip(&t).map(|(x, y)| x - y).collect();
                    TorusPoint::from_coords(&qmat_vec(&linv, &rhs))
                })
                .collect();
            pts.sort();
            pts.dedup();
            Ok(FixedLocus::Points(pts))
        }
        _ => {
            let l = to_integer_matrix(&minus_identity(g)).ok_or(CrystalError::NotIntegral)?;
            let s = smith_normal_form(&l);
            let rhs: Vec<Q> = (0..4)
                .map(|i| {
                    -(0..4)
                        .map(|j| Q::from_integer(s.u[i][j] as i64) * t[j])
                        .sum::<Q>()
                })
                .collect();
            if s.d[2] != 0 || s.d[3] != 0 || s.d[0] == 0 || s.d[1] == 0 {
                return Err(CrystalError::NotIntegral);
            }
            if !(rhs[2].is_integer() && rhs[3].is_integer()) {
                return Ok(FixedLocus::Empty);
            }
            let diff = g
                .linear()
                .sub(&super::affine::Mat2::identity(2, &QI2::one()));
            let alpha = if diff.row(0).iter().any(|x| !x.is_zero()) {
                diff.row(0)
            } else {
                diff.row(1)
            };
            let alpha = [alpha[0], alpha[1]];
            let mut lines = BTreeSet::new();
            for k1 in 0..s.d[0] as i64 {
                for k2 in 0..s.d[1] as i64 {
                    let y = [
                        (rhs[0] + Q::from_integer(k1)) / Q::from_integer(s.d[0] as i64),
                        (rhs[1] + Q::from_integer(k2)) / Q::from_integer(s.d[1] as i64),
                        Q::zero(),
                        Q::zero(),
                    ];
                    let x: Vec<Q> = (0..4)
                        .map(|i| {
                            (0..4)
                                .map(|j| Q::from_integer(s.v[i][j] as i64) * y[j])
                                .sum()
                        })
                        .collect();
                    let z = from_coords(&x);
                    debug_assert_eq!(TorusPoint::new(&g.lift().apply(&z)), TorusPoint::new(&z));
                    lines.insert(TorusLine::new(alpha, alpha[0] * z[0] + alpha[1] * z[1])?);
                }
            }
            Ok(FixedLocus::Curves(lines.into_iter().collect()))
        }
    }
}

/// Transverse intersection points of two curves on `A`.
///
/// With `Φ(z) = (a·z, b·z)`, the curves meet where `Φ(z) ∈ (c, d) + a(Λ) × b(Λ)`;
/// the solutions modulo `Λ` are indexed by `(a(Λ) × b(Λ)) / Φ(Λ)`.
pub fn line_intersections(l1: &TorusLine, l2: &TorusLine) -> Result<Vec<TorusPoint>, CrystalError> {
    if l1 == l2 {
        return Err(CrystalError::IdenticalCurves);
    }
    if l1.is_parallel(l2) {
        return Ok(Vec::new());
    }
    let phi: QMat = l1
        .real_covector()
        .into_iter()
        .chain(l2.real_covector())
        .collect();
    let phi_inv = qmat_inverse(&phi).ok_or(CrystalError::IdenticalCurves)?;
    let pad = |v: &Vec<Q>, first: bool| -> Vec<Q> {
        if first {
            vec![v[0], v[1], Q::zero(), Q::zero()]
        } else {
            vec![Q::zero(), Q::zero(), v[0], v[1]]
        }
    };
    let fine: Vec<Vec<Q>> = l1
        .lattice()
        .iter()
        .map(|v| pad(v, true))
        .chain(l2.lattice().iter().map(|v| pad(v, false)))
        .collect();
    let coarse: Vec<Vec<Q>> = (0..4)
        .map(|j| (0..4).map(|i| phi[i][j]).collect())
        .collect();
    let base = [l1.c.a, l1.c.b, l2.c.a, l2.c.b];
    let mut pts: Vec<TorusPoint> = coset_representatives(&fine, &coarse)
        .into_iter()
        .map(|r| {
            let target: Vec<Q> = r.iter().zip(&base).map(|(x, y)| x + y).collect();
            TorusPoint::from_coords(&qmat_vec(&phi_inv, &target))
        })
        .collect();
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Independent check of [`line_intersections`]: solve the 2×2 system for
/// every pair of lattice shifts in a box and reduce.
pub fn line_intersections_brute(
    l1: &TorusLine,
    l2: &TorusLine,
    radius: i64,
) -> BTreeSet<TorusPoint> {
    let shifts = |l: &TorusLine| -> BTreeSet<QI2> {
        let r = -radius..=radius;
        let mut out = BTreeSet::new();
        for a1 in r.clone() {
            for b1 in r.clone() {
                for a2 in r.clone() {
                    for b2 in r.clone() {
                        let lam = [QI2::frac(a1, 1, b1, 1), QI2::frac(a2, 1, b2, 1)];
                        out.insert(l.eval(&lam));
                    }
                }
            }
        }
        out
    };
    let (a, b) = (l1.a, l2.a);
    let det = a[0] * b[1] - a[1] * b[0];
    let mut out = BTreeSet::new();
    if det.is_zero() {
        return out;
    }
    let inv = super::affine::Mat2::from_rows(vec![
        vec![b[1] / det, -a[1] / det],
        vec![-b[0] / det, a[0] / det],
    ]);
    let s2 = shifts(l2);
    for u in shifts(l1) {
        for v in &s2 {
            out.insert(TorusPoint::new(&apply_linear(&inv, &[l1.c + u, l2.c + *v])));
        }
    }
    out
}
