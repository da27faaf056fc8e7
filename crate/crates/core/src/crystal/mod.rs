//! The affine crystallographic reflection group `G` generated by three
//! affine reflections of `C²`, its lattice of translations
//! `Λ = (Z ⊕ i√2 Z)²`, and the action of the finite quotient `F = G/T_Λ`
//! on the Abelian surface `A = C²/Λ`.

mod affine;
mod geometry;
mod group;
mod lattice;
mod qi2;
pub mod tables;

use thiserror::Error;

use crate::hermlin::{group_closure, ClosureMode, HermError, HermitianForm, SquareMatrix};

pub use affine::{
    apply_linear, eval_affine_word, from_coords, real_matrix, to_coords, AffineIsoC2, Mat2, Point,
    TorusAffineMap, TorusPoint,
};
pub use geometry::{
    fixed_locus, line_intersections, line_intersections_brute, FixedLocus, TorusLine,
};
pub use group::{
    build_f, mirror_curve_quotient, mirror_intersection_total, mirror_intersections, mirrors,
    orbit_census, special_points, stabilizer, Census, CrystalGroup, Mirror, MirrorQuotient,
    SpecialOrbit, Stabilizer,
};
pub use lattice::{
    coset_representatives, lattice_basis, smith_normal_form, sublattice_index, Smith,
};
pub use qi2::{q, Q, QI2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("linear part does not preserve the lattice")]
    NotIntegral,
    #[error("covector does not define a closed curve on the torus")]
    NotClosed,
    #[error("zero covector")]
    DegenerateLine,
    #[error("the identity fixes everything")]
    IdentityFixedLocus,
    #[error("the two curves coincide")]
    IdenticalCurves,
    #[error("group closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("bad generator word `{0}`")]
    BadWord(String),
    #[error("`{0}` does not name a distinct reflection")]
    BadMirrorLabel(String),
    #[error("{0} reflections have no label")]
    UnlabeledReflection(usize),
    #[error(transparent)]
    Herm(#[from] HermError),
}

/// The twelve mirrors, named by words in the generators.
pub const MIRROR_LABELS: [&str; 12] = [
    "1", "2", "3", "121", "131", "212", "232", "32121", "23121", "21321", "12321", "21231",
];

fn x(an: i64, ad: i64, bn: i64, bd: i64) -> QI2 {
    QI2::frac(an, ad, bn, bd)
}

/// The generators `R₁, R₂, R₃` of `G`.
pub fn build_g() -> [AffineIsoC2; 3] {
    let (o, z) = (QI2::one(), QI2::zero());
    let r1 = AffineIsoC2::from_block([[o, z, z], [z, o, z], [z, x(1, 1, -1, 1), QI2::int(-1)]]);
    let r2 = AffineIsoC2::from_block([
        [o, z, z],
        [z, x(-1, 1, 1, 1), QI2::int(2)],
        [z, x(1, 1, 1, 1), x(1, 1, -1, 1)],
    ]);
    let r3 = AffineIsoC2::from_block([
        [o, z, z],
        [x(1, 2, 1, 2), o, x(-1, 1, -1, 1)],
        [o, z, QI2::int(-1)],
    ]);
    [r1, r2, r3]
}

/// The positive definite form `[[1, (−1−i√2)/2], [(−1+i√2)/2, 1]]` preserved by `ψ(G)`.
pub fn invariant_form() -> Mat2 {
    Mat2::from_rows(vec![
        vec![QI2::one(), x(-1, 2, -1, 2)],
        vec![x(-1, 2, 1, 2), QI2::one()],
    ])
}

pub fn preserves_invariant_form(a: &Mat2) -> bool {
    let h = invariant_form();
    a.conj_transpose().mul(&h).mul(a) == h
}

/// The form is also checked as a `Q(ζ_N)` form, through the embedding.
pub fn invariant_form_cyc(
    field: &std::sync::Arc<crate::cyclo::CyclotomicField>,
) -> Result<HermitianForm, CrystalError> {
    let h = invariant_form();
    let e: Vec<_> = h
        .entries()
        .iter()
        .map(|v| v.to_cyc(field))
        .collect::<Result<_, _>>()
        .map_err(HermError::from)?;
    Ok(HermitianForm::new(SquareMatrix::new(2, e))?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationWord {
    pub name: &'static str,
    pub word: String,
    pub expected: Point,
    pub computed: AffineIsoC2,
}

impl TranslationWord {
    pub fn holds(&self) -> bool {
        self.computed == AffineIsoC2::translation_by(self.expected)
    }
}

/// The words in `R₁, R₂, R₃` that evaluate to translations generating `Λ`.
pub fn verify_translation_words() -> Vec<TranslationWord> {
    let g = build_g();
    let w = |s: &str| -> AffineIsoC2 {
        s.chars().fold(AffineIsoC2::identity(), |acc, c| {
            acc.compose(&g[c.to_digit(10).unwrap() as usize - 1])
        })
    };
    let zz = w("2121");
    let r3 = &g[2];
    let comm = zz.compose(r3).compose(&zz.inverse()).compose(&r3.inverse());
    let s = QI2::isqrt2();
    let (o, z, m1) = (QI2::one(), QI2::zero(), QI2::int(-1));
    vec![
        TranslationWord {
            name: "word1",
            word: "(R3R1R2R1)^2 R3R2".into(),
            expected: [s, o],
            computed: w("3121312132"),
        },
        TranslationWord {
            name: "word2",
            word: "(R3R2R1R2)^2 R3R1".into(),
            expected: [z, o],
            computed: w("3212321231"),
        },
        TranslationWord {
            name: "word3",
            word: "R2 [(R2R1)^2, R3] R2".into(),
            expected: [m1, m1],
            computed: g[1].compose(&comm).compose(&g[1]),
        },
        TranslationWord {
            name: "word4",
            word: "(R2R1R3R1)^2 R1R2R3R1".into(),
            expected: [m1, s],
            computed: w("213121311231"),
        },
        TranslationWord {
            name: "zr3_squared",
            word: "((R2R1)^2 R3)^2".into(),
            expected: [m1 - s, QI2::int(-2)],
            computed: zz.compose(r3).pow(2),
        },
    ]
}

/// Integer `Λ`-coordinates of the first four translation vectors.
pub fn translation_lattice_vectors() -> Vec<[i64; 4]> {
    verify_translation_words()
        .iter()
        .take(4)
        .map(|t| to_coords(&t.expected).map(|c| c.to_integer()))
        .collect()
}

/// Relations of `G₁₂` among the linear parts: `Aᵢ² = (A₁A₂)⁴ = (A₂A₃)³ = (A₃A₁)³ = I`,
/// with `(A₁A₂)²` central of order 2 in the group they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelations {
    pub involutions: bool,
    pub a1a2_order_4: bool,
    pub a2a3_order_3: bool,
    pub a3a1_order_3: bool,
    pub central_involution: bool,
    pub order: usize,
}

impl LinearRelations {
    pub fn holds(&self) -> bool {
        self.involutions
            && self.a1a2_order_4
            && self.a2a3_order_3
            && self.a3a1_order_3
            && self.central_involution
            && self.order == 48
    }
}

pub fn linear_relations() -> Result<LinearRelations, CrystalError> {
    let g = build_g();
    let a: Vec<Mat2> = g.iter().map(|r| r.linear.clone()).collect();
    let id = Mat2::identity(2, &QI2::one());
    let pw = |m: &Mat2, k: i64| m.pow(k).expect("nonnegative power");
    let order_is = |m: &Mat2, k: i64| pw(m, k) == id && (1..k).all(|j| pw(m, j) != id);
    let closure = group_closure(&a, 1000, ClosureMode::Linear)?;
    let c = pw(&a[0].mul(&a[1]), 2);
    Ok(LinearRelations {
        involutions: a.iter().all(|m| order_is(m, 2)),
        a1a2_order_4: order_is(&a[0].mul(&a[1]), 4),
        a2a3_order_3: order_is(&a[1].mul(&a[2]), 3),
        a3a1_order_3: order_is(&a[2].mul(&a[0]), 3),
        central_involution: order_is(&c, 2) && closure.elements().all(|m| m.mul(&c) == c.mul(m)),
        order: closure.order(),
    })
}

/// Everything derived from the generators, computed once.
#[derive(Clone, Debug)]
pub struct Crystal {
    pub generators: [AffineIsoC2; 3],
    pub group: CrystalGroup,
    pub mirrors: Vec<Mirror>,
}

impl Crystal {
    pub fn build() -> Result<Self, CrystalError> {
        let generators = build_g();
        let group = build_f(&generators, crate::hermlin::DEFAULT_CAP)?;
        let mirrors = mirrors(&group, &MIRROR_LABELS)?;
        Ok(Self {
            generators,
            group,
            mirrors,
        })
    }

    pub fn mirror_index(&self, label: &str) -> Option<usize> {
        self.mirrors.iter().position(|m| m.label == label)
    }

    pub fn census(&self) -> Result<Census, CrystalError> {
        orbit_census(&self.group, &self.mirrors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reflections_preserving_h() {
        for r in build_g() {
            let a = &r.linear;
            assert!(
                a.trace().is_zero() && a.det() == QI2::int(-1),
                "eigenvalues 1 and -1"
            );
            assert!(preserves_invariant_form(a));
            assert_eq!(r.compose(&r), AffineIsoC2::identity());
        }
    }

    #[test]
    fn relations_of_g12() {
        let rel = linear_relations().unwrap();
        assert!(rel.holds(), "{rel:?}");
    }

    #[test]
    fn translation_words() {
        for t in verify_translation_words() {
            assert!(t.holds(), "{}: {}", t.name, t.computed);
        }
        assert_eq!(sublattice_index(&translation_lattice_vectors()), Some(1));
    }
}
