use serde::{Deserialize, Serialize};

use crate::cyclo::{sign_of_real, CycNum, Sign};

use super::{CycMatrix, HermError};

/// A matrix equal to its conjugate transpose.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HermitianForm {
    matrix: CycMatrix,
}

/// `(n₊, n₋, n₀)`
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Self {
            positive,
            negative,
            zero,
        }
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

impl HermitianForm {
    pub fn new(matrix: CycMatrix) -> Result<Self, HermError> {
        if matrix.conj_transpose() != matrix {
            return Err(HermError::NotHermitian);
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `v* H w`
    pub fn inner(&self, v: &[CycNum], w: &[CycNum]) -> CycNum {
        let hw = self.matrix.apply(w);
        v.iter()
            .zip(&hw)
            .fold(v[0].zero_like(), |acc, (a, b)| &acc + &(&a.conj() * b))
    }

    /// `⟨v, v⟩`, always real.
    pub fn norm(&self, v: &[CycNum]) -> CycNum {
        self.inner(v, v)
    }

    /// `P* H P`
    pub fn congruent(&self, p: &CycMatrix) -> Result<Self, HermError> {
        Self::new(p.conj_transpose().mul(&self.matrix).mul(p))
    }

    /// Signature from the characteristic polynomial, which is real-rooted
    /// with real coefficients. Descartes' rule is exact for such polynomials:
    /// sign changes of `p(λ)` count positive roots, those of `p(-λ)` negative
    /// ones, and the multiplicity of `0` is the number of vanishing low-order
    /// coefficients.
    pub fn signature(&self) -> Result<Signature, HermError> {
        let coeffs = self.matrix.char_poly_coeffs();
        let signs: Vec<Sign> = coeffs.iter().map(sign_of_real).collect::<Result<_, _>>()?;
        let zero = signs.iter().take_while(|s| **s == Sign::Zero).count();
        let changes = |flip_odd: bool| {
            let seq: Vec<bool> = signs
                .iter()
                .enumerate()
                .filter(|(_, s)| **s != Sign::Zero)
                .map(|(i, s)| (*s == Sign::Positive) ^ (flip_odd && i % 2 == 1))
                .collect();
            seq.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let sig = Signature::new(changes(false), changes(true), zero);
        debug_assert_eq!(sig.positive + sig.negative + sig.zero, self.dim());
        Ok(sig)
    }
}

/// `M* H M = H`
pub fn preserves_form(m: &CycMatrix, h: &HermitianForm) -> bool {
    m.dim() == h.dim() && m.conj_transpose().mul(h.matrix()).mul(m) == *h.matrix()
}
