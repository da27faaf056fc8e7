//! Rational intersection theory on the quotient surface and its partial
//! resolutions: contraction of exceptional chains, discrepancies,
//! log-canonical thresholds, `c₁²`, orbifold Euler numbers and the
//! Nakai–Moishezon test.
//!
//! Two inputs are taken as axioms: an elliptic curve on an Abelian surface
//! has self-intersection 0, and `K_X ≡ −½M` (the Picard number of `X` is 1).

mod model;

use crate::cyclo::ReflectionOrder;
use num_traits::{One, Zero};
use thiserror::Error;

pub use model::{
    builtin_model, builtin_model_text, parse_model, ChainCurve, PairSpec, ResolutionChain, Stratum,
    SurfaceModel, MODEL_NAMES, Q,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid model: {0}")]
    Validation(String),
    #[error("weight {0} is not of the form 1 - 1/k")]
    WeightForm(String),
    #[error("contraction matrix is singular")]
    Singular,
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("model {model} has no pair for p = {p}")]
    UnknownPair { model: String, p: ReflectionOrder },
}

/// `M²`, `K·M`, `K²` on `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseNumbers {
    pub m2: Q,
    pub km: Q,
    pub k2: Q,
}

/// From the branched cover `f: A → X` of degree `group_order`, ramified to
/// order 2 along `mirror_count` elliptic curves with `E_k·ΣE_j = total`:
/// `f*M = 2ΣE_j`, and `f*(K_X + ½M) = K_A` is trivial.
pub fn base_numbers(mirror_count: i64, total: i64, group_order: i64) -> BaseNumbers {
    let deg = Q::from_integer(group_order);
    let pull_m_sq = Q::from_integer(4 * mirror_count * total);
    let m2 = pull_m_sq / deg;
    // K_A·f*M = 0
    let km = (Q::zero() - pull_m_sq / 2) / deg;
    let k2 = -km - m2 / 4;
    BaseNumbers { m2, km, k2 }
}

fn solve(a: &[Vec<Q>], b: &[Q]) -> Result<Vec<Q>, LedgerError> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| r.iter().copied().chain([*x]).collect())
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !m[i][c].is_zero())
            .ok_or(LedgerError::Singular)?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        m[c].iter_mut().for_each(|x| *x *= inv);
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let k = m[i][c];
                let row = m[c].clone();
                m[i].iter_mut().zip(&row).for_each(|(x, y)| *x -= k * *y);
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n]).collect())
}

/// Self-intersection of the image of curve `keep` after contracting every
/// other curve in the configuration `matrix`: `γ*C = c + Σ xᵢeᵢ` orthogonal
/// to each contracted `eᵢ`, and `C² = (γ*C)²`.
pub fn contract(matrix: &[Vec<Q>], keep: usize) -> Result<Q, LedgerError> {
    let others: Vec<usize> = (0..matrix.len()).filter(|&i| i != keep).collect();
    let a: Vec<Vec<Q>> = others
        .iter()
        .map(|&i| others.iter().map(|&j| matrix[i][j]).collect())
        .collect();
    let b: Vec<Q> = others.iter().map(|&i| -matrix[i][keep]).collect();
    let x = solve(&a, &b)?;
    Ok(matrix[keep][keep]
        + others
            .iter()
            .zip(&x)
            .map(|(&i, xi)| *xi * matrix[keep][i])
            .sum::<Q>())
}

/// A chain with the given self-intersections in which every curve except
/// `keep` is contracted.
pub fn contract_chain(self_intersections: &[i64], keep: usize) -> Result<Q, LedgerError> {
    let chain = ResolutionChain {
        point: String::new(),
        curves: self_intersections
            .iter()
            .map(|&s| ChainCurve {
                name: String::new(),
                self_intersection: s,
                discrepancy: 0,
                multiplicity: 0,
                meets_m: 0,
                keep: None,
            })
            .collect(),
    };
    contract(&chain.matrix(), keep)
}

/// `min (1 + aᵢ)/mᵢ`: `(X, λM)` is log canonical at the point iff `λ` is at
/// most this value.
pub fn lct(chain: &ResolutionChain) -> Q {
    chain
        .curves
        .iter()
        .map(|c| Q::new(1 + c.discrepancy, c.multiplicity))
        .min()
        .expect("nonempty chain")
}

/// The threshold at a named point, read from the chains of model `W`, which
/// blows up every point that needs it.
pub fn lct_at(point: &str) -> Result<Q, LedgerError> {
    let w = builtin_model("W")?;
    w.chain(point)
        .map(lct)
        .ok_or_else(|| LedgerError::Validation(format!("no chain over `{point}`")))
}

/// A surviving exceptional curve of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeptCurve {
    pub name: String,
    pub point: String,
    pub self_intersection: Q,
    pub discrepancy: i64,
    pub multiplicity: i64,
}

pub fn kept_curves(model: &SurfaceModel) -> Result<Vec<KeptCurve>, LedgerError> {
    model
        .chains
        .iter()
        .map(|chain| {
            let (i, c) = chain.kept();
            Ok(KeptCurve {
                name: c.keep.clone().expect("kept"),
                point: chain.point.clone(),
                self_intersection: contract(&chain.matrix(), i)?,
                discrepancy: c.discrepancy,
                multiplicity: c.multiplicity,
            })
        })
        .collect()
}

/// The numerical classes of a model in the basis `(φ*M, C₁, …, C_k)` of the
/// pullback of `M` and the surviving exceptional curves, which are pairwise
/// orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    pub names: Vec<String>,
    pub gram: Vec<Q>,
    pub curves: Vec<KeptCurve>,
}

impl IntersectionForm {
    pub fn new(model: &SurfaceModel, base: &BaseNumbers) -> Result<Self, LedgerError> {
        let curves = kept_curves(model)?;
        let names = std::iter::once("phi*M".to_string())
            .chain(curves.iter().map(|c| c.name.clone()))
            .collect();
        let gram = std::iter::once(base.m2)
            .chain(curves.iter().map(|c| c.self_intersection))
            .collect();
        Ok(Self {
            names,
            gram,
            curves,
        })
    }

    pub fn dot(&self, a: &[Q], b: &[Q]) -> Q {
        a.iter()
            .zip(b)
            .zip(&self.gram)
            .map(|((x, y), g)| *x * *y * *g)
            .sum()
    }

    fn unit(&self, i: usize) -> Vec<Q> {
        (0..self.gram.len())
            .map(|j| if i == j { Q::one() } else { Q::zero() })
            .collect()
    }

    pub fn class(&self, name: &str) -> Option<Vec<Q>> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.unit(i))
    }

    /// `M̃ = φ*M − Σ mᵢCᵢ`
    pub fn strict_m(&self) -> Vec<Q> {
        let mut v = self.unit(0);
        for (i, c) in self.curves.iter().enumerate() {
            v[i + 1] = Q::from_integer(-c.multiplicity);
        }
        v
    }

    /// `K = φ*K_X + Σ aᵢCᵢ` with `K_X ≡ −½M`.
    pub fn canonical(&self) -> Vec<Q> {
        let mut v = self.unit(0);
        v[0] = Q::new(-1, 2);
        for (i, c) in self.curves.iter().enumerate() {
            v[i + 1] = Q::from_integer(c.discrepancy);
        }
        v
    }

    /// `K + Σ w_D D` for the weights of a pair.
    pub fn log_canonical(&self, weights: &indexmap::IndexMap<String, Q>) -> Vec<Q> {
        let mut v = self.canonical();
        for (name, w) in weights {
            let d = if name == "M" {
                self.strict_m()
            } else {
                self.class(name).expect("validated class")
            };
            v.iter_mut().zip(&d).for_each(|(x, y)| *x += *w * *y);
        }
        v
    }
}

fn pair(model: &SurfaceModel, p: ReflectionOrder) -> Result<&PairSpec, LedgerError> {
    model.pair(p).ok_or_else(|| LedgerError::UnknownPair {
        model: model.name.clone(),
        p,
    })
}

/// `(λ, μ, ν, σ)`: the weights on `M̃, E, F, G` (and `H = G`), zero when absent.
fn greek(weights: &indexmap::IndexMap<String, Q>) -> [Q; 4] {
    ["M", "E", "F", "G"].map(|k| weights.get(k).copied().unwrap_or_else(Q::zero))
}

/// The closed form as a sum of squares, one term per surviving curve type:
/// `(1/24)(−12+24λ)² − (1/3)(3−6λ+μ)² − (1/2)(2−4λ+ν)² − 2·(1/6)(4−6λ+σ)²`,
/// truncated to the curves present in the model.
pub fn c1_squared_closed_form(model: &SurfaceModel, weights: &indexmap::IndexMap<String, Q>) -> Q {
    let [l, mu, nu, sigma] = greek(weights);
    let sq = |x: Q| x * x;
    let i = Q::from_integer;
    let kept = model.kept_names();
    let mut total = Q::new(1, 24) * sq(i(-12) + i(24) * l);
    if kept.iter().any(|k| k == "E") {
        total -= Q::new(1, 3) * sq(i(3) - i(6) * l + mu);
    }
    if kept.iter().any(|k| k == "F") {
        total -= Q::new(1, 2) * sq(i(2) - i(4) * l + nu);
    }
    if kept.iter().any(|k| k == "G") {
        total -= i(2) * Q::new(1, 6) * sq(i(4) - i(6) * l + sigma);
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct C1Squared {
    pub closed_form: Q,
    pub bilinear: Q,
}

impl C1Squared {
    pub fn agree(&self) -> bool {
        self.closed_form == self.bilinear
    }
}

pub fn c1_squared_with(
    model: &SurfaceModel,
    weights: &indexmap::IndexMap<String, Q>,
    base: &BaseNumbers,
) -> Result<C1Squared, LedgerError> {
    let form = IntersectionForm::new(model, base)?;
    let l = form.log_canonical(weights);
    Ok(C1Squared {
        closed_form: c1_squared_closed_form(model, weights),
        bilinear: form.dot(&l, &l),
    })
}

pub fn c1_squared(
    model: &SurfaceModel,
    p: ReflectionOrder,
    base: &BaseNumbers,
) -> Result<C1Squared, LedgerError> {
    c1_squared_with(model, &pair(model, p)?.weights, base)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiOrb {
    pub terms: Vec<(String, Q)>,
    pub total: Q,
}

/// `Σ χ(stratum)/|local group|` over the stratification of the pair.
pub fn chi_orb(model: &SurfaceModel, p: ReflectionOrder) -> Result<ChiOrb, LedgerError> {
    let terms: Vec<(String, Q)> = pair(model, p)?
        .strata
        .iter()
        .map(|s| (s.label.clone(), s.contribution()))
        .collect();
    let total = terms.iter().map(|(_, q)| *q).sum();
    Ok(ChiOrb { terms, total })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiyaokaYau {
    pub c1_squared: C1Squared,
    pub chi_orb: ChiOrb,
}

impl MiyaokaYau {
    pub fn holds(&self) -> bool {
        self.c1_squared.agree()
            && self.c1_squared.bilinear == Q::from_integer(3) * self.chi_orb.total
    }
}

pub fn check_miyaoka_yau(
    model: &SurfaceModel,
    p: ReflectionOrder,
    base: &BaseNumbers,
) -> Result<MiyaokaYau, LedgerError> {
    Ok(MiyaokaYau {
        c1_squared: c1_squared(model, p, base)?,
        chi_orb: chi_orb(model, p)?,
    })
}

/// Result of moving a single weight by `delta` while the stratification is
/// held fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub class: String,
    pub delta: Q,
    pub c1_squared: Q,
    pub equality_holds: bool,
}

pub fn perturb_weights(
    model: &SurfaceModel,
    p: ReflectionOrder,
    base: &BaseNumbers,
    delta: Q,
) -> Result<Vec<Perturbation>, LedgerError> {
    let spec = pair(model, p)?;
    let chi = chi_orb(model, p)?.total;
    let mut out = Vec::new();
    for class in spec.weights.keys() {
        for d in [delta, -delta] {
            let mut w = spec.weights.clone();
            *w.get_mut(class).expect("present") += d;
            let c = c1_squared_with(model, &w, base)?;
            out.push(Perturbation {
                class: class.clone(),
                delta: d,
                c1_squared: c.bilinear,
                equality_holds: c.bilinear == Q::from_integer(3) * chi,
            });
        }
    }
    Ok(out)
}

/// Intersections of the log-canonical class with `M̃` and with each surviving
/// exceptional curve; the Nakai–Moishezon test (Picard number one on `X`)
/// asks for all of them to be positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ampleness {
    pub values: Vec<(String, Q)>,
}

impl Ampleness {
    pub fn all_positive(&self) -> bool {
        self.values.iter().all(|(_, v)| *v > Q::zero())
    }

    pub fn value(&self, name: &str) -> Option<Q> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

pub fn check_ampleness(
    model: &SurfaceModel,
    p: ReflectionOrder,
    base: &BaseNumbers,
) -> Result<Ampleness, LedgerError> {
    let form = IntersectionForm::new(model, base)?;
    let l = form.log_canonical(&pair(model, p)?.weights);
    let mut values = vec![("M".to_string(), form.dot(&l, &form.strict_m()))];
    for c in &form.curves {
        values.push((
            c.name.clone(),
            form.dot(&l, &form.class(&c.name).expect("curve")),
        ));
    }
    Ok(Ampleness { values })
}

/// The model and pair used for each `p`.
pub fn model_for(p: ReflectionOrder) -> Option<&'static str> {
    match p {
        ReflectionOrder::Finite(3) => Some("X"),
        ReflectionOrder::Finite(4) => Some("Y"),
        ReflectionOrder::Finite(6) => Some("Z"),
        ReflectionOrder::Infinite => Some("W"),
        _ => None,
    }
}

pub const LEDGER_PS: [ReflectionOrder; 4] = [
    ReflectionOrder::Finite(3),
    ReflectionOrder::Finite(4),
    ReflectionOrder::Finite(6),
    ReflectionOrder::Infinite,
];

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> BaseNumbers {
        base_numbers(12, 24, 48)
    }

    #[test]
    fn base_values() {
        let b = base();
        assert_eq!(
            (b.m2, b.km, b.k2),
            (
                Q::from_integer(24),
                Q::from_integer(-12),
                Q::from_integer(6)
            )
        );
        // (K + ½M)² = 0
        assert_eq!(b.k2 + b.km + b.m2 / 4, Q::zero());
    }

    #[test]
    fn contractions() {
        assert_eq!(contract_chain(&[-2, -2, -1], 2).unwrap(), Q::new(-1, 3));
        assert_eq!(contract_chain(&[-1, -2, -2], 0).unwrap(), Q::new(-1, 3));
        assert_eq!(contract_chain(&[-2, -1], 1).unwrap(), Q::new(-1, 2));
        assert_eq!(contract_chain(&[-2, -1, -3], 1).unwrap(), Q::new(-1, 6));
        assert_eq!(contract_chain(&[-1], 0).unwrap(), Q::from_integer(-1));
        // contracting a curve of self-intersection 0 is impossible
        let sing = vec![
            vec![Q::from_integer(-1), Q::one(), Q::one()],
            vec![Q::one(), Q::zero(), Q::zero()],
            vec![Q::one(), Q::zero(), Q::zero()],
        ];
        assert_eq!(contract(&sing, 0), Err(LedgerError::Singular));
    }

    #[test]
    fn thresholds() {
        assert_eq!(lct_at("q").unwrap(), Q::new(2, 3));
        assert_eq!(lct_at("p12").unwrap(), Q::new(3, 4));
        assert_eq!(lct_at("p13").unwrap(), Q::new(5, 6));
        assert_eq!(lct_at("p23").unwrap(), Q::new(5, 6));
    }

    #[test]
    fn p4_ampleness_values() {
        let y = builtin_model("Y").unwrap();
        let a = check_ampleness(&y, ReflectionOrder::Finite(4), &base()).unwrap();
        assert_eq!(a.value("M"), Some(Q::new(9, 2)));
        assert_eq!(a.value("E"), Some(Q::new(1, 4)));
    }
}
