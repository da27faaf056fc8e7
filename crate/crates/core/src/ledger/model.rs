//! Declarative surface models.
//!
//! A model file is line oriented; `#` starts a comment. Grammar:
//!
//! ```text
//! file    := "model" NAME point* pair*
//! point   := "point" NAME curve+ "end"
//! curve   := "curve" NAME "self="INT "disc="INT "mult="INT "meets="INT ["keep="NAME]
//! pair    := "pair" "p="(INT | "inf") weight+ stratum+ "end"
//! weight  := "weight" CLASS RATIONAL
//! stratum := "stratum" LABEL "count="INT "chi="RATIONAL "order="INT
//! ```
//!
//! The curves of a `point` block form a chain in the order listed, each
//! meeting the next once. `disc` is the discrepancy in the canonical class of
//! the resolution, `mult` the multiplicity in the pullback of `M`, and
//! `meets` the intersection number with the strict transform of `M`. Exactly
//! one curve per chain carries `keep=`; the others are contracted. Rationals
//! are written `a/b`.

use indexmap::IndexMap;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::LedgerError;
use crate::cyclo::ReflectionOrder;

pub type Q = Rational64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCurve {
    pub name: String,
    pub self_intersection: i64,
    pub discrepancy: i64,
    pub multiplicity: i64,
    pub meets_m: i64,
    pub keep: Option<String>,
}

/// Exceptional curves over one blown-up point, in chain order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionChain {
    pub point: String,
    pub curves: Vec<ChainCurve>,
}

impl ResolutionChain {
    /// Intersection matrix of the exceptional curves.
    pub fn matrix(&self) -> Vec<Vec<Q>> {
        let n = self.curves.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Q::from_integer(self.curves[i].self_intersection)
                        } else if i.abs_diff(j) == 1 {
                            Q::one()
                        } else {
                            Q::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn kept(&self) -> (usize, &ChainCurve) {
        self.curves
            .iter()
            .enumerate()
            .find(|(_, c)| c.keep.is_some())
            .expect("validated")
    }

    /// `K·eᵢ = −2 − eᵢ²` with `K = π*K_X + Σ aⱼeⱼ`, and `π*M·eᵢ = 0` with
    /// `π*M = M̂ + Σ mⱼeⱼ`.
    fn validate(&self) -> Result<(), LedgerError> {
        let m = self.matrix();
        let bad = |what: &str, c: &ChainCurve| {
            Err(LedgerError::Validation(format!(
                "{what} fails on {} over {}",
                c.name, self.point
            )))
        };
        for (i, c) in self.curves.iter().enumerate() {
            let k: Q = self
                .curves
                .iter()
                .zip(&m[i])
                .map(|(d, x)| *x * d.discrepancy)
                .sum();
            if k != Q::from_integer(-2 - c.self_intersection) {
                return bad("adjunction", c);
            }
            let pm: Q = self
                .curves
                .iter()
                .zip(&m[i])
                .map(|(d, x)| *x * d.multiplicity)
                .sum::<Q>()
                + c.meets_m;
            if !pm.is_zero() {
                return bad("orthogonality to the pullback of M", c);
            }
        }
        if self.curves.iter().filter(|c| c.keep.is_some()).count() != 1 {
            return Err(LedgerError::Validation(format!(
                "chain over {} must keep exactly one curve",
                self.point
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub label: String,
    pub count: i64,
    pub chi: Q,
    pub order: i64,
}

impl Stratum {
    pub fn contribution(&self) -> Q {
        self.chi * self.count / self.order
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpec {
    pub p: ReflectionOrder,
    /// Class name → coefficient; `M` is the strict transform of the mirror curve.
    pub weights: IndexMap<String, Q>,
    pub strata: Vec<Stratum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub chains: Vec<ResolutionChain>,
    pub pairs: Vec<PairSpec>,
}

impl SurfaceModel {
    pub fn pair(&self, p: ReflectionOrder) -> Option<&PairSpec> {
        self.pairs.iter().find(|s| s.p == p)
    }

    pub fn chain(&self, point: &str) -> Option<&ResolutionChain> {
        self.chains.iter().find(|c| c.point == point)
    }

    /// Names of the surviving exceptional curves, in chain order.
    pub fn kept_names(&self) -> Vec<String> {
        self.chains
            .iter()
            .map(|c| c.kept().1.keep.clone().expect("kept"))
            .collect()
    }
}

fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.parse().ok()?;
            (d != 0).then_some(Q::new(n.parse().ok()?, d))
        }
        None => s.parse().ok().map(Q::from_integer),
    }
}

fn is_unit_fraction_complement(w: Q) -> bool {
    // 1 − 1/k for an integer k ≥ 1, or 1 for k = ∞
    w == Q::one() || (w < Q::one() && (Q::one() - w).recip().is_integer())
}

pub fn parse_model(text: &str) -> Result<SurfaceModel, LedgerError> {
    let mut name = None;
    let mut chains = Vec::new();
    let mut pairs = Vec::new();
    enum Block {
        None,
        Point(ResolutionChain),
        Pair(PairSpec),
    }
    let mut block = Block::None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| LedgerError::Parse {
            line: idx + 1,
            msg: msg.to_string(),
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let kv = |key: &str| -> Result<&str, LedgerError> {
            toks.iter()
                .find_map(|t| t.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| err(&format!("missing `{key}=`")))
        };
        let int = |key: &str| -> Result<i64, LedgerError> {
            kv(key)?
                .parse()
                .map_err(|_| err(&format!("`{key}` must be an integer")))
        };
        match (toks[0], &mut block) {
            ("model", Block::None) if toks.len() == 2 && name.is_none() => {
                name = Some(toks[1].to_string())
            }
            ("point", Block::None) if toks.len() == 2 => {
                block = Block::Point(ResolutionChain {
                    point: toks[1].to_string(),
                    curves: Vec::new(),
                })
            }
            ("curve", Block::Point(chain)) if toks.len() >= 6 => chain.curves.push(ChainCurve {
                name: toks[1].to_string(),
                self_intersection: int("self")?,
                discrepancy: int("disc")?,
                multiplicity: int("mult")?,
                meets_m: int("meets")?,
                keep: kv("keep").ok().map(str::to_string),
            }),
            ("pair", Block::None) if toks.len() == 2 => {
                let p = toks[1]
                    .strip_prefix("p=")
                    .ok_or_else(|| err("expected `p=`"))?;
                let p = p.parse().map_err(|e: String| err(&e))?;
                block = Block::Pair(PairSpec {
                    p,
                    weights: IndexMap::new(),
                    strata: Vec::new(),
                });
            }
            ("weight", Block::Pair(pair)) if toks.len() == 3 => {
                let w = parse_q(toks[2]).ok_or_else(|| err("bad rational"))?;
                if !is_unit_fraction_complement(w) {
                    return Err(LedgerError::WeightForm(format!("{} = {}", toks[1], w)));
                }
                pair.weights.insert(toks[1].to_string(), w);
            }
            ("stratum", Block::Pair(pair)) if toks.len() == 5 => {
                let order = int("order")?;
                if order <= 0 {
                    return Err(err("order must be positive"));
                }
                pair.strata.push(Stratum {
                    label: toks[1].to_string(),
                    count: int("count")?,
                    chi: parse_q(kv("chi")?).ok_or_else(|| err("bad rational"))?,
                    order,
                });
            }
            ("end", _) => match std::mem::replace(&mut block, Block::None) {
                Block::Point(c) => {
                    c.validate()?;
                    chains.push(c);
                }
                Block::Pair(p) => pairs.push(p),
                Block::None => return Err(err("`end` outside a block")),
            },
            _ => return Err(err(&format!("unexpected `{line}`"))),
        }
    }
    if !matches!(block, Block::None) {
        return Err(LedgerError::Parse {
            line: text.lines().count(),
            msg: "unterminated block".into(),
        });
    }
    let name = name.ok_or(LedgerError::Parse {
        line: 1,
        msg: "missing `model` line".into(),
    })?;
    let model = SurfaceModel {
        name,
        chains,
        pairs,
    };
    let classes: Vec<String> = std::iter::once("M".to_string())
        .chain(model.kept_names())
        .collect();
    for pair in &model.pairs {
        if let Some(k) = pair.weights.keys().find(|k| !classes.contains(k)) {
            return Err(LedgerError::Validation(format!(
                "weight on unknown class `{k}`"
            )));
        }
    }
    Ok(model)
}

pub const MODEL_NAMES: [&str; 4] = ["X", "Y", "Z", "W"];

pub fn builtin_model_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "X" => include_str!("fixtures/X.model"),
        "Y" => include_str!("fixtures/Y.model"),
        "Z" => include_str!("fixtures/Z.model"),
        "W" => include_str!("fixtures/W.model"),
        _ => return None,
    })
}

pub fn builtin_model(name: &str) -> Result<SurfaceModel, LedgerError> {
    parse_model(builtin_model_text(name).ok_or_else(|| LedgerError::UnknownModel(name.into()))?)
}
