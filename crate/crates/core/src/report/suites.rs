use std::collections::BTreeSet;
use std::fmt::Display;

use crate::crystal::{
    self, invariant_form_cyc, line_intersections, line_intersections_brute,
    mirror_intersection_total, sublattice_index, tables, translation_lattice_vectors,
    verify_translation_words, AffineIsoC2, Crystal, CrystalError, Mat2,
};
use crate::cyclo::{
    cyclotomic_poly, euler_phi, galois_norm, sign_of_real, Constants, CycError, CycNum, CycPoly,
    CyclotomicField, ReflectionOrder, Sign,
};
use crate::hermlin::{find_isomorphism, gl2_f3_generators, group_closure, ClosureMode};
use crate::isometry::goldman_f;
use crate::ledger::{
    self, base_numbers, builtin_model, check_ampleness, check_miyaoka_yau, chi_orb, kept_curves,
    lct_at, model_for, perturb_weights, LedgerError, LEDGER_PS, Q,
};
use crate::sporadic::{
    build_sporadic, nondiscreteness_witness_s4bar, thompson_change_of_generators, verify_r1j_order,
    witness_root, witness_tau_closed_form, SporadicError, TraceChoice,
};

use super::{p_tag, ClaimReport, ReportError, RunOptions, Status, Suite};

const HOLDS: &str = "holds";

fn holds(b: bool) -> &'static str {
    if b {
        HOLDS
    } else {
        "fails"
    }
}

fn err(suite: &'static str) -> impl Fn(String) -> ReportError {
    move |msg| ReportError::Computation { suite, msg }
}

/// A zeta order too small for a needed constant is a usage error.
fn cyc_err(suite: &'static str, e: CycError) -> ReportError {
    match e {
        CycError::Config { .. } | CycError::InvalidOrder(_) => ReportError::Usage(e.to_string()),
        _ => err(suite)(e.to_string()),
    }
}

fn field(
    suite: &'static str,
    opts: &RunOptions,
) -> Result<std::sync::Arc<CyclotomicField>, ReportError> {
    CyclotomicField::new(opts.zeta_order).map_err(|e| cyc_err(suite, e))
}

fn ps(opts: &RunOptions, all: &[ReflectionOrder]) -> Vec<ReflectionOrder> {
    all.iter()
        .copied()
        .filter(|p| opts.p.is_none_or(|q| q == *p))
        .collect()
}

fn set_of<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

pub struct CycloSuite;

impl Suite for CycloSuite {
    fn name(&self) -> &'static str {
        "cyclo"
    }

    fn description(&self) -> &'static str {
        "exact cyclotomic arithmetic and certified signs"
    }

    fn run(&self, opts: &RunOptions) -> Result<Vec<ClaimReport>, ReportError> {
        const S: &str = "cyclo";
        let k = field(S, opts)?;
        let c = Constants::new(&k).map_err(|e| cyc_err(S, e))?;
        let s3 = c.sqrt3().map_err(|e| cyc_err(S, e))?;
        let n = k.order();
        let mut out = vec![ClaimReport::stated(
            "cyclo_degree",
            "[Q(zeta_N):Q] = phi(N)",
            euler_phi(n as u64),
            k.degree(),
        )];
        let sq = |x: &CycNum| x * x;
        out.push(ClaimReport::stated(
            "cyclo_constants",
            "defining identities of the embedded constants",
            "i^2=-1, sqrt2^2=2, sqrt3^2=3, (i*sqrt2)^2=-2, omega^3=1",
            format!(
                "i^2={}, sqrt2^2={}, sqrt3^2={}, (i*sqrt2)^2={}, omega^3={}",
                sq(&c.i),
                sq(&c.sqrt2),
                sq(&s3),
                sq(&c.isqrt2),
                c.omega.pow(3).map_err(|e| cyc_err(S, e))?
            ),
        ));
        let w = &c.int(88) - &(&c.int(64) * &c.sqrt2);
        out.push(ClaimReport::stated(
            "cyclo_witness_sign",
            "\"88-64\\sqrt{2}<0\"",
            "negative",
            sign_of_real(&w).map_err(|e| cyc_err(S, e))?.as_str(),
        ));
        let sigma = c.sigma1();
        out.push(ClaimReport::derived(
            "cyclo_goldman_sigma1",
            "f(sigma1), so R1J is regular elliptic",
            "-4",
            goldman_f(&sigma),
        ));
        // f is real and invariant under complex conjugation of its argument
        let samples: Vec<CycNum> = (0..8)
            .map(|j| &CycNum::zeta_pow(&k, j * 5 + 1) + &c.int(j))
            .chain([sigma.clone(), c.qi2(1, 2, -3, 4)])
            .collect();
        let good = samples
            .iter()
            .filter(|t| {
                let f = goldman_f(t);
                f.is_real() && f == goldman_f(&t.conj())
            })
            .count();
        out.push(ClaimReport::stated(
            "cyclo_goldman_conjugation",
            "f(tau) is real and f(conj tau) = f(tau)",
            format!("{}/{}", samples.len(), samples.len()),
            format!("{good}/{}", samples.len()),
        ));
        // the Galois norm of x - zeta is the cyclotomic polynomial
        let norm = galois_norm(&CycPoly::linear_root(&CycNum::zeta_pow(&k, 1)))
            .map_err(|e| cyc_err(S, e))?;
        out.push(ClaimReport::stated(
            "cyclo_galois_norm_rational",
            "N(x - zeta_N) = Phi_N",
            cyclotomic_poly(n as u64),
            norm,
        ));
        Ok(out)
    }
}

pub struct GroupSuite;

impl Suite for GroupSuite {
    fn name(&self) -> &'static str {
        "group"
    }

    fn description(&self) -> &'static str {
        "linear parts of the crystallographic group"
    }

    fn run(&self, opts: &RunOptions) -> Result<Vec<ClaimReport>, ReportError> {
        const S: &str = "group";
        let e = err(S);
        let lin: Vec<Mat2> = crystal::build_g()
            .iter()
            .map(|g| g.linear.clone())
            .collect();
        let psi = group_closure(&lin, 1000, ClosureMode::Linear).map_err(|x| e(x.to_string()))?;
        let gl = group_closure(&gl2_f3_generators(), 1000, ClosureMode::Linear)
            .map_err(|x| e(x.to_string()))?;
        let rel = crystal::linear_relations().map_err(|x| e(x.to_string()))?;
        let mut out = vec![
            ClaimReport::stated(
                "group_linear_order",
                "the linear parts generate a group of order 48",
                48,
                psi.order(),
            ),
            ClaimReport::stated(
                "group_g12_relations",
                "A_i^2 = (A1A2)^4 = (A2A3)^3 = (A3A1)^3 = I",
                HOLDS,
                holds(rel.involutions && rel.a1a2_order_4 && rel.a2a3_order_3 && rel.a3a1_order_3),
            ),
            ClaimReport::stated(
                "group_central_involution",
                "(A1A2)^2 is central of order 2",
                HOLDS,
                holds(rel.central_involution),
            ),
            ClaimReport::stated(
                "group_gl2_f3_isomorphism",
                "\"isomorphic to the Shephard-Todd group G_{12}\", realized as GL(2,F3)",
                "found",
                if find_isomorphism(&psi, &gl).is_some() {
                    "found"
                } else {
                    "none"
                },
            ),
            ClaimReport::stated(
                "group_form_preserved",
                "every element preserves the invariant Hermitian form",
                "48/48",
                format!(
                    "{}/{}",
                    psi.elements()
                        .filter(|m| crystal::preserves_invariant_form(m))
                        .count(),
                    psi.order()
                ),
            ),
        ];
        let k = field(S, opts)?;
        let h = invariant_form_cyc(&k).map_err(|x| match x {
            CrystalError::Herm(crate::hermlin::HermError::Cyc(c)) => cyc_err(S, c),
            other => e(other.to_string()),
        })?;
        out.push(ClaimReport::derived(
            "group_form_signature",
            "the invariant form is positive definite",
            "(2,0,0)",
            h.signature().map_err(|x| e(x.to_string()))?,
        ));
        Ok(out)
    }
}

pub struct SporadicSuite;

fn profile_string(p: &[Option<usize>; 4]) -> String {
    let s: Vec<String> = p
        .iter()
        .map(|x| x.map_or_else(|| ">12".to_string(), |n| n.to_string()))
        .collect();
    format!("{},{},{};{}", s[0], s[1], s[2], s[3])
}

const SPORADIC_PS: [ReflectionOrder; 5] = [
    ReflectionOrder::Finite(2),
    ReflectionOrder::Finite(3),
    ReflectionOrder::Finite(4),
    ReflectionOrder::Finite(6),
    ReflectionOrder::Infinite,
];

fn sporadic_claims(
    k: &std::sync::Arc<CyclotomicField>,
    p: ReflectionOrder,
    tau: TraceChoice,
) -> Result<Vec<ClaimReport>, SporadicError> {
    let bar = tau == TraceChoice::Sigma1Bar;
    let id = |what: &str| {
        let prefix = if bar { "sporadic_bar" } else { "sporadic" };
        format!("{prefix}_{}_{what}", p_tag(p))
    };
    let d = build_sporadic(k, p, &tau.value(k)?)?;
    let t = thompson_change_of_generators(&d)?;
    let sig = d.signature()?;
    let mut out = Vec::new();
    out.push(ClaimReport::stated(
        id("trace"),
        "tr(R1J) = tau, tr(R1J^-1) = -u conj(tau)",
        HOLDS,
        holds(d.trace_conditions()?),
    ));
    out.push(ClaimReport::stated(
        id("form_preserved"),
        "R1 and J preserve the Hermitian form",
        HOLDS,
        holds(d.preserves_form()),
    ));
    let sig_anchor = "signature of the Hermitian form, (3,0) iff p = 2";
    out.push(match (bar, p) {
        (false, ReflectionOrder::Finite(2)) => {
            ClaimReport::stated(id("signature"), sig_anchor, "(3,0,0)", sig)
        }
        (false, _) => ClaimReport::stated(id("signature"), sig_anchor, "(2,1,0)", sig),
        // the printed form is degenerate at p = 2 and changes sign in the unipotent limit
        (true, ReflectionOrder::Finite(2)) => {
            ClaimReport::derived(id("signature"), sig_anchor, "(2,0,1)", sig)
        }
        (true, ReflectionOrder::Infinite) => {
            ClaimReport::derived(id("signature"), sig_anchor, "(1,2,0)", sig)
        }
        (true, _) => ClaimReport::derived(id("signature"), sig_anchor, "(2,1,0)", sig),
    });
    let order = verify_r1j_order(&d)?;
    let (order_anchor, word_anchor) = ("\"R_1J has order 8\"", "J = R1R2R3R1R2R3R1R2");
    let profile_anchor = "braid profile (3,3,4;6) after the change of generators, cap 12";
    let profile = profile_string(&t.braid_profile(12)?);
    if bar {
        out.push(ClaimReport::derived(
            id("r1j_order"),
            order_anchor,
            8,
            order,
        ));
        out.push(ClaimReport::derived(
            id("j_word"),
            word_anchor,
            HOLDS,
            holds(d.j_identity()),
        ));
    } else {
        out.push(ClaimReport::stated(id("r1j_order"), order_anchor, 8, order));
        out.push(ClaimReport::stated(
            id("j_word"),
            word_anchor,
            HOLDS,
            holds(d.j_identity()),
        ));
    }
    let stated_profile =
        !bar && matches!(p, ReflectionOrder::Finite(3) | ReflectionOrder::Finite(4));
    out.push(if stated_profile {
        ClaimReport::stated(id("braid_profile"), profile_anchor, "3,3,4;6", profile)
    } else {
        ClaimReport::derived(id("braid_profile"), profile_anchor, "3,3,4;6", profile)
    });
    out.push(ClaimReport::derived(
        id("thompson_inverse"),
        "the two generating triples are words in each other",
        HOLDS,
        holds(t.recovers_standard(&d)?),
    ));
    Ok(out)
}

fn witness_claims(k: &std::sync::Arc<CyclotomicField>) -> Result<Vec<ClaimReport>, SporadicError> {
    let c = Constants::new(k)?;
    let w = nondiscreteness_witness_s4bar(k)?;
    let target = &c.int(88) - &(&c.int(64) * &c.sqrt2);
    let rel = |s: Sign| match s {
        Sign::Negative => "< 0",
        Sign::Zero => "= 0",
        Sign::Positive => "> 0",
    };
    let goldman = if w.goldman == target {
        "88-64*sqrt2".to_string()
    } else {
        w.goldman.to_string()
    };
    let root = witness_root(&c)?;
    let roots: Vec<String> = w
        .roots_of_unity
        .iter()
        .map(|(r, o)| {
            let name = if *r == root {
                "-(i+sqrt3)/2".to_string()
            } else {
                r.to_string()
            };
            format!("{name} of order {o}")
        })
        .collect();
    let counterpart = match w.counterpart_sign {
        Sign::Positive => "loxodromic (f > 0)".to_string(),
        s => format!("not loxodromic (f {})", rel(s)),
    };
    Ok(vec![
        ClaimReport::stated(
            "witness_tau",
            "tau_M = (sqrt3+i)(i-(1+i)sqrt2)/2 for M = R3R1R2J in S(4, conj sigma1)",
            witness_tau_closed_form(&c)?,
            &w.tau_m,
        ),
        ClaimReport::stated("witness_det", "det M = 1", 1, &w.det),
        ClaimReport::stated(
            "goldman_witness",
            "\"88-64\\sqrt{2}<0\", so M is regular elliptic",
            "88-64*sqrt2 < 0",
            format!("{goldman} {}", rel(w.goldman_sign)),
        ),
        ClaimReport::stated(
            "witness_char_poly",
            "\"\\lambda^3-\\tau\\lambda^2+\\bar\\tau\\lambda-1\"",
            HOLDS,
            holds(w.char_poly_matches),
        ),
        ClaimReport::stated(
            "witness_root_of_unity",
            "the only root-of-unity eigenvalue is \"-(i+\\sqrt{3})/2\"",
            "[-(i+sqrt3)/2 of order 12]",
            format!("[{}]", roots.join(", ")),
        ),
        ClaimReport::stated(
            "witness_minimal_degree",
            "\"minimal polynomial of degree 16, that is not cyclotomic\"",
            16,
            w.minimal_degree().map_or("none".into(), |d| d.to_string()),
        ),
        ClaimReport::stated(
            "witness_cyclotomic_factors",
            "\"minimal polynomial of degree 16, that is not cyclotomic\"",
            "none",
            if w.cyclotomic_factors.is_empty() {
                "none".to_string()
            } else {
                set_of(&w.cyclotomic_factors)
            },
        ),
        ClaimReport::derived(
            "witness_irreducibility_prime",
            "the degree-16 polynomial does not split completely mod a prime p = 1 (mod N)",
            73,
            w.irreducibility_prime
                .map_or("none".into(), |p| p.to_string()),
        ),
        ClaimReport::stated(
            "witness_counterpart",
            "the same word in S(4, sigma1) is loxodromic",
            "loxodromic (f > 0)",
            counterpart,
        ),
    ])
}

impl Suite for SporadicSuite {
    fn name(&self) -> &'static str {
        "sporadic"
    }

    fn description(&self) -> &'static str {
        "sporadic triangle groups and the nondiscreteness witness"
    }

    fn run(&self, opts: &RunOptions) -> Result<Vec<ClaimReport>, ReportError> {
        const S: &str = "sporadic";
        let k = field(S, opts)?;
        let map = |e: SporadicError| match e {
            SporadicError::Cyc(c) => cyc_err(S, c),
            other => err(S)(other.to_string()),
        };
        let mut out = Vec::new();
        for p in ps(opts, &SPORADIC_PS) {
            out.extend(sporadic_claims(&k, p, opts.tau).map_err(map)?);
        }
        if opts.p.is_none_or(|p| p == ReflectionOrder::Finite(4)) {
            out.extend(witness_claims(&k).map_err(map)?);
        }
        for (id, what) in [
            (
                "external_discreteness",
                "discreteness of the lattices Gamma_p",
            ),
            ("external_cusps", "cusp counts of the quotients"),
            ("external_arithmeticity", "non-arithmeticity"),
        ] {
            out.push(ClaimReport::unchecked(
                format!("sporadic_{id}"),
                "classification of sporadic triangle groups",
                what,
                Status::ExternalDependency,
            ));
        }
        Ok(out)
    }
}

pub struct CrystalSuite;

fn translation_string(g: &AffineIsoC2) -> String {
    if g.is_translation() {
        format!("T({}, {})", g.translation[0], g.translation[1])
    } else {
        g.to_string()
    }
}

impl Suite for CrystalSuite {
    fn name(&self) -> &'static str {
        "crystal"
    }

    fn description(&self) -> &'static str {
        "the crystallographic group, its mirrors and the torus quotient"
    }

    fn run(&self, opts: &RunOptions) -> Result<Vec<ClaimReport>, ReportError> {
        const S: &str = "crystal";
        let e = |x: CrystalError| err(S)(x.to_string());
        let mut out = Vec::new();

        for t in verify_translation_words() {
            out.push(ClaimReport::stated(
                format!("crystal_translation_{}", t.name),
                format!("{} is a translation", t.word),
                translation_string(&AffineIsoC2::translation_by(t.expected)),
                translation_string(&t.computed),
            ));
        }
        out.push(ClaimReport::stated(
            "crystal_translation_lattice_index",
            "\"The groups K and T_Lambda are equal\": the four vectors span Lambda",
            1,
            sublattice_index(&translation_lattice_vectors())
                .map_or("infinite".into(), |i| i.to_string()),
        ));

        let c = Crystal::build().map_err(e)?;
        let f = &c.group;
        out.push(ClaimReport::stated(
            "crystal_quotient_order",
            "|F| = 48",
            48,
            f.order(),
        ));
        out.push(ClaimReport::stated(
            "crystal_reflections",
            "F contains exactly 12 reflections",
            12,
            f.reflections().len(),
        ));
        let keys: BTreeSet<_> = c.mirrors.iter().map(|m| m.key()).collect();
        let orbit: BTreeSet<_> = f.elements().iter().map(|g| c.mirrors[0].image(g)).collect();
        out.push(ClaimReport::stated(
            "crystal_mirror_orbit",
            "F permutes the 12 mirrors transitively",
            "12 mirrors in one orbit",
            format!(
                "{} mirrors in {}",
                keys.len(),
                if orbit == keys {
                    "one orbit"
                } else {
                    "several orbits"
                }
            ),
        ));
        let comps: BTreeSet<usize> = c.mirrors.iter().map(|m| m.components.len()).collect();
        out.push(ClaimReport::derived(
            "crystal_mirror_components",
            "each mirror is a single elliptic curve",
            "{1}",
            set_of(comps),
        ));

        let census = c.census().map_err(e)?;
        let per: BTreeSet<usize> = census.special_per_mirror.iter().copied().collect();
        out.push(ClaimReport::stated(
            "crystal_special_per_mirror",
            "every mirror carries exactly 8 special points",
            "{8}",
            set_of(per),
        ));
        let totals = (0..c.mirrors.len())
            .map(|k| mirror_intersection_total(&c.mirrors, k))
            .collect::<Result<BTreeSet<_>, _>>()
            .map_err(e)?;
        out.push(ClaimReport::stated(
            "crystal_intersection_totals",
            "\"E_k\\cdot\\sum_{j=1}^{12}E_j=24\"",
            "{24}",
            set_of(totals),
        ));
        let orders = |on: bool| {
            let mut v: Vec<usize> = census
                .orbits
                .iter()
                .filter(|o| o.on_mirror == on)
                .map(|o| o.stabilizer_order)
                .collect();
            v.sort();
            set_of(v)
        };
        out.push(ClaimReport::stated(
            "crystal_orbits_off_mirrors",
            "stabilizer orders of isolated special orbits",
            "{3, 8}",
            orders(false),
        ));
        out.push(ClaimReport::stated(
            "crystal_orbits_on_mirrors",
            "stabilizer orders of special orbits on the mirrors",
            "{6, 6, 8, 12}",
            orders(true),
        ));
        out.push(ClaimReport::derived(
            "crystal_special_points",
            "points of A with non-reflection isotropy",
            48,
            census.special_points,
        ));
        out.push(ClaimReport::stated(
            "crystal_chi_v",
            "\"chi(V)=48\"",
            48,
            census.chi_v,
        ));
        out.push(ClaimReport::stated(
            "crystal_chi_u",
            "\"hence chi(U)=1\"",
            1,
            census.chi_u,
        ));
        out.push(ClaimReport::stated(
            "crystal_chi_x",
            "\"chi(X)=3\"",
            3,
            census.chi_x,
        ));

        let checks = tables::check_tables(&c).map_err(e)?;
        for n in 1..=4u8 {
            let rows: Vec<_> = checks.iter().filter(|t| t.table == n).collect();
            let good = rows.iter().filter(|t| t.holds).count();
            out.push(ClaimReport::stated(
                format!("crystal_table{n}"),
                format!("rows of table {n}"),
                format!("{0}/{0}", rows.len()),
                format!("{good}/{}", rows.len()),
            ));
            if opts.tables {
                for (i, t) in rows.iter().enumerate() {
                    out.push(ClaimReport::stated(
                        format!("crystal_table{n}_row{:02}", i + 1),
                        format!("table {n}, {}: {}", t.row, t.expected),
                        HOLDS,
                        if t.holds {
                            HOLDS.to_string()
                        } else {
                            format!("fails: {}", t.computed)
                        },
                    ));
                }
            }
        }

        // the fast lattice-index count against bounded enumeration, all pairs
        let mut agree = 0;
        let mut pairs = 0;
        for i in 0..c.mirrors.len() {
            for j in i + 1..c.mirrors.len() {
                let (a, b) = (&c.mirrors[i].components[0], &c.mirrors[j].components[0]);
                let fast: BTreeSet<_> = line_intersections(a, b).map_err(e)?.into_iter().collect();
                if fast == line_intersections_brute(a, b, 3) {
                    agree += 1;
                }
                pairs += 1;
            }
        }
        out.push(ClaimReport::stated(
            "crystal_index_oracle",
            "line intersections by lattice index agree with enumeration",
            "66/66",
            format!("{agree}/{pairs}"),
        ));
        Ok(out)
    }
}

pub struct LedgerSuite;

impl Suite for LedgerSuite {
    fn name(&self) -> &'static str {
        "ledger"
    }

    fn description(&self) -> &'static str {
        "intersection numbers, thresholds and the Miyaoka-Yau equality"
    }

    fn run(&self, opts: &RunOptions) -> Result<Vec<ClaimReport>, ReportError> {
        const S: &str = "ledger";
        let e = |x: LedgerError| err(S)(x.to_string());
        let chosen_ps: Vec<ReflectionOrder> = match &opts.model {
            Some(m) => {
                let p = LEDGER_PS
                    .iter()
                    .copied()
                    .find(|p| model_for(*p) == Some(m.as_str()))
                    .ok_or_else(|| ReportError::Usage(format!("unknown model `{m}`")))?;
                if opts.p.is_some_and(|q| q != p) {
                    return Err(ReportError::Usage(format!(
                        "model {m} belongs to p = {p}, not p = {}",
                        opts.p.expect("checked")
                    )));
                }
                vec![p]
            }
            None => ps(opts, &LEDGER_PS),
        };

        // base numbers from the mirror configuration
        let c = Crystal::build().map_err(|x| err(S)(x.to_string()))?;
        let total = mirror_intersection_total(&c.mirrors, 0).map_err(|x| err(S)(x.to_string()))?;
        let base = base_numbers(c.mirrors.len() as i64, total as i64, c.group.order() as i64);
        let mut out = vec![
            ClaimReport::stated("ledger_base_m2", "M^2 on X", 24, base.m2),
            ClaimReport::stated("ledger_base_km", "K.M on X", -12, base.km),
            ClaimReport::stated("ledger_base_k2", "K^2 on X", 6, base.k2),
        ];

        for (point, lct) in [("q", "2/3"), ("p12", "3/4"), ("p13", "5/6"), ("p23", "5/6")] {
            out.push(ClaimReport::stated(
                format!("ledger_lct_{point}"),
                format!("log canonical threshold at {point}"),
                lct,
                lct_at(point).map_err(e)?,
            ));
        }
        let w = builtin_model("W").map_err(e)?;
        let q = w
            .chain("q")
            .ok_or_else(|| err(S)("model W has no chain over q".into()))?;
        let join = |f: &dyn Fn(&ledger::ChainCurve) -> i64| {
            q.curves
                .iter()
                .map(|x| f(x).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        out.push(ClaimReport::stated(
            "ledger_discrepancy_chain_q",
            "\"E_1+2E_2+3E_3\" and pullback \"2E_1+4E_2+6E_3\"",
            "discrepancies 1,2,3; multiplicities 2,4,6",
            format!(
                "discrepancies {}; multiplicities {}",
                join(&|x| x.discrepancy),
                join(&|x| x.multiplicity)
            ),
        ));
        for k in kept_curves(&w).map_err(e)? {
            let id = format!("ledger_self_intersection_{}", k.name);
            let anchor = format!(
                "contracted self-intersection of {} over {}",
                k.name, k.point
            );
            out.push(match k.name.as_str() {
                "E" => ClaimReport::stated(id, "\"E^2=-1/3\"", "-1/3", k.self_intersection),
                "F" => ClaimReport::derived(id, anchor, "-1/2", k.self_intersection),
                _ => ClaimReport::derived(id, anchor, "-1/6", k.self_intersection),
            });
        }

        for p in chosen_ps {
            let tag = p_tag(p);
            let name = model_for(p).expect("ledger p");
            let model = builtin_model(name).map_err(e)?;
            let my = check_miyaoka_yau(&model, p, &base).map_err(e)?;
            let (c1, chi) = match p {
                ReflectionOrder::Finite(3) => ("2/3", "2/9"),
                ReflectionOrder::Finite(4) => ("21/16", "7/16"),
                ReflectionOrder::Finite(6) => ("43/24", "43/72"),
                _ => ("9/8", "3/8"),
            };
            out.push(ClaimReport::stated(
                format!("c1sq_{tag}"),
                format!("c1^2 of the pair on model {name}"),
                c1,
                my.c1_squared.bilinear,
            ));
            out.push(ClaimReport::stated(
                format!("ledger_c1sq_dual_{tag}"),
                "closed form of c1^2 equals the bilinear evaluation",
                my.c1_squared.closed_form,
                my.c1_squared.bilinear,
            ));
            out.push(ClaimReport::stated(
                format!("ledger_chi_orb_{tag}"),
                format!("orbifold Euler number of the pair on model {name}"),
                chi,
                chi_orb(&model, p).map_err(e)?.total,
            ));
            let three_chi = Q::from_integer(3) * my.chi_orb.total;
            out.push(ClaimReport::stated(
                format!("ledger_miyaoka_yau_{tag}"),
                "c1^2 = 3 chi_orb",
                "c1^2 = 3 chi_orb",
                if my.holds() {
                    "c1^2 = 3 chi_orb".to_string()
                } else {
                    format!("c1^2 = {}, 3 chi_orb = {three_chi}", my.c1_squared.bilinear)
                },
            ));
            let pert = perturb_weights(&model, p, &base, Q::new(1, 100)).map_err(e)?;
            out.push(ClaimReport::stated(
                format!("ledger_perturbation_{tag}"),
                "moving one weight by 1/100 breaks the equality",
                format!("0/{} keep equality", pert.len()),
                format!(
                    "{}/{} keep equality",
                    pert.iter().filter(|x| x.equality_holds).count(),
                    pert.len()
                ),
            ));

            let amp = check_ampleness(&model, p, &base).map_err(e)?;
            for (curve, v) in &amp.values {
                let id = format!("ledger_ample_{tag}_{curve}");
                let anchor = format!("(K + weighted boundary).{curve} on model {name}");
                let paper = match (p, curve.as_str()) {
                    (ReflectionOrder::Finite(4), "M") => Some("9/2"),
                    (ReflectionOrder::Finite(4), "E") => Some("1/4"),
                    _ => None,
                };
                out.push(match paper {
                    Some(x) => ClaimReport::stated(id, anchor, x, v),
                    None => ClaimReport::derived(id, anchor, frozen_ampleness(p, curve), v),
                });
            }
            let bad: Vec<String> = amp
                .values
                .iter()
                .filter(|(_, v)| *v <= Q::from_integer(0))
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            out.push(ClaimReport::stated(
                format!("ledger_ample_{tag}"),
                "Nakai-Moishezon: all intersection values strictly positive",
                "all positive",
                if bad.is_empty() {
                    "all positive".to_string()
                } else {
                    format!("not positive: {}", bad.join(", "))
                },
            ));
        }

        out.push(ClaimReport::unchecked(
            "ledger_axiom_canonical",
            "input datum, Picard number one",
            "K_X = -1/2 M numerically",
            Status::Axiom,
        ));
        out.push(ClaimReport::unchecked(
            "ledger_axiom_elliptic",
            "elliptic curves on an Abelian surface",
            "E_k^2 = 0",
            Status::Axiom,
        ));
        out.push(ClaimReport::unchecked(
            "ledger_external_uniformization",
            "Kobayashi-Nakamura-Sakai",
            "c1^2 = 3 chi_orb with ample log canonical class gives a ball quotient",
            Status::ExternalDependency,
        ));
        Ok(out)
    }
}

/// Intersection values not stated in the literature, frozen from a separate
/// evaluation on the full resolution: every chain curve kept, the class
/// pulled back orthogonally to the contracted ones.
fn frozen_ampleness(p: ReflectionOrder, curve: &str) -> &'static str {
    match (p, curve) {
        (ReflectionOrder::Finite(3), "M") => "4",
        (ReflectionOrder::Finite(6), "M") => "4",
        (ReflectionOrder::Finite(6), "E") => "1/2",
        (ReflectionOrder::Finite(6), "F") => "1/4",
        (ReflectionOrder::Infinite, "M") => "0",
        (ReflectionOrder::Infinite, "E") => "1",
        (ReflectionOrder::Infinite, "F") => "3/4",
        (ReflectionOrder::Infinite, "G" | "H") => "1/4",
        _ => "unrecorded",
    }
}
