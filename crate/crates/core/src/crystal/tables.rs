//! Reference data for the mirror, isotropy and special-point tables, and the
//! comparison of each row with the computed geometry.

use std::collections::BTreeSet;

use super::affine::{Point, TorusPoint};
use super::geometry::TorusLine;
use super::group::{special_points, stabilizer};
use super::qi2::QI2;
use super::{Crystal, CrystalError};

fn x(an: i64, ad: i64, bn: i64, bd: i64) -> QI2 {
    QI2::frac(an, ad, bn, bd)
}

fn r(n: i64, d: i64) -> QI2 {
    x(n, d, 0, 1)
}

/// A mirror equation, solved for one coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MirrorEquation {
    /// `z₂ = m·z₁ + k`
    Z2 { m: QI2, k: QI2 },
    /// `z₁ = m·z₂ + k`
    Z1 { m: QI2, k: QI2 },
}

impl MirrorEquation {
    pub fn line(&self) -> Result<TorusLine, CrystalError> {
        match *self {
            MirrorEquation::Z2 { m, k } => TorusLine::z2_equals(m, k),
            MirrorEquation::Z1 { m, k } => TorusLine::z1_equals(m, k),
        }
    }
}

impl std::fmt::Display for MirrorEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (lhs, rhs, m, k) = match self {
            MirrorEquation::Z2 { m, k } => ("z2", "z1", m, k),
            MirrorEquation::Z1 { m, k } => ("z1", "z2", m, k),
        };
        match (m.is_zero(), k.is_zero()) {
            (true, _) => write!(f, "{lhs} = {k}"),
            (false, true) => write!(f, "{lhs} = ({m})*{rhs}"),
            (false, false) => write!(f, "{lhs} = ({m})*{rhs} + {k}"),
        }
    }
}

pub fn table1() -> Vec<(&'static str, MirrorEquation)> {
    use MirrorEquation::{Z1, Z2};
    let zero = QI2::zero();
    vec![
        (
            "1",
            Z2 {
                m: x(1, 2, -1, 2),
                k: zero,
            },
        ),
        (
            "2",
            Z2 {
                m: x(1, 1, -1, 2),
                k: zero,
            },
        ),
        (
            "3",
            Z2 {
                m: zero,
                k: r(1, 2),
            },
        ),
        (
            "121",
            Z2 {
                m: x(0, 1, -1, 2),
                k: zero,
            },
        ),
        (
            "131",
            Z2 {
                m: x(1, 1, -1, 1),
                k: r(-1, 2),
            },
        ),
        ("212", Z1 { m: zero, k: zero }),
        (
            "232",
            Z1 {
                m: x(1, 3, 2, 3),
                k: x(1, 6, -1, 6),
            },
        ),
        (
            "32121",
            Z1 {
                m: x(1, 2, 1, 2),
                k: x(1, 4, 1, 4),
            },
        ),
        (
            "23121",
            Z1 {
                m: QI2::one(),
                k: x(1, 2, 1, 2),
            },
        ),
        (
            "21321",
            Z1 {
                m: x(0, 1, 1, 2),
                k: x(1, 2, 1, 4),
            },
        ),
        (
            "12321",
            Z1 {
                m: x(1, 1, 1, 2),
                k: x(0, 1, 1, 4),
            },
        ),
        (
            "21231",
            Z1 {
                m: x(1, 1, 1, 1),
                k: x(1, 2, 1, 2),
            },
        ),
    ]
}

/// Orbits of points with a non-reflection stabilizer.
#[derive(Clone, Debug)]
pub struct IsolatedRow {
    pub generator: &'static str,
    pub order: usize,
    /// Trace and determinant of the generator's linear part, which fix its
    /// eigenvalue pair.
    pub trace: QI2,
    pub det: QI2,
    pub eigenvalues: &'static str,
    pub point: Point,
}

pub fn table2() -> Vec<IsolatedRow> {
    vec![
        IsolatedRow {
            generator: "123",
            order: 8,
            trace: QI2::isqrt2(),
            det: QI2::int(-1),
            eigenvalues: "zeta8, zeta8^3",
            point: [r(1, 2), x(1, 2, 1, 2)],
        },
        IsolatedRow {
            generator: "13",
            order: 3,
            trace: QI2::int(-1),
            det: QI2::one(),
            eigenvalues: "omega, omega-bar",
            point: [x(1, 3, 1, 3), x(1, 6, 1, 3)],
        },
    ]
}

/// Orbits of points whose stabilizer is a reflection group.
#[derive(Clone, Debug)]
pub struct ReflectionPointRow {
    pub notation: &'static str,
    pub generators: [&'static str; 2],
    pub order: usize,
    pub group_type: &'static str,
    pub reflections: usize,
    pub point: Point,
}

pub fn table3() -> Vec<ReflectionPointRow> {
    let zero = QI2::zero();
    vec![
        ReflectionPointRow {
            notation: "p13",
            generators: ["1", "3"],
            order: 6,
            group_type: "G(3,3,2)",
            reflections: 3,
            point: [x(1, 3, 1, 3), r(1, 2)],
        },
        ReflectionPointRow {
            notation: "p23",
            generators: ["2", "3"],
            order: 6,
            group_type: "G(3,3,2)",
            reflections: 3,
            point: [x(-1, 3, -1, 6), r(1, 2)],
        },
        ReflectionPointRow {
            notation: "p12",
            generators: ["1", "2"],
            order: 8,
            group_type: "G(2,1,2)",
            reflections: 4,
            point: [zero, zero],
        },
        ReflectionPointRow {
            notation: "p13(21)^2",
            generators: ["1", "32121"],
            order: 12,
            group_type: "G(6,6,2)",
            reflections: 6,
            point: [zero, r(1, 2)],
        },
    ]
}

/// Special points `(0, z₂)` on the mirror `z₁ = 0` of `R₂R₁R₂`.
pub fn table4() -> Vec<(Vec<&'static str>, Vec<QI2>)> {
    vec![
        (
            vec!["1", "2", "121", "212"],
            vec![QI2::zero(), x(0, 1, -1, 2)],
        ),
        (
            vec!["212", "232", "12321"],
            vec![x(1, 6, 1, 6), x(-1, 6, -1, 6)],
        ),
        (
            vec!["212", "32121", "21231"],
            vec![x(1, 6, 1, 3), x(-1, 6, -1, 3)],
        ),
        (
            vec!["1", "3", "131", "212", "32121", "21231"],
            vec![r(1, 2)],
        ),
        (
            vec!["1", "212", "232", "23121", "21321", "12321"],
            vec![x(1, 2, 1, 2)],
        ),
    ]
}

/// One row of a reconstructed table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub table: u8,
    pub row: String,
    pub expected: String,
    pub computed: String,
    pub holds: bool,
}

fn sorted_labels(crystal: &Crystal, p: &TorusPoint) -> Vec<String> {
    let mut v: Vec<String> = crystal
        .mirrors
        .iter()
        .filter(|m| m.contains(p))
        .map(|m| m.label.clone())
        .collect();
    v.sort();
    v
}

pub fn check_tables(crystal: &Crystal) -> Result<Vec<TableCheck>, CrystalError> {
    let f = &crystal.group;
    let mut out = Vec::new();

    for (label, eq) in table1() {
        let line = eq.line()?;
        let k = crystal
            .mirror_index(label)
            .ok_or_else(|| CrystalError::BadMirrorLabel(label.into()))?;
        let m = &crystal.mirrors[k];
        let computed: Vec<String> = m.components.iter().map(|l| l.to_string()).collect();
        out.push(TableCheck {
            table: 1,
            row: label.into(),
            expected: eq.to_string(),
            computed: format!("{} component(s): {}", computed.len(), computed.join("; ")),
            holds: m.components.contains(&line),
        });
    }

    for row in table2() {
        let p = TorusPoint::new(&row.point);
        let stab = stabilizer(f, &p);
        let g = f.word(row.generator)?;
        let a = f.element(g).linear();
        let cyclic = f.generated(&[g]) == stab.elements;
        let holds = stab.order() == row.order
            && stab.reflections.is_empty()
            && cyclic
            && a.trace() == row.trace
            && a.det() == row.det;
        out.push(TableCheck {
            table: 2,
            row: format!(
                "<R{}>",
                row.generator
                    .chars()
                    .map(String::from)
                    .collect::<Vec<_>>()
                    .join("R")
            ),
            expected: format!(
                "order {}, eigenvalues {}, at {}",
                row.order, row.eigenvalues, p
            ),
            computed: format!(
                "stabilizer order {}, {} reflections, cyclic: {}, trace {}, det {}",
                stab.order(),
                stab.reflections.len(),
                cyclic,
                a.trace(),
                a.det()
            ),
            holds,
        });
    }

    for row in table3() {
        let p = TorusPoint::new(&row.point);
        let stab = stabilizer(f, &p);
        let gens = row
            .generators
            .iter()
            .map(|w| f.word(w))
            .collect::<Result<Vec<_>, _>>()?;
        let generated = f.generated(&gens) == stab.elements;
        let holds =
            stab.order() == row.order && stab.reflections.len() == row.reflections && generated;
        out.push(TableCheck {
            table: 3,
            row: row.notation.into(),
            expected: format!(
                "{} of order {} with {} reflections at ({}, {})",
                row.group_type, row.order, row.reflections, row.point[0], row.point[1]
            ),
            computed: format!(
                "stabilizer order {}, {} reflections, generated by R{} and R{}: {}",
                stab.order(),
                stab.reflections.len(),
                row.generators[0],
                row.generators[1],
                generated
            ),
            holds,
        });
    }

    let k = crystal
        .mirror_index("212")
        .ok_or_else(|| CrystalError::BadMirrorLabel("212".into()))?;
    let special = special_points(f)?;
    let on_212: BTreeSet<TorusPoint> = special
        .iter()
        .filter(|p| crystal.mirrors[k].contains(p))
        .copied()
        .collect();
    let mut listed = BTreeSet::new();
    for (labels, z2s) in table4() {
        let mut expected: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        expected.sort();
        for z2 in z2s {
            let p = TorusPoint::new(&[QI2::zero(), z2]);
            listed.insert(p);
            let computed = sorted_labels(crystal, &p);
            out.push(TableCheck {
                table: 4,
                row: format!("z2 = {z2}"),
                expected: expected.join(","),
                computed: computed.join(","),
                holds: computed == expected && on_212.contains(&p),
            });
        }
    }
    out.push(TableCheck {
        table: 4,
        row: "all special points".into(),
        expected: format!("{} points", listed.len()),
        computed: format!("{} points", on_212.len()),
        holds: listed == on_212,
    });
    Ok(out)
}
