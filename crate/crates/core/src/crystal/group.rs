use std::collections::{BTreeSet, HashMap, VecDeque};

use super::affine::{AffineIsoC2, TorusAffineMap, TorusPoint};
use super::geometry::{fixed_locus, line_intersections, FixedLocus, TorusLine};
use super::qi2::Q;
use super::CrystalError;

/// `F = G/T_Λ` with its full multiplication table.
#[derive(Clone, Debug)]
pub struct CrystalGroup {
    elements: Vec<TorusAffineMap>,
    index: HashMap<TorusAffineMap, usize>,
    table: Vec<Vec<usize>>,
    generators: Vec<usize>,
}

/// Closes the generators under composition modulo `Λ`.
pub fn build_f(generators: &[AffineIsoC2], cap: usize) -> Result<CrystalGroup, CrystalError> {
    let gens: Vec<TorusAffineMap> = generators
        .iter()
        .map(|g| TorusAffineMap::new(g).ok_or(CrystalError::NotIntegral))
        .collect::<Result<_, _>>()?;
    let mut elements = vec![TorusAffineMap::identity()];
    let mut index: HashMap<TorusAffineMap, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = elements[x].compose(g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(CrystalError::CapExceeded(cap));
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    let table = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
        .collect();
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(CrystalGroup {
        elements,
        index,
        table,
        generators,
    })
}

impl CrystalGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &TorusAffineMap {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[TorusAffineMap] {
        &self.elements
    }

    pub fn index_of(&self, g: &TorusAffineMap) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == 0)
            .expect("group")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Element named by a string of generator digits, e.g. `"32121"` is
    /// `R₃R₂R₁R₂R₁`.
    pub fn word(&self, w: &str) -> Result<usize, CrystalError> {
        w.chars().try_fold(0, |acc, ch| {
            let k = ch
                .to_digit(10)
                .map(|d| d as usize)
                .filter(|d| (1..=self.generators.len()).contains(d));
            k.map(|k| self.mul(acc, self.generators[k - 1]))
                .ok_or_else(|| CrystalError::BadWord(w.to_string()))
        })
    }

    pub fn reflections(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].is_reflection())
            .collect()
    }

    /// The subgroup generated by the given elements, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a))
    }
}

/// The full fixed curve of one reflection of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mirror {
    pub label: String,
    pub reflection: usize,
    pub components: Vec<TorusLine>,
}

impl Mirror {
    pub fn contains(&self, p: &TorusPoint) -> bool {
        self.components.iter().any(|l| l.contains(p))
    }

    /// Components as a set of canonical curves; equal sets are equal mirrors.
    pub fn key(&self) -> BTreeSet<TorusLine> {
        self.components.iter().cloned().collect()
    }

    pub fn image(&self, g: &TorusAffineMap) -> BTreeSet<TorusLine> {
        self.components.iter().map(|l| l.image(g)).collect()
    }
}

/// One mirror per reflection, named by the given words; every reflection of
/// `F` must be named exactly once.
pub fn mirrors(f: &CrystalGroup, labels: &[&str]) -> Result<Vec<Mirror>, CrystalError> {
    let refl: BTreeSet<usize> = f.reflections().into_iter().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &label in labels {
        let r = f.word(label)?;
        if !refl.contains(&r) || !seen.insert(r) {
            return Err(CrystalError::BadMirrorLabel(label.to_string()));
        }
        let components = match fixed_locus(f.element(r))? {
            FixedLocus::Curves(c) => c,
            _ => return Err(CrystalError::BadMirrorLabel(label.to_string())),
        };
        out.push(Mirror {
            label: label.to_string(),
            reflection: r,
            components,
        });
    }
    if seen != refl {
        return Err(CrystalError::UnlabeledReflection(
            refl.difference(&seen).count(),
        ));
    }
    Ok(out)
}

pub fn mirror_intersections(a: &Mirror, b: &Mirror) -> Result<BTreeSet<TorusPoint>, CrystalError> {
    let mut out = BTreeSet::new();
    for l1 in &a.components {
        for l2 in &b.components {
            out.extend(line_intersections(l1, l2)?);
        }
    }
    Ok(out)
}

/// `E_k · Σ_j E_j`, where the self term is zero (an elliptic curve on an
/// Abelian surface has trivial normal bundle).
pub fn mirror_intersection_total(mirrors: &[Mirror], k: usize) -> Result<usize, CrystalError> {
    let mut total = 0;
    for (j, m) in mirrors.iter().enumerate() {
        if j != k {
            total += mirror_intersections(&mirrors[k], m)?.len();
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub elements: Vec<usize>,
    pub reflections: Vec<usize>,
}

impl Stabilizer {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn stabilizer(f: &CrystalGroup, x: &TorusPoint) -> Stabilizer {
    let elements: Vec<usize> = (0..f.order())
        .filter(|&i| f.element(i).apply(x) == *x)
        .collect();
    let reflections = elements
        .iter()
        .copied()
        .filter(|&i| f.element(i).is_reflection())
        .collect();
    Stabilizer {
        elements,
        reflections,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialOrbit {
    pub representative: TorusPoint,
    pub size: usize,
    pub stabilizer_order: usize,
    pub reflections: usize,
    pub on_mirror: bool,
    pub generated_by_reflections: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub orbits: Vec<SpecialOrbit>,
    pub special_points: usize,
    /// Special points on each mirror, in mirror order.
    pub special_per_mirror: Vec<usize>,
    /// Connected components of each mirror.
    pub components_per_mirror: Vec<usize>,
    pub chi_v: Q,
    pub chi_u: Q,
    /// Euler characteristic of the image of the mirrors minus special points.
    pub chi_mirror_open: Q,
    pub chi_x: Q,
}

/// Points of `A` with nontrivial isotropy beyond a single reflection: the
/// isolated fixed points of every element that is neither the identity nor
/// a reflection, merged into `F`-orbits.
pub fn orbit_census(f: &CrystalGroup, mirrors: &[Mirror]) -> Result<Census, CrystalError> {
    let special = special_points(f)?;
    let mut remaining = special.clone();
    let mut orbits = Vec::new();
    while let Some(x) = remaining.pop_first() {
        let orbit: BTreeSet<TorusPoint> = f.elements().iter().map(|g| g.apply(&x)).collect();
        for y in &orbit {
            remaining.remove(y);
        }
        let stab = stabilizer(f, &x);
        let on_mirror = mirrors.iter().any(|m| m.contains(&x));
        orbits.push(SpecialOrbit {
            representative: *orbit.first().expect("nonempty"),
            size: orbit.len(),
            stabilizer_order: stab.order(),
            reflections: stab.reflections.len(),
            on_mirror,
            generated_by_reflections: f.generated(&stab.reflections) == stab.elements,
        });
    }
    orbits.sort_by_key(|o| (o.on_mirror, o.stabilizer_order, o.representative));
    let special_per_mirror: Vec<usize> = mirrors
        .iter()
        .map(|m| special.iter().filter(|p| m.contains(p)).count())
        .collect();
    let n = Q::from_integer(f.order() as i64);
    // χ(A) = 0 and χ(elliptic curve) = 0, so only the special points contribute
    let on_mirrors: i64 = special_per_mirror.iter().map(|&s| s as i64).sum();
    let chi_v = Q::from_integer(on_mirrors - special.len() as i64);
    let chi_u = chi_v / n;
    // a generic mirror point is fixed by its reflection alone
    let chi_mirror_open = Q::from_integer(-on_mirrors * 2) / n;
    let chi_x = Q::from_integer(orbits.len() as i64) + chi_mirror_open + chi_u;
    Ok(Census {
        special_points: special.len(),
        orbits,
        special_per_mirror,
        components_per_mirror: mirrors.iter().map(|m| m.components.len()).collect(),
        chi_v,
        chi_u,
        chi_mirror_open,
        chi_x,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorQuotient {
    pub setwise_stabilizer: Vec<usize>,
    /// Reflections other than the mirror's own that map it to itself.
    pub other_reflections: Vec<usize>,
    pub special_points: Vec<TorusPoint>,
    pub fixed: Vec<TorusPoint>,
    pub swapped: Vec<(TorusPoint, TorusPoint)>,
}

/// How the setwise stabilizer of mirror `k` acts on its special points.
pub fn mirror_curve_quotient(
    f: &CrystalGroup,
    mirrors: &[Mirror],
    census_points: &BTreeSet<TorusPoint>,
    k: usize,
) -> MirrorQuotient {
    let m = &mirrors[k];
    let key = m.key();
    let setwise: Vec<usize> = (0..f.order())
        .filter(|&i| m.image(f.element(i)) == key)
        .collect();
    let other_reflections: Vec<usize> = setwise
        .iter()
        .copied()
        .filter(|&i| i != m.reflection && f.element(i).is_reflection())
        .collect();
    let special_points: Vec<TorusPoint> = census_points
        .iter()
        .filter(|p| m.contains(p))
        .copied()
        .collect();
    let (mut fixed, mut swapped) = (Vec::new(), Vec::new());
    if let Some(&r) = other_reflections.first() {
        for p in &special_points {
            let q = f.element(r).apply(p);
            if q == *p {
                fixed.push(*p);
            } else if p < &q {
                swapped.push((*p, q));
            }
        }
    }
    MirrorQuotient {
        setwise_stabilizer: setwise,
        other_reflections,
        special_points,
        fixed,
        swapped,
    }
}

/// All special points, as used by [`mirror_curve_quotient`].
pub fn special_points(f: &CrystalGroup) -> Result<BTreeSet<TorusPoint>, CrystalError> {
    let mut special = BTreeSet::new();
    for g in f.elements().iter().skip(1) {
        if let FixedLocus::Points(p) = fixed_locus(g)? {
            special.extend(p);
        }
    }
    Ok(special)
}
