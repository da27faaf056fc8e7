use indexmap::IndexMap;

use super::{HermError, Scalar, SquareMatrix};

/// Whether group elements are compared as matrices or modulo scalars.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClosureMode {
    Linear,
    Projective,
}

impl ClosureMode {
    fn key<T: Scalar>(self, m: &SquareMatrix<T>) -> SquareMatrix<T> {
        match self {
            ClosureMode::Linear => m.clone(),
            ClosureMode::Projective => m.projective_key(),
        }
    }
}

pub const DEFAULT_CAP: usize = 10_000;

/// A finite matrix group enumerated breadth first from its generators.
///
/// Element `0` is the identity, and elements appear in order of
/// (word length, generator index), so the stored words are shortlex-minimal.
/// `right[x][j]` is the index of `x · g_j`, the right Cayley graph.
#[derive(Clone, Debug)]
pub struct GroupClosure<T> {
    mode: ClosureMode,
    generators: Vec<SquareMatrix<T>>,
    elements: IndexMap<SquareMatrix<T>, SquareMatrix<T>>,
    parent: Vec<Option<(usize, usize)>>,
    right: Vec<Vec<usize>>,
}

pub fn group_closure<T: Scalar>(
    generators: &[SquareMatrix<T>],
    cap: usize,
    mode: ClosureMode,
) -> Result<GroupClosure<T>, HermError> {
    let first = generators.first().ok_or(HermError::NoGenerators)?;
    let id = SquareMatrix::identity(first.dim(), first.get(0, 0));
    let mut elements = IndexMap::new();
    elements.insert(mode.key(&id), id);
    let mut parent = vec![None];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next].clone();
        let mut row = Vec::with_capacity(generators.len());
        for (j, g) in generators.iter().enumerate() {
            let y = x.mul(g);
            let key = mode.key(&y);
            let idx = match elements.get_index_of(&key) {
                Some(i) => i,
                None => {
                    if elements.len() >= cap {
                        return Err(HermError::CapExceeded { cap });
                    }
                    elements.insert(key, y);
                    parent.push(Some((next, j)));
                    elements.len() - 1
                }
            };
            row.push(idx);
        }
        right.push(row);
        next += 1;
    }
    Ok(GroupClosure {
        mode,
        generators: generators.to_vec(),
        elements,
        parent,
        right,
    })
}

impl<T: Scalar> GroupClosure<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mode(&self) -> ClosureMode {
        self.mode
    }

    pub fn generators(&self) -> &[SquareMatrix<T>] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &SquareMatrix<T> {
        &self.elements[i]
    }

    pub fn elements(&self) -> impl Iterator<Item = &SquareMatrix<T>> {
        self.elements.values()
    }

    pub fn keys(&self) -> impl Iterator<Item = &SquareMatrix<T>> {
        self.elements.keys()
    }

    pub fn index_of(&self, m: &SquareMatrix<T>) -> Option<usize> {
        self.elements.get_index_of(&self.mode.key(m))
    }

    pub fn contains(&self, m: &SquareMatrix<T>) -> bool {
        self.index_of(m).is_some()
    }

    /// Index of `x · g_j`.
    pub fn right_mul_generator(&self, x: usize, j: usize) -> usize {
        self.right[x][j]
    }

    /// Index of `x · y`.
    pub fn mul_index(&self, x: usize, y: usize) -> usize {
        self.index_of(&self.element(x).mul(self.element(y)))
            .expect("closure is closed under multiplication")
    }

    /// Shortlex-minimal word in the generator indices.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, j)) = self.parent[i] {
            w.push(j);
            i = p;
        }
        w.reverse();
        w
    }

    /// Order of element `i` in the group.
    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mul_index(cur, i);
            k += 1;
        }
        k
    }

    /// Full multiplication table, `table[x][y] = x·y`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|x| (0..self.order()).map(|y| self.mul_index(x, y)).collect())
            .collect()
    }
}

/// Product of a word of `(generator index, exponent)` pairs.
pub fn eval_word<T: Scalar>(
    word: &[(usize, i64)],
    generators: &[SquareMatrix<T>],
) -> Result<SquareMatrix<T>, HermError> {
    let first = generators.first().ok_or(HermError::NoGenerators)?;
    let mut acc = SquareMatrix::identity(first.dim(), first.get(0, 0));
    for &(g, e) in word {
        let m = generators.get(g).ok_or(HermError::BadGenerator(g))?;
        acc = acc.mul(&m.pow(e)?);
    }
    Ok(acc)
}

/// `true` if the word evaluates to the identity, or to a scalar in projective mode.
pub fn verify_relation<T: Scalar>(
    word: &[(usize, i64)],
    generators: &[SquareMatrix<T>],
    mode: ClosureMode,
) -> Result<bool, HermError> {
    let m = eval_word(word, generators)?;
    Ok(match mode {
        ClosureMode::Linear => m.is_identity(),
        ClosureMode::Projective => m.is_scalar(),
    })
}

/// `a b a b …` with `n` factors.
pub fn alternating_product<T: Scalar>(
    a: &SquareMatrix<T>,
    b: &SquareMatrix<T>,
    n: usize,
) -> SquareMatrix<T> {
    let mut acc = SquareMatrix::identity(a.dim(), a.get(0, 0));
    for k in 0..n {
        acc = acc.mul(if k % 2 == 0 { a } else { b });
    }
    acc
}

/// Smallest `k` in `2..=max_k` with `alt(a, b, k) = alt(b, a, k)`.
pub fn braid_length<T: Scalar>(
    a: &SquareMatrix<T>,
    b: &SquareMatrix<T>,
    max_k: usize,
) -> Option<usize> {
    braid_length_in(a, b, max_k, ClosureMode::Linear)
}

/// [`braid_length`] with the comparison taken in the chosen mode.
pub fn braid_length_in<T: Scalar>(
    a: &SquareMatrix<T>,
    b: &SquareMatrix<T>,
    max_k: usize,
    mode: ClosureMode,
) -> Option<usize> {
    let (mut ab, mut ba) = (a.clone(), b.clone());
    for k in 2..=max_k {
        // extend both alternating words by one factor on the right
        let (na, nb) = if k % 2 == 0 { (b, a) } else { (a, b) };
        ab = ab.mul(na);
        ba = ba.mul(nb);
        if mode.key(&ab) == mode.key(&ba) {
            return Some(k);
        }
    }
    None
}

/// Searches for an isomorphism `G1 → G2` given by images of the generators
/// of `G1`, returned as element indices of `G2`.
///
/// Candidate images are restricted to elements of matching order. A choice is
/// accepted when the induced map on the Cayley graph of `G1` is well defined,
/// multiplicative along every edge, and injective.
pub fn find_isomorphism<A: Scalar, B: Scalar>(
    g1: &GroupClosure<A>,
    g2: &GroupClosure<B>,
) -> Option<Vec<usize>> {
    let n = g1.order();
    if n != g2.order() || n > 500 {
        return None;
    }
    let table = g2.multiplication_table();
    let order2 = |x: usize| {
        let mut k = 1;
        let mut cur = x;
        while cur != 0 {
            cur = table[cur][x];
            k += 1;
        }
        k
    };
    let orders2: Vec<usize> = (0..n).map(order2).collect();
    let gen_idx: Vec<usize> = g1
        .generators()
        .iter()
        .map(|g| g1.index_of(g).unwrap())
        .collect();
    let candidates: Vec<Vec<usize>> = gen_idx
        .iter()
        .map(|&g| {
            let o = g1.element_order(g);
            (0..n).filter(|&y| orders2[y] == o).collect()
        })
        .collect();
    let mut choice = vec![0usize; gen_idx.len()];
    search(g1, &table, &candidates, 0, &mut choice)
}

fn search<A: Scalar>(
    g1: &GroupClosure<A>,
    table: &[Vec<usize>],
    candidates: &[Vec<usize>],
    depth: usize,
    choice: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if depth == candidates.len() {
        return extends_to_isomorphism(g1, table, choice).then(|| choice.clone());
    }
    for &c in &candidates[depth] {
        choice[depth] = c;
        if let Some(found) = search(g1, table, candidates, depth + 1, choice) {
            return Some(found);
        }
    }
    None
}

fn extends_to_isomorphism<A: Scalar>(
    g1: &GroupClosure<A>,
    table: &[Vec<usize>],
    images: &[usize],
) -> bool {
    let n = g1.order();
    let mut phi = vec![usize::MAX; n];
    phi[0] = 0;
    for x in 0..n {
        debug_assert_ne!(
            phi[x],
            usize::MAX,
            "breadth-first order reaches parents first"
        );
        for (j, &img) in images.iter().enumerate() {
            let y = g1.right_mul_generator(x, j);
            let target = table[phi[x]][img];
            if phi[y] == usize::MAX {
                phi[y] = target;
            } else if phi[y] != target {
                return false;
            }
        }
    }
    let mut seen = vec![false; n];
    phi.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}
