//! Integer and rational linear algebra for lattices in `Q^n`: Smith and
//! Hermite normal forms, sublattice indices and coset representatives.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::qi2::Q;

pub type IMat = Vec<Vec<i128>>;
pub type QMat = Vec<Vec<Q>>;

/// `U · M · V = diag(d)` with `U`, `V` unimodular and `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IMat,
    pub v: IMat,
    pub d: Vec<i128>,
}

fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn swap_cols(m: &mut IMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] += k · row[src]
fn add_row(m: &mut IMat, dst: usize, src: usize, k: i128) {
    if k == 0 {
        return;
    }
    for j in 0..m[0].len() {
        let add = k * m[src][j];
        m[dst][j] += add;
    }
}

fn add_col(m: &mut IMat, dst: usize, src: usize, k: i128) {
    if k == 0 {
        return;
    }
    for row in m.iter_mut() {
        let add = k * row[src];
        row[dst] += add;
    }
}

pub fn smith_normal_form(m: &IMat) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut d = Vec::new();
    for t in 0..rows.min(cols) {
        'pivot: loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let best = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let k = Integer::div_floor(&a[i][t], &p);
                add_row(&mut a, i, t, -k);
                add_row(&mut u, i, t, -k);
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let k = Integer::div_floor(&a[t][j], &p);
                add_col(&mut a, j, t, -k);
                add_col(&mut v, j, t, -k);
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    add_row(&mut a, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break 'pivot,
            }
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        d.push(a[t][t]);
    }
    Smith { u, v, d }
}

/// Index of the subgroup of `Z⁴` spanned by `vectors`; `None` if the rank is
/// below 4 and the index is infinite.
pub fn sublattice_index(vectors: &[[i64; 4]]) -> Option<u128> {
    if vectors.is_empty() {
        return None;
    }
    let m: IMat = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let s = smith_normal_form(&m);
    if s.d.len() < 4 || s.d.contains(&0) {
        return None;
    }
    Some(s.d.iter().map(|&x| x as u128).product())
}

/// Canonical basis (row Hermite normal form) of the lattice generated by
/// rational vectors, as rows. Zero rows are dropped, so the length is the rank.
pub fn lattice_basis(generators: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let Some(first) = generators.first() else {
        return Vec::new();
    };
    let n = first.len();
    let den = generators
        .iter()
        .flatten()
        .fold(1i64, |acc, x| acc.lcm(x.denom()));
    let mut a: IMat = generators
        .iter()
        .map(|g| g.iter().map(|x| (*x * den).to_integer() as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        // Euclid down the column until a single nonzero entry remains at `rank`
        loop {
            let best = (rank..a.len())
                .filter(|&i| a[i][col] != 0)
                .min_by_key(|&i| a[i][col].abs());
            let Some(pi) = best else { break };
            a.swap(rank, pi);
            let p = a[rank][col];
            let mut done = true;
            for i in rank + 1..a.len() {
                let k = Integer::div_floor(&a[i][col], &p);
                add_row(&mut a, i, rank, -k);
                done &= a[i][col] == 0;
            }
            if done {
                break;
            }
        }
        if rank < a.len() && a[rank][col] != 0 {
            if a[rank][col] < 0 {
                a[rank].iter_mut().for_each(|x| *x = -*x);
            }
            let p = a[rank][col];
            for i in 0..rank {
                let k = Integer::div_floor(&a[i][col], &p);
                add_row(&mut a, i, rank, -k);
            }
            rank += 1;
        }
    }
    a.truncate(rank);
    a.into_iter()
        .map(|r| r.into_iter().map(|x| Q::new(x as i64, den)).collect())
        .collect()
}

pub fn qmat_inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        a[c].iter_mut().for_each(|x| *x *= inv);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let k = a[i][c];
                let pivot_row = a[c].clone();
                a[i].iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(x, y)| *x -= k * *y);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn qmat_vec(m: &QMat, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| *a * *b).sum())
        .collect()
}

pub fn to_integer_matrix(m: &QMat) -> Option<IMat> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.is_integer().then(|| x.to_integer() as i128))
                .collect()
        })
        .collect()
}

fn imat_to_q(m: &IMat) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i64)).collect())
        .collect()
}

/// Representatives of `fine / coarse` for full-rank lattices given by bases
/// (as rows), with `coarse ⊆ fine`. Each representative is returned as a
/// vector in ambient coordinates.
pub fn coset_representatives(fine: &[Vec<Q>], coarse: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = fine.len();
    assert!(
        coarse.len() == n,
        "coset_representatives needs full-rank lattices"
    );
    // columns of `fine` / `coarse` as matrices
    let f: QMat = (0..n)
        .map(|i| fine.iter().map(|b| b[i]).collect())
        .collect();
    let c: QMat = (0..n)
        .map(|i| coarse.iter().map(|b| b[i]).collect())
        .collect();
    let finv = qmat_inverse(&f).expect("fine basis must be independent");
    let rel: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| finv[i][k] * c[k][j]).sum())
                .collect()
        })
        .collect();
    let rel = to_integer_matrix(&rel).expect("coarse lattice must lie in the fine one");
    let s = smith_normal_form(&rel);
    assert!(
        s.d.iter().all(|&x| x > 0),
        "coarse lattice must have full rank"
    );
    let uinv = qmat_inverse(&imat_to_q(&s.u)).expect("unimodular");
    let mut reps = vec![vec![0i64; n]];
    for (i, &di) in s.d.iter().enumerate() {
        reps = reps
            .into_iter()
            .flat_map(|r| {
                (0..di as i64).map(move |k| {
                    let mut r = r.clone();
                    r[i] = k;
                    r
                })
            })
            .collect();
    }
    reps.into_iter()
        .map(|k| {
            let kq: Vec<Q> = k.iter().map(|&x| Q::from_integer(x)).collect();
            qmat_vec(&f, &qmat_vec(&uinv, &kq))
        })
        .collect()
}

/// Coordinates of `v` in the basis `basis` (rows), reduced into `[0, 1)`,
/// mapped back to ambient coordinates: the canonical representative of
/// `v` modulo the lattice.
pub fn reduce_mod_lattice(v: &[Q], basis: &[Vec<Q>]) -> Vec<Q> {
    let n = basis.len();
    let b: QMat = (0..n)
        .map(|i| basis.iter().map(|r| r[i]).collect())
        .collect();
    let coords = qmat_vec(&qmat_inverse(&b).expect("basis must be independent"), v);
    let red: Vec<Q> = coords.iter().map(|x| x - x.floor()).collect();
    qmat_vec(&b, &red)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mul(a: &IMat, b: &IMat) -> IMat {
        (0..a.len())
            .map(|i| {
                (0..b[0].len())
                    .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn index_examples() {
        let std = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        assert_eq!(sublattice_index(&std), Some(1));
        let dbl: Vec<[i64; 4]> = std.iter().map(|r| r.map(|x| 2 * x)).collect();
        assert_eq!(sublattice_index(&dbl), Some(16));
        assert_eq!(sublattice_index(&std[..3]), None);
        assert_eq!(
            sublattice_index(&[[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1]]),
            Some(6)
        );
    }

    #[test]
    fn basis_is_canonical() {
        let g1 = vec![vec![q(2), q(0)], vec![q(1), q(1)], vec![q(0), q(2)]];
        let g2 = vec![vec![q(1), q(1)], vec![q(1), q(-1)], vec![q(3), q(1)]];
        assert_eq!(lattice_basis(&g1), lattice_basis(&g2));
        assert_eq!(lattice_basis(&g1).len(), 2);
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn cosets_of_index_four() {
        let fine = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        let coarse = vec![vec![q(2), q(0)], vec![q(0), q(2)]];
        let mut reps = coset_representatives(&fine, &coarse);
        reps.iter_mut()
            .for_each(|r| *r = reduce_mod_lattice(r, &coarse));
        reps.sort();
        reps.dedup();
        assert_eq!(reps.len(), 4);
    }

    proptest! {
        #[test]
        fn smith_factorization(entries in proptest::collection::vec(-9i128..10, 12)) {
            let m: IMat = entries.chunks(4).map(|c| c.to_vec()).collect();
            let s = smith_normal_form(&m);
            let d = mul(&mul(&s.u, &m), &s.v);
            for i in 0..3 {
                for j in 0..4 {
                    let want = if i == j { s.d[i] } else { 0 };
                    prop_assert_eq!(d[i][j], want);
                }
            }
            for w in s.d.windows(2) {
                prop_assert!(w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0);
            }
        }
    }
}
