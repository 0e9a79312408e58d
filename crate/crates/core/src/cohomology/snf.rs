//! Smith normal form over ℤ.

pub type IMatrix = Vec<Vec<i64>>;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, each
/// diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IMatrix,
    pub d: IMatrix,
    pub v: IMatrix,
    /// Nonzero diagonal entries of `d`, all positive.
    pub divisors: Vec<i64>,
}

pub fn identity(n: usize) -> IMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let k = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..k).map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect()).collect()
}

fn row_op(m: &mut IMatrix, dst: usize, src: usize, q: i64) {
    for j in 0..m[dst].len() {
        m[dst][j] -= q * m[src][j];
    }
}

fn col_op(m: &mut IMatrix, dst: usize, src: usize, q: i64) {
    for row in m.iter_mut() {
        row[dst] -= q * row[src];
    }
}

fn swap_cols(m: &mut IMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Row and column reduction, pivoting on the entry of least absolute value.
pub fn smith(a: &IMatrix, ncols: usize) -> Smith {
    let m = a.len();
    let n = ncols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let pivot = (t..m).flat_map(|i| (t..n).map(move |j| (i, j))).filter(|&(i, j)| d[i][j] != 0).min_by_key(|&(i, j)| d[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        let mut dirty = false;
        for i in t + 1..m {
            let q = d[i][t].div_euclid(d[t][t]);
            row_op(&mut d, i, t, q);
            row_op(&mut u, i, t, q);
            dirty |= d[i][t] != 0;
        }
        for j in t + 1..n {
            let q = d[t][j].div_euclid(d[t][t]);
            col_op(&mut d, j, t, q);
            col_op(&mut v, j, t, q);
            dirty |= d[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some((i, _)) = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % d[t][t] != 0) {
            row_op(&mut d, t, i, -1);
            row_op(&mut u, t, i, -1);
            continue;
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let divisors = (0..t).map(|i| d[i][i]).collect();
    Smith { u, d, v, divisors }
}

/// Integer inverse of a unimodular matrix.
pub fn inverse_unimodular(a: &IMatrix) -> Option<IMatrix> {
    let n = a.len();
    let s = smith(a, n);
    if s.divisors.len() != n || s.divisors.iter().any(|&x| x != 1) {
        return None;
    }
    // U A V = I  ⇒  A⁻¹ = V U
    Some(mul(&s.v, &s.u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3);
        assert_eq!(s.divisors, vec![2, 6, 12]);
        assert_eq!(mul(&mul(&s.u, &a), &s.v), s.d);
    }

    proptest! {
        #[test]
        fn decomposition_identity(v in prop::collection::vec(-6i64..7, 12)) {
            let a: IMatrix = v.chunks(4).map(|c| c.to_vec()).collect();
            let s = smith(&a, 4);
            prop_assert_eq!(mul(&mul(&s.u, &a), &s.v), s.d.clone());
            for w in s.divisors.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert!(inverse_unimodular(&s.u).is_some());
            prop_assert!(inverse_unimodular(&s.v).is_some());
        }
    }
}
