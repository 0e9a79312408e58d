//! Congruence diagonalization of symmetric matrices over a field.



use super::field::{rat, Field};
use super::ratfunc::RatFunc;
use super::upoly::UPoly;

pub type Matrix<C> = Vec<Vec<C>>;

/// Result of `Pᵗ M P = diag`.
///
/// `p` is a product of transpositions and unipotent shears, so `det P = ±1`.
/// When `rank < n` the trailing diagonal entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalization<C> {
    pub diag: Vec<C>,
    pub p: Matrix<C>,
    pub rank: usize,
}

impl<C: Field> Diagonalization<C> {
    pub fn is_full_rank(&self) -> bool {
        self.rank == self.diag.len()
    }
}

pub fn identity<C: Field>(n: usize) -> Matrix<C> {
    (0..n).map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect()).collect()
}

pub fn transpose<C: Field>(m: &Matrix<C>) -> Matrix<C> {
    let n = m.len();
    let k = m.first().map_or(0, |r| r.len());
    (0..k).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mat_mul<C: Field>(a: &Matrix<C>, b: &Matrix<C>) -> Matrix<C> {
    let k = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..k)
                .map(|j| row.iter().zip(b).fold(C::zero(), |acc, (x, brow)| acc + x.clone() * brow[j].clone()))
                .collect()
        })
        .collect()
}

pub fn is_symmetric<C: Field>(m: &Matrix<C>) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Diagonalizes the symmetric matrix `m` by congruence.
///
/// Pivots on the lowest-index nonzero diagonal entry of the remaining block;
/// when the block has zero diagonal but a nonzero entry `(i, j)`, the basis
/// vector `e_i` is replaced by `e_i + e_j` first.
pub fn congruence_diagonalize<C: Field>(m: &Matrix<C>) -> Diagonalization<C> {
    assert!(is_symmetric(m), "matrix is not symmetric");
    let n = m.len();
    let mut a = m.clone();
    let mut p: Matrix<C> = identity(n);
    let mut rank = 0;
    for k in 0..n {
        let pivot = match (k..n).find(|&j| !a[j][j].is_zero()) {
            Some(j) => j,
            None => {
                let Some((i, j)) = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                add_basis_vector(&mut a, &mut p, i, j);
                i
            }
        };
        if pivot != k {
            a.swap(pivot, k);
            for row in a.iter_mut() {
                row.swap(pivot, k);
            }
            for row in p.iter_mut() {
                row.swap(pivot, k);
            }
        }
        let inv = a[k][k].inverse().expect("nonzero pivot");
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let c = a[r][k].clone() * inv.clone();
            // column r -= c column k, then row r -= c row k
            for i in 0..n {
                let v = a[i][r].clone() - c.clone() * a[i][k].clone();
                a[i][r] = v;
            }
            for j in 0..n {
                let v = a[r][j].clone() - c.clone() * a[k][j].clone();
                a[r][j] = v;
            }
            for row in p.iter_mut() {
                let v = row[r].clone() - c.clone() * row[k].clone();
                row[r] = v;
            }
        }
        rank += 1;
    }
    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    Diagonalization { diag, p, rank }
}

/// `e_i ← e_i + e_j`: column and row `j` are added to column and row `i`.
fn add_basis_vector<C: Field>(a: &mut Matrix<C>, p: &mut Matrix<C>, i: usize, j: usize) {
    let n = a.len();
    for r in 0..n {
        let v = a[r][i].clone() + a[r][j].clone();
        a[r][i] = v;
    }
    for c in 0..n {
        let v = a[i][c].clone() + a[j][c].clone();
        a[i][c] = v;
    }
    for row in p.iter_mut() {
        let v = row[i].clone() + row[j].clone();
        row[i] = v;
    }
}

/// Diagonalization of a symmetric matrix with entries in ℚ[t] over the
/// field ℚ(t).
pub fn diagonalize_symmetric(m: &Matrix<UPoly>) -> Diagonalization<RatFunc> {
    let mf: Matrix<RatFunc> = m.iter().map(|r| r.iter().map(|e| RatFunc::poly(e.clone())).collect()).collect();
    congruence_diagonalize(&mf)
}

/// Determinant by fraction-free Bareiss elimination over ℚ[t].
pub fn det_upoly(m: &Matrix<UPoly>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::constant(rat(1));
    }
    let mut a = m.clone();
    let mut sign = UPoly::constant(rat(1));
    let mut prev = UPoly::constant(rat(1));
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return UPoly::zero();
            };
            a.swap(k, s);
            sign = -&sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    &sign * &a[n - 1][n - 1]
}

/// Coefficients `c_0..c_n` of `det(x·I - M)` (with `c_n = 1`) by the
/// Faddeev–LeVerrier recursion, entries in ℚ[t].
pub fn char_poly_upoly(m: &Matrix<UPoly>) -> Vec<UPoly> {
    let n = m.len();
    let mut coeffs = vec![UPoly::zero(); n + 1];
    coeffs[n] = UPoly::constant(rat(1));
    let mut mk: Matrix<UPoly> = vec![vec![UPoly::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul_upoly(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul_upoly(m, &mk);
        let tr = (0..n).fold(UPoly::zero(), |acc, i| &acc + &am[i][i]);
        coeffs[n - k] = tr.scale(&(-rat(1) / rat(k as i64)));
    }
    coeffs
}

fn mat_mul_upoly(a: &Matrix<UPoly>, b: &Matrix<UPoly>) -> Matrix<UPoly> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(UPoly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j]))).collect())
        .collect()
}
