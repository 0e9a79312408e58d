//! H¹(C₂, M) for free ℤ-lattices with an involution, and the Galois
//! modules of the catalog families.

mod snf;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::eight_a1_incidence;

pub use snf::{identity, inverse_unimodular, mul, smith, IMatrix, Smith};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("relation row {row} has {len} entries, expected {expected}")]
    RelationShape { row: usize, len: usize, expected: usize },
    #[error("involution must be a {0}x{0} matrix")]
    InvolutionShape(usize),
    #[error("the quotient lattice has torsion (elementary divisors {0:?})")]
    Torsion(Vec<i64>),
    #[error("the involution does not preserve the relation span")]
    NotDescending,
    #[error("sigma is not an involution")]
    NotInvolution,
    #[error("unknown Galois module case '{0}'")]
    UnknownCase(String),
    #[error("the permutation does not preserve the plane/point incidence")]
    NotIncidencePreserving,
}

/// Generators `e_0..e_{n-1}`, relations as integer rows, and the involution
/// as the matrix whose row `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticePresentation {
    pub n_generators: usize,
    #[serde(default)]
    pub relations: IMatrix,
    pub involution: IMatrix,
}

/// A free lattice with an involution; row `j` of `sigma` is the image of
/// the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisLattice {
    pub rank: usize,
    pub sigma: IMatrix,
}

/// `⊕ ℤ/dᵢ` with each `dᵢ ≥ 2` dividing the next.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianGroup {
    pub divisors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn in_row_span_of_diag(w: &[i64], divisors: &[i64]) -> bool {
    w.iter().enumerate().all(|(j, &x)| match divisors.get(j) {
        Some(&d) => x % d == 0,
        None => x == 0,
    })
}

/// Quotient `ℤⁿ / rowspan(relations)` with the induced involution.
pub fn lattice_from_presentation(p: &LatticePresentation) -> Result<GaloisLattice, CohomologyError> {
    let n = p.n_generators;
    if p.involution.len() != n || p.involution.iter().any(|r| r.len() != n) {
        return Err(CohomologyError::InvolutionShape(n));
    }
    for (row, r) in p.relations.iter().enumerate() {
        if r.len() != n {
            return Err(CohomologyError::RelationShape { row, len: r.len(), expected: n });
        }
    }
    // U R V = D: in the coordinates w = x V the relation span is rowspan(D).
    let s = smith(&p.relations, n);
    if s.divisors.iter().any(|&d| d != 1) {
        return Err(CohomologyError::Torsion(s.divisors.iter().copied().filter(|&d| d != 1).collect()));
    }
    let r = s.divisors.len();
    let sv = mul(&p.involution, &s.v);
    if !p.relations.is_empty() && !mul(&p.relations, &sv).iter().all(|w| in_row_span_of_diag(w, &s.divisors)) {
        return Err(CohomologyError::NotDescending);
    }
    // free basis b_k = e_{r+k} V⁻¹, so σ(b_k) has w-coordinates row r+k of V⁻¹ S V
    let v_inv = inverse_unimodular(&s.v).expect("Smith transforms are unimodular");
    let induced = mul(&v_inv, &sv);
    let sigma: IMatrix = induced[r..].iter().map(|row| row[r..].to_vec()).collect();
    let lattice = GaloisLattice { rank: n - r, sigma };
    if !lattice.is_involution() {
        return Err(CohomologyError::NotInvolution);
    }
    Ok(lattice)
}

impl GaloisLattice {
    pub fn new(sigma: IMatrix) -> Result<Self, CohomologyError> {
        let rank = sigma.len();
        if sigma.iter().any(|r| r.len() != rank) {
            return Err(CohomologyError::InvolutionShape(rank));
        }
        let l = GaloisLattice { rank, sigma };
        if !l.is_involution() {
            return Err(CohomologyError::NotInvolution);
        }
        Ok(l)
    }

    pub fn is_involution(&self) -> bool {
        mul(&self.sigma, &self.sigma) == identity(self.rank)
    }

    /// `g σ g⁻¹` for a unimodular `g` (a change of basis).
    pub fn conjugate(&self, g: &IMatrix) -> Option<GaloisLattice> {
        let g_inv = inverse_unimodular(g)?;
        Some(GaloisLattice { rank: self.rank, sigma: mul(&mul(g, &self.sigma), &g_inv) })
    }

    fn shifted(&self, c: i64) -> IMatrix {
        let mut m = self.sigma.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += c;
        }
        m
    }
}

/// H¹ together with the bases it was computed from, in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Computation {
    pub group: FiniteAbelianGroup,
    /// Basis of ker(σ+1).
    pub kernel_basis: IMatrix,
    /// Basis of im(σ−1).
    pub image_basis: IMatrix,
}

/// `ker(σ+1) / im(σ−1)`.
pub fn h1_c2(l: &GaloisLattice) -> Result<FiniteAbelianGroup, CohomologyError> {
    h1_c2_detailed(l).map(|h| h.group)
}

pub fn h1_c2_detailed(l: &GaloisLattice) -> Result<H1Computation, CohomologyError> {
    if !l.is_involution() {
        return Err(CohomologyError::NotInvolution);
    }
    let n = l.rank;
    let minus = l.shifted(-1);
    // rowspan(σ−1) = rowspan(D V⁻¹)
    let ms = smith(&minus, n);
    let ms_v_inv = inverse_unimodular(&ms.v).expect("Smith transforms are unimodular");
    let image_basis: IMatrix = ms.divisors.iter().zip(&ms_v_inv).map(|(&d, row)| row.iter().map(|&x| d * x).collect()).collect();
    // x(σ+1) = 0 ⇔ (x U⁻¹) D = 0, so the kernel is spanned by the rows of U
    // past the rank.
    let plus = smith(&l.shifted(1), n);
    let kernel: IMatrix = plus.u[plus.divisors.len()..].to_vec();
    let k = kernel.len();
    if k == 0 {
        return Ok(H1Computation { group: FiniteAbelianGroup::default(), kernel_basis: kernel, image_basis });
    }
    // Coordinates of im(σ−1) in the kernel basis. The kernel is saturated,
    // so solve through the Smith form of the kernel basis (k × n, full row rank).
    let kb = smith(&kernel, n);
    let mut coords = Vec::with_capacity(n);
    for y in &minus {
        // c K = y  ⇒  (c U⁻¹) D = y V
        let yv = mul(&vec![y.clone()], &kb.v).remove(0);
        debug_assert!(yv[k..].iter().all(|&x| x == 0), "image of σ−1 must lie in ker(σ+1)");
        let z: Vec<i64> = (0..k).map(|i| yv[i] / kb.divisors[i]).collect();
        coords.push(mul(&vec![z], &kb.u).remove(0));
    }
    let q = smith(&coords, k);
    debug_assert_eq!(q.divisors.len(), k, "H¹ of an involution is 2-torsion");
    let divisors = q.divisors.iter().filter(|&&d| d != 1).map(|&d| d as u64).collect();
    Ok(H1Computation { group: FiniteAbelianGroup { divisors }, kernel_basis: kernel, image_basis })
}

/// Galois modules whose class groups are written out in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GaloisCase {
    TwoA5,
    SixA1Swap,
    SixA1Trivial,
    TwoD4TwoA1OnePlane,
    EightA1Case1,
    EightA1Case2,
    EightA1Case3,
}

impl GaloisCase {
    pub const ALL: [GaloisCase; 7] = [
        GaloisCase::TwoA5,
        GaloisCase::SixA1Swap,
        GaloisCase::SixA1Trivial,
        GaloisCase::TwoD4TwoA1OnePlane,
        GaloisCase::EightA1Case1,
        GaloisCase::EightA1Case2,
        GaloisCase::EightA1Case3,
    ];

    /// The group the catalog states for this case.
    pub fn stated_h1(self) -> FiniteAbelianGroup {
        use GaloisCase::*;
        match self {
            TwoA5 | SixA1Swap | TwoD4TwoA1OnePlane | EightA1Case3 => FiniteAbelianGroup { divisors: vec![2] },
            SixA1Trivial | EightA1Case1 | EightA1Case2 => FiniteAbelianGroup::default(),
        }
    }

    /// Case-specific description of the generators.
    pub fn generators(self) -> &'static str {
        use GaloisCase::*;
        match self {
            TwoA5 => "S, S', F (conjugate cubic scrolls and the hyperplane class); S + S' = 2F",
            SixA1Swap | SixA1Trivial => "H, S1, S2 (hyperplane class and the two scroll classes); 2H = S1 + S2",
            TwoD4TwoA1OnePlane | EightA1Case1 | EightA1Case2 | EightA1Case3 => "P1..P5 (planes), F (hyperplane class)",
        }
    }

    pub fn presentation(self) -> LatticePresentation {
        use GaloisCase::*;
        let swap3 = |a: usize, b: usize| -> IMatrix {
            let mut m = identity(3);
            m.swap(a, b);
            m
        };
        match self {
            TwoA5 => LatticePresentation { n_generators: 3, relations: vec![vec![1, 1, -2]], involution: swap3(0, 1) },
            SixA1Swap => LatticePresentation { n_generators: 3, relations: vec![vec![2, -1, -1]], involution: swap3(1, 2) },
            SixA1Trivial => LatticePresentation { n_generators: 3, relations: vec![vec![2, -1, -1]], involution: identity(3) },
            TwoD4TwoA1OnePlane => plane_presentation(
                vec![vec![1, 1, 0, 1, 0, -1], vec![0, 0, 1, 1, 1, -1]],
                [1, 0, 4, 3, 2],
            ),
            EightA1Case1 | EightA1Case2 | EightA1Case3 => {
                let perm = eight_a1_plane_permutation(&self.eight_a1_iota().expect("8A1 case"))
                    .expect("catalog involutions preserve the incidence");
                plane_presentation(eight_a1_relations(), perm)
            }
        }
    }

    /// The printed involution of the eight points (1-based images).
    pub fn eight_a1_iota(self) -> Option<[usize; 8]> {
        Some(match self {
            GaloisCase::EightA1Case1 => [2, 1, 4, 3, 6, 5, 8, 7],
            GaloisCase::EightA1Case2 => [2, 1, 4, 3, 7, 8, 5, 6],
            GaloisCase::EightA1Case3 => [2, 1, 4, 3, 8, 7, 6, 5],
            _ => return None,
        })
    }
}

impl FromStr for GaloisCase {
    type Err = CohomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaloisCase::ALL
            .into_iter()
            .find(|c| format!("{c:?}").eq_ignore_ascii_case(s))
            .ok_or_else(|| CohomologyError::UnknownCase(s.to_string()))
    }
}

impl fmt::Display for GaloisCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Two hyperplane sections, each the union of three 8A1 planes.
fn eight_a1_relations() -> IMatrix {
    vec![vec![1, 1, 1, 0, 0, -1], vec![0, 0, 1, 1, 1, -1]]
}

/// Five planes and F, the planes permuted by `perm` (0-based), F fixed.
fn plane_presentation(relations: IMatrix, perm: [usize; 5]) -> LatticePresentation {
    let mut involution = vec![vec![0; 6]; 6];
    for (k, &j) in perm.iter().enumerate() {
        involution[k][j] = 1;
    }
    involution[5][5] = 1;
    LatticePresentation { n_generators: 6, relations, involution }
}

/// Permutation of the five 8A1 planes induced by a permutation of the eight
/// points (1-based images), as 0-based plane indices.
pub fn eight_a1_plane_permutation(iota: &[usize; 8]) -> Result<[usize; 5], CohomologyError> {
    let planes = eight_a1_incidence();
    let sorted = |mut s: [usize; 4]| {
        s.sort_unstable();
        s
    };
    let mut perm = [0; 5];
    for (k, pts) in planes.iter().enumerate() {
        let image = sorted(pts.map(|p| iota[p - 1]));
        perm[k] = planes.iter().position(|q| sorted(*q) == image).ok_or(CohomologyError::NotIncidencePreserving)?;
    }
    Ok(perm)
}

/// Class-group lattice of an 8A1 cubic whose conjugation acts on the eight
/// points by `iota` (1-based images).
pub fn eight_a1_lattice(iota: &[usize; 8]) -> Result<GaloisLattice, CohomologyError> {
    lattice_from_presentation(&plane_presentation(eight_a1_relations(), eight_a1_plane_permutation(iota)?))
}

/// The catalog lattice for a case.
pub fn galois_module_catalog(case: GaloisCase) -> GaloisLattice {
    lattice_from_presentation(&case.presentation()).expect("catalog presentations are torsion-free")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup { divisors: vec![2] }
    }

    #[test]
    fn two_a5_quotient() {
        let l = galois_module_catalog(GaloisCase::TwoA5);
        assert_eq!(l.rank, 2);
        assert_eq!(h1_c2(&l).unwrap(), z2());
    }

    #[test]
    fn bases_of_small_modules() {
        let neg = h1_c2_detailed(&GaloisLattice::new(vec![vec![-1]]).unwrap()).unwrap();
        assert_eq!((neg.kernel_basis, neg.image_basis, neg.group), (vec![vec![1]], vec![vec![2]], z2()));
        let swap = h1_c2_detailed(&GaloisLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap()).unwrap();
        assert!(swap.group.is_trivial());
        assert_eq!(swap.kernel_basis.len(), 1);
        assert_eq!(swap.kernel_basis[0][0], -swap.kernel_basis[0][1]);
        assert_eq!(swap.image_basis.len(), 1);
        assert_eq!(swap.image_basis[0][0].abs(), 1);
        for c in GaloisCase::ALL {
            let l = galois_module_catalog(c);
            let h = h1_c2_detailed(&l).unwrap();
            let plus = l.shifted(1);
            for row in h.kernel_basis.iter().chain(&h.image_basis) {
                assert!(mul(&vec![row.clone()], &plus)[0].iter().all(|&x| x == 0), "{c}");
            }
        }
    }

    #[test]
    fn catalog_matches_stated_groups() {
        for c in GaloisCase::ALL {
            let l = galois_module_catalog(c);
            assert_eq!(h1_c2(&l).unwrap(), c.stated_h1(), "{c}");
        }
    }

    #[test]
    fn catalog_ranks() {
        assert_eq!(galois_module_catalog(GaloisCase::SixA1Swap).rank, 2);
        assert_eq!(galois_module_catalog(GaloisCase::TwoD4TwoA1OnePlane).rank, 4);
        assert_eq!(galois_module_catalog(GaloisCase::EightA1Case3).rank, 4);
    }

    #[test]
    fn trivial_cases() {
        let id = lattice_from_presentation(&LatticePresentation { n_generators: 3, relations: vec![], involution: identity(3) }).unwrap();
        assert_eq!(id, GaloisLattice { rank: 3, sigma: identity(3) });
        assert!(h1_c2(&id).unwrap().is_trivial());
        let neg = GaloisLattice::new(vec![vec![-1]]).unwrap();
        assert_eq!(h1_c2(&neg).unwrap(), z2());
        // a regular representation is induced, so cohomologically trivial
        let swap = GaloisLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(h1_c2(&swap).unwrap().is_trivial());
    }

    #[test]
    fn presentation_errors() {
        let torsion = LatticePresentation { n_generators: 2, relations: vec![vec![2, 0]], involution: identity(2) };
        assert_eq!(lattice_from_presentation(&torsion), Err(CohomologyError::Torsion(vec![2])));
        let not_desc = LatticePresentation { n_generators: 2, relations: vec![vec![1, 0]], involution: vec![vec![0, 1], vec![1, 0]] };
        assert_eq!(lattice_from_presentation(&not_desc), Err(CohomologyError::NotDescending));
        assert_eq!(h1_c2(&GaloisLattice { rank: 1, sigma: vec![vec![2]] }), Err(CohomologyError::NotInvolution));
        assert!("EightA1Case4".parse::<GaloisCase>().is_err());
    }

    #[test]
    fn eight_a1_fixed_planes() {
        let fixed = |c: GaloisCase| {
            let p = eight_a1_plane_permutation(&c.eight_a1_iota().unwrap()).unwrap();
            (0..5).filter(|&k| p[k] == k).collect::<Vec<_>>()
        };
        assert_eq!(fixed(GaloisCase::EightA1Case1), vec![2, 3, 4]);
        assert_eq!(fixed(GaloisCase::EightA1Case3), vec![2]);
        assert!(eight_a1_plane_permutation(&[1, 3, 2, 4, 5, 6, 7, 8]).is_err());
    }

    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IMatrix {
        let mut g = identity(n);
        for _ in 0..3 * n {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i != j {
                let q = rng.gen_range(-2..=2);
                for c in 0..n {
                    g[i][c] += q * g[j][c];
                }
            }
        }
        g
    }

    #[test]
    fn invariant_under_basis_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in GaloisCase::ALL {
            let l = galois_module_catalog(c);
            let h = h1_c2(&l).unwrap();
            for _ in 0..50 {
                let g = random_unimodular(&mut rng, l.rank);
                let m = l.conjugate(&g).unwrap();
                assert!(m.is_involution());
                assert_eq!(h1_c2(&m).unwrap(), h, "{c}");
            }
        }
    }

    /// Signed permutation involutions: blocks of ±1 and swaps.
    fn involution_strategy() -> impl Strategy<Value = IMatrix> {
        prop::collection::vec(0u8..4, 1..7).prop_map(|blocks| {
            let n: usize = blocks.iter().map(|&b| if b >= 2 { 2 } else { 1 }).sum();
            let mut m = vec![vec![0; n]; n];
            let mut i = 0;
            for b in blocks {
                match b {
                    0 => m[i][i] = 1,
                    1 => m[i][i] = -1,
                    _ => {
                        let s = if b == 2 { 1 } else { -1 };
                        m[i][i + 1] = s;
                        m[i + 1][i] = s;
                        i += 1;
                    }
                }
                i += 1;
            }
            m
        })
    }

    proptest! {
        #[test]
        fn order_divides_two_to_rank(sigma in involution_strategy(), seed in 0u64..1000) {
            let l = GaloisLattice::new(sigma).unwrap();
            let h = h1_c2(&l).unwrap();
            prop_assert!(h.divisors.iter().all(|&d| d == 2));
            prop_assert!(h.order() <= 1u64 << l.rank);
            let minus_ones = (0..l.rank).filter(|&i| l.sigma[i][i] == -1).count();
            prop_assert_eq!(h.divisors.len(), minus_ones);
            let g = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), l.rank);
            prop_assert_eq!(h1_c2(&l.conjugate(&g).unwrap()).unwrap(), h);
        }
    }
}
