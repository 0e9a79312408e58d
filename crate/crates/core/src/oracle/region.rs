use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::exact::{MultiPoly, Rat};

use super::{FloatPoly, GridReport, OracleError, MARGIN_FLOOR};

const MIN_RESOLUTION: usize = 16;

/// Lattice points of the surface of the cube `[-n, n]³`, each with one
/// canonical slot: the first face (x+, x−, y+, y−, z+, z−) containing it.
struct CubeSurface {
    n: i32,
}

impl CubeSurface {
    fn side(&self) -> usize {
        2 * self.n as usize + 1
    }

    fn len(&self) -> usize {
        6 * self.side() * self.side()
    }

    fn face_of(&self, p: [i32; 3]) -> Option<usize> {
        (0..3).flat_map(|k| [(k, 1), (k, -1)]).position(|(k, s)| p[k] == s * self.n)
    }

    fn index(&self, p: [i32; 3]) -> Option<usize> {
        if p.iter().any(|c| c.abs() > self.n) {
            return None;
        }
        let face = self.face_of(p)?;
        let axis = face / 2;
        let (a, b) = match axis {
            0 => (p[1], p[2]),
            1 => (p[0], p[2]),
            _ => (p[0], p[1]),
        };
        let side = self.side();
        Some(face * side * side + (a + self.n) as usize * side + (b + self.n) as usize)
    }

    fn point(&self, idx: usize) -> [i32; 3] {
        let side = self.side();
        let face = idx / (side * side);
        let rem = idx % (side * side);
        let a = (rem / side) as i32 - self.n;
        let b = (rem % side) as i32 - self.n;
        let c = if face % 2 == 0 { self.n } else { -self.n };
        match face / 2 {
            0 => [c, a, b],
            1 => [a, c, b],
            _ => [a, b, c],
        }
    }

    /// Whether `idx` is the canonical slot of its point.
    fn is_canonical(&self, idx: usize) -> bool {
        self.index(self.point(idx)) == Some(idx)
    }

    fn neighbors(&self, p: [i32; 3]) -> impl Iterator<Item = usize> + '_ {
        (0..3).flat_map(move |k| {
            [-1, 1].into_iter().filter_map(move |d| {
                let mut q = p;
                q[k] += d;
                self.index(q)
            })
        })
    }
}

/// Components of `{G ≥ 0}` at one grid resolution: count and margin.
fn count_at(g: &FloatPoly, resolution: usize) -> (usize, f64) {
    let cube = CubeSurface { n: (resolution / 2) as i32 };
    let values: Vec<Option<f64>> = (0..cube.len())
        .into_par_iter()
        .map(|i| {
            cube.is_canonical(i).then(|| {
                let p = cube.point(i).map(f64::from);
                let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                g.eval(&[p[0] / r, p[1] / r, p[2] / r])
            })
        })
        .collect();
    let scale = values.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let mut uf = UnionFind::<usize>::new(cube.len());
    let mut margin = f64::INFINITY;
    for (i, v) in values.iter().enumerate() {
        let Some(v) = *v else { continue };
        let p = cube.point(i);
        for j in cube.neighbors(p) {
            let w = values[j].expect("neighbors are canonical");
            if (v >= 0.0) == (w >= 0.0) {
                if v >= 0.0 {
                    uf.union(i, j);
                }
            } else {
                margin = margin.min(v.abs().max(w.abs()) / scale);
            }
        }
        if v >= 0.0 {
            // G is even, so the antipode carries the same value
            let q = p.map(|c| -c);
            uf.union(i, cube.index(q).expect("antipode is on the surface"));
        }
    }
    let mut roots: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_some_and(|v| v >= 0.0))
        .map(|(i, _)| uf.find(i))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    (roots.len(), margin)
}

fn region_poly(g: &MultiPoly<Rat>) -> Result<FloatPoly, OracleError> {
    let even = g.total_degree().is_some_and(|d| d % 2 == 0 && g.is_homogeneous(d));
    if g.nvars() != 3 || !even {
        return Err(OracleError::BadRegion);
    }
    Ok(FloatPoly::new(g))
}

/// Components of `{G ≥ 0} ⊂ P²(ℝ)` on a cube-sphere grid with `resolution`
/// cells per cube edge, antipodal points identified. Stability compares
/// with half the resolution.
pub fn region_components_p2(g: &MultiPoly<Rat>, resolution: usize) -> Result<GridReport, OracleError> {
    if resolution < MIN_RESOLUTION {
        return Err(OracleError::Resolution { min: MIN_RESOLUTION, got: resolution });
    }
    let f = region_poly(g)?;
    let (count, min_margin) = count_at(&f, resolution);
    let (coarse, _) = count_at(&f, resolution / 2);
    Ok(GridReport { resolution, component_count: count, min_margin, stable: coarse == count && min_margin >= MARGIN_FLOOR })
}

/// Single-resolution count, for refinement studies.
pub fn region_components_p2_at(g: &MultiPoly<Rat>, resolution: usize) -> Result<(usize, f64), OracleError> {
    if resolution < MIN_RESOLUTION {
        return Err(OracleError::Resolution { min: MIN_RESOLUTION, got: resolution });
    }
    Ok(count_at(&region_poly(g)?, resolution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_poly, vars};

    fn g(s: &str) -> MultiPoly<Rat> {
        parse_poly(s, &vars(&["x3", "x4", "x5"])).unwrap().real_part()
    }

    #[test]
    fn everywhere_nonnegative() {
        let r = region_components_p2(&g("x3^2 + x4^2 + x5^2"), 32).unwrap();
        assert_eq!(r.component_count, 1);
        assert!(r.stable);
    }

    #[test]
    fn empty_region() {
        let r = region_components_p2(&g("-x3^4 - x4^4 - x5^4"), 32).unwrap();
        assert_eq!(r.component_count, 0);
    }

    #[test]
    fn two_discs() {
        // unit discs around [0:0:1] and [3:0:1]
        let p = g("-(x3^2 + x4^2 - x5^2)((x3 - 3x5)^2 + x4^2 - x5^2)");
        let r = region_components_p2(&p, 64).unwrap();
        assert_eq!(r.component_count, 2);
        assert!(r.stable);
    }

    #[test]
    fn disc_is_one_component_after_identification() {
        // the disc around [0:0:1] meets the sphere in two antipodal caps
        let r = region_components_p2(&g("x5^2 - 4x3^2 - 4x4^2"), 32).unwrap();
        assert_eq!(r.component_count, 1);
    }

    #[test]
    fn resolution_floor() {
        assert!(region_components_p2(&g("x3^2"), 8).is_err());
        assert_eq!(region_components_p2(&g("x3^3"), 32), Err(OracleError::BadRegion));
    }

    #[test]
    fn canonical_slots_cover_the_surface_once() {
        let c = CubeSurface { n: 3 };
        let count = (0..c.len()).filter(|&i| c.is_canonical(i)).count();
        // 6 (2n+1)² minus the doubled edges plus the tripled corners
        assert_eq!(count, 6 * 49 - 12 * 7 + 8);
    }
}
