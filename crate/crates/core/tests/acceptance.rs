//! One PASS/FAIL line per acceptance criterion, printed on every run. Known
//! deviations print FAIL with the reason; everything else is asserted, so an
//! unexpected result panics and the test exits nonzero.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realcubic::bundles::{catalog_bundle, component_count_over_line, criterion_connected, lemma_families, on_criterion_boundary, quadric_bundle};
use realcubic::cohomology::{galois_module_catalog, h1_c2, identity, GaloisCase, GaloisLattice, IMatrix};
use realcubic::exact::roots::cauchy_bound;
use realcubic::exact::{
    congruence_diagonalize, count_real_roots, diagonalize_symmetric, isolate_real_roots, mat_mul, ratio, transpose, Rat, RatFunc, UPoly,
};
use realcubic::families::discriminant::delta_conic_fiber;
use realcubic::families::{
    build_cubic, catalog_points, complete_constraints, discriminant_polynomial, random_params, validate_constraints, FamilyId, LinearSubspace,
    SubspaceKind,
};
use realcubic::oracle::real_singular_search;
use realcubic::singular::{ade_type, SingularityType, DEFAULT_ADE_CAP};
use realcubic::verdict::AnalysisOptions;

fn report(name: &str, pass: bool, detail: &str) {
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
}

fn cohomology_catalog() {
    let z2 = [GaloisCase::TwoA5, GaloisCase::SixA1Swap, GaloisCase::TwoD4TwoA1OnePlane, GaloisCase::EightA1Case3];
    let mut slowest = Duration::ZERO;
    let mut ok = true;
    let mut check = |name: &str, l: &GaloisLattice, order: u64| {
        let start = Instant::now();
        let g = h1_c2(l).expect("catalog lattice");
        slowest = slowest.max(start.elapsed());
        let good = g.order() == order && (order == 1 || g.divisors == vec![2]);
        assert!(good, "{name}: {g:?}");
        ok &= good;
    };
    for c in z2 {
        check(&format!("{c:?}"), &galois_module_catalog(c), 2);
    }
    check("SixA1Trivial", &galois_module_catalog(GaloisCase::SixA1Trivial), 1);
    for n in 1..=6 {
        check("identity", &GaloisLattice::new(identity(n)).unwrap(), 1);
    }
    let fast = slowest < Duration::from_millis(10);
    assert!(fast, "slowest {slowest:?}");
    report("cohomology catalog", ok && fast, &format!("Z/2 for 4 cases, trivial for identity and SixA1Trivial, slowest {slowest:?}"));
}

fn verdict_suite() {
    let start = Instant::now();
    let rows = realcubic::cli::paper_suite(&AnalysisOptions::default());
    let elapsed = start.elapsed();
    let failed: BTreeSet<&str> = rows.iter().filter(|r| !r.matched).map(|r| r.label.as_str()).collect();
    for r in rows.iter().filter(|r| !r.matched) {
        println!("     mismatch: {} expected {} computed {}", r.label, r.expected, r.computed);
    }
    // stated labels of the two q = x4^2+x5^2 examples are swapped; the
    // "connected" conic set has an isolated real node
    let known: BTreeSet<&str> = ["2D4 q=x4^2+x5^2 (1)", "2D4 q=x4^2+x5^2 (2)", "conic singular locus, connected"].into();
    assert_eq!(failed, known);
    assert!(elapsed < Duration::from_secs(60), "suite took {elapsed:?}");
    report(
        "verdict suite",
        failed.is_empty(),
        &format!("{}/{} rows match in {elapsed:.1?}; mismatches are the swapped x4^2+x5^2 labels and the conic set with a real node", rows.len() - failed.len(), rows.len()),
    );
}

fn radical(p: &UPoly) -> UPoly {
    p.squarefree_part().monic()
}

/// Radical of the product of the diagonal entries of the Gram matrix.
fn gram_radical(gram: &realcubic::exact::Matrix<UPoly>) -> Option<UPoly> {
    let d = diagonalize_symmetric(gram);
    if !d.is_full_rank() {
        return None;
    }
    let prod = d.diag.into_iter().fold(RatFunc::poly(UPoly::constant(ratio(1, 1))), |a, x| a * x);
    Some(radical(&(prod.num() * prod.den())))
}

fn discriminant_verification() {
    use FamilyId::*;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x = UPoly::x();
    let planes = ["x1 = x2 = 0", "x1 = x3 = 0", "x1 = x4 = 0"];
    let mut lines = vec![];
    let mut total_bad = 0;
    for f in [TwoD4MinusQ, TwoD4PlusQ, TwoA3TwoA1ThreePlanes, SixA1ThreeRealPlanes, SixA1OneRealPlane, ConicLocus] {
        let (mut n, mut bad, mut fiber_ok) = (0, 0, 0);
        while n < 100 {
            let p = random_params(f, &mut rng);
            let Ok(disc) = discriminant_polynomial(f, &p) else { continue };
            // projections from the real plane in the chart of the printed formula;
            // the three 6A1 instances belong to three planes
            let grams: Vec<_> = if f == SixA1ThreeRealPlanes {
                let cubic = build_cubic(f, &p).unwrap();
                planes.iter().map(|s| quadric_bundle(&cubic, &LinearSubspace::parse(SubspaceKind::Plane, s).unwrap()).map(|b| b.gram)).collect()
            } else {
                vec![catalog_bundle(f, &p).map(|b| b.gram)]
            };
            let Some(rads) = grams.into_iter().map(|g| g.ok().and_then(|g| gram_radical(&g))).collect::<Option<Vec<_>>>() else { continue };
            if disc.polys().iter().any(|q| q.is_zero()) {
                continue;
            }
            n += 1;
            let base = |q: &UPoly| match f {
                TwoA3TwoA1ThreePlanes | SixA1OneRealPlane => radical(&(q * &x)),
                _ => radical(q),
            };
            if !disc.polys().iter().zip(&rads).all(|(q, r)| &base(q) == r) {
                bad += 1;
            }
            if f == ConicLocus {
                let a: [Rat; 13] = std::array::from_fn(|k| p.get(&format!("a{}", k + 1)).cloned().unwrap_or_default());
                fiber_ok += usize::from(radical(&delta_conic_fiber(&a)) == rads[0]);
            }
        }
        if f == ConicLocus {
            lines.push(format!("{f} {bad}/100 mismatched (printed quartic; the fiber discriminant agrees on {fiber_ok}/100)"));
        } else {
            assert_eq!(bad, 0, "{f}");
            lines.push(format!("{f} 0/100"));
        }
        total_bad += bad;
    }
    let elapsed = start.elapsed();
    for l in &lines {
        println!("     {l}");
    }
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    report("discriminant verification", total_bad == 0, &format!("{total_bad} mismatches over 600 draws in {elapsed:.1?}; the conic quartic as printed omits the 2 q1 q2 term"));
}

fn exact_vs_criterion() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut total_bad = 0;
    for &f in lemma_families() {
        let (mut n, mut bad) = (0, 0);
        while n < 200 {
            let p = random_params(f, &mut rng);
            if on_criterion_boundary(f, &p).unwrap_or(true) {
                continue;
            }
            let Ok(b) = catalog_bundle(f, &p) else { continue };
            let Ok((count, _)) = component_count_over_line(&b) else { continue };
            let Some(connected) = criterion_connected(f, &p).unwrap() else { continue };
            n += 1;
            if (count == 1) != connected {
                bad += 1;
            }
        }
        println!("     {f}: {bad}/200 disagree");
        if f != FamilyId::ConicLocus {
            assert_eq!(bad, 0, "{f}");
        }
        total_bad += bad;
    }
    report("exact vs criterion", total_bad == 0, &format!("{total_bad} disagreements, all on the conic family whose printed quartic omits the 2 q1 q2 term"));
}

fn singularity_audit() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut audited = 0;
    let mut skipped = vec![];
    let (mut degenerate, mut other_form) = (0, 0);
    for &f in FamilyId::ALL {
        if f == FamilyId::FourA2 {
            // declared A2 points are checked only under the literal reading
            skipped.push(f);
            continue;
        }
        if catalog_points(f, &f.defaults()).ok().flatten().is_none() {
            skipped.push(f);
            continue;
        }
        let mut n = 0;
        let mut tries = 0;
        while n < 10 {
            tries += 1;
            assert!(tries < 2000, "{f}: too few valid draws");
            let p = random_params(f, &mut rng);
            if !validate_constraints(f, &p, false).map(|v| v.is_empty()).unwrap_or(false) {
                continue;
            }
            let Ok(cubic) = build_cubic(f, &p) else { continue };
            let Some(cat) = catalog_points(f, &p).unwrap() else { continue };
            let types: Option<Vec<SingularityType>> = cat.points.iter().map(|(_, q, _)| ade_type(&cubic, q, DEFAULT_ADE_CAP).ok()).collect();
            let declared: Vec<SingularityType> = cat.points.iter().map(|c| c.2).collect();
            // degenerate draws (worse singularities, real singular points) are
            // outside the family
            if types.as_ref() != Some(&declared) {
                degenerate += 1;
                continue;
            }
            // a1 < 0 makes the 8A1 pair on the x1/x5 line real
            if f == FamilyId::EightA1 && p.get("a1").is_some_and(|a| *a < Rat::default()) {
                other_form += 1;
                continue;
            }
            let search = real_singular_search(&cubic, 64, n as u64);
            assert!(!search.found(), "{f} {p}: numeric real singular point {:?}", search.points);
            n += 1;
        }
        audited += 1;
    }
    // the constraint sets pin the types exactly
    for (f, want) in [(FamilyId::TwoA4, SingularityType::A(4)), (FamilyId::TwoA5, SingularityType::A(5))] {
        for _ in 0..10 {
            let p = complete_constraints(f, &random_params(f, &mut rng), false).unwrap();
            let cubic = build_cubic(f, &p).unwrap();
            let cat = catalog_points(f, &p).unwrap().unwrap();
            for (_, q, _) in &cat.points {
                let t = ade_type(&cubic, q, DEFAULT_ADE_CAP).unwrap();
                assert!(t == want || matches!(t, SingularityType::A(k) if k > 5) || t == SingularityType::BeyondCap, "{f} {p}: {t}");
            }
        }
    }
    report(
        "singularity audit",
        true,
        &format!(
            "{audited} families x 10 draws; redrawn: {degenerate} with other singularity types, {other_form} 8A1 draws with a1 < 0; skipped (no declared points, or chained 4A2) {skipped:?}"
        ),
    );
}

fn random_poly(rng: &mut impl Rng) -> UPoly {
    loop {
        let deg = rng.gen_range(0..=8);
        let p = UPoly::new((0..=deg).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3))).collect());
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_unimodular(n: usize, rng: &mut impl Rng) -> IMatrix {
    let mut g = identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2i64..=2);
        for row in g.iter_mut() {
            row[j] += c * row[i];
        }
    }
    g
}

fn kernel_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..1000 {
        let p = random_poly(&mut rng);
        let roots = isolate_real_roots(&p).unwrap();
        let b = cauchy_bound(&p) + ratio(1, 1);
        assert_eq!(count_real_roots(&p, &-b.clone(), &b).unwrap(), roots.len(), "{p}");
    }
    for k in 0..50 {
        let case = GaloisCase::ALL[k % GaloisCase::ALL.len()];
        let l = galois_module_catalog(case);
        let g = random_unimodular(l.rank, &mut rng);
        let c = l.conjugate(&g).expect("unimodular");
        assert_eq!(h1_c2(&c).unwrap(), h1_c2(&l).unwrap(), "{case:?}");
    }
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let mut m = vec![vec![Rat::default(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = if rng.gen_bool(0.3) { Rat::default() } else { ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)) };
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        let d = congruence_diagonalize(&m);
        let lhs = mat_mul(&mat_mul(&transpose(&d.p), &m), &d.p);
        for (i, row) in lhs.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let want = if i == j { d.diag[i].clone() } else { Rat::default() };
                assert_eq!(*e, want);
            }
        }
    }
    report("kernel properties", true, "1000 Sturm counts, 50 conjugations, 100 congruences");
}

fn main() {
    cohomology_catalog();
    verdict_suite();
    discriminant_verification();
    exact_vs_criterion();
    singularity_audit();
    kernel_properties();
}
