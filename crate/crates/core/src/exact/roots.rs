//! Real root isolation by Sturm sequences.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::field::{fmt_rat, rat, ratio, sign, to_f64, Rat};
use super::upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("the zero polynomial has no isolated real roots")]
    ZeroPolynomial,
}

/// Sturm chain of the squarefree part of `p`.
pub fn sturm_chain(p: &UPoly) -> Result<Vec<UPoly>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let q = p.squarefree_part();
    let mut chain = vec![q.clone(), q.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = -&chain[n - 2].rem(&chain[n - 1]);
        chain.push(r);
    }
    chain.pop();
    Ok(chain)
}

fn variations(chain: &[UPoly], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for p in chain {
        let s = sign(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn count_real_roots(p: &UPoly, a: &Rat, b: &Rat) -> Result<usize, RootError> {
    let chain = sturm_chain(p)?;
    Ok(count_with_chain(&chain, a, b))
}

fn count_with_chain(chain: &[UPoly], a: &Rat, b: &Rat) -> usize {
    if a >= b {
        return 0;
    }
    variations(chain, a).saturating_sub(variations(chain, b))
}

/// Strict upper bound on the absolute value of every complex root.
pub fn cauchy_bound(p: &UPoly) -> Rat {
    let lead = p.leading().abs();
    let n = p.degree().unwrap_or(0);
    let m = p.coeffs()[..n].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rat::zero);
    m + Rat::one()
}

/// A real root of a squarefree polynomial pinned down by a rational interval.
///
/// Either `lo == hi` and the root is that rational, or `lo < hi`, `poly`
/// is nonzero with opposite signs at both ends and has exactly one root in
/// the open interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    poly: UPoly,
    lo: Rat,
    hi: Rat,
}

impl IsolatedRoot {
    pub fn exact(r: Rat) -> Self {
        IsolatedRoot { poly: UPoly::linear_root(&r), lo: r.clone(), hi: r }
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Halves the interval (or lands on the root exactly).
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / rat(2);
        let sm = sign(&self.poly.eval(&mid));
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
        } else if sm == sign(&self.poly.eval(&self.lo)) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rat) {
        while !self.is_exact() && &self.width() > width {
            self.bisect();
        }
    }

    /// Midpoint approximation after refining to 2⁻⁴⁰.
    pub fn to_f64(&self) -> f64 {
        let mut r = self.clone();
        r.refine_to(&ratio(1, 1 << 40));
        to_f64(&((&r.lo + &r.hi) / rat(2)))
    }

    /// Position of the root relative to the rational `c`.
    pub fn cmp_rational(&self, c: &Rat) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(c);
        }
        if c <= &self.lo {
            return Ordering::Greater;
        }
        if c >= &self.hi {
            return Ordering::Less;
        }
        let sc = sign(&self.poly.eval(c));
        if sc == 0 {
            Ordering::Equal
        } else if sc == sign(&self.poly.eval(&self.lo)) {
            // no sign change on (lo, c], root lies in (c, hi)
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// True if `q` vanishes at the root.
    pub fn is_root_of(&self, q: &UPoly) -> bool {
        if q.is_zero() {
            return true;
        }
        if self.is_exact() {
            return q.eval(&self.lo).is_zero();
        }
        let g = self.poly.gcd(q);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        // roots of g are roots of poly, so g does not vanish at lo or hi
        count_real_roots(&g, &self.lo, &self.hi).unwrap_or(0) > 0
    }

    /// Sign of `q` at the root.
    pub fn sign_of(&self, q: &UPoly) -> i8 {
        if self.is_exact() {
            return sign(&q.eval(&self.lo));
        }
        if self.is_root_of(q) {
            return 0;
        }
        let chain = sturm_chain(q).expect("nonzero");
        let mut r = self.clone();
        loop {
            let slo = sign(&q.eval(&r.lo));
            if slo != 0 && count_with_chain(&chain, &r.lo, &r.hi) == 0 {
                return slo;
            }
            r.bisect();
            if r.is_exact() {
                return sign(&q.eval(&r.lo));
            }
        }
    }

    /// Total order on real algebraic numbers.
    pub fn cmp_root(&self, other: &IsolatedRoot) -> Ordering {
        if let Some(c) = other.as_rational() {
            return self.cmp_rational(c);
        }
        if let Some(c) = self.as_rational() {
            return other.cmp_rational(c).reverse();
        }
        if self.hi <= other.lo {
            return Ordering::Less;
        }
        if other.hi <= self.lo {
            return Ordering::Greater;
        }
        if self.is_root_of(other.poly()) {
            // the common root inside self's interval is self's root; it is
            // other's root iff it also lies in other's interval
            let g = self.poly.gcd(&other.poly);
            let lo = (&self.lo).max(&other.lo).clone();
            let hi = (&self.hi).min(&other.hi).clone();
            let n = count_real_roots(&g, &lo, &hi).unwrap_or(0);
            let at_hi = g.eval(&hi).is_zero() as usize;
            if n > at_hi {
                return Ordering::Equal;
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            a.bisect();
            b.bisect();
            if a.is_exact() || b.is_exact() || a.hi <= b.lo || b.hi <= a.lo {
                return a.cmp_root(&b);
            }
        }
    }
}

impl fmt::Display for IsolatedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", fmt_rat(&self.lo))
        } else {
            write!(f, "root of {} in ({}, {})", self.poly, fmt_rat(&self.lo), fmt_rat(&self.hi))
        }
    }
}

/// All distinct real roots of `p`, in increasing order.
pub fn isolate_real_roots(p: &UPoly) -> Result<Vec<IsolatedRoot>, RootError> {
    let chain = sturm_chain(p)?;
    let q = chain[0].clone();
    if q.degree() == Some(0) {
        return Ok(vec![]);
    }
    let b = cauchy_bound(&q);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_with_chain(&chain, &lo, &hi);
        if n == 0 {
            continue;
        }
        let hi_root = q.eval(&hi).is_zero();
        if n == 1 && hi_root {
            out.push(IsolatedRoot { poly: q.clone(), lo: hi.clone(), hi });
            continue;
        }
        if n == 1 && !q.eval(&lo).is_zero() {
            out.push(IsolatedRoot { poly: q.clone(), lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / rat(2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.cmp_root(b));
    Ok(out.into_iter().map(|r| r.tighten_exact()).collect())
}

impl IsolatedRoot {
    /// Replaces the interval by the root itself when that root is a
    /// rational with small denominator lying inside it.
    fn tighten_exact(mut self) -> Self {
        if !self.is_exact() {
            self.refine_to(&ratio(1, 4));
            for d in 1..=4i64 {
                let n = (&self.hi * rat(d)).floor();
                let c = n / rat(d);
                if c > self.lo && c < self.hi && self.poly.eval(&c).is_zero() {
                    return IsolatedRoot::exact(c);
                }
            }
        }
        match self.as_rational() {
            Some(c) => IsolatedRoot::exact(c.clone()),
            None => self,
        }
    }
}

/// A rational strictly between two roots with `a < b`.
pub fn rational_between(a: &IsolatedRoot, b: &IsolatedRoot) -> Rat {
    let (mut a, mut b) = (a.clone(), b.clone());
    while a.hi >= b.lo {
        if !a.is_exact() {
            a.bisect();
        }
        if !b.is_exact() {
            b.bisect();
        }
        if a.is_exact() && b.is_exact() {
            assert!(a.lo < b.lo, "roots not in increasing order");
            break;
        }
    }
    (&a.hi + &b.lo) / rat(2)
}

/// Sorted distinct real roots of the product of `polys`, each tagged with
/// the indices of the polynomials that vanish there. Zero polynomials are
/// skipped.
pub fn merged_roots(polys: &[&UPoly]) -> Vec<(IsolatedRoot, Vec<usize>)> {
    let prod = polys
        .iter()
        .filter(|p| !p.is_zero())
        .fold(UPoly::constant(Rat::one()), |acc, p| &acc * p);
    let roots = isolate_real_roots(&prod).unwrap_or_default();
    roots
        .into_iter()
        .map(|r| {
            let tags = polys
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero() && r.is_root_of(p))
                .map(|(i, _)| i)
                .collect();
            (r, tags)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_roots(rs: &[i64]) -> UPoly {
        rs.iter().fold(UPoly::constant(rat(1)), |acc, &r| &acc * &UPoly::linear_root(&rat(r)))
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(sturm_chain(&UPoly::zero()), Err(RootError::ZeroPolynomial));
    }

    #[test]
    fn integer_roots_are_found_exactly() {
        let p = from_roots(&[-3, 0, 0, 2, 5]);
        let rs = isolate_real_roots(&p).unwrap();
        let vals: Vec<Rat> = rs.iter().map(|r| r.as_rational().cloned().unwrap()).collect();
        assert_eq!(vals, vec![rat(-3), rat(0), rat(2), rat(5)]);
    }

    #[test]
    fn sqrt_two() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let rs = isolate_real_roots(&p).unwrap();
        assert_eq!(rs.len(), 2);
        assert!((rs[1].to_f64() - 2f64.sqrt()).abs() < 1e-10);
        assert_eq!(rs[1].cmp_rational(&ratio(141, 100)), Ordering::Greater);
        assert_eq!(rs[1].cmp_rational(&ratio(142, 100)), Ordering::Less);
        // sign of x^2 - 3 at sqrt 2 is negative, x^3 - 2x vanishes
        assert_eq!(rs[1].sign_of(&UPoly::from_ints(&[-3, 0, 1])), -1);
        assert_eq!(rs[1].sign_of(&UPoly::from_ints(&[0, -2, 0, 1])), 0);
        // sqrt 2 as a root of x^4 - 4 compares equal
        let other = isolate_real_roots(&UPoly::from_ints(&[-4, 0, 0, 0, 1])).unwrap();
        assert_eq!(rs[1].cmp_root(&other[1]), Ordering::Equal);
        assert_eq!(rs[0].cmp_root(&other[1]), Ordering::Less);
    }

    #[test]
    fn half_open_count() {
        let p = from_roots(&[1, 2]);
        assert_eq!(count_real_roots(&p, &rat(1), &rat(2)).unwrap(), 1);
        assert_eq!(count_real_roots(&p, &rat(0), &rat(1)).unwrap(), 1);
    }

    proptest! {
        #[test]
        fn isolation_matches_float_roots(rs in prop::collection::vec(-20i64..20, 1..6), extra in 1i64..5) {
            // (x^2 + extra) has no real roots
            let p = &from_roots(&rs) * &UPoly::from_ints(&[extra, 0, 1]);
            let iso = isolate_real_roots(&p).unwrap();
            let mut distinct = rs.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(iso.len(), distinct.len());
            for (r, d) in iso.iter().zip(&distinct) {
                prop_assert_eq!(r.as_rational(), Some(&rat(*d)));
            }
        }

        #[test]
        fn isolated_intervals_are_ordered_and_valid(cs in prop::collection::vec(-9i64..9, 2..7)) {
            let p = UPoly::from_ints(&cs);
            prop_assume!(p.degree().unwrap_or(0) > 0);
            let iso = isolate_real_roots(&p).unwrap();
            for w in iso.windows(2) {
                prop_assert_eq!(w[0].cmp_root(&w[1]), Ordering::Less);
                let m = rational_between(&w[0], &w[1]);
                prop_assert_eq!(w[0].cmp_rational(&m), Ordering::Less);
                prop_assert_eq!(w[1].cmp_rational(&m), Ordering::Greater);
            }
            for r in &iso {
                prop_assert!(r.is_root_of(&p));
                if !r.is_exact() {
                    let a = sign(&r.poly().eval(r.lo()));
                    let b = sign(&r.poly().eval(r.hi()));
                    prop_assert!(a != 0 && b != 0 && a != b);
                }
            }
        }
    }
}
