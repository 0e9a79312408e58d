use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::Field;
use super::gauss::GaussRat;

/// Ordered variable names shared by polynomials of the same ring.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// The five homogeneous coordinates `x1..x5` of P⁴.
pub fn p4_vars() -> Vars {
    vars(&["x1", "x2", "x3", "x4", "x5"])
}

/// Sparse multivariate polynomial over a field.
///
/// Terms are keyed by exponent vectors; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<C> {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, C>,
}

pub type GaussPoly = MultiPoly<GaussRat>;

impl<C: Field> MultiPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    pub fn monomial(vars: Vars, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { vars, terms }
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, C::one())
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exps, s);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a nonzero term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|e| e.iter().sum::<u32>() == d)
    }

    /// Drops every term of total degree above `max_deg`.
    pub fn truncate(&self, max_deg: u32) -> Self {
        self.filter(|e| e.iter().sum::<u32>() <= max_deg)
    }

    fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// True if only the listed variables occur.
    pub fn supported_in(&self, allowed: &[usize]) -> bool {
        self.terms.keys().all(|e| e.iter().enumerate().all(|(i, &k)| k == 0 || allowed.contains(&i)))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), C::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Product truncated at total degree `max_deg`.
    pub fn mul_truncated(&self, other: &Self, max_deg: u32) -> Self {
        self.check_ring(other);
        let mut out = Self::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            if da > max_deg {
                continue;
            }
            for (eb, cb) in &other.terms {
                let db: u32 = eb.iter().sum();
                if da + db > max_deg {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.clone() * C::from_rat(super::field::rat(e[i] as i64)));
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars());
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Replaces variable `i` by `subs[i]`; all substitutes share one ring.
    /// With `trunc`, terms above that total degree are dropped on the fly.
    pub fn substitute(&self, subs: &[MultiPoly<C>], trunc: Option<u32>) -> MultiPoly<C> {
        assert_eq!(subs.len(), self.nvars(), "one substitute per variable");
        let target = subs[0].vars.clone();
        let mul = |a: &MultiPoly<C>, b: &MultiPoly<C>| match trunc {
            Some(d) => a.mul_truncated(b, d),
            None => a * b,
        };
        // cache powers of each substitute
        let mut powers: Vec<Vec<MultiPoly<C>>> = Vec::with_capacity(subs.len());
        for (i, s) in subs.iter().enumerate() {
            let maxk = self.degree_in(i);
            let mut v = vec![MultiPoly::constant(target.clone(), C::one())];
            for k in 1..=maxk as usize {
                let next = mul(&v[k - 1], s);
                v.push(next);
            }
            powers.push(v);
        }
        let mut out = MultiPoly::zero(target.clone());
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = mul(&t, &powers[i][k as usize]);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Same polynomial viewed in a ring with more variables: variable `i`
    /// goes to position `map[i]`.
    pub fn embed(&self, target: Vars, map: &[usize]) -> Self {
        let n = target.len();
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = vec![0; n];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            (e2, c.clone())
        });
        MultiPoly::from_terms(target, terms)
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.vars.clone(), self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials from different rings: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }
}

impl GaussPoly {
    /// True if all coefficients are real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    /// Real part of the coefficients as a rational polynomial.
    pub fn real_part(&self) -> MultiPoly<super::field::Rat> {
        self.map_coeffs(|c| c.re.clone())
    }
}

impl MultiPoly<super::field::Rat> {
    pub fn to_gauss(&self) -> GaussPoly {
        self.map_coeffs(|c| GaussRat::real(c.clone()))
    }
}

impl<'a, C: Field> Add<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_ring(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Field> Sub<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_ring(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a, C: Field> Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.mul_truncated(o, u32::MAX)
    }
}

impl<C: Field> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.scale(&(-C::one()))
    }
}

impl<C: Field> Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: MultiPoly<C>) -> MultiPoly<C> {
        &self + &o
    }
}

impl<C: Field> Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: MultiPoly<C>) -> MultiPoly<C> {
        &self - &o
    }
}

impl<C: Field> Mul for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: MultiPoly<C>) -> MultiPoly<C> {
        &self * &o
    }
}

impl<C: Field> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

impl<C: Field + fmt::Display> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            let cs = c.to_string();
            let is_compound = cs.contains('+') || cs[1..].contains('-');
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !is_compound => (true, rest.to_string()),
                _ => (false, if is_compound { format!("({cs})") } else { cs }),
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", body, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{rat, Rat};
    use proptest::prelude::*;

    fn ring() -> Vars {
        vars(&["a", "b", "c"])
    }

    fn poly_strategy() -> impl Strategy<Value = MultiPoly<Rat>> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..5), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(ring(), ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], rat(k))))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn degree_of_product_is_additive(p in poly_strategy(), q in poly_strategy()) {
            if !p.is_zero() && !q.is_zero() {
                prop_assert_eq!((&p * &q).total_degree(), Some(p.total_degree().unwrap() + q.total_degree().unwrap()));
            }
        }
    }

    #[test]
    fn substitution_composes() {
        let r = ring();
        let a = MultiPoly::<Rat>::var(r.clone(), 0);
        let b = MultiPoly::<Rat>::var(r.clone(), 1);
        let p = &(&a * &a) - &b;
        // a -> b + 1, b -> a, c -> c
        let s = vec![&b + &MultiPoly::constant(r.clone(), rat(1)), a.clone(), MultiPoly::var(r.clone(), 2)];
        let q = p.substitute(&s, None);
        let expect = &(&(&b * &b) + &(&b * &MultiPoly::constant(r.clone(), rat(2)))) + &(&MultiPoly::constant(r.clone(), rat(1)) - &a);
        assert_eq!(q, expect);
    }

    #[test]
    fn partial_derivative() {
        let r = ring();
        let a = MultiPoly::<Rat>::var(r.clone(), 0);
        let c = MultiPoly::<Rat>::var(r.clone(), 2);
        let p = &a.pow(3) * &c;
        assert_eq!(p.partial(0), &(&a.pow(2) * &c).scale(&rat(3)) + &MultiPoly::zero(r));
    }
}
