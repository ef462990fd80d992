use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::Monomial;
use super::ring::RingRef;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial.
///
/// Terms are kept sorted by the ring's monomial order, leading term first,
/// and never store a zero coefficient.
#[derive(Clone)]
pub struct Poly<C: Scalar = Rational> {
    ring: RingRef,
    terms: Vec<(Monomial, C)>,
}

/// Result of [`Poly::weighted_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(u64),
    /// The distinct term weights, ascending.
    Inhomogeneous(Vec<u64>),
}

fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<C: Scalar> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Scalar> Poly<C> {
    pub fn zero(ring: &RingRef) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: &RingRef, c: C) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &RingRef, v: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), v, 1), C::one())
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    /// Build from arbitrary (possibly repeated, unsorted, zero) terms.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(x) => *x = x.plus(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Build from terms already sorted (leading first), distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common weighted degree of all terms, or the set of distinct term weights.
    pub fn weighted_degree(&self) -> Result<WeightedDegree> {
        if self.is_zero() {
            return Err(Error::UndefinedDegree);
        }
        let mut ws: Vec<u64> = self.terms.iter().map(|(m, _)| self.ring.wdeg(m)).collect();
        ws.sort_unstable();
        ws.dedup();
        Ok(if ws.len() == 1 {
            WeightedDegree::Homogeneous(ws[0])
        } else {
            WeightedDegree::Inhomogeneous(ws)
        })
    }

    /// Weighted degree if homogeneous; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        match self.weighted_degree() {
            Ok(WeightedDegree::Homogeneous(d)) => Some(d),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in polynomial arithmetic");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { b[j].1.negated() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { a[i].1.minus(&b[j].1) } else { a[i].1.plus(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { t.1.negated() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in polynomial arithmetic");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.times(cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.plus(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }

    /// Multiply by the single term `c * m`; order is preserved since orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d.times(c))).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.clone(), d.times(c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> Result<Self> {
        if v >= self.ring.nvars() {
            return Err(Error::UnknownVariable(format!("#{v}")));
        }
        let terms = self.terms.iter().filter(|(m, _)| m.exps()[v] > 0).map(|(m, c)| {
            let e = m.exps()[v];
            let mut m2 = m.clone();
            m2.0[v] = e - 1;
            (m2, c.times(&C::from_rational(Rational::from_integer(e.into()))))
        });
        Ok(Self::from_sorted_terms(&self.ring, terms.collect()))
    }

    pub fn partial_named(&self, name: &str) -> Result<Self> {
        self.partial(self.ring.var_index(name)?)
    }

    /// Substitute values for some variables; unassigned variables stay symbolic.
    pub fn evaluate(&self, assignment: &[(usize, C)]) -> Self {
        let mut powers: HashMap<(usize, u32), C> = HashMap::new();
        let mut pow = |v: usize, e: u32, base: &C| -> C {
            powers
                .entry((v, e))
                .or_insert_with(|| {
                    let mut acc = C::one();
                    for _ in 0..e {
                        acc = acc.times(base);
                    }
                    acc
                })
                .clone()
        };
        let terms: Vec<(Monomial, C)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let mut c2 = c.clone();
                for (v, val) in assignment {
                    let e = m.exps()[*v];
                    if e > 0 {
                        c2 = c2.times(&pow(*v, e, val));
                        m2.0[*v] = 0;
                    }
                }
                (m2, c2)
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn evaluate_named(&self, assignment: &[(&str, C)]) -> Result<Self> {
        let idx = assignment
            .iter()
            .map(|(n, c)| Ok((self.ring.var_index(n)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.evaluate(&idx))
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all in one target ring).
    pub fn substitute(&self, target: &RingRef, images: &[Poly<C>]) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        let mut cache: HashMap<(usize, u32), Poly<C>> = HashMap::new();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((v, e)).or_insert_with(|| images[v].pow(e)).clone();
                t = t.mul(&p);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Move to a ring whose variable `var_map[i]` plays the role of variable `i`.
    pub fn embed(&self, target: &RingRef, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.ring.nvars());
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Monomial::one(n);
            for (i, &x) in m.exps().iter().enumerate() {
                e.0[var_map[i]] += x;
            }
            (e, c.clone())
        });
        Self::from_terms(target, terms)
    }

    /// Re-sort under another ring with the same variables (e.g. a different order).
    pub fn reorder(&self, target: &RingRef) -> Self {
        assert_eq!(target.nvars(), self.ring.nvars());
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.cmp(&b.0, &a.0));
        Poly { ring: target.clone(), terms }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (m.clone(), d))
            })
            .collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// Split by the exponents of `vars`: maps each exponent tuple to the
    /// coefficient polynomial in the remaining variables (still in this ring).
    pub fn coefficients_in(&self, vars: &[usize]) -> Vec<(Vec<u32>, Poly<C>)> {
        let mut groups: HashMap<Vec<u32>, Vec<(Monomial, C)>> = HashMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| m.exps()[v]).collect();
            let mut rest = m.clone();
            for &v in vars {
                rest.0[v] = 0;
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut out: Vec<(Vec<u32>, Poly<C>)> = groups
            .into_iter()
            .map(|(k, ts)| (k, Self::from_terms(&self.ring, ts)))
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Whether the polynomial only involves the listed variables.
    pub fn only_involves(&self, vars: &[usize]) -> bool {
        self.terms.iter().all(|(m, _)| {
            m.exps().iter().enumerate().all(|(i, &e)| e == 0 || vars.contains(&i))
        })
    }
}

impl Poly<Rational> {
    /// `Some(lambda)` with `self == lambda * other`, if the two are proportional
    /// by a nonzero rational. Zero is only proportional to zero.
    pub fn proportional_to(&self, other: &Self) -> Option<Rational> {
        if self.len() != other.len() || self.is_zero() {
            return None;
        }
        let lambda = self.terms[0].1.clone() / other.terms[0].1.clone();
        let ok = self
            .terms
            .iter()
            .zip(other.terms.iter())
            .all(|((m1, c1), (m2, c2))| m1 == m2 && *c1 == c2 * &lambda);
        ok.then_some(lambda)
    }

    /// Scale so that the coefficients are coprime integers with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        use super::scalar::{common_denominator, numerator_gcd};
        use num_traits::Signed;
        if self.is_zero() {
            return self.clone();
        }
        let den = common_denominator(self.terms.iter().map(|t| &t.1));
        let scaled: Vec<Rational> = self
            .terms
            .iter()
            .map(|t| &t.1 * Rational::from_integer(den.clone()))
            .collect();
        let g = numerator_gcd(scaled.iter());
        let mut f = Rational::new(den, g);
        if self.terms[0].1.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(same_ring(&self.ring, &divisor.ring));
        let (lm, lc) = divisor.terms.first()?;
        let lc_inv = lc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = m.div(lm)?;
            let qc = &c * &lc_inv;
            rem = rem.sub(&divisor.mul_term(&q, &qc));
            quot.push((q, qc));
        }
        Some(Self::from_terms(&self.ring, quot))
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = c.signed_text();
            let sep = match (k == 0, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mono = format_monomial(self.ring.names(), m);
            let body = if mono.is_empty() {
                abs
            } else if abs == "1" {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// `a^2*b*c`; the empty string for the unit monomial.
pub fn format_monomial(names: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(m.exps()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<C: Scalar> $tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                Poly::$inner(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}
