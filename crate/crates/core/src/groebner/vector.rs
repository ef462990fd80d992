//! Integer-coefficient vectors of a free module, the working representation of
//! the Buchberger engine. Ideals are the rank-one case.
//!
//! Vectors are kept primitive (content 1, positive leading coefficient); the
//! rational scalar that was divided out is tracked separately where it matters.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{common_denominator, Monomial, Poly, Rational, RingRef};

/// Term order on `monomial * e_component`.
///
/// Comparison: components below `elim` dominate the rest; then the shifted
/// weighted degree (only for graded ring orders); then the ring order; then the
/// lower component index. A Schreyer order instead compares `m e_i` through
/// `m * lead(g_i)` in the order of the previous module.
#[derive(Clone, Debug)]
pub struct ModuleOrder {
    pub ring: RingRef,
    pub shifts: Vec<i64>,
    pub elim: u32,
    pub schreyer: Option<Arc<Schreyer>>,
}

/// Leading terms `(monomial, component)` of the basis whose syzygies the
/// module holds, with the order they were taken in.
#[derive(Clone, Debug)]
pub struct Schreyer {
    pub prev: ModuleOrder,
    pub leads: Vec<(Monomial, u32)>,
}

impl ModuleOrder {
    pub fn new(ring: &RingRef, shifts: Vec<i64>) -> Self {
        ModuleOrder { ring: ring.clone(), shifts, elim: 0, schreyer: None }
    }

    pub fn schreyer(prev: &ModuleOrder, leads: Vec<(Monomial, u32)>, shifts: Vec<i64>) -> Self {
        ModuleOrder {
            ring: prev.ring.clone(),
            shifts,
            elim: 0,
            schreyer: Some(Arc::new(Schreyer { prev: prev.clone(), leads })),
        }
    }

    pub fn ideal(ring: &RingRef) -> Self {
        Self::new(ring, vec![0])
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn degree(&self, m: &Monomial, comp: u32) -> i64 {
        self.ring.wdeg(m) as i64 + self.shifts[comp as usize]
    }

    pub fn cmp(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        if let Some(s) = &self.schreyer {
            let (la, lb) = (&s.leads[a.1 as usize], &s.leads[b.1 as usize]);
            let ma = a.0.mul(&la.0);
            let mb = b.0.mul(&lb.0);
            return s.prev.cmp((&ma, la.1), (&mb, lb.1)).then_with(|| b.1.cmp(&a.1));
        }
        if self.elim > 0 {
            let (ea, eb) = (a.1 < self.elim, b.1 < self.elim);
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        if self.ring.order().is_graded() {
            let o = self.degree(a.0, a.1).cmp(&self.degree(b.0, b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.ring.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub mon: Monomial,
    pub comp: u32,
    pub coef: BigInt,
}

/// Terms sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn sort(&mut self, ord: &ModuleOrder) {
        self.terms
            .sort_by(|x, y| ord.cmp((&y.mon, y.comp), (&x.mon, x.comp)));
    }

    /// Scaled so that the coefficients are coprime integers with positive lead;
    /// returns the rational `c` with `old = c * new`.
    pub fn make_primitive(&mut self) -> Rational {
        let Some(first) = self.terms.first() else {
            return Rational::one();
        };
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.coef);
            if g.is_one() {
                break;
            }
        }
        if first.coef.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.coef /= &g;
            }
        }
        Rational::from_integer(g)
    }

    /// Primitive integer vector from rational polynomial entries (one per
    /// component); returns `(vector, c)` with `entries = c * vector`.
    pub fn from_polys(entries: &[Poly], ord: &ModuleOrder) -> (Self, Rational) {
        let den = common_denominator(entries.iter().flat_map(|p| p.terms().iter().map(|t| &t.1)));
        let mut terms = Vec::new();
        for (c, p) in entries.iter().enumerate() {
            for (m, q) in p.terms() {
                let v = q * Rational::from_integer(den.clone());
                terms.push(Term { mon: m.clone(), comp: c as u32, coef: v.to_integer() });
            }
        }
        let mut v = Vector { terms };
        v.sort(ord);
        let c = v.make_primitive();
        (v, c / Rational::from_integer(den))
    }

    /// Entries as rational polynomials, multiplied by `scale`.
    pub fn to_polys(&self, ring: &RingRef, rank: usize, scale: &Rational) -> Vec<Poly> {
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            parts[t.comp as usize].push((t.mon.clone(), Rational::from_integer(t.coef.clone()) * scale));
        }
        parts.into_iter().map(|ts| Poly::from_terms(ring, ts)).collect()
    }

    /// `alpha * self - beta * m * g`, merged in order.
    pub fn sub_mul(&mut self, alpha: &BigInt, beta: &BigInt, m: &Monomial, g: &Vector, ord: &ModuleOrder) {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = g.terms.iter().map(|t| Term {
            mon: t.mon.mul(m),
            comp: t.comp,
            coef: -(beta * &t.coef),
        });
        let mut nb = b.next();
        let alpha_is_one = alpha.is_one();
        loop {
            match (a.peek(), &nb) {
                (None, None) => break,
                (Some(_), None) => {
                    let mut t = a.next().unwrap();
                    if !alpha_is_one {
                        t.coef *= alpha;
                    }
                    out.push(t);
                }
                (None, Some(_)) => {
                    out.push(nb.take().unwrap());
                    nb = b.next();
                }
                (Some(x), Some(y)) => match ord.cmp((&x.mon, x.comp), (&y.mon, y.comp)) {
                    Ordering::Greater => {
                        let mut t = a.next().unwrap();
                        if !alpha_is_one {
                            t.coef *= alpha;
                        }
                        out.push(t);
                    }
                    Ordering::Less => {
                        out.push(nb.take().unwrap());
                        nb = b.next();
                    }
                    Ordering::Equal => {
                        let mut t = a.next().unwrap();
                        if !alpha_is_one {
                            t.coef *= alpha;
                        }
                        t.coef += &nb.take().unwrap().coef;
                        nb = b.next();
                        if !t.coef.is_zero() {
                            out.push(t);
                        }
                    }
                },
            }
        }
        self.terms = out;
    }

    /// Multiply by a monomial (order-preserving).
    pub fn mul_monomial(&self, m: &Monomial) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { mon: t.mon.mul(m), comp: t.comp, coef: t.coef.clone() })
                .collect(),
        }
    }

    /// Largest shifted degree among the terms.
    pub fn sugar(&self, ord: &ModuleOrder) -> i64 {
        self.terms.iter().map(|t| ord.degree(&t.mon, t.comp)).max().unwrap_or(0)
    }

    /// All terms share one shifted degree.
    pub fn is_homogeneous(&self, ord: &ModuleOrder) -> bool {
        let mut it = self.terms.iter().map(|t| ord.degree(&t.mon, t.comp));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }
}

/// Multipliers `(alpha, beta)` with `alpha * a - beta * b = 0` and `alpha > 0`.
pub fn cancel_pair(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let g = a.gcd(b);
    let (mut alpha, mut beta) = (b / &g, a / &g);
    if alpha.is_negative() {
        alpha = -alpha;
        beta = -beta;
    }
    (alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, MonomialOrder, PolyRing};

    #[test]
    fn round_trip_and_cancel() {
        let r = PolyRing::with(&["x", "y"], &[1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let ord = ModuleOrder::ideal(&r);
        let p = parse_poly(&r, "-2/3*x^2 + 4/9*y").unwrap();
        let (v, c) = Vector::from_polys(&[p.clone()], &ord);
        assert_eq!(v.lead().unwrap().coef, BigInt::from(3));
        assert_eq!(v.to_polys(&r, 1, &c)[0], p);

        let mut w = v.clone();
        let (al, be) = cancel_pair(&v.terms[0].coef, &v.terms[0].coef);
        w.sub_mul(&al, &be, &Monomial::one(2), &v, &ord);
        assert!(w.is_zero());
    }
}
