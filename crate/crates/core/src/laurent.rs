//! Truncated Laurent series in one formal variable `t` whose coefficients are
//! polynomials in the deformation parameters.
//!
//! A series knows its coefficients for exponents `valuation..=trunc`; everything
//! above `trunc` is unknown. Every operation propagates the guaranteed range.

use std::fmt;

use crate::arith::{Poly, RingRef, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct LaurentSeries<C: Scalar> {
    ring: RingRef,
    valuation: i64,
    coeffs: Vec<Poly<C>>,
    trunc: i64,
}

impl<C: Scalar> LaurentSeries<C> {
    /// Series `sum coeffs[k] t^(valuation + k)` known through `t^trunc`.
    /// Coefficients past `trunc` are dropped; missing ones are zero.
    pub fn new(ring: &RingRef, valuation: i64, mut coeffs: Vec<Poly<C>>, trunc: i64) -> Self {
        let len = (trunc - valuation + 1).max(0) as usize;
        coeffs.resize(len, Poly::zero(ring));
        let mut s = LaurentSeries { ring: ring.clone(), valuation, coeffs, trunc };
        s.normalize();
        s
    }

    /// The series `c * t^e + O(t^(trunc+1))`.
    pub fn monomial(ring: &RingRef, c: Poly<C>, e: i64, trunc: i64) -> Self {
        Self::new(ring, e, vec![c], trunc)
    }

    pub fn constant(ring: &RingRef, c: C, trunc: i64) -> Self {
        Self::monomial(ring, Poly::constant(ring, c), 0, trunc)
    }

    /// `O(t^(trunc+1))`.
    pub fn zero(ring: &RingRef, trunc: i64) -> Self {
        LaurentSeries { ring: ring.clone(), valuation: trunc + 1, coeffs: vec![], trunc }
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.valuation = self.trunc + 1;
            }
            Some(k) if k > 0 => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            _ => {}
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Lowest exponent with a nonzero coefficient (`trunc + 1` for a zero series).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest exponent whose coefficient is known.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Known coefficients are zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^e`; `None` if `e` lies beyond the truncation.
    pub fn coeff(&self, e: i64) -> Option<Poly<C>> {
        if e > self.trunc {
            return None;
        }
        if e < self.valuation {
            return Some(Poly::zero(&self.ring));
        }
        Some(self.coeffs[(e - self.valuation) as usize].clone())
    }

    fn coeff_ref(&self, e: i64) -> Option<&Poly<C>> {
        if e < self.valuation || e > self.trunc {
            None
        } else {
            Some(&self.coeffs[(e - self.valuation) as usize])
        }
    }

    pub fn lead_coeff(&self) -> Option<&Poly<C>> {
        self.coeffs.first()
    }

    /// Known terms as `(exponent, coefficient)`, zeros skipped.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Poly<C>)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.valuation + k as i64, c))
    }

    /// Forget everything above `t^trunc` (only lowers the precision).
    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        Self::new(&self.ring, self.valuation.min(trunc + 1), self.coeffs.clone(), trunc)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let val = self.valuation.min(other.valuation).min(trunc + 1);
        let coeffs = (val..=trunc)
            .map(|e| {
                let a = self.coeff_ref(e);
                let b = other.coeff_ref(e);
                match (a, b) {
                    (Some(a), Some(b)) => {
                        if negate {
                            a.sub(b)
                        } else {
                            a.add(b)
                        }
                    }
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => {
                        if negate {
                            b.neg()
                        } else {
                            b.clone()
                        }
                    }
                    (None, None) => Poly::zero(&self.ring),
                }
            })
            .collect();
        Self::new(&self.ring, val, coeffs, trunc)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            ring: self.ring.clone(),
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            trunc: self.trunc,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.valuation + other.trunc).min(other.valuation + self.trunc);
        let val = self.valuation + other.valuation;
        if self.is_zero() || other.is_zero() || trunc < val {
            return Self::zero(&self.ring, trunc);
        }
        let len = (trunc - val + 1) as usize;
        let mut out = vec![Poly::zero(&self.ring); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.ring, val, out, trunc)
    }

    /// Multiply every coefficient by the polynomial `c`.
    pub fn scalar_mul(&self, c: &Poly<C>) -> Self {
        Self::new(
            &self.ring,
            self.valuation,
            self.coeffs.iter().map(|x| x.mul(c)).collect(),
            self.trunc,
        )
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            ring: self.ring.clone(),
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    /// `self^e`; `self^0` is `1` with the relative precision of `self`.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::constant(&self.ring, C::one(), self.trunc - self.valuation);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse of a series whose leading coefficient is a
    /// nonzero constant (free of the parameters).
    pub fn invert_unit(&self) -> Result<Self> {
        let lead = self.lead_coeff().ok_or(Error::NonUnitLeadingTerm)?;
        let c = lead.as_constant().ok_or(Error::NonUnitLeadingTerm)?;
        let c_inv = c.inverse().ok_or(Error::NonUnitLeadingTerm)?;
        let rel = self.trunc - self.valuation;
        let n = rel as usize + 1;
        let mut b: Vec<Poly<C>> = Vec::with_capacity(n);
        b.push(Poly::constant(&self.ring, c_inv.clone()));
        let neg_c_inv = c_inv.negated();
        for k in 1..n {
            let mut acc = Poly::zero(&self.ring);
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[j];
                if a.is_zero() || b[k - j].is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(&b[k - j]));
            }
            b.push(acc.scale(&neg_c_inv));
        }
        Ok(Self::new(&self.ring, -self.valuation, b, -self.valuation + rel))
    }

    /// Termwise antiderivative with zero constant term.
    pub fn formal_integral(&self) -> Result<Self> {
        if let Some(r) = self.coeff_ref(-1) {
            if !r.is_zero() {
                return Err(Error::NonzeroResidue);
            }
        }
        let coeffs = (self.valuation..=self.trunc)
            .map(|e| {
                let c = self.coeff_ref(e).unwrap();
                if e == -1 || c.is_zero() {
                    Poly::zero(&self.ring)
                } else {
                    c.scale(&C::from_rational(crate::arith::rat(1, e + 1)))
                }
            })
            .collect();
        Ok(Self::new(&self.ring, self.valuation + 1, coeffs, self.trunc + 1))
    }

    /// Termwise derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        let coeffs = (self.valuation..=self.trunc)
            .map(|e| {
                let c = self.coeff_ref(e).unwrap();
                c.scale(&C::from_rational(crate::arith::int(e)))
            })
            .collect();
        Self::new(&self.ring, self.valuation - 1, coeffs, self.trunc - 1)
    }

    /// Coefficient of `t^-1`.
    pub fn residue(&self) -> Result<Poly<C>> {
        self.coeff(-1).ok_or(Error::InsufficientPrecision)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&Poly<C>) -> Poly<D>) -> LaurentSeries<D> {
        LaurentSeries::new(&self.ring, self.valuation, self.coeffs.iter().map(f).collect(), self.trunc)
    }
}

impl<C: Scalar> fmt::Debug for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("({c})*t^{e}")).collect();
        if parts.is_empty() {
            write!(f, "O(t^{})", self.trunc + 1)
        } else {
            write!(f, "{} + O(t^{})", parts.join(" + "), self.trunc + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, parse_poly, rat, CyclotomicScalar, MonomialOrder, PolyRing, Rational};
    use proptest::prelude::*;

    fn ring() -> RingRef {
        PolyRing::with(&["a", "b"], &[4, 6], MonomialOrder::WeightedGrevlex).unwrap()
    }

    fn p(r: &RingRef, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    fn series(r: &RingRef, val: i64, cs: &[&str], trunc: i64) -> LaurentSeries<Rational> {
        LaurentSeries::new(r, val, cs.iter().map(|s| p(r, s)).collect(), trunc)
    }

    #[test]
    fn product_example() {
        let r = ring();
        let a = series(&r, -1, &["1", "1"], 10);
        let b = series(&r, 0, &["-1", "1"], 10);
        let prod = a.mul(&b);
        assert_eq!(prod.valuation(), -1);
        assert_eq!(prod.trunc(), 9);
        assert_eq!(prod.coeff(-1), Some(p(&r, "-1")));
        assert_eq!(prod.coeff(0), Some(p(&r, "0")));
        assert_eq!(prod.coeff(1), Some(p(&r, "1")));
        assert!(prod.terms().count() == 2);
    }

    #[test]
    fn cyclotomic_product_example() {
        let r = ring();
        let zeta = CyclotomicScalar::zeta(4);
        let s = LaurentSeries::monomial(&r, Poly::constant(&r, zeta), -3, 5);
        let sq = s.mul(&s);
        assert_eq!(sq.valuation(), -6);
        assert_eq!(sq.coeff(-6).unwrap(), Poly::constant(&r, CyclotomicScalar::from_rational(int(-1))));
    }

    #[test]
    fn square_example() {
        let r = ring();
        let s = series(&r, 0, &["1", "0", "0", "0", "1/2*a"], 12);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(4), Some(p(&r, "a")));
        assert_eq!(sq.coeff(8), Some(p(&r, "1/4*a^2")));
        assert_eq!(sq.coeff(6), Some(p(&r, "0")));
    }

    #[test]
    fn invert_examples() {
        let r = ring();
        // 2 t^-3 (1 + a t^4)
        let s = series(&r, -3, &["2", "0", "0", "0", "2*a"], 9);
        let inv = s.invert_unit().unwrap();
        assert_eq!(inv.valuation(), 3);
        assert_eq!(inv.coeff(3), Some(p(&r, "1/2")));
        assert_eq!(inv.coeff(7), Some(p(&r, "-1/2*a")));
        assert_eq!(inv.coeff(11), Some(p(&r, "1/2*a^2")));
        let one = s.mul(&inv);
        assert_eq!(one.coeff(0), Some(p(&r, "1")));
        assert!((1..=one.trunc()).all(|e| one.coeff(e).unwrap().is_zero()));

        let unit = LaurentSeries::constant(&r, int(1), 5);
        assert_eq!(unit.invert_unit().unwrap(), unit);

        let bad = series(&r, -1, &["a", "1"], 4);
        assert_eq!(bad.invert_unit(), Err(Error::NonUnitLeadingTerm));
    }

    #[test]
    fn integral_examples() {
        let r = ring();
        let s = series(&r, -2, &["1"], 4);
        let i = s.formal_integral().unwrap();
        assert_eq!(i.valuation(), -1);
        assert_eq!(i.coeff(-1), Some(p(&r, "-1")));
        let q = series(&r, 0, &["1", "0", "3"], 4);
        let iq = q.formal_integral().unwrap();
        assert_eq!(iq.coeff(1), Some(p(&r, "1")));
        assert_eq!(iq.coeff(3), Some(p(&r, "1")));
        assert_eq!(series(&r, -1, &["1"], 4).formal_integral(), Err(Error::NonzeroResidue));
    }

    #[test]
    fn residue_examples() {
        let r = ring();
        assert_eq!(series(&r, -1, &["1", "0", "0", "0", "-1/3*a"], 6).residue(), Ok(p(&r, "1")));
        assert_eq!(series(&r, -2, &["1", "0", "5"], 6).residue(), Ok(p(&r, "0")));
        assert_eq!(series(&r, -1, &["b"], 2).residue(), Ok(p(&r, "b")));
        assert_eq!(series(&r, -4, &["1"], -2).residue(), Err(Error::InsufficientPrecision));
    }

    fn arb_series() -> impl Strategy<Value = LaurentSeries<Rational>> {
        let r = ring();
        (-4i64..=1, prop::collection::vec((-3i64..=3, 0u32..2), 1..7)).prop_map(move |(val, cs)| {
            let coeffs = cs
                .into_iter()
                .map(|(n, a)| {
                    Poly::constant(&r, int(n)).mul(&Poly::var(&r, 0).pow(a))
                })
                .collect::<Vec<_>>();
            let trunc = val + 8;
            LaurentSeries::new(&r, val, coeffs, trunc)
        })
    }

    proptest! {
        #[test]
        fn derivatives_have_no_residue(s in arb_series()) {
            prop_assert!(s.derivative().residue().unwrap().is_zero());
        }

        #[test]
        fn antiderivative_pairing_is_antisymmetric(a in arb_series(), b in arb_series()) {
            // drop residues so the antiderivatives exist
            let kill = |s: &LaurentSeries<Rational>| {
                let r = s.coeff(-1).unwrap_or_else(|| Poly::zero(s.ring()));
                s.sub(&LaurentSeries::monomial(s.ring(), r, -1, s.trunc()))
            };
            let (a, b) = (kill(&a), kill(&b));
            let (ia, ib) = (a.formal_integral().unwrap(), b.formal_integral().unwrap());
            let x = ia.mul(&b);
            let y = ib.mul(&a);
            if x.trunc() >= -1 && y.trunc() >= -1 {
                prop_assert_eq!(x.residue().unwrap().add(&y.residue().unwrap()), Poly::zero(a.ring()));
            }
        }

        #[test]
        fn inverse_times_series_is_one(cs in prop::collection::vec(-3i64..=3, 1..6), lead in 1i64..4) {
            let r = ring();
            let mut coeffs = vec![Poly::constant(&r, rat(lead, 1))];
            coeffs.extend(cs.into_iter().map(|n| Poly::var(&r, 1).scale(&int(n))));
            let s = LaurentSeries::new(&r, -2, coeffs, 7);
            let one = s.mul(&s.invert_unit().unwrap());
            prop_assert_eq!(one.coeff(0).unwrap(), Poly::one(&r));
            for e in 1..=one.trunc() {
                prop_assert!(one.coeff(e).unwrap().is_zero());
            }
        }
    }
}
