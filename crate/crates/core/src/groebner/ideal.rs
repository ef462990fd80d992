use std::sync::OnceLock;

use super::buchberger::{groebner, normal_form};
use super::hilbert::{hilbert_data, independent_set_dimension, HilbertData};
use super::vector::{ModuleOrder, Vector};
use super::Budget;
use crate::arith::{Monomial, MonomialOrder, Poly, Rational, RingRef};
use crate::error::{Error, Result};

fn into_ring(p: &Poly, ring: &RingRef) -> Poly {
    if p.ring() == ring {
        p.clone()
    } else {
        p.reorder(ring)
    }
}

fn monic_polys(basis: &[Vector], ring: &RingRef) -> Vec<Poly> {
    basis
        .iter()
        .map(|v| {
            let lc = Rational::from_integer(v.lead().unwrap().coef.clone());
            v.to_polys(ring, 1, &lc.recip()).pop().unwrap()
        })
        .collect()
}

/// Ideal of a polynomial ring, with its reduced Gröbner basis cached on first use.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Ideal {
    /// Zero generators are dropped; generators are moved into `ring`'s order.
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Self {
        let gens = gens.iter().filter(|p| !p.is_zero()).map(|p| into_ring(p, ring)).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Every generator is weighted homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|p| p.homogeneous_degree().is_some())
    }

    fn vectors(&self, ord: &ModuleOrder) -> Vec<Vector> {
        self.gens
            .iter()
            .map(|p| Vector::from_polys(&[into_ring(p, &ord.ring)], ord).0)
            .collect()
    }

    /// Reduced, monic Gröbner basis, sorted by increasing leading monomial.
    pub fn groebner_basis(&self, budget: &Budget) -> Result<&[Poly]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let ord = ModuleOrder::ideal(&self.ring);
        let out = groebner(&self.vectors(&ord), &ord, budget, true)?;
        Ok(self.gb.get_or_init(|| monic_polys(&out.basis, &self.ring)))
    }

    /// Reduced basis under another order on the same variables.
    pub fn groebner_basis_under(&self, order: MonomialOrder, budget: &Budget) -> Result<Vec<Poly>> {
        let ring = self.ring.with_order(order)?;
        let ord = ModuleOrder::ideal(&ring);
        let out = groebner(&self.vectors(&ord), &ord, budget, true)?;
        Ok(monic_polys(&out.basis, &ring))
    }

    pub fn leading_monomials(&self, budget: &Budget) -> Result<Vec<Monomial>> {
        Ok(self
            .groebner_basis(budget)?
            .iter()
            .map(|p| p.lead_monomial().unwrap().clone())
            .collect())
    }

    /// Remainder on division by the reduced basis.
    pub fn normal_form(&self, p: &Poly, budget: &Budget) -> Result<Poly> {
        let p = into_ring(p, &self.ring);
        if p.is_zero() {
            return Ok(p);
        }
        let ord = ModuleOrder::ideal(&self.ring);
        let basis: Vec<Vector> = self
            .groebner_basis(budget)?
            .iter()
            .map(|g| Vector::from_polys(std::slice::from_ref(g), &ord).0)
            .collect();
        let (v, c) = Vector::from_polys(&[p], &ord);
        let (r, c2) = normal_form(&v, &basis, &ord, budget)?;
        Ok(r.to_polys(&self.ring, 1, &(c * c2)).pop().unwrap())
    }

    pub fn contains(&self, p: &Poly, budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(p, budget)?.is_zero())
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.groebner_basis(budget)?.iter().any(|g| g.as_constant().is_some()))
    }

    /// Krull dimension of the quotient ring, from maximal independent sets.
    pub fn dimension(&self, budget: &Budget) -> Result<usize> {
        let lm = self.leading_monomials(budget)?;
        independent_set_dimension(self.ring.nvars(), &lm)
    }

    pub fn codimension(&self, budget: &Budget) -> Result<usize> {
        Ok(self.ring.nvars() - self.dimension(budget)?)
    }

    /// Hilbert data of the tangent cone at the origin (standard grading). For a
    /// weighted-homogeneous ideal its degree is the multiplicity of the variety
    /// at the origin, and equals the usual degree when the ideal is also
    /// homogeneous in the standard grading.
    pub fn tangent_cone_hilbert(&self, budget: &Budget) -> Result<HilbertData> {
        if !self.is_homogeneous() {
            return Err(Error::NotGraded);
        }
        let basis = self.groebner_basis_under(MonomialOrder::TangentCone, budget)?;
        let lm: Vec<Monomial> = basis.iter().map(|p| p.lead_monomial().unwrap().clone()).collect();
        hilbert_data(self.ring.nvars(), &lm)
    }

    pub fn degree(&self, budget: &Budget) -> Result<u64> {
        Ok(self.tangent_cone_hilbert(budget)?.degree)
    }

    /// A minimal homogeneous generating set chosen among the given generators.
    pub fn minimal_generators(&self, budget: &Budget) -> Result<Vec<Poly>> {
        if !self.is_homogeneous() {
            return Err(Error::NotGraded);
        }
        let ord = ModuleOrder::ideal(&self.ring);
        let out = groebner(&self.vectors(&ord), &ord, budget, false)?;
        Ok(out.minimal.iter().map(|&k| self.gens[k].clone()).collect())
    }

    /// Same variables and the same ideal, tested by reduced bases.
    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        ideal_equal(self, other, budget)
    }
}

/// Whether two ideals of the same variables coincide.
pub fn ideal_equal(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool> {
    if a.ring.names() != b.ring.names() {
        return Err(Error::RingMismatch("ideals live in different variables".into()));
    }
    let b = if b.ring == a.ring { b.clone() } else { Ideal::new(&a.ring, b.gens.clone()) };
    Ok(a.groebner_basis(budget)? == b.groebner_basis(budget)?)
}

/// Submodule of a free module `R^rank`, generated by vectors of polynomials.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: RingRef,
    rank: usize,
    gens: Vec<Vec<Poly>>,
    gb: OnceLock<Vec<Vector>>,
}

impl Submodule {
    pub fn new(ring: &RingRef, rank: usize, gens: Vec<Vec<Poly>>) -> Result<Self> {
        if gens.iter().any(|g| g.len() != rank) {
            return Err(Error::Matrix("generator length differs from the module rank".into()));
        }
        let gens = gens
            .into_iter()
            .filter(|g| g.iter().any(|p| !p.is_zero()))
            .map(|g| g.iter().map(|p| into_ring(p, ring)).collect())
            .collect();
        Ok(Submodule { ring: ring.clone(), rank, gens, gb: OnceLock::new() })
    }

    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.gens
    }

    fn order(&self) -> ModuleOrder {
        ModuleOrder::new(&self.ring, vec![0; self.rank])
    }

    fn basis(&self, budget: &Budget) -> Result<&[Vector]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let ord = self.order();
        let vs: Vec<Vector> = self.gens.iter().map(|g| Vector::from_polys(g, &ord).0).collect();
        let out = groebner(&vs, &ord, budget, true)?;
        Ok(self.gb.get_or_init(|| out.basis))
    }

    /// Reduced basis as vectors of polynomials with monic leading entries.
    pub fn groebner_basis(&self, budget: &Budget) -> Result<Vec<Vec<Poly>>> {
        let basis = self.basis(budget)?;
        Ok(basis
            .iter()
            .map(|v| {
                let lc = Rational::from_integer(v.lead().unwrap().coef.clone());
                v.to_polys(&self.ring, self.rank, &lc.recip())
            })
            .collect())
    }

    pub fn normal_form(&self, v: &[Poly], budget: &Budget) -> Result<Vec<Poly>> {
        if v.len() != self.rank {
            return Err(Error::Matrix("vector length differs from the module rank".into()));
        }
        let v: Vec<Poly> = v.iter().map(|p| into_ring(p, &self.ring)).collect();
        if v.iter().all(|p| p.is_zero()) {
            return Ok(v);
        }
        let ord = self.order();
        let (x, c) = Vector::from_polys(&v, &ord);
        let (r, c2) = normal_form(&x, self.basis(budget)?, &ord, budget)?;
        Ok(r.to_polys(&self.ring, self.rank, &(c * c2)))
    }

    pub fn contains(&self, v: &[Poly], budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(v, budget)?.iter().all(|p| p.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, PolyRing};

    fn ring4() -> RingRef {
        PolyRing::with(&["a", "b", "c", "d"], &[4, 6, 8, 10], MonomialOrder::WeightedGrevlex).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    fn p(r: &RingRef, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn basis_examples() {
        let r = PolyRing::with(&["x", "y"], &[1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let b = Budget::unlimited();
        assert_eq!(ideal(&r, &["x"]).groebner_basis(&b).unwrap(), &[p(&r, "x")]);
        let r2 = PolyRing::with(&["a", "b"], &[2, 3], MonomialOrder::WeightedGrevlex).unwrap();
        let i = ideal(&r2, &["4a^3 + 27b^2"]);
        assert_eq!(i.groebner_basis(&b).unwrap(), &[p(&r2, "a^3 + 27/4*b^2")]);
    }

    #[test]
    fn normal_form_examples() {
        let r = PolyRing::with(&["x", "y"], &[1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let b = Budget::unlimited();
        let i = ideal(&r, &["x"]);
        assert!(i.normal_form(&p(&r, "x^2"), &b).unwrap().is_zero());
        assert_eq!(i.normal_form(&p(&r, "x + 1"), &b).unwrap(), p(&r, "1"));
    }

    #[test]
    fn equality_examples() {
        let r = ring4();
        let b = Budget::unlimited();
        assert!(ideal_equal(&ideal(&r, &["a"]), &ideal(&r, &["2a"]), &b).unwrap());
        assert!(!ideal_equal(&ideal(&r, &["a"]), &ideal(&r, &["a", "b"]), &b).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = ring4();
        let b = Budget::unlimited();
        assert_eq!(ideal(&r, &["a", "b"]).dimension(&b).unwrap(), 2);
        assert_eq!(ideal(&r, &["a", "1"]).dimension(&b), Err(Error::EmptyVariety));
    }

    #[test]
    fn cusp_multiplicity() {
        // 4a^3 + 27b^2 has multiplicity 2 at the origin
        let r = PolyRing::with(&["a", "b"], &[2, 3], MonomialOrder::WeightedGrevlex).unwrap();
        let i = ideal(&r, &["4a^3 + 27b^2"]);
        assert_eq!(i.degree(&Budget::unlimited()).unwrap(), 2);
    }

    #[test]
    fn twisted_cubic() {
        let r = PolyRing::with(&["a", "b", "c", "d"], &[1, 1, 1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let i = ideal(&r, &["a*c - b^2", "b*d - c^2", "a*d - b*c"]);
        let b = Budget::unlimited();
        assert_eq!(i.dimension(&b).unwrap(), 2);
        assert_eq!(i.degree(&b).unwrap(), 3);
        assert_eq!(i.minimal_generators(&b).unwrap().len(), 3);
    }

    #[test]
    fn lex_elimination() {
        let r = PolyRing::with(&["x", "y"], &[1, 1], MonomialOrder::Lex).unwrap();
        let i = ideal(&r, &["x^2 + y^2 - 1", "x - y"]);
        let gb = i.groebner_basis(&Budget::unlimited()).unwrap().to_vec();
        assert_eq!(gb, vec![p(&r, "y^2 - 1/2"), p(&r, "x - y")]);
    }

    #[test]
    fn submodule_membership() {
        let r = PolyRing::with(&["x", "y"], &[1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let m = Submodule::new(&r, 2, vec![vec![p(&r, "x"), p(&r, "y")], vec![p(&r, "y"), p(&r, "0")]]).unwrap();
        let b = Budget::unlimited();
        assert!(m.contains(&[p(&r, "x^2 + y^2"), p(&r, "x*y")], &b).unwrap());
        assert!(!m.contains(&[p(&r, "1"), p(&r, "0")], &b).unwrap());
        // y * (x, y) - x * (y, 0) = (0, y^2)
        assert!(m.contains(&[p(&r, "0"), p(&r, "y^2")], &b).unwrap());
        assert!(!m.contains(&[p(&r, "0"), p(&r, "x")], &b).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring4();
        let i = ideal(&r, &["a^3*b + b^3 - a*b*c", "a^4 + c^2 - a*d", "a^3*c + d^2 - a*b*d"]);
        let past = Budget::until(std::time::Instant::now() - std::time::Duration::from_secs(1));
        assert_eq!(i.groebner_basis(&past).err(), Some(Error::BudgetExceeded));
    }

    /// Plain rational multivariate division, independent of the engine.
    fn naive_remainder(p: &Poly, basis: &[Poly]) -> Poly {
        let mut p = p.clone();
        let mut rem = Poly::zero(p.ring());
        while let Some(lm) = p.lead_monomial().cloned() {
            let lc = p.lead_coeff().unwrap().clone();
            match basis.iter().find(|g| g.lead_monomial().unwrap().divides(&lm)) {
                Some(g) => {
                    let q = lm.div(g.lead_monomial().unwrap()).unwrap();
                    let c = lc / g.lead_coeff().unwrap();
                    p = p.sub(&g.mul_term(&q, &c));
                }
                None => {
                    let t = Poly::monomial(p.ring(), lm, lc);
                    rem = rem.add(&t);
                    p = p.sub(&t);
                }
            }
        }
        rem
    }

    fn arb_poly(r: RingRef) -> impl proptest::strategy::Strategy<Value = Poly> {
        use proptest::prelude::*;
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..=3), 1..4).prop_map(move |ts| {
            Poly::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e), crate::arith::int(c))))
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn buchberger_criterion_holds(
            gens in proptest::collection::vec(
                arb_poly(PolyRing::with(&["x", "y", "z"], &[1, 2, 1], MonomialOrder::WeightedGrevlex).unwrap()),
                1..4,
            )
        ) {
            let r = gens[0].ring().clone();
            let b = Budget::unlimited();
            let i = Ideal::new(&r, gens.clone());
            let gb = i.groebner_basis(&b).unwrap().to_vec();
            for g in &gens {
                proptest::prop_assert!(naive_remainder(g, &gb).is_zero());
            }
            for (k, f) in gb.iter().enumerate() {
                proptest::prop_assert!(*f.lead_coeff().unwrap() == crate::arith::int(1));
                for g in &gb[k + 1..] {
                    let (a, c) = (f.lead_monomial().unwrap(), g.lead_monomial().unwrap());
                    let l = a.lcm(c);
                    let one = crate::arith::int(1);
                    let s = f.mul_term(&l.div(a).unwrap(), &one).sub(&g.mul_term(&l.div(c).unwrap(), &one));
                    proptest::prop_assert!(naive_remainder(&s, &gb).is_zero());
                }
            }
            // the reduced basis does not depend on the generator order
            let mut rev = gens.clone();
            rev.reverse();
            let other = Ideal::new(&r, rev);
            proptest::prop_assert_eq!(other.groebner_basis(&b).unwrap(), &gb[..]);
        }
    }
}
