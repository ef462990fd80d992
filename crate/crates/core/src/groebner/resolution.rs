//! Syzygies and graded minimal free resolutions.

use num_bigint::BigInt;
use num_traits::One;

use super::buchberger::groebner;
use super::modframe::certified_betti;
use super::schreyer::frame_betti;
use super::ideal::Ideal;
use super::vector::{ModuleOrder, Term, Vector};
use super::Budget;
use crate::arith::{Matrix, Monomial, Poly, Rational, RingRef};
use crate::error::{Error, Result};

/// Total Betti numbers `β_0, β_1, …` of `R/I` starting with the number of
/// minimal generators of `I`; the length is the projective dimension of `R/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub ranks: Vec<usize>,
}

impl BettiTable {
    pub fn projective_dimension(&self) -> usize {
        self.ranks.len()
    }
}

/// `R/I ← R ← F_0 ← F_1 ← …`; `maps[0]` is the `1 × β_0` row of generators and
/// `maps[k]` is `β_{k-1} × β_k`. `degrees[k]` holds the weighted degrees of the
/// basis of `F_k`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub maps: Vec<Matrix>,
    pub degrees: Vec<Vec<i64>>,
}

impl FreeResolution {
    pub fn betti(&self) -> BettiTable {
        BettiTable { ranks: self.maps.iter().map(|m| m.ncols()).collect() }
    }

    /// Consecutive maps compose to zero.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No map has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps[1..]
            .iter()
            .all(|m| m.entries().iter().all(|p| p.is_zero() || p.as_constant().is_none()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub codim: usize,
    pub pd: usize,
    pub depth: usize,
    pub cohen_macaulay: bool,
}

/// Gröbner basis of the syzygy module of `vs`, computed by eliminating the
/// module part of `(v_i, e_i)`. Returns the syzygies and their module order.
fn syzygy_basis(vs: &[Vector], ord: &ModuleOrder, budget: &Budget) -> Result<(Vec<Vector>, ModuleOrder)> {
    let r = ord.rank() as u32;
    let degs: Vec<i64> = vs.iter().map(|v| v.sugar(ord)).collect();
    let mut shifts = ord.shifts.clone();
    shifts.extend(&degs);
    let ext_ord = ModuleOrder { ring: ord.ring.clone(), shifts, elim: r, schreyer: None };
    let n = ord.ring.nvars();
    let ext: Vec<Vector> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut w = v.clone();
            w.terms.push(Term { mon: Monomial::one(n), comp: r + i as u32, coef: BigInt::one() });
            w.sort(&ext_ord);
            w
        })
        .collect();
    let out = groebner(&ext, &ext_ord, budget, false)?;
    let syz_ord = ModuleOrder::new(&ord.ring, degs);
    let syz = out
        .basis
        .into_iter()
        .filter(|v| v.lead().unwrap().comp >= r)
        .map(|mut v| {
            for t in &mut v.terms {
                t.comp -= r;
            }
            v.sort(&syz_ord);
            v
        })
        .collect();
    Ok((syz, syz_ord))
}

fn minimal_subset(vs: Vec<Vector>, ord: &ModuleOrder, budget: &Budget) -> Result<Vec<Vector>> {
    let out = groebner(&vs, ord, budget, false)?;
    Ok(out.minimal.iter().map(|&k| vs[k].clone()).collect())
}

fn to_matrix(ring: &RingRef, rank: usize, cols: &[Vector]) -> Matrix {
    let one = Rational::one();
    let cols: Vec<Vec<Poly>> = cols.iter().map(|v| v.to_polys(ring, rank, &one)).collect();
    Matrix::from_fn(ring, rank, cols.len(), |i, j| cols[j][i].clone())
}

/// Generators of the module of relations among the columns (each of length
/// `rank`), whose basis elements carry the given degree `shifts`.
pub fn syzygies(ring: &RingRef, columns: &[Vec<Poly>], shifts: &[i64], budget: &Budget) -> Result<Vec<Vec<Poly>>> {
    let ord = ModuleOrder::new(ring, shifts.to_vec());
    let vs: Vec<Vector> = columns.iter().map(|c| Vector::from_polys(c, &ord).0).collect();
    let homogeneous = vs.iter().all(|v| v.is_homogeneous(&ord));
    let (syz, syz_ord) = syzygy_basis(&vs, &ord, budget)?;
    let syz = if homogeneous { minimal_subset(syz, &syz_ord, budget)? } else { syz };
    let one = Rational::one();
    Ok(syz.iter().map(|v| v.to_polys(ring, columns.len(), &one)).collect())
}

impl Ideal {
    /// Minimal graded free resolution by iterated minimal syzygies.
    pub fn minimal_resolution(&self, budget: &Budget) -> Result<FreeResolution> {
        let gens = self.minimal_generators(budget)?;
        let ring = self.ring().clone();
        let mut ord = ModuleOrder::ideal(&ring);
        let mut cur: Vec<Vector> = gens.iter().map(|g| Vector::from_polys(std::slice::from_ref(g), &ord).0).collect();
        let mut maps = vec![Matrix::from_fn(&ring, 1, gens.len(), |_, j| gens[j].clone())];
        let mut degrees = vec![cur.iter().map(|v| v.sugar(&ord)).collect::<Vec<_>>()];
        loop {
            budget.check()?;
            let (syz, syz_ord) = syzygy_basis(&cur, &ord, budget)?;
            if syz.is_empty() {
                break;
            }
            let next = minimal_subset(syz, &syz_ord, budget)?;
            maps.push(to_matrix(&ring, cur.len(), &next));
            degrees.push(next.iter().map(|v| v.sugar(&syz_ord)).collect());
            cur = next;
            ord = syz_ord;
        }
        Ok(FreeResolution { maps, degrees })
    }

    /// Betti numbers from the Schreyer frame of the Gröbner basis, without
    /// building the minimal maps. A modular frame is tried first; the exact one
    /// runs only if its graded table leaves room for cancellation.
    pub fn betti(&self, budget: &Budget) -> Result<BettiTable> {
        if !self.is_homogeneous() {
            return Err(Error::NotGraded);
        }
        let ord = ModuleOrder::ideal(self.ring());
        let g0: Vec<Vector> = self
            .groebner_basis(budget)?
            .iter()
            .map(|p| Vector::from_polys(std::slice::from_ref(p), &ord).0)
            .collect();
        if let Some(ranks) = certified_betti(self.ring(), &g0, budget)? {
            return Ok(BettiTable { ranks });
        }
        Ok(BettiTable { ranks: frame_betti(g0, &ord, budget)? })
    }

    /// Codimension, projective dimension and depth of `R/I`; Cohen–Macaulay
    /// exactly when the projective dimension equals the codimension.
    pub fn is_cohen_macaulay(&self, budget: &Budget) -> Result<CmReport> {
        if self.generators().is_empty() {
            return Err(Error::Degenerate("zero ideal".into()));
        }
        let codim = self.codimension(budget)?;
        let pd = self.betti(budget)?.projective_dimension();
        let n = self.ring().nvars();
        Ok(CmReport { codim, pd, depth: n - pd, cohen_macaulay: pd == codim })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, MonomialOrder, PolyRing};

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    #[test]
    fn twisted_cubic_resolution() {
        let r = PolyRing::with(&["a", "b", "c", "d"], &[1, 1, 1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let i = ideal(&r, &["a*c - b^2", "b*d - c^2", "a*d - b*c"]);
        let b = Budget::unlimited();
        let res = i.minimal_resolution(&b).unwrap();
        assert_eq!(res.betti().ranks, vec![3, 2]);
        assert_eq!(res.degrees, vec![vec![2, 2, 2], vec![3, 3]]);
        assert!(res.is_complex().unwrap());
        assert!(res.is_minimal());
        let cm = i.is_cohen_macaulay(&b).unwrap();
        assert_eq!(cm, CmReport { codim: 2, pd: 2, depth: 2, cohen_macaulay: true });
    }

    #[test]
    fn koszul_complex() {
        let r = PolyRing::with(&["x", "y", "z"], &[1, 2, 3], MonomialOrder::WeightedGrevlex).unwrap();
        let i = ideal(&r, &["x", "y", "z", "x*z + y^2"]);
        let res = i.minimal_resolution(&Budget::unlimited()).unwrap();
        assert_eq!(res.betti().ranks, vec![3, 3, 1]);
        assert!(res.is_complex().unwrap());
        assert!(res.is_minimal());
    }

    #[test]
    fn non_cm_example() {
        // two skew lines in P^3: codim 2, pd 3
        let r = PolyRing::with(&["a", "b", "c", "d"], &[1, 1, 1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let i = ideal(&r, &["a*c", "a*d", "b*c", "b*d"]);
        let b = Budget::unlimited();
        assert_eq!(i.betti(&b).unwrap().ranks, vec![4, 4, 1]);
        let cm = i.is_cohen_macaulay(&b).unwrap();
        assert_eq!((cm.codim, cm.pd, cm.cohen_macaulay), (2, 3, false));
    }

    #[test]
    fn betti_independent_of_graded_order() {
        let r = PolyRing::with(&["a", "b", "c"], &[1, 2, 3], MonomialOrder::WeightedGrevlex).unwrap();
        let gens = ["a^3 - a*b", "a*c - b^2", "b*c - a^5"];
        let b = Budget::unlimited();
        let first = ideal(&r, &gens).betti(&b).unwrap();
        let r2 = r.with_order(MonomialOrder::TangentCone).unwrap();
        let second = ideal(&r2, &gens).betti(&b).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let r = PolyRing::with(&["a", "b"], &[1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        assert_eq!(ideal(&r, &["a + b^2"]).minimal_resolution(&Budget::unlimited()).err(), Some(Error::NotGraded));
    }

    #[test]
    fn syzygies_of_columns() {
        let r = PolyRing::with(&["x", "y"], &[1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let cols = vec![vec![parse_poly(&r, "x").unwrap()], vec![parse_poly(&r, "y").unwrap()]];
        let s = syzygies(&r, &cols, &[0], &Budget::unlimited()).unwrap();
        assert_eq!(s.len(), 1);
        let rel = s[0][0].mul(&cols[0][0]).add(&s[0][1].mul(&cols[1][0]));
        assert!(rel.is_zero());
    }
}
