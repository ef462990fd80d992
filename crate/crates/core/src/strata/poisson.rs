//! The Poisson bracket of the symplectic form and involutivity checks.

use crate::arith::{Matrix, Poly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal, Submodule};

/// `W^-1 = adj(W) / det W`, polynomial because `det W` is a nonzero constant.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    w: Matrix,
    inverse: Matrix,
    det: Rational,
}

impl PoissonStructure {
    pub fn new(w: &Matrix) -> Result<Self> {
        if !w.is_skew() {
            return Err(Error::Matrix("W is not skew".into()));
        }
        let det = w.det()?;
        let det = match det.as_constant() {
            Some(c) if !Scalar::is_zero(&c) => c,
            _ => return Err(Error::Degenerate(format!("det W = {det} is not a nonzero constant"))),
        };
        let inverse = w.adjugate()?.scale(&det.recip());
        Ok(PoissonStructure { w: w.clone(), inverse, det })
    }

    pub fn w(&self) -> &Matrix {
        &self.w
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn det(&self) -> &Rational {
        &self.det
    }

    fn gradient(&self, f: &Poly) -> Result<Vec<Poly>> {
        (0..self.w.nrows()).map(|i| f.partial(i)).collect()
    }

    /// `{f, g} = -(∇f)^t W^-1 ∇g`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let df = self.gradient(f)?;
        let dg = self.gradient(g)?;
        let mut acc = Poly::zero(self.w.ring());
        for (i, fi) in df.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in dg.iter().enumerate() {
                let c = self.inverse.get(i, j);
                if gj.is_zero() || c.is_zero() {
                    continue;
                }
                acc = acc.sub(&fi.mul(c).mul(gj));
            }
        }
        Ok(acc)
    }

    /// `{g_i, g_j} ∈ I` for all pairs of (minimal, when graded) generators.
    pub fn is_closed(&self, ideal: &Ideal, budget: &Budget) -> Result<bool> {
        let gens = if ideal.is_homogeneous() { ideal.minimal_generators(budget)? } else { ideal.generators().to_vec() };
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                budget.check()?;
                if !ideal.contains(&self.bracket(&gens[i], &gens[j])?, budget)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The Jacobi identity on all triples of coordinate functions.
    pub fn jacobi_holds(&self) -> Result<bool> {
        let n = self.w.nrows();
        let ring = self.w.ring();
        let coord: Vec<Poly> = (0..n).map(|i| Poly::var(ring, i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = self
                        .bracket(&coord[i], &self.bracket(&coord[j], &coord[k])?)?
                        .add(&self.bracket(&coord[j], &self.bracket(&coord[k], &coord[i])?)?)
                        .add(&self.bracket(&coord[k], &self.bracket(&coord[i], &coord[j])?)?);
                    if !s.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieCheck {
    Closed,
    NotClosed,
    Inconclusive,
}

/// Whether the module of vector fields spanned by `fields` (component lists)
/// is closed under the Lie bracket.
pub fn lie_closure(fields: &[Vec<Poly>], budget: &Budget) -> Result<LieCheck> {
    let Some(first) = fields.first() else { return Ok(LieCheck::Closed) };
    let ring = first[0].ring().clone();
    let n = first.len();
    let module = Submodule::new(&ring, n, fields.to_vec())?;
    let apply = |x: &[Poly], f: &Poly| -> Result<Poly> {
        let mut acc = Poly::zero(&ring);
        for (k, xk) in x.iter().enumerate() {
            if !xk.is_zero() {
                acc = acc.add(&xk.mul(&f.partial(k)?));
            }
        }
        Ok(acc)
    };
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let mut bracket = Vec::with_capacity(n);
            for c in 0..n {
                bracket.push(apply(&fields[i], &fields[j][c])?.sub(&apply(&fields[j], &fields[i][c])?));
            }
            match module.contains(&bracket, budget) {
                Ok(true) => {}
                Ok(false) => return Ok(LieCheck::NotClosed),
                Err(Error::BudgetExceeded) => return Ok(LieCheck::Inconclusive),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(LieCheck::Closed)
}

/// Lie closure of the vector fields given by the columns of `χ W χ`.
pub fn lie_closure_check(chi: &Matrix, w: &Matrix, budget: &Budget) -> Result<LieCheck> {
    let m = chi.mul(w)?.mul(chi)?;
    let fields: Vec<Vec<Poly>> = (0..m.ncols()).map(|j| m.column(j)).collect();
    lie_closure(&fields, budget)
}
