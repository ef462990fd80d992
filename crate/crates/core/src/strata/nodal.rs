//! Rational parameter values whose fiber has prescribed nodes.

use rand::Rng;

use crate::arith::{int, MonomialOrder, Poly, PolyRing, Rational};
use crate::error::{Error, Result};
use crate::groebner::{hilbert_data, Budget, Ideal};
use crate::singularity::VersalDeformation;

#[derive(Clone, Debug, PartialEq)]
pub struct NodalPoint {
    pub u: Vec<Rational>,
    /// The constructed nodes `(x, y)`.
    pub nodes: Vec<(Rational, Rational)>,
}

/// Product of univariate polynomials given by ascending coefficients.
fn umul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![int(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// For `y^2 + x^p + …`: `u` with `x^p + Σ u_i g_i = Π (x - s_j)^2 · C(x)`, where
/// `C` is monic of degree `p - 2k` with coefficients `c_{m-2}, …, c_0` given by
/// `tail` (the `x^(m-1)` coefficient is forced by the missing `x^(p-1)` term).
/// The node count is certified by the total Tjurina number.
pub fn a_series_nodal_point(v: &VersalDeformation, nodes: &[Rational], tail: &[Rational]) -> Result<NodalPoint> {
    let (p, q) = v.base.exponents();
    if q != 2 || v.basis.iter().any(|m| m.exps()[1] != 0) {
        return Err(Error::Unsupported("nodal construction by squared factors needs y^2 + x^p".into()));
    }
    let k = nodes.len();
    if 2 * k > p as usize {
        return Err(Error::OutOfRange(format!("{k} nodes on a curve with p = {p}")));
    }
    let m = p as usize - 2 * k;
    if tail.len() != m.saturating_sub(1) {
        return Err(Error::OutOfRange(format!("cofactor tail needs {} coefficients", m.saturating_sub(1))));
    }
    let sum: Rational = nodes.iter().sum();
    let mut cof: Vec<Rational> = tail.iter().rev().cloned().collect();
    if m >= 1 {
        cof.push(int(2) * sum);
    } else if !sum.eq(&int(0)) {
        return Err(Error::Degenerate("node positions must sum to zero".into()));
    }
    cof.push(int(1));
    let mut poly = cof;
    for s in nodes {
        poly = umul(&poly, &[-s.clone(), int(1)]);
        poly = umul(&poly, &[-s.clone(), int(1)]);
    }
    let u: Vec<Rational> = v.basis.iter().map(|g| poly[g.exps()[0] as usize].clone()).collect();
    let pt = NodalPoint { u, nodes: nodes.iter().map(|s| (s.clone(), int(0))).collect() };
    certify(v, &pt)?;
    Ok(pt)
}

/// Solve `F = F_x = F_y = 0` at `(x0, y0)` for the coefficients of `x`, `y`
/// and `1`, the other parameters taking the values in `others` (in basis
/// order, skipping those three).
pub fn node_at(v: &VersalDeformation, x0: &Rational, y0: &Rational, others: &[Rational]) -> Result<NodalPoint> {
    let find = |a: u32, b: u32| v.basis.iter().position(|m| m.exps() == [a, b]);
    let (ix, iy, i1) = match (find(1, 0), find(0, 1), find(0, 0)) {
        (Some(ix), Some(iy), Some(i1)) => (ix, iy, i1),
        _ => return Err(Error::Unsupported("the Milnor basis lacks x, y or 1".into())),
    };
    if others.len() != v.mu() - 3 {
        return Err(Error::OutOfRange(format!("expected {} fixed parameters", v.mu() - 3)));
    }
    let mut u = vec![int(0); v.mu()];
    let mut it = others.iter();
    for (i, slot) in u.iter_mut().enumerate() {
        if i != ix && i != iy && i != i1 {
            *slot = it.next().unwrap().clone();
        }
    }
    // With the three unknowns at zero, F_x(x0,y0) = -u_x, F_y = -u_y, F = -(u_x x0 + u_y y0 + u_1).
    let g = fiber(v, &u)?;
    let at = |p: &Poly| p.evaluate(&[(0, x0.clone()), (1, y0.clone())]).as_constant().unwrap_or_else(|| int(0));
    u[ix] = -at(&g.partial(0)?);
    u[iy] = -at(&g.partial(1)?);
    u[i1] = -at(&g) - &u[ix] * x0 - &u[iy] * y0;
    let pt = NodalPoint { u, nodes: vec![(x0.clone(), y0.clone())] };
    certify(v, &pt)?;
    Ok(pt)
}

/// `F(x, y, u)` as a polynomial in `x, y` with standard grading.
fn fiber(v: &VersalDeformation, u: &[Rational]) -> Result<Poly> {
    let ring = PolyRing::with(&["x", "y"], &[1, 1], MonomialOrder::WeightedGrevlex)?;
    let assignment: Vec<(usize, Rational)> = u.iter().enumerate().map(|(i, c)| (i + 2, c.clone())).collect();
    let f = v.f().evaluate(&assignment);
    Ok(Poly::from_terms(&ring, f.terms().iter().map(|(m, c)| (crate::arith::Monomial::from_exps(&m.exps()[..2]), c.clone()))))
}

/// `dim Q[x,y]/(F_u, ∂_x F_u, ∂_y F_u)`, the sum of the Tjurina numbers of
/// the singular points of the affine fiber.
pub fn tjurina_total(v: &VersalDeformation, u: &[Rational]) -> Result<usize> {
    let f = fiber(v, u)?;
    let ideal = Ideal::new(f.ring(), vec![f.clone(), f.partial(0)?, f.partial(1)?]);
    let budget = Budget::unlimited();
    if ideal.is_unit(&budget)? {
        return Ok(0);
    }
    let lm = ideal.leading_monomials(&budget)?;
    let h = hilbert_data(2, &lm)?;
    if h.dimension > 0 {
        return Err(Error::NonIsolated);
    }
    Ok(h.degree as usize)
}

/// The constructed points are singular and account for the whole Tjurina
/// number, so each is a node and there are no other singularities.
fn certify(v: &VersalDeformation, pt: &NodalPoint) -> Result<()> {
    for (i, a) in pt.nodes.iter().enumerate() {
        if pt.nodes[..i].contains(a) {
            return Err(Error::Degenerate("repeated node".into()));
        }
    }
    let f = fiber(v, &pt.u)?;
    for (x0, y0) in &pt.nodes {
        for g in [f.clone(), f.partial(0)?, f.partial(1)?] {
            if !g.evaluate(&[(0, x0.clone()), (1, y0.clone())]).is_zero() {
                return Err(Error::Degenerate("constructed point is not singular".into()));
            }
        }
    }
    let tau = tjurina_total(v, &pt.u)?;
    if tau != pt.nodes.len() {
        return Err(Error::Degenerate(format!("total Tjurina number {tau} for {} nodes", pt.nodes.len())));
    }
    Ok(())
}

/// A certified point with exactly `k` nodes, nodes and cofactor drawn from
/// small integers; degenerate draws are retried.
pub fn random_a_series_point(v: &VersalDeformation, k: usize, rng: &mut impl Rng) -> Result<NodalPoint> {
    let p = v.base.exponents().0 as usize;
    if 2 * k > p {
        return Err(Error::OutOfRange(format!("{k} nodes on a curve with p = {p}")));
    }
    let tail_len = (p - 2 * k).saturating_sub(1);
    for _ in 0..1000 {
        let nodes: Vec<Rational> = (0..k).map(|_| int(rng.gen_range(-6..=6))).collect();
        let tail: Vec<Rational> = (0..tail_len).map(|_| int(rng.gen_range(-6..=6))).collect();
        match a_series_nodal_point(v, &nodes, &tail) {
            Ok(pt) => return Ok(pt),
            Err(Error::Degenerate(_)) | Err(Error::NonIsolated) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate("no admissible sample found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singularity::CurveSingularity;
    use rand::SeedableRng;

    fn versal(label: &str) -> VersalDeformation {
        CurveSingularity::catalog(label).unwrap().versal().unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn a4_constructions() {
        let v = versal("A4");
        let one = a_series_nodal_point(&v, &ints(&[1]), &ints(&[0, 1])).unwrap();
        assert_eq!(one.u, ints(&[-3, 3, -2, 1]));
        let two = a_series_nodal_point(&v, &ints(&[0, 1]), &[]).unwrap();
        assert_eq!(two.u, ints(&[-3, 2, 0, 0]));
        // (x-1)^2 (x^3 + 2x^2 - 3x) has a root at 1 again: a tacnode-like degeneration
        assert!(matches!(a_series_nodal_point(&v, &ints(&[1]), &ints(&[-3, 0])), Err(Error::Degenerate(_)) | Err(Error::NonIsolated)));
    }

    #[test]
    fn e6_node() {
        let v = versal("E6");
        let pt = node_at(&v, &int(1), &int(1), &ints(&[0, 0, 0])).unwrap();
        assert_eq!(pt.u, ints(&[0, 0, 0, -3, -4, 5]));
    }

    #[test]
    fn tjurina_of_the_origin() {
        let v = versal("A4");
        assert_eq!(tjurina_total(&v, &ints(&[0, 0, 0, 0])).unwrap(), 4);
        assert_eq!(tjurina_total(&v, &ints(&[1, 1, 1, 1])).unwrap(), 0);
    }

    #[test]
    fn random_points_are_certified() {
        let v = versal("A6");
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for k in 0..=3 {
            let pt = random_a_series_point(&v, k, &mut rng).unwrap();
            assert_eq!(pt.nodes.len(), k);
            assert_eq!(tjurina_total(&v, &pt.u).unwrap(), k);
        }
    }
}
