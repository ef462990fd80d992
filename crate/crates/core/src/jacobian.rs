//! The relative Jacobian algebra `O_Σ = Q[u][x,y]/(F_x, F_y)`, free over `Q[u]`
//! on the Milnor basis; residue-dual basis via the Bezoutian; Saito matrix.

use crate::arith::{Matrix, Monomial, MonomialOrder, Poly, PolyRing, Rational, RingRef, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::singularity::VersalDeformation;

/// Coordinates over `Q[u]` (polynomials of the parameter ring) in the Milnor basis.
pub type SigmaElement = Vec<Poly>;

#[derive(Clone, Debug)]
pub struct JacobianModule {
    versal: VersalDeformation,
    jac: Ideal,
    dual: Matrix,
}

/// `(h(x,y) - h(X,y)) / (x - X)` and `(h(X,y) - h(X,Y)) / (y - Y)` for `h` in
/// the ring `x, y, u…`, landing in `x, y, X, Y, u…`.
fn difference_quotients(h: &Poly, target: &RingRef) -> (Poly, Poly) {
    let n = target.nvars();
    let mut dx = Vec::new();
    let mut dy = Vec::new();
    for (m, c) in h.terms() {
        let e = m.exps();
        let (a, b) = (e[0], e[1]);
        let mut base = Monomial::one(n);
        for (k, &u) in e[2..].iter().enumerate() {
            base.0[4 + k] = u;
        }
        for k in 0..a {
            let mut t = base.clone();
            t.0[0] = k;
            t.0[2] = a - 1 - k;
            t.0[1] = b;
            dx.push((t, c.clone()));
        }
        for k in 0..b {
            let mut t = base.clone();
            t.0[2] = a;
            t.0[1] = k;
            t.0[3] = b - 1 - k;
            dy.push((t, c.clone()));
        }
    }
    (Poly::from_terms(target, dx), Poly::from_terms(target, dy))
}

impl JacobianModule {
    pub fn new(v: &VersalDeformation) -> Result<Self> {
        let ring = v.ring().clone();
        let fx = v.f().partial(0)?;
        let fy = v.f().partial(1)?;
        let jac = Ideal::new(&ring, vec![fx.clone(), fy.clone()]);
        let mut m = JacobianModule { versal: v.clone(), jac, dual: Matrix::zeros(v.params_ring(), 0, 0) };
        m.dual = m.bezoutian(&fx, &fy)?;
        Ok(m)
    }

    pub fn versal(&self) -> &VersalDeformation {
        &self.versal
    }

    pub fn mu(&self) -> usize {
        self.versal.mu()
    }

    fn basis_index(&self, x: u32, y: u32) -> Option<usize> {
        self.versal.basis.iter().position(|g| g.exps() == [x, y])
    }

    /// Coordinates of the class of `p` (a polynomial in `x, y, u`).
    pub fn to_sigma(&self, p: &Poly) -> Result<SigmaElement> {
        let nf = self.jac.normal_form(p, &Budget::unlimited())?;
        let mu = self.mu();
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); mu];
        for (m, c) in nf.terms() {
            let e = m.exps();
            let k = self.basis_index(e[0], e[1]).ok_or(Error::BasisMismatch)?;
            parts[k].push((Monomial::from_exps(&e[2..]), c.clone()));
        }
        let pr = self.versal.params_ring();
        Ok(parts.into_iter().map(|ts| Poly::from_terms(pr, ts)).collect())
    }

    /// `Σ coords_i g_i` as a polynomial in `x, y, u`.
    pub fn from_sigma(&self, coords: &[Poly]) -> Poly {
        let ring = self.versal.ring();
        coords.iter().enumerate().fold(Poly::zero(ring), |acc, (i, c)| {
            acc.add(&self.versal.from_params(c).mul(&self.versal.basis_poly(i)))
        })
    }

    pub fn sigma_mul(&self, a: &[Poly], b: &[Poly]) -> Result<SigmaElement> {
        self.to_sigma(&self.from_sigma(a).mul(&self.from_sigma(b)))
    }

    /// Bezoutian of `(F_x, F_y)`, reduced in both variable sets and split as
    /// `Σ_ij A_ij g_i(x,y) g_j(X,Y)`.
    fn bezoutian(&self, fx: &Poly, fy: &Poly) -> Result<Matrix> {
        let v = &self.versal;
        let mu = v.mu();
        let mut names = vec!["x".to_string(), "y".to_string(), "X".to_string(), "Y".to_string()];
        names.extend(v.params.iter().cloned());
        let (wx, wy) = v.base.weights();
        let mut weights = vec![wx, wy, wx, wy];
        weights.extend(&v.weights);
        let dring = PolyRing::new(names, weights, MonomialOrder::Block(vec![4, mu]))?;
        let params: Vec<usize> = (0..mu).map(|k| k + 4).collect();
        let lower: Vec<usize> = [0, 1].into_iter().chain(params.iter().copied()).collect();
        let upper: Vec<usize> = [2, 3].into_iter().chain(params.iter().copied()).collect();
        let (a, b) = difference_quotients(fx, &dring);
        let (c, d) = difference_quotients(fy, &dring);
        let det = a.mul(&d).sub(&b.mul(&c));
        let ideal = Ideal::new(
            &dring,
            vec![fx.embed(&dring, &lower), fy.embed(&dring, &lower), fx.embed(&dring, &upper), fy.embed(&dring, &upper)],
        );
        let nf = ideal.normal_form(&det, &Budget::unlimited())?;
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); mu * mu];
        for (m, coef) in nf.terms() {
            let e = m.exps();
            let i = self.basis_index(e[0], e[1]).ok_or_else(|| Error::DualBasis("lower staircase escaped".into()))?;
            let j = self.basis_index(e[2], e[3]).ok_or_else(|| Error::DualBasis("upper staircase escaped".into()))?;
            parts[i * mu + j].push((Monomial::from_exps(&e[4..]), coef.clone()));
        }
        let pr = v.params_ring();
        let polys: Vec<Poly> = parts.into_iter().map(|ts| Poly::from_terms(pr, ts)).collect();
        let a = Matrix::from_fn(pr, mu, mu, |i, j| polys[i * mu + j].clone());
        if a.det()?.is_zero() {
            return Err(Error::DualBasis("Bezoutian coefficient matrix is singular".into()));
        }
        Ok(a)
    }

    /// `A` with `ǧ_i = Σ_k A_ik g_k`.
    pub fn dual_basis(&self) -> &Matrix {
        &self.dual
    }

    /// `ǧ_i` as a polynomial in `x, y, u`.
    pub fn dual_element(&self, i: usize) -> Poly {
        self.from_sigma(self.dual.row(i))
    }

    /// Row `i` holds the coordinates of `F ǧ_i`.
    pub fn saito_matrix(&self) -> Result<Matrix> {
        let mu = self.mu();
        let f = self.versal.f();
        let rows: Vec<Vec<Poly>> = (0..mu)
            .map(|i| self.to_sigma(&f.mul(&self.dual_element(i))))
            .collect::<Result<_>>()?;
        let chi = Matrix::from_rows(self.versal.params_ring(), rows)?;
        if !chi.is_symmetric() {
            return Err(Error::Asymmetric);
        }
        Ok(chi)
    }

    /// Residue of `h dx∧dy / (F_x F_y)` summed over the fiber of `Σ → S`:
    /// the coordinate on the top-degree basis element, scaled so that the
    /// Hessian has residue `μ`.
    pub fn residue(&self, h: &Poly) -> Result<Poly> {
        let (p, q) = self.versal.base.exponents();
        let top = self.basis_index(p - 2, q - 2).ok_or(Error::BasisMismatch)?;
        let f = self.versal.f();
        let (fxx, fyy, fxy) = (f.partial(0)?.partial(0)?, f.partial(1)?.partial(1)?, f.partial(0)?.partial(1)?);
        let hess = fxx.mul(&fyy).sub(&fxy.mul(&fxy));
        let c = self.to_sigma(&hess)?[top].as_constant().filter(|c| !Scalar::is_zero(c)).ok_or(Error::BasisMismatch)?;
        let scale = Rational::from_integer((self.mu() as i64).into()) / c;
        Ok(self.to_sigma(h)?[top].scale(&scale))
    }

    /// `res(g_i ǧ_j)`, the identity matrix for a dual basis.
    pub fn dual_pairing(&self) -> Result<Matrix> {
        let mu = self.mu();
        let duals: Vec<Poly> = (0..mu).map(|j| self.dual_element(j)).collect();
        let mut out = Matrix::zeros(self.versal.params_ring(), mu, mu);
        for i in 0..mu {
            for (j, d) in duals.iter().enumerate() {
                out.set(i, j, self.residue(&self.versal.basis_poly(i).mul(d))?);
            }
        }
        Ok(out)
    }

    /// Weight every entry `(i, j)` of the Saito matrix carries.
    pub fn saito_entry_weight(&self, i: usize, j: usize) -> u64 {
        let (wx, wy) = self.versal.base.weights();
        let d = self.versal.base.degree();
        (self.versal.weights[i] + self.versal.weights[j] + d) as u64 - 2 * (wx + wy) as u64
    }
}

/// Sylvester matrix of `P = F(x, 0)` and `P'`, `F` having the parameters
/// `u` substituted where given.
fn sylvester(v: &VersalDeformation, assignment: &[(usize, Rational)]) -> Result<Matrix> {
    let pr = v.params_ring();
    let p = v.f().evaluate(&[(1, crate::arith::int(0))]).evaluate(assignment);
    // coefficients by x-degree, in the parameter ring
    let coeffs_of = |h: &Poly| -> Result<Vec<Poly>> {
        let deg = h.terms().iter().map(|(m, _)| m.exps()[0]).max().unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(pr); deg + 1];
        for (k, c) in h.coefficients_in(&[0]) {
            out[k[0] as usize] = v.to_params(&c)?;
        }
        Ok(out)
    };
    let pc = coeffs_of(&p)?;
    let dc = coeffs_of(&p.partial(0)?)?;
    let (m, n) = (pc.len() - 1, dc.len() - 1);
    let size = m + n;
    let mut s = Matrix::zeros(pr, size, size);
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in dc.iter().rev().enumerate() {
            s.set(n + r, r + k, c.clone());
        }
    }
    Ok(s)
}

/// Univariate discriminant `Res_x(P, P')` of `P = F(x, 0)`, for the A-series
/// (`f = y^2 + x^p`), as a polynomial of the parameter ring.
pub fn a_series_resultant(v: &VersalDeformation) -> Option<Result<Poly>> {
    if v.base.exponents().1 != 2 {
        return None;
    }
    Some(sylvester(v, &[]).and_then(|s| s.det_bareiss()))
}

/// `Res_x(P, P')` at the parameter values `u`.
pub fn a_series_resultant_at(v: &VersalDeformation, u: &[Rational]) -> Option<Result<Rational>> {
    if v.base.exponents().1 != 2 {
        return None;
    }
    let assignment: Vec<(usize, Rational)> = u.iter().cloned().enumerate().map(|(i, c)| (i + 2, c)).collect();
    Some(sylvester(v, &assignment).and_then(|s| s.det_bareiss()).map(|d| d.as_constant().unwrap_or_else(|| Rational::from_integer(0.into()))))
}

/// Points at which `det χ` is compared with the resultant. The symbolic
/// resultant swells badly beyond `A6`, while both sides are exact at a point.
const CHECK_POINTS: usize = 6;

/// `det χ` made primitive; for the A-series it is checked against the
/// univariate discriminant at fixed rational points: the two must agree up to
/// one constant factor.
pub fn discriminant(v: &VersalDeformation, chi: &Matrix) -> Result<Poly> {
    let det = chi.det()?.primitive();
    let mu = v.mu();
    let mut ratio: Option<Rational> = None;
    let mut tested = 0;
    for t in 0..4 * CHECK_POINTS as i64 {
        if tested == CHECK_POINTS {
            break;
        }
        let u: Vec<Rational> = (0..mu as i64).map(|i| Rational::from_integer(((7 * i + 5 * t + 3 * i * t) % 11 - 5).into())).collect();
        let Some(res) = a_series_resultant_at(v, &u) else { return Ok(det) };
        let res = res?;
        let d = det.evaluate(&u.iter().cloned().enumerate().collect::<Vec<_>>()).as_constant().unwrap_or_else(|| Rational::from_integer(0.into()));
        match (Scalar::is_zero(&res), Scalar::is_zero(&d)) {
            (true, true) => continue,
            (true, false) | (false, true) => return Err(Error::SaitoDeterminantMismatch),
            _ => {}
        }
        let r = d / res;
        if *ratio.get_or_insert(r.clone()) != r {
            return Err(Error::SaitoDeterminantMismatch);
        }
        tested += 1;
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, parse_poly, rat};
    use crate::singularity::CurveSingularity;

    fn module(label: &str) -> JacobianModule {
        JacobianModule::new(&CurveSingularity::catalog(label).unwrap().versal().unwrap()).unwrap()
    }

    fn pp(m: &JacobianModule, s: &str) -> Poly {
        parse_poly(m.versal().params_ring(), s).unwrap()
    }

    fn full(m: &JacobianModule, s: &str) -> Poly {
        parse_poly(m.versal().ring(), s).unwrap()
    }

    /// Residue functional: coefficient of the socle monomial x^(p-2) y^(q-2)
    /// of the normal form, divided by pq.
    fn residue(m: &JacobianModule, phi: &Poly) -> Poly {
        let (p, q) = m.versal().base.exponents();
        let k = m.basis_index(p - 2, q - 2).unwrap();
        m.to_sigma(phi).unwrap()[k].scale(&rat(1, (p * q) as i64))
    }

    #[test]
    fn hessian_residue_pairing() {
        for label in ["A2", "A4", "E6"] {
            let m = module(label);
            let pairing = m.dual_pairing().unwrap();
            assert_eq!(pairing, Matrix::identity(m.versal().params_ring(), m.mu()));
        }
    }

    #[test]
    fn to_sigma_examples() {
        let a4 = module("A4");
        let s = a4.to_sigma(&full(&a4, "x^5")).unwrap();
        assert_eq!(s, vec![pp(&a4, "-3/5*a"), pp(&a4, "-2/5*b"), pp(&a4, "-1/5*c"), pp(&a4, "0")]);
        assert!(a4.to_sigma(&full(&a4, "y")).unwrap().iter().all(|c| c.is_zero()));
        let a2 = module("A2");
        let s = a2.to_sigma(a2.versal().f()).unwrap();
        assert_eq!(s, vec![pp(&a2, "2/3*a"), pp(&a2, "b")]);
    }

    #[test]
    fn sigma_mul_examples() {
        let a2 = module("A2");
        let x = vec![pp(&a2, "1"), pp(&a2, "0")];
        let one = vec![pp(&a2, "0"), pp(&a2, "1")];
        assert_eq!(a2.sigma_mul(&x, &x).unwrap(), vec![pp(&a2, "0"), pp(&a2, "-1/3*a")]);
        let b = vec![pp(&a2, "0"), pp(&a2, "b")];
        assert_eq!(a2.sigma_mul(&one, &b).unwrap(), b);
        let a4 = module("A4");
        let x = vec![pp(&a4, "0"), pp(&a4, "0"), pp(&a4, "1"), pp(&a4, "0")];
        let one = vec![pp(&a4, "0"), pp(&a4, "0"), pp(&a4, "0"), pp(&a4, "1")];
        assert_eq!(a4.sigma_mul(&x, &one).unwrap(), x);
    }

    #[test]
    fn a2_dual_basis_and_saito() {
        let a2 = module("A2");
        let a = a2.dual_basis();
        assert_eq!(a.to_strings(), vec![vec!["0", "6"], vec!["6", "0"]]);
        let chi = a2.saito_matrix().unwrap();
        assert_eq!(chi.to_strings(), vec![vec!["4*a", "6*b"], vec!["6*b", "-4/3*a^2"]]);
        let det = chi.det().unwrap();
        let expected = pp(&a2, "4*a^3 + 27*b^2").scale(&rat(-4, 3));
        assert_eq!(det, expected);
        assert_eq!(discriminant(a2.versal(), &chi).unwrap(), pp(&a2, "4*a^3 + 27*b^2"));
    }

    #[test]
    fn pairing_is_dual() {
        for label in ["A2", "A4", "E6"] {
            let m = module(label);
            let mu = m.mu();
            for i in 0..mu {
                for j in 0..mu {
                    let phi = m.versal().basis_poly(i).mul(&m.dual_element(j));
                    let r = residue(&m, &phi);
                    let want = if i == j { int(1) } else { int(0) };
                    assert_eq!(r, Poly::constant(m.versal().params_ring(), want), "{label} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn f_is_self_adjoint() {
        let m = module("A4");
        let f = m.versal().f();
        for (a, b) in [("x^2 + a*x", "x^3 - b"), ("x*y + 1", "c*x^2 + x")] {
            let (a, b) = (full(&m, a), full(&m, b));
            let l = residue(&m, &a.mul(&f.mul(&b)));
            let r = residue(&m, &f.mul(&a).mul(&b));
            assert_eq!(l, r);
        }
    }

    #[test]
    fn a4_saito_properties() {
        let m = module("A4");
        let chi = m.saito_matrix().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let e = chi.get(i, j);
                assert!(e.is_zero() || e.homogeneous_degree() == Some(m.saito_entry_weight(i, j)));
            }
        }
        // first row is a multiple of the Euler field
        let euler = ["4*a", "6*b", "8*c", "10*d"];
        let lambda = chi.get(0, 0).proportional_to(&pp(&m, euler[0])).unwrap();
        for (j, e) in euler.iter().enumerate() {
            assert_eq!(chi.get(0, j), &pp(&m, e).scale(&lambda));
        }
        // logarithmic: each row applied to det χ lands in (det χ)
        let det = discriminant(m.versal(), &chi).unwrap();
        let pr = m.versal().params_ring().clone();
        for i in 0..4 {
            let field = (0..4).fold(Poly::zero(&pr), |acc, j| acc.add(&chi.get(i, j).mul(&det.partial(j).unwrap())));
            assert!(field.div_exact(&det).is_some(), "row {i}");
        }
        assert_eq!(det.homogeneous_degree(), Some(40));
    }

    #[test]
    fn discriminant_matches_the_resultant() {
        for label in ["A2", "A4", "A6"] {
            let m = module(label);
            let det = discriminant(m.versal(), &m.saito_matrix().unwrap()).unwrap();
            let res = a_series_resultant(m.versal()).unwrap().unwrap();
            assert!(det.proportional_to(&res).is_some(), "{label}");
            let u: Vec<Rational> = (0..m.mu() as i64).map(|i| int(2 * i - 3)).collect();
            let at = res.evaluate(&u.iter().cloned().enumerate().collect::<Vec<_>>()).as_constant().unwrap();
            assert_eq!(a_series_resultant_at(m.versal(), &u).unwrap().unwrap(), at);
        }
        assert!(a_series_resultant(module("E6").versal()).is_none());
    }

    #[test]
    fn construction_identity() {
        let m = module("E6");
        let chi = m.saito_matrix().unwrap();
        let f = m.versal().f();
        for i in 0..m.mu() {
            let lhs = m.from_sigma(chi.row(i));
            let diff = lhs.sub(&f.mul(&m.dual_element(i)));
            assert!(m.to_sigma(&diff).unwrap().iter().all(|c| c.is_zero()));
        }
        for i in 0..6 {
            for j in 0..6 {
                let e = chi.get(i, j);
                assert!(e.is_zero() || e.homogeneous_degree() == Some(m.saito_entry_weight(i, j)));
            }
        }
    }
}
