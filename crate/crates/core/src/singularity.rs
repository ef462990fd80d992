//! Quasihomogeneous irreducible plane curve singularities `x^p + y^q` and
//! their miniversal deformations.

use num_integer::Integer;

use crate::arith::{parse_poly, Monomial, MonomialOrder, Poly, PolyRing, RingRef, WeightedDegree};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};

/// `f = x^p + y^q` with `gcd(p, q) = 1`, weights `w_x = q`, `w_y = p`, degree `pq`.
#[derive(Clone, Debug)]
pub struct CurveSingularity {
    label: String,
    ring: RingRef,
    f: Poly,
    p: u32,
    q: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub mu: usize,
    pub delta: usize,
    /// Number of branches.
    pub r: usize,
    pub genus: usize,
}

fn xy_ring(wx: u32, wy: u32) -> Result<RingRef> {
    PolyRing::with(&["x", "y"], &[wx, wy], MonomialOrder::WeightedGrevlex)
}

/// The catalog: `A2`, `A4`, `A6`, `A8`, `E6`, `E8`.
pub const CATALOG: &[&str] = &["A2", "A4", "A6", "A8", "E6", "E8"];

impl CurveSingularity {
    fn build(label: String, p: u32, q: u32) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::Unsupported("the curve is smooth at the origin".into()));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::IrreducibilityRequired(format!(
                "x^{p} + y^{q} has {} branches",
                p.gcd(&q)
            )));
        }
        let ring = xy_ring(q, p)?;
        let f = Poly::var(&ring, 0).pow(p).add(&Poly::var(&ring, 1).pow(q));
        Ok(CurveSingularity { label, ring, f, p, q })
    }

    /// `x^p + y^q`.
    pub fn from_exponents(p: u32, q: u32) -> Result<Self> {
        Self::build("custom".into(), p, q)
    }

    pub fn catalog(label: &str) -> Result<Self> {
        let upper = label.to_ascii_uppercase();
        let (p, q) = match upper.as_str() {
            "A2" => (3, 2),
            "A4" => (5, 2),
            "A6" => (7, 2),
            "A8" => (9, 2),
            "E6" => (3, 4),
            "E8" => (3, 5),
            _ => return Err(Error::Unsupported(format!("unknown catalog entry `{label}`"))),
        };
        Self::build(upper, p, q)
    }

    /// A weighted-homogeneous `f` in `x, y` with the given weights. Only the
    /// irreducible Brieskorn–Pham shape `x^p + y^q` is accepted.
    pub fn custom(expr: &str, weights: (u32, u32)) -> Result<Self> {
        let ring = xy_ring(weights.0, weights.1)?;
        let f = parse_poly(&ring, expr)?;
        let d = match f.weighted_degree()? {
            WeightedDegree::Homogeneous(d) => d,
            WeightedDegree::Inhomogeneous(_) => {
                return Err(Error::Unsupported("f is not weighted homogeneous for the given weights".into()))
            }
        };
        let jac = Ideal::new(&ring, vec![f.partial(0)?, f.partial(1)?]);
        match jac.dimension(&Budget::unlimited()) {
            Ok(0) => {}
            Ok(_) => return Err(Error::NonIsolated),
            Err(Error::EmptyVariety) => {
                return Err(Error::Unsupported("the curve is smooth at the origin".into()))
            }
            Err(e) => return Err(e),
        }
        let (wx, wy) = (weights.0 as u64, weights.1 as u64);
        let p = (d % wx == 0).then(|| (d / wx) as u32);
        let q = (d % wy == 0).then(|| (d / wy) as u32);
        let (Some(p), Some(q)) = (p, q) else {
            return Err(Error::Unsupported("f must be x^p + y^q".into()));
        };
        let shape = Poly::var(&ring, 0).pow(p).add(&Poly::var(&ring, 1).pow(q));
        if f != shape {
            if p.gcd(&q) != 1 {
                return Err(Error::IrreducibilityRequired(format!("weights allow {} branches", p.gcd(&q))));
            }
            return Err(Error::Unsupported("f must be x^p + y^q with unit coefficients".into()));
        }
        Self::build("custom".into(), p, q)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn exponents(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    /// `(w_x, w_y)`.
    pub fn weights(&self) -> (u32, u32) {
        (self.q, self.p)
    }

    pub fn degree(&self) -> u32 {
        self.p * self.q
    }

    /// Standard monomials of the Jacobian ideal, by decreasing weighted degree
    /// (ties by lex), so the constant `1` comes last.
    pub fn milnor_basis(&self) -> Result<Vec<Monomial>> {
        let jac = Ideal::new(&self.ring, vec![self.f.partial(0)?, self.f.partial(1)?]);
        let lm = jac.leading_monomials(&Budget::unlimited())?;
        let bound = (self.p.max(self.q)) as u32;
        let mut out: Vec<Monomial> = Vec::new();
        for i in 0..bound {
            for j in 0..bound {
                let m = Monomial::from_exps(&[i, j]);
                if !lm.iter().any(|g| g.divides(&m)) {
                    out.push(m);
                }
            }
        }
        out.sort_by(|a, b| self.ring.wdeg(b).cmp(&self.ring.wdeg(a)).then_with(|| b.cmp(a)));
        Ok(out)
    }

    pub fn invariants(&self) -> Invariants {
        let mu = ((self.p - 1) * (self.q - 1)) as usize;
        Invariants { mu, delta: mu / 2, r: 1, genus: mu / 2 }
    }

    /// The miniversal deformation with parameters named `a, b, c, …` (or
    /// `u1, u2, …` when there are more than 23).
    pub fn versal(&self) -> Result<VersalDeformation> {
        let mu = self.invariants().mu;
        let names: Vec<String> = if mu <= 23 {
            (0..mu).map(|k| ((b'a' + k as u8) as char).to_string()).collect()
        } else {
            (1..=mu).map(|k| format!("u{k}")).collect()
        };
        self.versal_with(names)
    }

    pub fn versal_with(&self, params: Vec<String>) -> Result<VersalDeformation> {
        let basis = self.milnor_basis()?;
        let mu = basis.len();
        if params.len() != mu {
            return Err(Error::InvalidRing(format!("expected {mu} parameter names")));
        }
        let d = self.degree() as u64;
        if basis.iter().any(|g| self.ring.wdeg(g) >= d) {
            return Err(Error::Unsupported(
                "deformation parameters of nonpositive weight (the singularity is not simple)".into(),
            ));
        }
        let weights: Vec<u32> = basis.iter().map(|g| (d - self.ring.wdeg(g)) as u32).collect();
        let (wx, wy) = self.weights();
        let mut names = vec!["x".to_string(), "y".to_string()];
        names.extend(params.iter().cloned());
        let mut all_w = vec![wx, wy];
        all_w.extend(&weights);
        let ring = PolyRing::new(names, all_w, MonomialOrder::Block(vec![2, mu]))?;
        let params_ring = PolyRing::new(params.clone(), weights.clone(), MonomialOrder::WeightedGrevlex)?;
        let n = ring.nvars();
        let mut f = self.f.embed(&ring, &[0, 1]);
        for (k, g) in basis.iter().enumerate() {
            let mut e = Monomial::one(n);
            e.0[0] = g.exps()[0];
            e.0[1] = g.exps()[1];
            e.0[2 + k] = 1;
            f = f.add(&Poly::monomial(&ring, e, crate::arith::int(1)));
        }
        Ok(VersalDeformation { base: self.clone(), basis, params, weights, ring, params_ring, f })
    }
}

/// `F = f + Σ u_i g_i` over the ring `x, y, u_1..u_μ` ordered with `x, y ≫ u`.
#[derive(Clone, Debug)]
pub struct VersalDeformation {
    pub base: CurveSingularity,
    pub basis: Vec<Monomial>,
    pub params: Vec<String>,
    pub weights: Vec<u32>,
    ring: RingRef,
    params_ring: RingRef,
    f: Poly,
}

impl VersalDeformation {
    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    /// Ring `x, y, u_1..u_μ` with block order.
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Ring of the parameters alone, weighted grevlex.
    pub fn params_ring(&self) -> &RingRef {
        &self.params_ring
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// `g_i` as a polynomial of the full ring.
    pub fn basis_poly(&self, i: usize) -> Poly {
        Poly::monomial(&self.ring, self.basis_monomial(i), crate::arith::int(1))
    }

    pub(crate) fn basis_monomial(&self, i: usize) -> Monomial {
        let mut e = Monomial::one(self.ring.nvars());
        e.0[0] = self.basis[i].exps()[0];
        e.0[1] = self.basis[i].exps()[1];
        e
    }

    /// A polynomial in the parameters only, moved to the parameter ring.
    pub fn to_params(&self, p: &Poly) -> Result<Poly> {
        let mu = self.mu();
        if !p.only_involves(&(2..2 + mu).collect::<Vec<_>>()) {
            return Err(Error::RingMismatch("polynomial involves x or y".into()));
        }
        let terms = p.terms().iter().map(|(m, c)| (Monomial::from_exps(&m.exps()[2..]), c.clone()));
        Ok(Poly::from_terms(&self.params_ring, terms))
    }

    /// A parameter polynomial moved into the full ring.
    pub fn from_params(&self, p: &Poly) -> Poly {
        let map: Vec<usize> = (0..self.mu()).map(|k| k + 2).collect();
        p.embed(&self.ring, &map)
    }

    /// Whether the reading of the printed deformation needed an assumption.
    pub fn reading_note(&self) -> Option<&'static str> {
        (self.base.label() == "A6")
            .then_some("deformation read as y^2 + x^7 + a*x^5 + b*x^4 + c*x^3 + d*x^2 + e*x + f")
    }
}
