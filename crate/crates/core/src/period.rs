//! The intersection form on the relative cohomology of the family, computed
//! by residues at the single point at infinity of each fiber.
//!
//! The fiber `F(x, y, u) = 0` of `x^p + y^q + …` is parametrised near infinity
//! by `x = t^-q`, `y = ζ t^-p (1 + …)` with `ζ^q = -1`. Each Gelfand–Leray class
//! `g_i dx∧dy / dF` restricts to the form `a_i(t) dt = -g_i / F_y dx`, and the
//! pairing is `W_ij = Res(∫a_i · a_j)`.

use num_bigint::BigInt;

use crate::arith::{common_denominator, int, numerator_gcd, CyclotomicScalar, Matrix, Poly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::laurent::LaurentSeries;
use crate::singularity::VersalDeformation;

/// Polynomials in the parameters over `Q(ζ)`.
pub type CPoly = Poly<CyclotomicScalar>;
pub type Series = LaurentSeries<CyclotomicScalar>;

/// A polynomial in `x, y` with coefficients in `Q(ζ)[u]`, stored as
/// `(a, b, c)` for `c x^a y^b`.
#[derive(Clone, Debug)]
struct XyPoly(Vec<(u32, u32, CPoly)>);

impl XyPoly {
    fn from_poly(v: &VersalDeformation, p: &Poly) -> Result<Self> {
        let mut out = Vec::new();
        for (e, c) in p.coefficients_in(&[0, 1]) {
            let c = v.to_params(&c)?.map_coeffs(|r| CyclotomicScalar::from_rational(r.clone()));
            out.push((e[0], e[1], c));
        }
        Ok(XyPoly(out))
    }

    fn max_y(&self) -> u32 {
        self.0.iter().map(|t| t.1).max().unwrap_or(0)
    }
}

/// Laurent parametrisation of the family near its point at infinity.
#[derive(Clone, Debug)]
pub struct InfinityChart {
    versal: VersalDeformation,
    zeta: CyclotomicScalar,
    precision: i64,
    y: Series,
    y_powers: Vec<Series>,
}

impl InfinityChart {
    /// `ζ`, a primitive `2q`-th root of unity, so `ζ^q = -1`.
    pub fn zeta(&self) -> &CyclotomicScalar {
        &self.zeta
    }

    /// Order of `ζ`.
    pub fn zeta_order(&self) -> u32 {
        self.zeta.modulus()
    }

    /// Number of known coefficients of `y` past its leading term.
    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn versal(&self) -> &VersalDeformation {
        &self.versal
    }

    /// The exponent `-q` of `x = t^-q`.
    pub fn x_exponent(&self) -> i64 {
        -(self.versal.base.exponents().1 as i64)
    }

    pub fn x(&self) -> Series {
        let r = self.versal.params_ring();
        Series::monomial(r, Poly::one(r), self.x_exponent(), self.x_exponent() + self.precision)
    }

    pub fn y(&self) -> &Series {
        &self.y
    }

    fn power(&mut self, b: u32) -> &Series {
        while self.y_powers.len() <= b as usize {
            let next = self.y_powers.last().unwrap().mul(&self.y);
            self.y_powers.push(next);
        }
        &self.y_powers[b as usize]
    }

    fn reset_powers(&mut self) {
        let r = self.versal.params_ring().clone();
        self.y_powers = vec![Series::constant(&r, CyclotomicScalar::one(), self.precision)];
    }

    fn eval(&mut self, p: &XyPoly) -> Series {
        let q = -self.x_exponent();
        let mut acc: Option<Series> = None;
        self.power(p.max_y());
        for (a, b, c) in &p.0 {
            let term = self.y_powers[*b as usize].shift(-q * *a as i64).scalar_mul(c);
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term),
            });
        }
        acc.unwrap_or_else(|| Series::zero(self.versal.params_ring(), self.precision))
    }

    /// `p(x(t), y(t))` for `p` in the ring of the deformation.
    pub fn evaluate(&mut self, p: &Poly) -> Result<Series> {
        let xy = XyPoly::from_poly(&self.versal, p)?;
        Ok(self.eval(&xy))
    }
}

/// Newton iteration `y ← y - F/F_y` from `ζ t^-p`, carried out at relative
/// precision `n` until `F(x(t), y(t)) = O(t^(n-d+1))`.
pub fn parametrize(v: &VersalDeformation, n: i64) -> Result<InfinityChart> {
    if n < 0 {
        return Err(Error::OutOfRange("negative precision".into()));
    }
    let (p, q) = v.base.exponents();
    let ring = v.params_ring().clone();
    let zeta = CyclotomicScalar::zeta(2 * q);
    let start = Series::monomial(&ring, Poly::constant(&ring, zeta.clone()), -(p as i64), -(p as i64) + n);
    let mut chart = InfinityChart { versal: v.clone(), zeta, precision: n, y: start, y_powers: vec![] };
    chart.reset_powers();
    let f = XyPoly::from_poly(v, v.f())?;
    let fy = XyPoly::from_poly(v, &v.f().partial(1)?)?;
    for _ in 0..(n + 8) {
        let value = chart.eval(&f);
        if value.is_zero() {
            return Ok(chart);
        }
        let slope = chart.eval(&fy).invert_unit().map_err(|_| {
            Error::ParametrizationFailed("F_y does not have a unit leading term on the chart".into())
        })?;
        let y = chart.y.sub(&value.mul(&slope));
        chart.y = y.truncate(-(p as i64) + n);
        chart.reset_powers();
    }
    Err(Error::ParametrizationFailed("Newton iteration did not converge".into()))
}

/// The restriction `a(t) dt` of the class of `g_i dx∧dy / dF`.
#[derive(Clone, Debug)]
pub struct PulledBackForm {
    pub index: usize,
    pub a: Series,
}

/// `a_i(t) = -g_i(x,y) x'(t) / F_y(x,y)`; its residue must vanish.
pub fn pullback_form(chart: &mut InfinityChart, i: usize) -> Result<PulledBackForm> {
    let v = chart.versal.clone();
    let q = -chart.x_exponent();
    let g = chart.evaluate(&v.basis_poly(i))?;
    let fy = chart.evaluate(&v.f().partial(1)?)?;
    let inv = fy.invert_unit().map_err(|_| Error::ParametrizationFailed("F_y is not a unit".into()))?;
    let c = Poly::constant(v.params_ring(), CyclotomicScalar::from_rational(int(q)));
    let a = g.mul(&inv).shift(-q - 1).scalar_mul(&c);
    check_residue(&a)?;
    Ok(PulledBackForm { index: i, a })
}

/// The same class through `g_i dy / F_x`, used as a cross-check.
pub fn pullback_form_dy(chart: &mut InfinityChart, i: usize) -> Result<PulledBackForm> {
    let v = chart.versal.clone();
    let g = chart.evaluate(&v.basis_poly(i))?;
    let fx = chart.evaluate(&v.f().partial(0)?)?;
    let inv = fx.invert_unit().map_err(|_| Error::ParametrizationFailed("F_x is not a unit".into()))?;
    let a = g.mul(&inv).mul(&chart.y.derivative());
    check_residue(&a)?;
    Ok(PulledBackForm { index: i, a })
}

fn check_residue(a: &Series) -> Result<()> {
    match a.residue() {
        Ok(r) if !r.is_zero() => Err(Error::NonzeroFormResidue),
        Ok(_) => Ok(()),
        Err(e) => Err(e),
    }
}

/// Initial relative precision for `omega_matrix`: `2(d - w_x - w_y)`, enough
/// for every coefficient the residues touch.
pub fn choose_truncation(v: &VersalDeformation) -> i64 {
    let (wx, wy) = v.base.weights();
    let d = v.base.degree() as i64;
    (2 * (d - wx as i64 - wy as i64)).max(2)
}

/// The coordinate matrix of the symplectic form, `Ω = Σ_{i<j} W_ij du_i∧du_j`,
/// with the cyclotomic constant `lambda` (and `2πi`) divided out.
#[derive(Clone, Debug)]
pub struct SymplecticMatrix {
    pub w: Matrix,
    pub lambda: CyclotomicScalar,
    /// Order `2q` of the chosen root `ζ = exp(πi/q)`.
    pub zeta_order: u32,
    /// Relative precision at which the result was certified (also checked at twice this).
    pub precision: i64,
    pub det: Rational,
}

impl SymplecticMatrix {
    pub fn entry_weight(v: &VersalDeformation, i: usize, j: usize) -> i64 {
        let (wx, wy) = v.base.weights();
        2 * (wx + wy) as i64 - v.weights[i] as i64 - v.weights[j] as i64
    }
}

fn raw_omega(v: &VersalDeformation, n: i64, budget: &Budget) -> Result<Vec<Vec<CPoly>>> {
    let mut chart = parametrize(v, n)?;
    let mu = v.mu();
    let mut forms = Vec::with_capacity(mu);
    for i in 0..mu {
        budget.check()?;
        let a = pullback_form(&mut chart, i)?.a;
        let b = pullback_form_dy(&mut chart, i)?.a;
        if !a.sub(&b).is_zero() {
            return Err(Error::ParametrizationFailed(format!("dx and dy pullbacks of form {i} disagree")));
        }
        forms.push(a);
    }
    let integrals: Vec<Series> = forms.iter().map(|a| a.formal_integral()).collect::<Result<_>>()?;
    let mut w = vec![vec![Poly::zero(v.params_ring()); mu]; mu];
    for i in 0..mu {
        budget.check()?;
        for j in 0..mu {
            if i != j {
                w[i][j] = integrals[i].mul(&forms[j]).residue()?;
            }
        }
    }
    for i in 0..mu {
        for j in i + 1..mu {
            if w[i][j] != w[j][i].neg() {
                return Err(Error::TruncationInsufficient(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
            }
        }
    }
    Ok(w)
}

/// Divide out the leading coefficient of the first nonzero entry above the
/// diagonal, require rationality, then make the entries primitive over `Z`.
fn normalize(v: &VersalDeformation, raw: &[Vec<CPoly>]) -> Result<(Matrix, CyclotomicScalar)> {
    let mu = raw.len();
    let first = (0..mu)
        .flat_map(|i| (i + 1..mu).map(move |j| (i, j)))
        .find(|&(i, j)| !raw[i][j].is_zero())
        .ok_or_else(|| Error::NormalizationFailure("the pairing vanishes".into()))?;
    let lead = raw[first.0][first.1].lead_coeff().unwrap().clone();
    let inv = lead.inverse().unwrap();
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(mu);
    for row in raw {
        let mut out = Vec::with_capacity(mu);
        for e in row {
            let scaled = e.scale(&inv);
            let mut terms = Vec::with_capacity(scaled.len());
            for (m, c) in scaled.terms() {
                let r = c
                    .to_rational()
                    .ok_or_else(|| Error::NormalizationFailure(format!("coefficient {c:?} is not a rational multiple of {lead:?}")))?;
                terms.push((m.clone(), r));
            }
            out.push(Poly::from_terms(v.params_ring(), terms));
        }
        rows.push(out);
    }
    let coeffs: Vec<Rational> = rows.iter().flatten().flat_map(|p| p.terms().iter().map(|t| t.1.clone())).collect();
    let den = common_denominator(&coeffs);
    let num = numerator_gcd(coeffs.iter().map(|c| c * Rational::from(den.clone())).collect::<Vec<_>>().iter());
    let factor = Rational::new(den, num);
    let rows: Vec<Vec<Poly>> = rows.iter().map(|r| r.iter().map(|p| p.scale(&factor)).collect()).collect();
    let lambda = lead.times(&CyclotomicScalar::from_rational(factor.recip()));
    Ok((Matrix::from_rows(v.params_ring(), rows)?, lambda))
}

fn to_constant(p: &Poly) -> Option<Rational> {
    if p.is_zero() {
        Some(Rational::from(BigInt::from(0)))
    } else {
        p.as_constant()
    }
}

/// `W` at relative precision `n`, doubled until the computation succeeds and
/// agrees with the one at twice the precision.
pub fn omega_matrix(v: &VersalDeformation, n: i64, budget: &Budget) -> Result<SymplecticMatrix> {
    let mut n = n.max(1);
    let mut last_error = None;
    for _ in 0..6 {
        let first = match raw_omega(v, n, budget) {
            Ok(w) => w,
            Err(Error::InsufficientPrecision) | Err(Error::TruncationInsufficient(_)) => {
                n *= 2;
                continue;
            }
            Err(e) => return Err(e),
        };
        let second = match raw_omega(v, 2 * n, budget) {
            Ok(w) => w,
            Err(Error::InsufficientPrecision) | Err(Error::TruncationInsufficient(_)) => {
                n *= 2;
                continue;
            }
            Err(e) => return Err(e),
        };
        if first != second {
            last_error = Some(format!("results at precisions {n} and {} differ", 2 * n));
            n *= 2;
            continue;
        }
        let (w, lambda) = normalize(v, &first)?;
        let det = w.det()?;
        let det = to_constant(&det)
            .filter(|d| *d != Rational::from(BigInt::from(0)))
            .ok_or_else(|| Error::Degenerate(format!("det W = {det} is not a nonzero constant")))?;
        return Ok(SymplecticMatrix { w, lambda, zeta_order: 2 * v.base.exponents().1, precision: n, det });
    }
    Err(Error::TruncationInsufficient(last_error.unwrap_or_else(|| format!("gave up at precision {n}"))))
}

/// `∂_k W_ij + ∂_i W_jk + ∂_j W_ki = 0` for all triples.
pub fn is_closed(w: &Matrix) -> Result<bool> {
    let mu = w.nrows();
    for i in 0..mu {
        for j in i + 1..mu {
            for k in j + 1..mu {
                let s = w.get(i, j).partial(k)?.add(&w.get(j, k).partial(i)?).add(&w.get(k, i).partial(j)?);
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;
    use crate::singularity::CurveSingularity;

    fn versal(label: &str) -> VersalDeformation {
        CurveSingularity::catalog(label).unwrap().versal().unwrap()
    }

    fn cpoly(v: &VersalDeformation, s: &str) -> CPoly {
        parse_poly(v.params_ring(), s).unwrap().map_coeffs(|r| CyclotomicScalar::from_rational(r.clone()))
    }

    #[test]
    fn a2_chart_is_a_square_root() {
        let v = versal("A2");
        let chart = parametrize(&v, 8).unwrap();
        let z = chart.zeta().clone();
        let y = chart.y();
        assert_eq!(y.valuation(), -3);
        assert_eq!(y.trunc(), 5);
        let zc = |s: &str| cpoly(&v, s).scale(&z);
        assert_eq!(y.coeff(-3).unwrap(), zc("1"));
        assert_eq!(y.coeff(1).unwrap(), zc("a/2"));
        assert_eq!(y.coeff(3).unwrap(), zc("b/2"));
        assert_eq!(y.coeff(5).unwrap(), zc("-a^2/8"));
        // y^2 = -(t^-6 + a t^-2 + b)
        let sq = y.mul(y);
        let expected = Series::new(
            v.params_ring(),
            -6,
            vec![cpoly(&v, "-1"), cpoly(&v, "0"), cpoly(&v, "0"), cpoly(&v, "0"), cpoly(&v, "-a"), cpoly(&v, "0"), cpoly(&v, "-b")],
            sq.trunc(),
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn chart_satisfies_the_equation() {
        for label in ["A4", "E6"] {
            let v = versal(label);
            let mut chart = parametrize(&v, 12).unwrap();
            let value = chart.evaluate(v.f()).unwrap();
            assert!(value.is_zero());
            assert_eq!(value.trunc(), 12 - v.base.degree() as i64);
        }
    }

    #[test]
    fn e6_leading_terms() {
        let v = versal("E6");
        let chart = parametrize(&v, 4).unwrap();
        assert_eq!(chart.x_exponent(), -4);
        assert_eq!(chart.y().valuation(), -3);
        let z = chart.zeta();
        assert_eq!(z.modulus(), 8);
        assert_eq!(z.pow(4), CyclotomicScalar::from_rational(int(-1)));
    }

    #[test]
    fn a2_form_of_the_constant() {
        let v = versal("A2");
        let mut chart = parametrize(&v, 6).unwrap();
        let a = pullback_form(&mut chart, 1).unwrap().a;
        assert_eq!(a.valuation(), 0);
        let minus_zeta = chart.zeta().negated();
        assert_eq!(a.coeff(0).unwrap(), Poly::constant(v.params_ring(), minus_zeta));
    }

    #[test]
    fn residues_vanish_and_weights_are_forced() {
        let v = versal("A4");
        let (wx, wy) = v.base.weights();
        let mut chart = parametrize(&v, 10).unwrap();
        for i in 0..v.mu() {
            let a = pullback_form(&mut chart, i).unwrap().a;
            assert!(a.coeff(-1).unwrap().is_zero());
            let lead_w = (wx + wy) as i64 - v.weights[i] as i64;
            for (k, c) in a.terms() {
                for (m, _) in c.terms() {
                    assert_eq!(v.params_ring().wdeg(m) as i64, lead_w + k + 1, "form {i} at t^{k}");
                }
            }
        }
    }

    #[test]
    fn a2_pairing_is_constant() {
        let v = versal("A2");
        let s = omega_matrix(&v, choose_truncation(&v), &Budget::unlimited()).unwrap();
        assert_eq!(s.w.get(0, 1), &parse_poly(v.params_ring(), "1").unwrap());
        assert_eq!(s.w.get(1, 0), &parse_poly(v.params_ring(), "-1").unwrap());
        assert_eq!(s.det, int(1));
    }

    #[test]
    fn a4_matrix_and_invariants() {
        let v = versal("A4");
        let s = omega_matrix(&v, choose_truncation(&v), &Budget::unlimited()).unwrap();
        let r = v.params_ring();
        let reference = Matrix::from_rows(
            r,
            [["0", "a", "0", "1"], ["-a", "0", "3", "0"], ["0", "-3", "0", "0"], ["-1", "0", "0", "0"]]
                .iter()
                .map(|row| row.iter().map(|e| parse_poly(r, e).unwrap()).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(s.w.proportional_to(&reference), Some(int(1)));
        assert_eq!(s.det, int(9));
        assert!(s.w.is_skew());
        assert!(is_closed(&s.w).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                let e = s.w.get(i, j);
                if let Some(h) = e.homogeneous_degree() {
                    assert_eq!(h as i64, SymplecticMatrix::entry_weight(&v, i, j));
                }
            }
        }
    }

    #[test]
    fn truncation_formula() {
        assert_eq!(choose_truncation(&versal("A2")), 2);
        assert_eq!(choose_truncation(&versal("A4")), 6);
        assert_eq!(choose_truncation(&versal("E6")), 10);
    }

    #[test]
    fn closedness_detects_a_non_closed_form() {
        let v = versal("A4");
        let r = v.params_ring();
        let mut w = Matrix::zeros(r, 3, 3);
        w.set(0, 1, parse_poly(r, "c").unwrap());
        w.set(1, 0, parse_poly(r, "-c").unwrap());
        assert!(!is_closed(&w).unwrap());
    }
}
