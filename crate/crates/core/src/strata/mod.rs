//! Severi strata of the base of the versal deformation: the skew Gram matrix
//! `M = χ W χ^t`, its Pfaffian ideals, rank tests at rational points, the
//! Poisson structure and the presentation matrices.

mod nodal;
mod poisson;

pub use nodal::{a_series_nodal_point, node_at, random_a_series_point, tjurina_total, NodalPoint};
pub use poisson::{lie_closure, lie_closure_check, LieCheck, PoissonStructure};

use crate::arith::{rational_rank, subsets, Matrix, PfaffianMemo, Poly, Rational};
use crate::error::{Error, Result};
use crate::groebner::{BettiTable, Budget, CmReport, Ideal};
use crate::singularity::VersalDeformation;

/// `M_ij = Ω(χ_i, χ_j)`.
#[derive(Clone, Debug)]
pub struct SkewGram {
    pub m: Matrix,
}

/// `χ W χ^t`; requires `χ` symmetric and `W` skew of the same size.
pub fn skew_gram(chi: &Matrix, w: &Matrix) -> Result<SkewGram> {
    if !chi.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    if !w.is_skew() {
        return Err(Error::Matrix("W is not skew".into()));
    }
    let m = chi.mul(w)?.mul(&chi.transpose())?;
    Ok(SkewGram { m })
}

impl SkewGram {
    pub fn size(&self) -> usize {
        self.m.nrows()
    }

    /// Weight of `M_ij`: `w(u_i) + w(u_j) + 2d - 2(w_x + w_y)`.
    pub fn entry_weight(v: &VersalDeformation, i: usize, j: usize) -> i64 {
        let (wx, wy) = v.base.weights();
        let d = v.base.degree() as i64;
        v.weights[i] as i64 + v.weights[j] as i64 + 2 * d - 2 * (wx + wy) as i64
    }
}

/// Pfaffians of all principal `2k × 2k` submatrices, as primitive
/// polynomials without zeros or repetitions.
pub fn pfaffians(m: &Matrix, k: usize) -> Result<Vec<Poly>> {
    if k == 0 || 2 * k > m.nrows() {
        return Err(Error::OutOfRange(format!("no principal Pfaffians of size {}", 2 * k)));
    }
    let mut memo = PfaffianMemo::new(m)?;
    let mut out: Vec<Poly> = Vec::new();
    for idx in subsets(m.nrows(), 2 * k) {
        let p = memo.pfaffian_of(&idx)?;
        if p.is_zero() {
            continue;
        }
        let p = p.primitive();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PfaffianIdeal {
    /// `k` for the ideal of `2k × 2k` Pfaffians.
    pub half_size: usize,
    pub ideal: Ideal,
}

pub fn pfaffian_ideal(m: &Matrix, k: usize) -> Result<PfaffianIdeal> {
    Ok(PfaffianIdeal { half_size: k, ideal: Ideal::new(m.ring(), pfaffians(m, k)?) })
}

/// Equations of the closure of the locus of curves with `k` nodes: the
/// Pfaffians of size `2(δ - k + 1)`.
pub fn severi_ideal(v: &VersalDeformation, m: &SkewGram, k: usize) -> Result<PfaffianIdeal> {
    let delta = v.base.invariants().delta;
    if k == 0 || k > delta {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={delta}")));
    }
    pfaffian_ideal(&m.m, delta - k + 1)
}

/// Rank over Q of `M(u)`.
pub fn rank_at(m: &SkewGram, u: &[Rational]) -> Result<usize> {
    if u.len() != m.m.ring().nvars() {
        return Err(Error::OutOfRange(format!("expected {} coordinates", m.m.ring().nvars())));
    }
    let assignment: Vec<(usize, Rational)> = u.iter().cloned().enumerate().collect();
    let rows = m.m.evaluate(&assignment).as_constants().expect("all parameters assigned");
    Ok(rational_rank(rows))
}

/// `M` presents the intersection module; `χ` with its last row and column
/// (those of `g_μ = 1`) deleted presents `Ext^1`.
#[derive(Clone, Debug)]
pub struct Presentations {
    pub intersection_module: Matrix,
    pub ext1: Matrix,
}

pub fn presentations(chi: &Matrix, m: &SkewGram) -> Result<Presentations> {
    let n = chi.nrows();
    if n == 0 || m.size() != n {
        return Err(Error::Matrix("incompatible sizes".into()));
    }
    let keep: Vec<usize> = (0..n - 1).collect();
    Ok(Presentations { intersection_module: m.m.clone(), ext1: chi.submatrix(&keep, &keep) })
}

/// The result of one requested analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Analysis<T> {
    NotRequested,
    Done(T),
    BudgetExceeded,
    Failed(String),
}

impl<T> Analysis<T> {
    pub fn run(requested: bool, f: impl FnOnce() -> Result<T>) -> Self {
        if !requested {
            return Analysis::NotRequested;
        }
        match f() {
            Ok(t) => Analysis::Done(t),
            Err(Error::BudgetExceeded) => Analysis::BudgetExceeded,
            Err(e) => Analysis::Failed(e.to_string()),
        }
    }

    pub fn done(&self) -> Option<&T> {
        match self {
            Analysis::Done(t) => Some(t),
            _ => None,
        }
    }

    pub fn budget_exceeded(&self) -> bool {
        matches!(self, Analysis::BudgetExceeded)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StratumOptions {
    pub betti: bool,
    pub degree: bool,
    pub poisson: bool,
    /// Seconds per Gröbner computation; `None` for no limit.
    pub budget: Option<f64>,
}

impl StratumOptions {
    fn budget(&self) -> Budget {
        self.budget.map_or_else(Budget::unlimited, Budget::seconds)
    }
}

#[derive(Clone, Debug)]
pub struct StratumReport {
    pub k: usize,
    pub pfaffian_size: usize,
    pub generators: Analysis<Vec<Poly>>,
    pub dimension: Analysis<usize>,
    pub codimension: Analysis<usize>,
    pub degree: Analysis<u64>,
    pub betti: Analysis<BettiTable>,
    pub cohen_macaulay: Analysis<CmReport>,
    pub poisson_closed: Analysis<bool>,
}

/// Analyses of the stratum `D(k)`.
pub fn stratum_report(
    v: &VersalDeformation,
    m: &SkewGram,
    k: usize,
    poisson: Option<&PoissonStructure>,
    opts: &StratumOptions,
) -> Result<StratumReport> {
    let pf = severi_ideal(v, m, k)?;
    let ideal = &pf.ideal;
    let generators = Analysis::run(true, || ideal.minimal_generators(&opts.budget()));
    let dimension = Analysis::run(true, || ideal.dimension(&opts.budget()));
    let nvars = v.mu();
    let codimension = match &dimension {
        Analysis::Done(d) => Analysis::Done(nvars - d),
        Analysis::BudgetExceeded => Analysis::BudgetExceeded,
        other => Analysis::Failed(format!("{other:?}")),
    };
    let degree = Analysis::run(opts.degree, || ideal.degree(&opts.budget()));
    let betti = Analysis::run(opts.betti, || ideal.betti(&opts.budget()));
    let cohen_macaulay = match (&betti, &codimension) {
        (Analysis::Done(b), Analysis::Done(c)) => {
            let pd = b.projective_dimension();
            Analysis::Done(CmReport { codim: *c, pd, depth: nvars - pd, cohen_macaulay: pd == *c })
        }
        (Analysis::NotRequested, _) => Analysis::NotRequested,
        (Analysis::BudgetExceeded, _) | (_, Analysis::BudgetExceeded) => Analysis::BudgetExceeded,
        _ => Analysis::Failed("no resolution".into()),
    };
    let poisson_closed = match poisson {
        Some(p) if opts.poisson => Analysis::run(true, || p.is_closed(ideal, &opts.budget())),
        _ => Analysis::NotRequested,
    };
    Ok(StratumReport {
        k,
        pfaffian_size: 2 * pf.half_size,
        generators,
        dimension,
        codimension,
        degree,
        betti,
        cohen_macaulay,
        poisson_closed,
    })
}
