//! The analysis report: running the pipeline for one configuration, the
//! built-in consistency checks, and JSON/text rendering.

use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use severi_core::arith::{int, Matrix, Poly, Rational, Scalar};
use severi_core::groebner::Budget;
use severi_core::jacobian::{discriminant, JacobianModule};
use severi_core::period::{choose_truncation, is_closed, omega_matrix, SymplecticMatrix};
use severi_core::singularity::VersalDeformation;
use severi_core::strata::{
    lie_closure_check, node_at, pfaffians, presentations, random_a_series_point, rank_at, skew_gram, stratum_report,
    tjurina_total, Analysis, LieCheck, PoissonStructure, SkewGram, StratumOptions,
};
use severi_core::{Error, Result};

use crate::config::RunConfig;

pub const SCHEMA: &str = "severi-report/1";
const RANK_SEED: u64 = 0x5e7e_41d0;
const BUDGET_EXCEEDED: &str = "budget exceeded";

/// A value, or a status string when the computation did not finish.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Outcome<T> {
    Value(T),
    Status(String),
}

impl<T> Outcome<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Outcome::Value(t) => Some(t),
            Outcome::Status(_) => None,
        }
    }

    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, Outcome::Status(s) if s == BUDGET_EXCEEDED)
    }

    fn from_analysis<S>(a: &Analysis<S>, f: impl FnOnce(&S) -> T) -> Option<Self> {
        match a {
            Analysis::NotRequested => None,
            Analysis::Done(s) => Some(Outcome::Value(f(s))),
            Analysis::BudgetExceeded => Some(Outcome::Status(BUDGET_EXCEEDED.into())),
            Analysis::Failed(e) => Some(Outcome::Status(format!("failed: {e}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    pub monomial: String,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularityInfo {
    pub label: String,
    pub f: String,
    pub weights: (u32, u32),
    pub degree: u32,
    pub mu: usize,
    pub delta: usize,
    pub branches: usize,
    pub parameters: Vec<Parameter>,
    pub deformation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaInfo {
    pub matrix: Vec<Vec<String>>,
    /// The constant divided out, as a polynomial in `z = exp(πi/q)`.
    pub lambda: String,
    pub zeta_order: u32,
    pub precision: i64,
    pub det: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumInfo {
    pub k: usize,
    pub pfaffian_size: usize,
    pub generators: Outcome<Vec<String>>,
    pub dimension: Outcome<usize>,
    pub codimension: Outcome<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Outcome<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Outcome<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective_dimension: Option<Outcome<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohen_macaulay: Option<Outcome<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poisson_closed: Option<Outcome<bool>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankTest {
    pub point: Vec<String>,
    pub nodes: usize,
    pub expected_rank: usize,
    pub rank: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationInfo {
    pub intersection_module: Vec<Vec<String>>,
    pub ext1: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub singularity: SingularityInfo,
    pub saito_matrix: Vec<Vec<String>>,
    pub discriminant: String,
    pub omega: OmegaInfo,
    pub gram_matrix: Vec<Vec<String>>,
    pub strata: Vec<StratumInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_tests: Option<Vec<RankTest>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentations: Option<PresentationInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_closure: Option<String>,
    pub invariants: Vec<Check>,
    pub budget_exceeded: bool,
}

impl Report {
    pub fn invariants_hold(&self) -> bool {
        self.invariants.iter().all(|c| c.pass) && self.rank_tests.iter().flatten().all(|r| r.pass)
    }

    pub fn stratum(&self, k: usize) -> Option<&StratumInfo> {
        self.strata.iter().find(|s| s.k == k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        render_text(self)
    }
}

/// Intermediate objects, kept for callers that need more than the report.
pub struct Pipeline {
    pub versal: VersalDeformation,
    pub jacobian: JacobianModule,
    pub chi: Matrix,
    pub discriminant: Poly,
    pub omega: SymplecticMatrix,
    pub gram: SkewGram,
    pub poisson: PoissonStructure,
}

impl Pipeline {
    pub fn new(config: &RunConfig) -> Result<Self> {
        config.validate()?;
        let versal = config.source.singularity()?.versal()?;
        let jacobian = JacobianModule::new(&versal)?;
        let chi = jacobian.saito_matrix()?;
        let discriminant = discriminant(&versal, &chi)?;
        let n = config.trunc.unwrap_or_else(|| choose_truncation(&versal));
        // budgets apply to the Gröbner analyses only
        let omega = omega_matrix(&versal, n, &Budget::unlimited())?;
        let gram = skew_gram(&chi, &omega.w)?;
        let poisson = PoissonStructure::new(&omega.w)?;
        Ok(Pipeline { versal, jacobian, chi, discriminant, omega, gram, poisson })
    }

    pub fn delta(&self) -> usize {
        self.versal.base.invariants().delta
    }
}

pub fn run(config: &RunConfig) -> Result<Report> {
    report_for(&Pipeline::new(config)?, config)
}

/// The report for a pipeline already built from `config`.
pub fn report_for(pipe: &Pipeline, config: &RunConfig) -> Result<Report> {
    let delta = pipe.delta();
    for &k in &config.strata {
        if k == 0 || k > delta {
            return Err(Error::OutOfRange(format!("stratum D({k}) outside 1..={delta}")));
        }
    }
    let opts = StratumOptions {
        betti: config.betti,
        degree: config.degree,
        poisson: config.poisson,
        budget: Some(config.budget),
    };
    let mut strata = Vec::new();
    for &k in &config.strata {
        strata.push(stratum_info(pipe, k, &opts)?);
    }

    let rank_tests = if config.rank_tests { Some(rank_tests(pipe)?) } else { None };
    let presentations = if config.presentations {
        let p = presentations(&pipe.chi, &pipe.gram)?;
        Some(PresentationInfo { intersection_module: p.intersection_module.to_strings(), ext1: p.ext1.to_strings() })
    } else {
        None
    };
    let lie_closure = config.lie_check.then(|| {
        match lie_closure_check(&pipe.chi, &pipe.omega.w, &Budget::seconds(config.budget)) {
            Ok(LieCheck::Closed) => "closed".to_string(),
            Ok(LieCheck::NotClosed) => "not closed".to_string(),
            Ok(LieCheck::Inconclusive) => "inconclusive".to_string(),
            Err(Error::BudgetExceeded) => BUDGET_EXCEEDED.to_string(),
            Err(e) => format!("failed: {e}"),
        }
    });

    let mut sizes: Vec<usize> = strata.iter().map(|s| s.pfaffian_size / 2).collect();
    sizes.push(1);
    sizes.sort_unstable();
    sizes.dedup();
    let invariants = invariants(pipe, &sizes)?;

    let budget_exceeded = lie_closure.as_deref() == Some(BUDGET_EXCEEDED)
        || strata.iter().any(|s| {
            s.generators.is_budget_exceeded()
                || s.dimension.is_budget_exceeded()
                || s.degree.as_ref().is_some_and(|o| o.is_budget_exceeded())
                || s.betti.as_ref().is_some_and(|o| o.is_budget_exceeded())
                || s.poisson_closed.as_ref().is_some_and(|o| o.is_budget_exceeded())
        });

    let v = &pipe.versal;
    let inv = v.base.invariants();
    let (wx, wy) = v.base.weights();
    let xy = v.base.ring();
    let parameters = (0..v.mu())
        .map(|i| Parameter {
            name: v.params[i].clone(),
            monomial: Poly::monomial(xy, v.basis[i].clone(), int(1)).to_string(),
            weight: v.weights[i],
        })
        .collect();
    let singularity = SingularityInfo {
        label: v.base.label().to_string(),
        f: v.base.f().to_string(),
        weights: (wx, wy),
        degree: v.base.degree(),
        mu: inv.mu,
        delta: inv.delta,
        branches: inv.r,
        parameters,
        deformation: v.f().to_string(),
        note: v.reading_note().map(str::to_string),
    };
    Ok(Report {
        schema: SCHEMA.to_string(),
        singularity,
        saito_matrix: pipe.chi.to_strings(),
        discriminant: pipe.discriminant.to_string(),
        omega: OmegaInfo {
            matrix: pipe.omega.w.to_strings(),
            lambda: pipe.omega.lambda.to_string(),
            zeta_order: pipe.omega.zeta_order,
            precision: pipe.omega.precision,
            det: pipe.omega.det.to_string(),
        },
        gram_matrix: pipe.gram.m.to_strings(),
        strata,
        rank_tests,
        presentations,
        lie_closure,
        invariants,
        budget_exceeded,
    })
}

pub fn stratum_info(pipe: &Pipeline, k: usize, opts: &StratumOptions) -> Result<StratumInfo> {
    let r = stratum_report(&pipe.versal, &pipe.gram, k, Some(&pipe.poisson), opts)?;
    Ok(StratumInfo {
        k,
        pfaffian_size: r.pfaffian_size,
        generators: Outcome::from_analysis(&r.generators, |g| g.iter().map(|p| p.to_string()).collect())
            .expect("always computed"),
        dimension: Outcome::from_analysis(&r.dimension, |d| *d).expect("always computed"),
        codimension: Outcome::from_analysis(&r.codimension, |d| *d).expect("always computed"),
        degree: Outcome::from_analysis(&r.degree, |d| *d),
        betti: Outcome::from_analysis(&r.betti, |b| b.ranks.clone()),
        projective_dimension: Outcome::from_analysis(&r.cohen_macaulay, |c| c.pd),
        cohen_macaulay: Outcome::from_analysis(&r.cohen_macaulay, |c| c.cohen_macaulay),
        poisson_closed: Outcome::from_analysis(&r.poisson_closed, |b| *b),
    })
}

/// Rank of `M` at certified points with a known number of nodes: sampled
/// smooth fibers, and nodal fibers built by squared factors (A-series) or by
/// placing one node (otherwise).
pub fn rank_tests(pipe: &Pipeline) -> Result<Vec<RankTest>> {
    let v = &pipe.versal;
    let delta = pipe.delta();
    let mut rng = StdRng::seed_from_u64(RANK_SEED);
    let mut out = Vec::new();
    let mut record = |u: Vec<Rational>, nodes: usize| -> Result<()> {
        let rank = rank_at(&pipe.gram, &u)?;
        let expected_rank = 2 * (delta - nodes);
        out.push(RankTest {
            point: u.iter().map(|c| c.to_string()).collect(),
            nodes,
            expected_rank,
            rank,
            pass: rank == expected_rank,
        });
        Ok(())
    };
    let mut smooth = 0;
    while smooth < 2 {
        let u: Vec<Rational> = (0..v.mu()).map(|_| int(rng.gen_range(-5..=5))).collect();
        if tjurina_total(v, &u)? == 0 {
            record(u, 0)?;
            smooth += 1;
        }
    }
    if v.base.exponents().1 == 2 {
        for i in 0..12 {
            let k = 1 + i % delta;
            let pt = random_a_series_point(v, k, &mut rng)?;
            record(pt.u, k)?;
        }
    } else {
        let mut found = 0;
        for _ in 0..200 {
            if found == 4 {
                break;
            }
            let x0 = int(rng.gen_range(-3..=3));
            let y0 = int(rng.gen_range(-3..=3));
            let others: Vec<Rational> = (0..v.mu() - 3).map(|_| int(rng.gen_range(-3..=3))).collect();
            match node_at(v, &x0, &y0, &others) {
                Ok(pt) => {
                    record(pt.u, 1)?;
                    found += 1;
                }
                Err(Error::Degenerate(_)) | Err(Error::NonIsolated) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

fn check(name: &str, pass: bool, detail: Option<String>) -> Check {
    Check { name: name.to_string(), pass, detail }
}

fn weights_match(m: &Matrix, weight: impl Fn(usize, usize) -> i64) -> Option<String> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let p = m.get(i, j);
            if p.is_zero() {
                continue;
            }
            let expected = weight(i, j);
            if p.homogeneous_degree().map(|d| d as i64) != Some(expected) {
                return Some(format!("entry ({}, {}) is not of weight {expected}", i + 1, j + 1));
            }
        }
    }
    None
}

fn weight_check(name: &str, m: &Matrix, weight: impl Fn(usize, usize) -> i64) -> Check {
    let bad = weights_match(m, weight);
    check(name, bad.is_none(), bad)
}

fn sorted_strings(ps: &[Poly]) -> Vec<String> {
    let mut s: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    s.sort();
    s
}

/// Consistency checks that every run must satisfy. `pfaffian_halves` lists
/// the Pfaffian sizes (halved) used in the scaling check.
pub fn invariants(pipe: &Pipeline, pfaffian_halves: &[usize]) -> Result<Vec<Check>> {
    let v = &pipe.versal;
    let pr = v.params_ring();
    let mu = v.mu();
    let chi = &pipe.chi;
    let w = &pipe.omega.w;
    let mut out = Vec::new();

    let pairing = pipe.jacobian.dual_pairing()?;
    out.push(check("residue pairing of basis and dual basis is the identity", pairing == Matrix::identity(pr, mu), None));

    out.push(check("Saito matrix is symmetric", chi.is_symmetric(), None));
    out.push(weight_check("Saito matrix entries are weighted homogeneous", chi, |i, j| {
        pipe.jacobian.saito_entry_weight(i, j) as i64
    }));

    let euler: Vec<Poly> = (0..mu).map(|j| Poly::var(pr, j).scale(&int(v.weights[j] as i64))).collect();
    let mut factor: Option<Rational> = None;
    let euler_ok = (0..mu).all(|j| match chi.get(0, j).proportional_to(&euler[j]) {
        Some(l) => *factor.get_or_insert(l.clone()) == l,
        None => false,
    });
    out.push(check(
        "first row of the Saito matrix is the Euler field",
        euler_ok,
        factor.map(|l| format!("factor {l}")),
    ));

    let disc = &pipe.discriminant;
    let mut log_ok = true;
    let partials: Vec<Poly> = (0..mu).map(|j| disc.partial(j)).collect::<Result<_>>()?;
    for i in 0..mu {
        let mut s = Poly::zero(pr);
        for (j, d) in partials.iter().enumerate() {
            s = s.add(&chi.get(i, j).mul(d));
        }
        log_ok &= s.div_exact(disc).is_some();
    }
    out.push(check("rows of the Saito matrix are tangent to the discriminant", log_ok, None));

    out.push(check("W is skew-symmetric", w.is_skew(), None));
    out.push(check("the form is closed", is_closed(w)?, None));
    let det = w.det()?.as_constant();
    out.push(check(
        "det W is a nonzero constant",
        det.as_ref().is_some_and(|d| !Scalar::is_zero(d) && *d == pipe.omega.det),
        det.map(|d| d.to_string()),
    ));
    out.push(weight_check("W entries are weighted homogeneous", w, |i, j| SymplecticMatrix::entry_weight(v, i, j)));
    out.push(check(
        "pullback residues vanish and the form is stable under doubled truncation",
        true,
        Some(format!("precision {} and {}", pipe.omega.precision, 2 * pipe.omega.precision)),
    ));

    let m = &pipe.gram.m;
    out.push(weight_check("Gram entries are weighted homogeneous", m, |i, j| SkewGram::entry_weight(v, i, j)));
    let pf_m = m.pfaffian()?;
    let pf_rhs = w.pfaffian()?.mul(&chi.det()?);
    out.push(check("Pf(M) = Pf(W) det(chi)", pf_m == pf_rhs, None));
    out.push(check("Poisson bracket satisfies the Jacobi identity", pipe.poisson.jacobi_holds()?, None));

    let scaled = skew_gram(&chi.scale(&int(5)), &w.scale(&int(3)))?;
    let mut scale_ok = true;
    for &h in pfaffian_halves {
        if 2 * h > mu {
            continue;
        }
        scale_ok &= sorted_strings(&pfaffians(m, h)?) == sorted_strings(&pfaffians(&scaled.m, h)?);
    }
    out.push(check("Pfaffian ideals are unchanged by rescaling chi and W", scale_ok, None));
    Ok(out)
}

fn render_matrix(out: &mut String, rows: &[Vec<String>]) {
    for r in rows {
        let _ = writeln!(out, "  [{}]", r.join(", "));
    }
}

fn outcome_text<T>(o: &Outcome<T>, f: impl Fn(&T) -> String) -> String {
    match o {
        Outcome::Value(t) => f(t),
        Outcome::Status(s) => s.clone(),
    }
}

fn render_text(r: &Report) -> String {
    let s = &r.singularity;
    let mut out = String::new();
    let _ = writeln!(out, "{}: f = {}  weights {:?}  d = {}", s.label, s.f, s.weights, s.degree);
    let _ = writeln!(out, "mu = {}  delta = {}  branches = {}", s.mu, s.delta, s.branches);
    let params: Vec<String> = s.parameters.iter().map(|p| format!("{}:{} (w {})", p.name, p.monomial, p.weight)).collect();
    let _ = writeln!(out, "parameters: {}", params.join(", "));
    let _ = writeln!(out, "F = {}", s.deformation);
    if let Some(n) = &s.note {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "\nSaito matrix:");
    render_matrix(&mut out, &r.saito_matrix);
    let _ = writeln!(out, "discriminant: {}", r.discriminant);
    let _ = writeln!(
        out,
        "\nW (lambda = {}, z of order {}, precision {}, det {}):",
        r.omega.lambda, r.omega.zeta_order, r.omega.precision, r.omega.det
    );
    render_matrix(&mut out, &r.omega.matrix);
    for st in &r.strata {
        let _ = writeln!(out, "\nD({}) from {}x{} Pfaffians", st.k, st.pfaffian_size, st.pfaffian_size);
        let _ = writeln!(out, "  generators: {}", outcome_text(&st.generators, |g| format!("{}", g.len())));
        if let Some(g) = st.generators.value() {
            for p in g {
                let _ = writeln!(out, "    {p}");
            }
        }
        let _ = writeln!(out, "  codimension: {}", outcome_text(&st.codimension, |c| c.to_string()));
        if let Some(d) = &st.degree {
            let _ = writeln!(out, "  degree: {}", outcome_text(d, |c| c.to_string()));
        }
        if let Some(b) = &st.betti {
            let _ = writeln!(out, "  betti: {}", outcome_text(b, |b| format!("{b:?}")));
        }
        if let Some(c) = &st.cohen_macaulay {
            let _ = writeln!(out, "  Cohen-Macaulay: {}", outcome_text(c, |c| c.to_string()));
        }
        if let Some(p) = &st.poisson_closed {
            let _ = writeln!(out, "  Poisson closed: {}", outcome_text(p, |c| c.to_string()));
        }
    }
    if let Some(tests) = &r.rank_tests {
        let passed = tests.iter().filter(|t| t.pass).count();
        let _ = writeln!(out, "\nrank tests: {passed}/{} pass", tests.len());
        for t in tests.iter().filter(|t| !t.pass) {
            let _ = writeln!(out, "  FAIL ({}) nodes {} rank {} expected {}", t.point.join(", "), t.nodes, t.rank, t.expected_rank);
        }
    }
    if let Some(p) = &r.presentations {
        let _ = writeln!(out, "\nExt^1 presentation:");
        render_matrix(&mut out, &p.ext1);
    }
    if let Some(l) = &r.lie_closure {
        let _ = writeln!(out, "\nLie closure of the Gram fields: {l}");
    }
    let _ = writeln!(out, "\nchecks:");
    for c in &r.invariants {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        match &c.detail {
            Some(d) => {
                let _ = writeln!(out, "  {mark} {} ({d})", c.name);
            }
            None => {
                let _ = writeln!(out, "  {mark} {}", c.name);
            }
        }
    }
    if r.budget_exceeded {
        let _ = writeln!(out, "\nsome analyses exceeded the budget");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Source;

    fn full(label: &str) -> RunConfig {
        RunConfig::everything(Source::Catalog(label.into())).unwrap()
    }

    #[test]
    fn a2_report() {
        let r = run(&full("A2")).unwrap();
        assert!(r.invariants_hold(), "{}", r.to_text());
        assert_eq!(r.omega.matrix, vec![vec!["0", "1"], vec!["-1", "0"]]);
        assert_eq!(r.strata.len(), 1);
        assert_eq!(r.strata[0].codimension, Outcome::Value(1));
        assert!(!r.budget_exceeded);
    }

    #[test]
    fn json_round_trip() {
        let r = run(&full("A4")).unwrap();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn stratum_range_is_checked() {
        let mut c = RunConfig::basic(Source::Catalog("A4".into()));
        c.strata = vec![3];
        assert!(matches!(run(&c), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let mut c = full("A6");
        c.budget = 1e-9;
        let r = run(&c).unwrap();
        assert!(r.budget_exceeded);
        assert!(r.strata.iter().any(|s| s.betti.as_ref().is_some_and(|b| b.is_budget_exceeded())));
    }

    #[test]
    fn outcome_serialization() {
        let o: Outcome<Vec<usize>> = Outcome::Value(vec![1, 2]);
        assert_eq!(serde_json::to_string(&o).unwrap(), "[1,2]");
        let s: Outcome<bool> = Outcome::Status(BUDGET_EXCEEDED.into());
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"budget exceeded\"");
        assert!(serde_json::from_str::<Outcome<bool>>("\"budget exceeded\"").unwrap().is_budget_exceeded());
    }
}
