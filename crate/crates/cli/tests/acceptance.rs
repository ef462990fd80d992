//! Acceptance suite: one line per criterion, with wall-clock limits.
//!
//! The A8 and E8 stretch criteria are soft: running out of budget or time is
//! reported but does not fail the suite. `SEVERI_SKIP_STRETCH=1` skips them.

use std::fmt;
use std::time::{Duration, Instant};

use severi_cli::config::{RunConfig, Source};
use severi_cli::golden;
use severi_cli::report::{invariants, report_for, run, Pipeline};
use severi_cli::verify::{verify_paper, Scorecard, Status};
use severi_core::arith::{int, parse_poly, Rational};
use severi_core::strata::{rank_at, tjurina_total};

const A2_LIMIT: Duration = Duration::from_secs(5);
const A4_LIMIT: Duration = Duration::from_secs(120);
const A6_LIMIT: Duration = Duration::from_secs(15 * 60);
const E6_LIMIT: Duration = Duration::from_secs(30 * 60);
const STRETCH_LIMIT: Duration = Duration::from_secs(60 * 60);
/// Seconds per Gröbner computation in the stretch criteria.
const STRETCH_BUDGET: f64 = 3600.0;
const MIN_RANDOM_NODAL_POINTS: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    /// Soft criterion that ran out of budget or time.
    SoftFail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::SoftFail => "SOFT-FAIL",
            Verdict::Skipped => "SKIP",
        })
    }
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

fn pass_if(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { verdict: if ok { Verdict::Pass } else { Verdict::Fail }, detail: detail.into() }
}

fn failures(card: &Scorecard) -> String {
    let bad: Vec<String> = card
        .rows
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{} {} ({})", r.status, r.item, r.detail))
        .collect();
    if bad.is_empty() {
        format!("{} rows", card.rows.len())
    } else {
        bad.join("; ")
    }
}

fn timed(limit: Duration, soft: bool, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let t = start.elapsed();
    if t > limit && out.verdict == Verdict::Pass {
        out.verdict = if soft { Verdict::SoftFail } else { Verdict::Fail };
        out.detail = format!("over the {limit:?} limit; {}", out.detail);
    }
    (out, t)
}

fn card_outcome(label: &str, budget: Option<f64>, soft: bool) -> Outcome {
    match verify_paper(label, budget) {
        Ok(card) if !card.passed() => pass_if(false, failures(&card)),
        Ok(card) if card.budget_exceeded() => {
            Outcome { verdict: if soft { Verdict::SoftFail } else { Verdict::Fail }, detail: failures(&card) }
        }
        Ok(card) => pass_if(true, failures(&card)),
        Err(severi_core::Error::BudgetExceeded) if soft => Outcome { verdict: Verdict::SoftFail, detail: "budget exceeded".into() },
        Err(e) => pass_if(false, e.to_string()),
    }
}

fn criterion_1() -> Outcome {
    let card = match verify_paper("A2", None) {
        Ok(c) => c,
        Err(e) => return pass_if(false, e.to_string()),
    };
    let report = run(&RunConfig::everything(Source::Catalog("A2".into())).unwrap()).unwrap();
    let gens = report.stratum(1).and_then(|s| s.generators.value().cloned()).unwrap_or_default();
    let ideal_ok = gens == vec![golden::A2_DISCRIMINANT.to_string()];
    pass_if(card.passed() && ideal_ok, format!("{}; D(1) = ({})", failures(&card), gens.join(", ")))
}

fn criterion_2() -> Outcome {
    let card = match verify_paper("A4", None) {
        Ok(c) => c,
        Err(e) => return pass_if(false, e.to_string()),
    };
    let config = RunConfig { strata: vec![1], ..RunConfig::basic(Source::Catalog("A4".into())) };
    let pipe = Pipeline::new(&config).unwrap();
    let report = report_for(&pipe, &config).unwrap();
    let gens = report.stratum(1).and_then(|s| s.generators.value().cloned()).unwrap_or_default();
    let pr = pipe.versal.params_ring();
    let pf4_ok = gens.len() == 1 && parse_poly(pr, &gens[0]).unwrap().proportional_to(&pipe.discriminant).is_some();
    let mut ranks = Vec::new();
    let mut ranks_ok = true;
    for (u, nodes) in golden::A4_POINTS {
        let u: Vec<Rational> = u.iter().map(|&x| int(x)).collect();
        let r = rank_at(&pipe.gram, &u).unwrap();
        ranks_ok &= tjurina_total(&pipe.versal, &u).unwrap() == nodes && r == 2 * (2 - nodes);
        ranks.push(r);
    }
    pass_if(
        card.passed() && pf4_ok && ranks_ok,
        format!("{}; Pf4 = discriminant: {pf4_ok}; ranks {ranks:?}", failures(&card)),
    )
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for label in ["A2", "A4", "A6", "A8", "E6", "E8"] {
        let config = RunConfig::basic(Source::Catalog(label.into()));
        let pipe = match Pipeline::new(&config) {
            Ok(p) => p,
            Err(e) => {
                ok = false;
                notes.push(format!("{label}: {e}"));
                continue;
            }
        };
        let halves: Vec<usize> = (1..=pipe.delta()).collect();
        let checks = invariants(&pipe, &halves).unwrap();
        let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        let again = report_for(&Pipeline::new(&config).unwrap(), &config).unwrap().to_json();
        let identical = report_for(&pipe, &config).unwrap().to_json() == again;
        ok &= failed.is_empty() && identical;
        if !failed.is_empty() {
            notes.push(format!("{label}: {}", failed.join(", ")));
        }
        if !identical {
            notes.push(format!("{label}: reports differ between runs"));
        }
        if failed.is_empty() && identical {
            notes.push(format!("{label}: {} checks", checks.len() + 1));
        }
    }
    pass_if(ok, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for label in ["A2", "A4", "A6", "A8"] {
        let config = RunConfig { rank_tests: true, ..RunConfig::basic(Source::Catalog(label.into())) };
        let report = run(&config).unwrap();
        let tests = report.rank_tests.unwrap();
        let nodal = tests.iter().filter(|t| t.nodes > 0).count();
        let passed = tests.iter().filter(|t| t.pass).count();
        ok &= nodal >= MIN_RANDOM_NODAL_POINTS && passed == tests.len();
        notes.push(format!("{label}: {passed}/{} ({nodal} nodal)", tests.len()));
    }
    pass_if(ok, notes.join("; "))
}

fn stretch(label: &str) -> Outcome {
    if std::env::var_os("SEVERI_SKIP_STRETCH").is_some() {
        return Outcome { verdict: Verdict::Skipped, detail: "SEVERI_SKIP_STRETCH is set".into() };
    }
    card_outcome(label, Some(STRETCH_BUDGET), true)
}

#[test]
fn acceptance() {
    type Criterion = (u32, &'static str, Duration, bool, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        (1, "A2 end-to-end", A2_LIMIT, false, criterion_1),
        (2, "A4 reference values", A4_LIMIT, false, criterion_2),
        (3, "A6 reference values", A6_LIMIT, false, || card_outcome("A6", None, false)),
        (4, "E6 reference values", E6_LIMIT, false, || card_outcome("E6", None, true)),
        (5, "A8 Betti tables (stretch)", STRETCH_LIMIT, true, || stretch("A8")),
        (6, "E8 degree (stretch)", STRETCH_LIMIT, true, || stretch("E8")),
        (7, "property suites", Duration::MAX, false, criterion_7),
        (8, "rank at random nodal points", Duration::MAX, false, criterion_8),
    ];
    let mut hard_failures = Vec::new();
    for (n, name, limit, soft, f) in criteria {
        let (out, t) = timed(limit, soft, f);
        println!("criterion {n} {:<9} {name} [{:.1} s]: {}", out.verdict, t.as_secs_f64(), out.detail);
        if out.verdict == Verdict::Fail {
            hard_failures.push(n);
        }
    }
    assert!(hard_failures.is_empty(), "failing criteria: {hard_failures:?}");
}
