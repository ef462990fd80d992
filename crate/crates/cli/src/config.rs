//! What to compute for one singularity.

use serde::Serialize;

use severi_core::singularity::CurveSingularity;
use severi_core::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Catalog(String),
    Custom { f: String, weights: (u32, u32) },
}

impl Source {
    pub fn singularity(&self) -> Result<CurveSingularity> {
        match self {
            Source::Catalog(label) => CurveSingularity::catalog(label),
            Source::Custom { f, weights } => CurveSingularity::custom(f, *weights),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub source: Source,
    /// Strata `D(k)` to analyse; empty for none.
    pub strata: Vec<usize>,
    pub betti: bool,
    pub degree: bool,
    pub poisson: bool,
    pub rank_tests: bool,
    pub presentations: bool,
    pub lie_check: bool,
    /// Initial relative precision of the chart at infinity.
    pub trunc: Option<i64>,
    /// Seconds allowed per Gröbner computation.
    pub budget: f64,
}

/// Default seconds per Gröbner run: 60 for the A-series, 1800 otherwise.
pub fn default_budget(source: &Source) -> f64 {
    match source {
        Source::Catalog(l) if l.to_ascii_uppercase().starts_with('A') => 60.0,
        _ => 1800.0,
    }
}

impl RunConfig {
    /// Saito matrix and symplectic form only.
    pub fn basic(source: Source) -> Self {
        let budget = default_budget(&source);
        RunConfig {
            source,
            strata: vec![],
            betti: false,
            degree: false,
            poisson: false,
            rank_tests: false,
            presentations: false,
            lie_check: false,
            trunc: None,
            budget,
        }
    }

    /// Every analysis on every stratum.
    pub fn everything(source: Source) -> Result<Self> {
        let delta = source.singularity()?.invariants().delta;
        Ok(RunConfig {
            strata: (1..=delta).rev().collect(),
            betti: true,
            degree: true,
            poisson: true,
            rank_tests: true,
            presentations: true,
            lie_check: true,
            ..Self::basic(source)
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.budget > 0.0) {
            return Err(Error::OutOfRange("budget must be positive".into()));
        }
        if matches!(self.trunc, Some(n) if n < 1) {
            return Err(Error::OutOfRange("truncation must be positive".into()));
        }
        Ok(())
    }
}
