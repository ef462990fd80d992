//! Gröbner bases over ℚ for ideals and submodules of free modules, with
//! normal forms, dimension, degree and graded minimal free resolutions.

mod buchberger;
mod hilbert;
mod ideal;
mod modframe;
mod resolution;
mod schreyer;
mod vector;

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub use hilbert::{hilbert_data, hilbert_numerator, independent_set_dimension, HilbertData};
pub use ideal::{ideal_equal, Ideal, Submodule};
pub use resolution::{syzygies, BettiTable, CmReport, FreeResolution};

/// Wall-clock allowance for a computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(s: f64) -> Self {
        Budget { deadline: Some(Instant::now() + Duration::from_secs_f64(s)) }
    }

    pub fn until(deadline: Instant) -> Self {
        Budget { deadline: Some(deadline) }
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded),
            _ => Ok(()),
        }
    }
}
