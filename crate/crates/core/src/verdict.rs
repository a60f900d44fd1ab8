//! Outcome of a single seeded trial, shared by every check.

use serde::{Deserialize, Serialize};
use std::fmt::Display;

/// Why a trial did not pass. Values are rendered exactly, so a failure can
/// be compared verbatim against a replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    Mismatch { what: String, expected: String, got: String },
    Error { message: String },
}

impl Failure {
    pub fn mismatch(what: impl Into<String>, expected: impl Display, got: impl Display) -> Self {
        Failure::Mismatch { what: what.into(), expected: expected.to_string(), got: got.to_string() }
    }

    pub fn error(e: impl Display) -> Self {
        Failure::Error { message: e.to_string() }
    }
}

pub type Verdict = Result<(), Failure>;

/// `Ok` when `expected == got`, otherwise a mismatch labelled `what`.
pub fn expect_eq<T: PartialEq + Display>(what: impl FnOnce() -> String, expected: &T, got: &T) -> Verdict {
    if expected == got {
        Ok(())
    } else {
        Err(Failure::mismatch(what(), expected, got))
    }
}

/// Run `trial` for `0..trials` and keep the failures with their trial index.
pub fn run_trials<F>(trials: u64, trial: F) -> Vec<(u64, Failure)>
where
    F: Fn(u64) -> Verdict + Sync,
{
    use rayon::prelude::*;
    let mut out: Vec<(u64, Failure)> =
        (0..trials).into_par_iter().filter_map(|t| trial(t).err().map(|f| (t, f))).collect();
    out.sort_by_key(|(t, _)| *t);
    out
}
