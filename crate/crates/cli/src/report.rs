//! One JSON line per check run, and the replay of recorded failures.

use std::time::Instant;

use pi1_core::verdict::Failure;
use serde::{Deserialize, Serialize};

use crate::checks::{self, Check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// A failure with the trial that produced it; `trial` is `None` for the
/// genus-wide part of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: Option<u64>,
    #[serde(flatten)]
    pub failure: Failure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub g: usize,
    pub seed: u64,
    pub trials: u64,
    pub status: Status,
    pub failures: Vec<Witness>,
    /// Wall time, only with `--timing` so that reports stay byte-identical.
    pub elapsed_ms: Option<u64>,
}

impl Report {
    fn new(check: &Check, g: usize, seed: u64, trials: u64, failures: Vec<Witness>, elapsed_ms: Option<u64>) -> Self {
        let status = if failures.is_empty() {
            Status::Pass
        } else if failures.iter().any(|w| matches!(w.failure, Failure::Error { .. })) {
            Status::Error
        } else {
            Status::Fail
        };
        Report { check: check.name.into(), g, seed, trials, status, failures, elapsed_ms }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} g={} seed={} trials={}: {}",
            self.check,
            self.g,
            self.seed,
            self.trials,
            serde_json::to_value(self.status).expect("status serializes").as_str().unwrap_or("?")
        );
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!(" ({ms} ms)"));
        }
        for w in &self.failures {
            let at = w.trial.map_or("symbolic".to_string(), |t| format!("trial {t}"));
            match &w.failure {
                Failure::Mismatch { what, expected, got } => {
                    out.push_str(&format!("\n  {at}: {what}: expected {expected}, got {got}"))
                }
                Failure::Error { message } => out.push_str(&format!("\n  {at}: error: {message}")),
            }
        }
        out
    }
}

/// Run the genus-wide part and `trials` seeded trials of `check`.
pub fn run(check: &Check, g: usize, seed: u64, trials: u64, timing: bool) -> Report {
    let start = Instant::now();
    let mut failures: Vec<Witness> =
        checks::run_symbolic(check, g).into_iter().map(|failure| Witness { trial: None, failure }).collect();
    failures.extend(
        checks::run_trials_of(check, g, seed, trials)
            .into_iter()
            .map(|(t, failure)| Witness { trial: Some(t), failure }),
    );
    let trials = if check.trial.is_some() { trials } else { 0 };
    let elapsed = timing.then(|| start.elapsed().as_millis() as u64);
    Report::new(check, g, seed, trials, failures, elapsed)
}

/// Re-run exactly the failing parts of a recorded report. `trials` of the
/// result counts the replayed trials.
pub fn replay(recorded: &Report, timing: bool) -> Result<Report, String> {
    let check = checks::find(&recorded.check).ok_or_else(|| format!("unknown check {:?}", recorded.check))?;
    let start = Instant::now();
    let mut failures = Vec::new();
    if recorded.failures.iter().any(|w| w.trial.is_none()) {
        failures.extend(checks::run_symbolic(check, recorded.g).into_iter().map(|failure| Witness { trial: None, failure }));
    }
    let mut trials: Vec<u64> = recorded.failures.iter().filter_map(|w| w.trial).collect();
    trials.dedup();
    for &t in &trials {
        if let Err(failure) = checks::run_trial(check, recorded.g, recorded.seed, t) {
            failures.push(Witness { trial: Some(t), failure });
        }
    }
    let elapsed = timing.then(|| start.elapsed().as_millis() as u64);
    Ok(Report::new(check, recorded.g, recorded.seed, trials.len() as u64, failures, elapsed))
}
