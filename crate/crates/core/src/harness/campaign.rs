//! Randomized soundness campaigns over closed base-type programs.

use super::check::{check_closed_base, Verdict};
use super::config::ProbeConfig;
use super::gen::gen_typed_term;
use crate::cplx::{ctypecheck, CplxCtx, FullTy};
use crate::target::{print, typecheck, TargetExpr, TargetTy, TypeContext};
use crate::translate::{translate, translate_ty};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

/// Draws per trial before the trial is reported as inconclusive.
pub const MAX_DRAWS: u32 = 16;

const STACK_SIZE: usize = 256 << 20;

/// One line of campaign output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub cost: u64,
    pub bound: u64,
    pub size: u64,
    pub pot: u64,
    pub verdict: Verdict,
    /// Earlier draws for this trial discarded for overflow or resource use.
    pub redraws: u32,
    pub type_preserved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl fmt::Display for TrialRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trial={} seed={} cost={} bound={} size={} pot={} verdict={}",
            self.trial, self.seed, self.cost, self.bound, self.size, self.pot, self.verdict
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub redraws: u64,
    pub type_preservation_failures: usize,
    pub records: Vec<TrialRecord>,
}

impl CampaignSummary {
    fn from_records(records: Vec<TrialRecord>) -> Self {
        let count = |v: Verdict| records.iter().filter(|r| r.verdict == v).count();
        CampaignSummary {
            trials: records.len(),
            passed: count(Verdict::Pass),
            failed: count(Verdict::Fail),
            inconclusive: count(Verdict::Inconclusive),
            redraws: records.iter().map(|r| r.redraws as u64).sum(),
            type_preservation_failures: records.iter().filter(|r| !r.type_preserved).count(),
            records,
        }
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn summary_line(&self) -> String {
        format!(
            "summary trials={} pass={} fail={} inconclusive={} redraws={} type_preservation_failures={}",
            self.trials,
            self.passed,
            self.failed,
            self.inconclusive,
            self.redraws,
            self.type_preservation_failures
        )
    }

    /// Line-oriented text: one record per trial, then the summary.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(&self.summary_line());
        out.push('\n');
        out
    }

    /// JSON lines: one object per trial, then the summary counts.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        let counts = serde_json::json!({
            "summary": {
                "trials": self.trials,
                "pass": self.passed,
                "fail": self.failed,
                "inconclusive": self.inconclusive,
                "redraws": self.redraws,
                "type_preservation_failures": self.type_preservation_failures,
            }
        });
        out.push_str(&counts.to_string());
        out.push('\n');
        out
    }
}

/// Seed for draw `attempt` of trial `trial` in a campaign seeded by `base`.
pub fn trial_seed(base: u64, trial: usize, attempt: u32) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(((trial as u64) << 8) | attempt as u64);
    rng.random()
}

/// The program drawn for a given seed, with its base type.
pub fn trial_program(seed: u64, cfg: &ProbeConfig) -> (TargetExpr, TargetTy) {
    let ty = match seed % 3 {
        0 => TargetTy::Int,
        1 => TargetTy::Bool,
        _ => TargetTy::IntList,
    };
    let e = gen_typed_term(seed, cfg.depth, &ty, &TypeContext::new(), cfg);
    (e, ty)
}

fn type_preserved(e: &TargetExpr) -> bool {
    let Ok(ty) = typecheck(&TypeContext::new(), e) else {
        return false;
    };
    ctypecheck(&CplxCtx::new(), &translate(e)) == Ok(FullTy::Cplx(translate_ty(&ty)))
}

fn run_trial(trial: usize, cfg: &ProbeConfig) -> TrialRecord {
    let mut last = None;
    for attempt in 0..MAX_DRAWS {
        let seed = trial_seed(cfg.seed, trial, attempt);
        let (e, _) = trial_program(seed, cfg);
        let preserved = type_preserved(&e);
        let mut record = TrialRecord {
            trial,
            seed,
            cost: 0,
            bound: 0,
            size: 0,
            pot: 0,
            verdict: Verdict::Fail,
            redraws: attempt,
            type_preserved: preserved,
            counterexample: None,
        };
        match check_closed_base(&e, cfg) {
            Ok(report) => {
                record.cost = report.cost;
                record.bound = report.bound_cost;
                record.size = report.size;
                record.pot = report.bound_pot.as_nat().unwrap_or(0);
                record.verdict = if preserved {
                    report.verdict
                } else {
                    Verdict::Fail
                };
                if record.verdict == Verdict::Fail {
                    record.counterexample = Some(print(&e));
                }
                return record;
            }
            Err(err) if err.is_resource() => {
                record.verdict = Verdict::Inconclusive;
                record.counterexample = Some(format!("{err}: {}", print(&e)));
                last = Some(record);
            }
            Err(err) => {
                record.counterexample = Some(format!("{err}: {}", print(&e)));
                return record;
            }
        }
    }
    last.expect("at least one draw")
}

/// Runs `cfg.trials` independent trials in parallel. Output is ordered by
/// trial index and depends only on `cfg`.
pub fn fuzz_campaign(cfg: &ProbeConfig) -> CampaignSummary {
    let pool = rayon::ThreadPoolBuilder::new()
        .stack_size(STACK_SIZE)
        .build()
        .expect("thread pool");
    let records = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|k| run_trial(k, cfg))
            .collect()
    });
    CampaignSummary::from_records(records)
}
