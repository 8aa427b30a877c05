//! Empirical checks that translated bounds dominate evaluation: closed
//! program reports, probing of function values, randomized campaigns,
//! bound tabulation and properties of the complexity semantics.

mod campaign;
pub mod cgen;
mod check;
mod config;
mod gen;
mod props;
mod tabulate;

pub use campaign::{
    fuzz_campaign, trial_program, trial_seed, CampaignSummary, TrialRecord, MAX_DRAWS,
};
pub use check::{
    check_closed_base, check_value_bounded, rejudge, CheckError, ProbeOutcome, Report, Verdict,
};
pub use config::ProbeConfig;
pub use gen::{gen_typed_term, TermGen};
pub use props::{check_pfold_base, check_subst_denote, PropertySummary};
pub use tabulate::{
    eval_applied, tabulate, worst_case_inputs, ArgSpec, BoundRow, BoundTable, TabulateError,
};
