//! Checks of the bounding relation between evaluation and denotation.

use super::config::ProbeConfig;
use super::gen::TermGen;
use crate::cplx::{denote_with_fuel, SemEnv, SemError, SemVal};
use crate::eval::{apply_closure, eval, value_size, EvalError, Value, ValueEnv};
use crate::target::{print, typecheck, TargetExpr, TargetTy, TypeContext, TypeError};
use crate::translate::translate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Evaluation or denotation ran out of resources; nothing was decided.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of checking one closed program against its translated bound.
#[derive(Debug, Clone)]
pub struct Report {
    pub program: String,
    pub cost: u64,
    pub bound_cost: u64,
    pub size: u64,
    pub bound_pot: SemVal,
    pub verdict: Verdict,
    pub counterexample: Option<String>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cost={} bound={} size={} pot={} verdict={}",
            self.cost, self.bound_cost, self.size, self.bound_pot, self.verdict
        )?;
        if let Some(cx) = &self.counterexample {
            write!(f, " counterexample={cx}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("type error: {0}")]
    Type(#[from] TypeError),
    #[error("expected a base type, got {0}")]
    NotBase(TargetTy),
    #[error("evaluation: {0}")]
    Eval(#[from] EvalError),
    #[error("denotation: {0}")]
    Sem(#[from] SemError),
}

impl CheckError {
    /// Resource exhaustion or 64-bit overflow, as opposed to a defect.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            CheckError::Eval(EvalError::BudgetExhausted { .. } | EvalError::Overflow { .. })
                | CheckError::Sem(SemError::FuelExhausted | SemError::Overflow)
        )
    }
}

/// Evaluates a closed base-type program and denotes its translation.
pub fn check_closed_base(e: &TargetExpr, cfg: &ProbeConfig) -> Result<Report, CheckError> {
    let ty = typecheck(&TypeContext::new(), e)?;
    if !ty.is_base() {
        return Err(CheckError::NotBase(ty));
    }
    let run = eval(e, &ValueEnv::new(), cfg.budget)?;
    let bound = denote_with_fuel(&translate(e), &SemEnv::new(), cfg.fuel)?;
    let size = value_size(&run.value, &ty).map_err(|m| EvalError::Internal(m.to_string()))?;
    let bound_cost = bound.cost()?;
    let bound_pot = bound.pot()?.clone();
    let pot = bound_pot.as_nat()?;
    let verdict = if run.cost <= bound_cost && size <= pot {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Report {
        program: print(e),
        cost: run.cost,
        bound_cost,
        size,
        bound_pot,
        verdict,
        counterexample: (verdict == Verdict::Fail)
            .then(|| format!("{} evaluates to {}", print(e), run.value)),
    })
}

/// Re-judges a report against a different bound of the same shape.
pub fn rejudge(report: &Report, bound: &SemVal) -> Result<Verdict, SemError> {
    let ok = report.cost <= bound.cost()? && report.size <= bound.pot()?.as_nat()?;
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

/// Outcome of probing a value against a potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub verdict: Verdict,
    /// Argument applications performed, across all nesting levels.
    pub probes: usize,
    pub failure: Option<String>,
}

/// Finite approximation of the value bounding relation: base types compare
/// sizes; at arrow types the closure is run on `cfg.probes` generated
/// arguments with known potentials and each result is checked recursively.
pub fn check_value_bounded(
    v: &Value,
    p: &SemVal,
    ty: &TargetTy,
    cfg: &ProbeConfig,
    seed: u64,
) -> ProbeOutcome {
    let mut prober = Prober {
        cfg,
        gen: TermGen::new(ChaCha8Rng::seed_from_u64(seed), cfg),
        probes: 0,
    };
    match prober.check(v, p, ty) {
        Ok(()) => ProbeOutcome {
            verdict: Verdict::Pass,
            probes: prober.probes,
            failure: None,
        },
        Err(Failure::Violated(msg)) => ProbeOutcome {
            verdict: Verdict::Fail,
            probes: prober.probes,
            failure: Some(msg),
        },
        Err(Failure::Error(e)) => ProbeOutcome {
            verdict: if e.is_resource() {
                Verdict::Inconclusive
            } else {
                Verdict::Fail
            },
            probes: prober.probes,
            failure: Some(e.to_string()),
        },
    }
}

enum Failure {
    Violated(String),
    Error(CheckError),
}

impl<E: Into<CheckError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.into())
    }
}

struct Prober<'a> {
    cfg: &'a ProbeConfig,
    gen: TermGen<'a, ChaCha8Rng>,
    probes: usize,
}

impl Prober<'_> {
    fn check(&mut self, v: &Value, p: &SemVal, ty: &TargetTy) -> Result<(), Failure> {
        let TargetTy::Arrow(dom, cod) = ty else {
            let size = value_size(v, ty).map_err(|m| EvalError::Internal(m.to_string()))?;
            let pot = p.as_nat()?;
            return if size <= pot {
                Ok(())
            } else {
                Err(Failure::Violated(format!(
                    "{v} has size {size} > potential {pot}"
                )))
            };
        };
        let Value::Closure(closure) = v else {
            return Err(EvalError::Internal(format!("{v} is not a closure")).into());
        };
        for _ in 0..self.cfg.probes {
            let (arg, arg_pot, shown) = self.argument(dom)?;
            self.probes += 1;
            let run = apply_closure(closure, arg, self.cfg.budget)?;
            let bound = p.apply(&arg_pot)?;
            let bound_cost = bound.cost()?;
            if run.cost > bound_cost {
                return Err(Failure::Violated(format!(
                    "applied to {shown}: cost {} > bound {bound_cost}",
                    run.cost
                )));
            }
            self.check(&run.value, bound.pot()?, cod)
                .map_err(|f| match f {
                    Failure::Violated(m) => Failure::Violated(format!("applied to {shown}: {m}")),
                    other => other,
                })?;
        }
        Ok(())
    }

    /// A value of type `ty` together with a potential bounding it.
    fn argument(&mut self, ty: &TargetTy) -> Result<(Value, SemVal, String), Failure> {
        Ok(match ty {
            TargetTy::Int => {
                let n = self.gen.int();
                (Value::Int(n), SemVal::Nat(1), n.to_string())
            }
            TargetTy::Bool => {
                let b: bool = self.gen.rng.random();
                (Value::Bool(b), SemVal::Nat(1), b.to_string())
            }
            TargetTy::IntList => {
                let ns = self.gen.int_list(self.cfg.max_list);
                let v = Value::List(ns);
                let shown = v.to_string();
                let len = match &v {
                    Value::List(ns) => ns.len() as u64,
                    _ => unreachable!(),
                };
                (v, SemVal::Nat(len), shown)
            }
            TargetTy::Arrow(..) => {
                let depth = self.cfg.depth.clamp(1, 3);
                let term = self.gen.term(ty, &TypeContext::new(), depth);
                let v = eval(&term, &ValueEnv::new(), self.cfg.budget)?.value;
                let bound = denote_with_fuel(&translate(&term), &SemEnv::new(), self.cfg.fuel)?;
                (v, bound.pot()?.clone(), print(&term))
            }
        })
    }
}
