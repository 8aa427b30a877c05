//! Numeric tabulation of translated bounds for curried programs.

use crate::cplx::{denote, star_apply, SemEnv, SemError, SemVal};
use crate::eval::{eval, EvalError, EvalResult, Value, ValueEnv};
use crate::target::{typecheck, TargetExpr, TargetTy, TypeContext, TypeError};
use crate::translate::translate;
use serde::Serialize;
use std::fmt;
use std::ops::Range;
use thiserror::Error;

/// How one curried argument is supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArgSpec {
    /// A base-type argument with fixed complexity `(cost, pot)`.
    Fixed { cost: u64, pot: u64 },
    /// A closed target term, translated and denoted.
    Term(TargetExpr),
    /// The base-type argument whose complexity is `(1, n)` in row `n`.
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: u64,
    pub cost: u64,
    pub pot: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    pub fn costs(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.cost).collect()
    }

    pub fn pots(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.pot).collect()
    }
}

impl fmt::Display for BoundTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n\tcost\tpot")?;
        for r in &self.rows {
            writeln!(f, "{}\t{}\t{}", r.n, r.cost, r.pot)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TabulateError {
    #[error("program does not typecheck: {0}")]
    Type(#[from] TypeError),
    #[error("argument {index} does not typecheck: {error}")]
    ArgType { index: usize, error: TypeError },
    #[error("program of type {ty} takes fewer than {given} arguments")]
    NotCurried { ty: TargetTy, given: usize },
    #[error("expected exactly one swept argument, found {0}")]
    SweepCount(usize),
    #[error("argument {index} has type {expected}; {reason}")]
    ArgShape {
        index: usize,
        expected: TargetTy,
        reason: String,
    },
    #[error("result type {0} has no natural potential")]
    ResultShape(TargetTy),
    #[error("denotation: {0}")]
    Sem(#[from] SemError),
}

/// Denotes the translated program star-applied to the given argument
/// complexities, for each `n` in `range`.
pub fn tabulate(
    program: &TargetExpr,
    args: &[ArgSpec],
    range: Range<u64>,
) -> Result<BoundTable, TabulateError> {
    let ty = typecheck(&TypeContext::new(), program)?;
    let (arg_tys, _) = ty.uncurry();
    if arg_tys.len() < args.len() {
        return Err(TabulateError::NotCurried {
            ty: ty.clone(),
            given: args.len(),
        });
    }
    let sweeps = args.iter().filter(|a| **a == ArgSpec::Sweep).count();
    if sweeps != 1 {
        return Err(TabulateError::SweepCount(sweeps));
    }
    let mut result_ty = &ty;
    for _ in args {
        if let TargetTy::Arrow(_, cod) = result_ty {
            result_ty = cod;
        }
    }
    if !result_ty.is_base() {
        return Err(TabulateError::ResultShape(result_ty.clone()));
    }
    let mut fixed: Vec<Option<SemVal>> = Vec::with_capacity(args.len());
    for (index, (spec, arg_ty)) in args.iter().zip(&arg_tys).enumerate() {
        let base_only = |reason: &str| TabulateError::ArgShape {
            index,
            expected: (*arg_ty).clone(),
            reason: reason.to_string(),
        };
        fixed.push(match spec {
            ArgSpec::Fixed { cost, pot } => {
                if !arg_ty.is_base() {
                    return Err(base_only(
                        "a fixed (cost, pot) needs a base type; pass a term",
                    ));
                }
                Some(SemVal::nat_pair(*cost, *pot))
            }
            ArgSpec::Sweep => {
                if !arg_ty.is_base() {
                    return Err(base_only("only base-type arguments can be swept"));
                }
                None
            }
            ArgSpec::Term(t) => {
                let t_ty = typecheck(&TypeContext::new(), t)
                    .map_err(|error| TabulateError::ArgType { index, error })?;
                if t_ty != **arg_ty {
                    return Err(base_only(&format!("the supplied term has type {t_ty}")));
                }
                Some(denote(&translate(t), &SemEnv::new())?)
            }
        });
    }
    let f = denote(&translate(program), &SemEnv::new())?;
    let mut rows = Vec::new();
    for n in range {
        let mut acc = f.clone();
        for arg in &fixed {
            let a = arg.clone().unwrap_or_else(|| SemVal::nat_pair(1, n));
            acc = star_apply(&acc, &a)?;
        }
        rows.push(BoundRow {
            n,
            cost: acc.cost()?,
            pot: acc.pot()?.as_nat()?,
        });
    }
    Ok(BoundTable { rows })
}

/// Evaluates `program a0 a1 ...` with each argument held in a variable, so
/// every argument costs one lookup, matching the `(1, n)` complexity the
/// tabulator assigns.
pub fn eval_applied(
    program: &TargetExpr,
    args: Vec<Value>,
    budget: u64,
) -> Result<EvalResult, EvalError> {
    let names: Vec<String> = (0..args.len()).map(|i| format!("$arg{i}")).collect();
    let env: ValueEnv = names.iter().cloned().zip(args).collect();
    let call = TargetExpr::apps(program.clone(), names.iter().map(TargetExpr::var));
    eval(&call, &env, budget)
}

/// Inputs of length `n` that realize worst cases: every list over `{0, 1}`
/// when `n ≤ 8`, otherwise the descending list `n-1, ..., 0`.
pub fn worst_case_inputs(n: usize) -> Vec<Vec<i64>> {
    if n <= 8 {
        (0..1u32 << n)
            .map(|bits| (0..n).map(|i| ((bits >> i) & 1) as i64).collect())
            .collect()
    } else {
        vec![(0..n as i64).rev().collect()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::target::parse;

    #[test]
    fn ins_potential_is_successor() {
        let t = tabulate(
            &corpus::INS.expr(),
            &[ArgSpec::Fixed { cost: 1, pot: 1 }, ArgSpec::Sweep],
            0..5,
        )
        .unwrap();
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.pots(), [1, 2, 3, 4, 5]);
        let c = t.costs();
        assert!(c.windows(3).all(|w| w[2] + w[0] == 2 * w[1]));
    }

    #[test]
    fn empty_range() {
        let t = tabulate(
            &corpus::INS.expr(),
            &[ArgSpec::Fixed { cost: 1, pot: 1 }, ArgSpec::Sweep],
            3..3,
        )
        .unwrap();
        assert!(t.rows.is_empty());
    }

    #[test]
    fn argument_errors() {
        let ins = corpus::INS.expr();
        assert_eq!(
            tabulate(&ins, &[ArgSpec::Fixed { cost: 1, pot: 1 }], 0..2),
            Err(TabulateError::SweepCount(0))
        );
        assert!(matches!(
            tabulate(
                &ins,
                &[ArgSpec::Sweep, ArgSpec::Sweep, ArgSpec::Sweep],
                0..2
            ),
            Err(TabulateError::NotCurried { .. })
        ));
        assert!(matches!(
            tabulate(&ins, &[ArgSpec::Sweep], 0..2),
            Err(TabulateError::ResultShape(_))
        ));
        let map = corpus::MAP.expr();
        assert!(matches!(
            tabulate(
                &map,
                &[ArgSpec::Fixed { cost: 1, pot: 1 }, ArgSpec::Sweep],
                0..2
            ),
            Err(TabulateError::ArgShape { index: 0, .. })
        ));
        let h = ArgSpec::Term(parse("\\x:int. x + x").unwrap());
        assert!(tabulate(&map, &[h, ArgSpec::Sweep], 0..2).is_ok());
    }

    #[test]
    fn applied_evaluation() {
        let r = eval_applied(
            &corpus::INS.expr(),
            vec![Value::Int(3), Value::List(vec![5])],
            10_000,
        )
        .unwrap();
        assert_eq!(r.value, Value::List(vec![3, 5]));
    }

    #[test]
    fn worst_cases() {
        assert_eq!(worst_case_inputs(0), vec![Vec::<i64>::new()]);
        assert_eq!(worst_case_inputs(3).len(), 8);
        assert_eq!(
            worst_case_inputs(10),
            vec![vec![9, 8, 7, 6, 5, 4, 3, 2, 1, 0]]
        );
    }
}
