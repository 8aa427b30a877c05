//! Big-step call-by-value evaluation with derivation-size cost.
//!
//! Every rule instance costs 1, and the arithmetic side condition of a
//! relation or operator rule costs 1 more. A fold over a non-empty list binds
//! the tail to a fresh variable (`$fold0`, `$fold1`, ...) and recurses on
//! that variable, so each level of recursion pays 1 to look it up.

use crate::env::Env;
use crate::target::{ArithOp, TargetExpr, TargetTy};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Prefix of fold-introduced variables. `$` cannot appear in a parsed
/// identifier, so these never collide with user names.
pub const FRESH_PREFIX: &str = "$fold";

pub type ValueEnv = Env<Value>;

#[derive(Clone)]
pub enum Value {
    Bool(bool),
    Int(i64),
    List(Vec<i64>),
    Closure(Closure),
}

#[derive(Clone)]
pub struct Closure {
    pub binder: String,
    pub param_ty: TargetTy,
    pub body: Arc<TargetExpr>,
    pub env: ValueEnv,
}

impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::List(a), Value::List(b)) => a == b,
            (Value::Closure(a), Value::Closure(b)) => {
                a.binder == b.binder
                    && a.param_ty == b.param_ty
                    && a.body == b.body
                    && a.env.bindings() == b.env.bindings()
            }
            _ => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::List(ns) => {
                f.write_str("[")?;
                for (i, n) in ns.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{n}")?;
                }
                f.write_str("]")
            }
            Value::Closure(c) => write!(f, "<closure \\{}:{}. {}>", c.binder, c.param_ty, c.body),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub value: Value,
    /// Size of the evaluation derivation.
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("evaluation budget of {budget} cost units exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("integer overflow in {lhs} {} {rhs}", .op.symbol())]
    Overflow { op: ArithOp, lhs: i64, rhs: i64 },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Evaluates `e` under `env`, aborting once the cost would exceed `budget`.
pub fn eval(e: &TargetExpr, env: &ValueEnv, budget: u64) -> Result<EvalResult, EvalError> {
    let mut ev = Evaluator::new(budget);
    let value = ev.eval(e, env)?;
    Ok(EvalResult {
        value,
        cost: ev.cost,
    })
}

/// Applies a closure to an argument value, charging only for the body.
pub fn apply_closure(closure: &Closure, arg: Value, budget: u64) -> Result<EvalResult, EvalError> {
    let env = closure.env.extend(closure.binder.clone(), arg);
    eval(&closure.body, &env, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SizeError {
    #[error("value size is only defined at base types; use probing at arrow types")]
    ArrowType,
    #[error("value does not match its type")]
    Mismatch,
}

/// Size of a base-type value: 1 for integers and booleans, length for lists.
pub fn value_size(v: &Value, ty: &TargetTy) -> Result<u64, SizeError> {
    match (v, ty) {
        (_, TargetTy::Arrow(..)) => Err(SizeError::ArrowType),
        (Value::Int(_), TargetTy::Int) | (Value::Bool(_), TargetTy::Bool) => Ok(1),
        (Value::List(ns), TargetTy::IntList) => Ok(ns.len() as u64),
        _ => Err(SizeError::Mismatch),
    }
}

struct Evaluator {
    budget: u64,
    cost: u64,
    fresh: u64,
}

impl Evaluator {
    fn new(budget: u64) -> Self {
        Evaluator {
            budget,
            cost: 0,
            fresh: 0,
        }
    }

    fn tick(&mut self) -> Result<(), EvalError> {
        if self.cost >= self.budget {
            return Err(EvalError::BudgetExhausted {
                budget: self.budget,
            });
        }
        self.cost += 1;
        Ok(())
    }

    fn fresh_var(&mut self) -> String {
        let name = format!("{FRESH_PREFIX}{}", self.fresh);
        self.fresh += 1;
        name
    }

    fn lookup(&mut self, x: &str, env: &ValueEnv) -> Result<Value, EvalError> {
        self.tick()?;
        env.lookup(x)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(x.to_string()))
    }

    fn eval_int(&mut self, e: &TargetExpr, env: &ValueEnv) -> Result<i64, EvalError> {
        match self.eval(e, env)? {
            Value::Int(n) => Ok(n),
            v => Err(EvalError::Internal(format!("expected an integer, got {v}"))),
        }
    }

    fn eval_list(&mut self, e: &TargetExpr, env: &ValueEnv) -> Result<Vec<i64>, EvalError> {
        match self.eval(e, env)? {
            Value::List(ns) => Ok(ns),
            v => Err(EvalError::Internal(format!("expected a list, got {v}"))),
        }
    }

    fn eval(&mut self, e: &TargetExpr, env: &ValueEnv) -> Result<Value, EvalError> {
        use TargetExpr::*;
        match e {
            Var(x) => self.lookup(x, env),
            Int(n) => {
                self.tick()?;
                Ok(Value::Int(*n))
            }
            Bool(b) => {
                self.tick()?;
                Ok(Value::Bool(*b))
            }
            Nil => {
                self.tick()?;
                Ok(Value::List(Vec::new()))
            }
            Lam { binder, ty, body } => {
                self.tick()?;
                Ok(Value::Closure(Closure {
                    binder: binder.clone(),
                    param_ty: ty.clone(),
                    body: Arc::new((**body).clone()),
                    env: env.clone(),
                }))
            }
            Cons(h, t) => {
                self.tick()?;
                let n = self.eval_int(h, env)?;
                let mut ns = self.eval_list(t, env)?;
                ns.insert(0, n);
                Ok(Value::List(ns))
            }
            Rel(op, a, b) => {
                self.tick()?;
                let l = self.eval_int(a, env)?;
                let r = self.eval_int(b, env)?;
                self.tick()?;
                Ok(Value::Bool(op.holds(l, r)))
            }
            Arith(op, a, b) => {
                self.tick()?;
                let l = self.eval_int(a, env)?;
                let r = self.eval_int(b, env)?;
                self.tick()?;
                op.apply(l, r).map(Value::Int).ok_or(EvalError::Overflow {
                    op: *op,
                    lhs: l,
                    rhs: r,
                })
            }
            If(c, t, f) => {
                self.tick()?;
                match self.eval(c, env)? {
                    Value::Bool(true) => self.eval(t, env),
                    Value::Bool(false) => self.eval(f, env),
                    v => Err(EvalError::Internal(format!("expected a boolean, got {v}"))),
                }
            }
            App(fun, arg) => {
                self.tick()?;
                let closure = match self.eval(fun, env)? {
                    Value::Closure(c) => c,
                    v => return Err(EvalError::Internal(format!("applying non-closure {v}"))),
                };
                let v = self.eval(arg, env)?;
                let inner = closure.env.extend(closure.binder.clone(), v);
                self.eval(&closure.body, &inner)
            }
            Case {
                scrutinee,
                nil_branch,
                head,
                tail,
                cons_branch,
            } => {
                self.tick()?;
                let ns = self.eval_list(scrutinee, env)?;
                match ns.split_first() {
                    None => self.eval(nil_branch, env),
                    Some((n, rest)) => {
                        let inner = env
                            .extend(head.clone(), Value::Int(*n))
                            .extend(tail.clone(), Value::List(rest.to_vec()));
                        self.eval(cons_branch, &inner)
                    }
                }
            }
            Fold {
                scrutinee,
                nil_branch,
                head,
                tail,
                acc,
                step,
            } => {
                self.tick()?;
                let ns = self.eval_list(scrutinee, env)?;
                let parts = FoldParts {
                    nil_branch,
                    head,
                    tail,
                    acc,
                    step,
                };
                self.fold_on(ns, &parts, env)
            }
        }
    }

    /// Finishes a fold whose rule instance is already charged and whose
    /// scrutinee evaluated to `ns` under `env`.
    fn fold_on(
        &mut self,
        ns: Vec<i64>,
        parts: &FoldParts<'_>,
        env: &ValueEnv,
    ) -> Result<Value, EvalError> {
        let Some((&n, rest)) = ns.split_first() else {
            return self.eval(parts.nil_branch, env);
        };
        let y = self.fresh_var();
        let env0 = env.extend(y.clone(), Value::List(rest.to_vec()));
        // `fold y of (...)` under env0: one rule instance plus the lookup of y.
        self.tick()?;
        let tail = match self.lookup(&y, &env0)? {
            Value::List(ns) => ns,
            _ => unreachable!("fresh fold variable is bound to a list"),
        };
        let rec = self.fold_on(tail, parts, &env0)?;
        let env1 = env
            .extend(parts.head.clone(), Value::Int(n))
            .extend(parts.tail.clone(), Value::List(rest.to_vec()))
            .extend(parts.acc.clone(), rec);
        self.eval(parts.step, &env1)
    }
}

struct FoldParts<'a> {
    nil_branch: &'a TargetExpr,
    head: &'a String,
    tail: &'a String,
    acc: &'a String,
    step: &'a TargetExpr,
}
