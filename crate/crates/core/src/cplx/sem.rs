use super::ast::{CRef, CplxExpr};
use super::types::{FullTy, PotTy};
use crate::env::Env;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

/// Denotations: naturals, (cost, potential) pairs and potential functions.
#[derive(Clone)]
pub enum SemVal {
    Nat(u64),
    Pair(u64, Arc<SemVal>),
    Fun(SemFun),
}

type FunBody = dyn Fn(&SemVal) -> Result<SemVal, SemError> + Send + Sync;

/// A semantic function from potentials to complexities, kept as the
/// pointwise maximum of a set of primitive functions. The set never holds the
/// same primitive twice.
#[derive(Clone)]
pub struct SemFun(Arc<[Arc<FunBody>]>);

impl SemFun {
    pub fn new(f: impl Fn(&SemVal) -> Result<SemVal, SemError> + Send + Sync + 'static) -> Self {
        let prim: Arc<FunBody> = Arc::new(f);
        SemFun(Arc::from([prim]))
    }

    pub fn call(&self, arg: &SemVal) -> Result<SemVal, SemError> {
        let (first, rest) = self.0.split_first().expect("non-empty join");
        rest.iter()
            .try_fold(first(arg)?, |acc, f| sem_max(&acc, &f(arg)?))
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &SemFun) -> SemFun {
        if Arc::ptr_eq(&self.0, &other.0) {
            return self.clone();
        }
        let addr = |f: &Arc<FunBody>| Arc::as_ptr(f) as *const () as usize;
        let mut parts: Vec<Arc<FunBody>> = self.0.to_vec();
        for g in other.0.iter() {
            if !parts.iter().any(|f| addr(f) == addr(g)) {
                parts.push(g.clone());
            }
        }
        if parts.len() == self.0.len() {
            return self.clone();
        }
        SemFun(parts.into())
    }
}

pub type SemEnv = Env<SemVal>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemError {
    #[error("unbound complexity variable `{0}`")]
    Unbound(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("natural-number overflow")]
    Overflow,
    #[error("denotation fuel exhausted")]
    FuelExhausted,
}

impl SemVal {
    pub fn pair(cost: u64, pot: SemVal) -> SemVal {
        SemVal::Pair(cost, Arc::new(pot))
    }

    /// `(c, p)` with a natural potential.
    pub fn nat_pair(cost: u64, pot: u64) -> SemVal {
        SemVal::pair(cost, SemVal::Nat(pot))
    }

    pub fn as_nat(&self) -> Result<u64, SemError> {
        match self {
            SemVal::Nat(n) => Ok(*n),
            other => Err(SemError::Shape(format!("expected a natural, got {other}"))),
        }
    }

    pub fn cost(&self) -> Result<u64, SemError> {
        match self {
            SemVal::Pair(c, _) => Ok(*c),
            other => Err(SemError::Shape(format!("expected a pair, got {other}"))),
        }
    }

    pub fn pot(&self) -> Result<&SemVal, SemError> {
        match self {
            SemVal::Pair(_, p) => Ok(p),
            other => Err(SemError::Shape(format!("expected a pair, got {other}"))),
        }
    }

    pub fn apply(&self, arg: &SemVal) -> Result<SemVal, SemError> {
        match self {
            SemVal::Fun(f) => f.call(arg),
            other => Err(SemError::Shape(format!("applying non-function {other}"))),
        }
    }

    /// Exact equality when neither side contains a function; `None` otherwise.
    pub fn first_order_eq(&self, other: &SemVal) -> Option<bool> {
        match (self, other) {
            (SemVal::Nat(a), SemVal::Nat(b)) => Some(a == b),
            (SemVal::Pair(c, p), SemVal::Pair(d, q)) => {
                let inner = p.first_order_eq(q)?;
                Some(c == d && inner)
            }
            (SemVal::Fun(_), _) | (_, SemVal::Fun(_)) => None,
            _ => Some(false),
        }
    }

    /// Shallow shape agreement with a type; function bodies are not inspected.
    pub fn conforms(&self, ty: &FullTy) -> bool {
        match (self, ty) {
            (SemVal::Nat(_), FullTy::Pot(PotTy::Nat)) => true,
            (SemVal::Fun(_), FullTy::Pot(PotTy::Arrow(..))) => true,
            (SemVal::Pair(_, p), FullTy::Cplx(c)) => p.conforms(&FullTy::Pot(c.pot.clone())),
            _ => false,
        }
    }
}

impl fmt::Display for SemVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemVal::Nat(n) => write!(f, "{n}"),
            SemVal::Pair(c, p) => write!(f, "({c}, {p})"),
            SemVal::Fun(_) => f.write_str("<fun>"),
        }
    }
}

impl fmt::Debug for SemVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn add(a: u64, b: u64) -> Result<u64, SemError> {
    a.checked_add(b).ok_or(SemError::Overflow)
}

/// `dally(n, (c, p)) = (n + c, p)`.
pub fn dally(n: u64, c: &SemVal) -> Result<SemVal, SemError> {
    match c {
        SemVal::Pair(cost, p) => Ok(SemVal::Pair(add(n, *cost)?, p.clone())),
        other => Err(SemError::Shape(format!("dally of non-pair {other}"))),
    }
}

/// Maximum: numeric on naturals, componentwise on pairs, pointwise on
/// functions.
pub fn sem_max(a: &SemVal, b: &SemVal) -> Result<SemVal, SemError> {
    match (a, b) {
        (SemVal::Nat(x), SemVal::Nat(y)) => Ok(SemVal::Nat(*x.max(y))),
        (SemVal::Pair(c, p), SemVal::Pair(d, q)) => Ok(SemVal::pair(*c.max(d), sem_max(p, q)?)),
        (SemVal::Fun(f), SemVal::Fun(g)) => Ok(SemVal::Fun(f.join(g))),
        _ => Err(SemError::Shape(format!("max of {a} and {b}"))),
    }
}

/// Semantic star application: `dally(1 + f_c + a_c, f_p(a_p))`.
pub fn star_apply(f: &SemVal, a: &SemVal) -> Result<SemVal, SemError> {
    let extra = add(add(1, f.cost()?)?, a.cost()?)?;
    dally(extra, &f.pot()?.apply(a.pot()?)?)
}

/// Denotation of `e` under `env`.
pub fn denote(e: &CRef, env: &SemEnv) -> Result<SemVal, SemError> {
    Denoter::new(None).eval(e, env)
}

/// Like [`denote`], but fails with [`SemError::FuelExhausted`] after
/// visiting `fuel` nodes, counting work done later inside returned functions.
pub fn denote_with_fuel(e: &CRef, env: &SemEnv, fuel: u64) -> Result<SemVal, SemError> {
    Denoter::new(Some(Arc::new(AtomicU64::new(fuel)))).eval(e, env)
}

/// Evaluates shared subterms once per environment. Entries hold the node and
/// environment so their addresses stay unique while the table lives.
struct Denoter {
    fuel: Option<Arc<AtomicU64>>,
    memo: HashMap<(usize, usize), (CRef, SemEnv, SemVal)>,
}

impl Denoter {
    fn new(fuel: Option<Arc<AtomicU64>>) -> Self {
        Denoter {
            fuel,
            memo: HashMap::new(),
        }
    }

    fn burn(&self) -> Result<(), SemError> {
        if let Some(fuel) = &self.fuel {
            fuel.fetch_update(Ordering::Relaxed, Ordering::Relaxed, |f| f.checked_sub(1))
                .map_err(|_| SemError::FuelExhausted)?;
        }
        Ok(())
    }

    fn eval(&mut self, e: &CRef, env: &SemEnv) -> Result<SemVal, SemError> {
        let shared = Arc::strong_count(e) > 1;
        let key = (Arc::as_ptr(e) as usize, env.identity());
        if shared {
            if let Some((_, _, v)) = self.memo.get(&key) {
                return Ok(v.clone());
            }
        }
        let v = self.eval_node(e, env)?;
        if shared {
            self.memo.insert(key, (e.clone(), env.clone(), v.clone()));
        }
        Ok(v)
    }

    fn eval_node(&mut self, e: &CRef, env: &SemEnv) -> Result<SemVal, SemError> {
        use CplxExpr as C;
        self.burn()?;
        match &**e {
            C::Var(x) => env
                .lookup(x)
                .cloned()
                .ok_or_else(|| SemError::Unbound(x.clone())),
            C::Nat(n) => Ok(SemVal::Nat(*n)),
            C::Plus(a, b) => {
                let a = self.eval(a, env)?.as_nat()?;
                let b = self.eval(b, env)?.as_nat()?;
                Ok(SemVal::Nat(add(a, b)?))
            }
            C::Max(a, b) => {
                let a = self.eval(a, env)?;
                let b = self.eval(b, env)?;
                sem_max(&a, &b)
            }
            C::Pair(a, b) => {
                let c = self.eval(a, env)?.as_nat()?;
                let p = self.eval(b, env)?;
                Ok(SemVal::pair(c, p))
            }
            C::Cost(a) => Ok(SemVal::Nat(self.eval(a, env)?.cost()?)),
            C::Pot(a) => Ok(self.eval(a, env)?.pot()?.clone()),
            C::Lam { binder, body, .. } => {
                let binder = binder.clone();
                let body = body.clone();
                let env = env.clone();
                let fuel = self.fuel.clone();
                Ok(SemVal::pair(
                    1,
                    SemVal::Fun(SemFun::new(move |p| {
                        let inner = env.extend(binder.clone(), SemVal::pair(1, p.clone()));
                        Denoter::new(fuel.clone()).eval(&body, &inner)
                    })),
                ))
            }
            C::App(f, a) => {
                let f = self.eval(f, env)?;
                let a = self.eval(a, env)?;
                star_apply(&f, &a)
            }
            C::Dally(n, a) => {
                let n = self.eval(n, env)?.as_nat()?;
                let a = self.eval(a, env)?;
                dally(n, &a)
            }
            C::PCase {
                scrutinee,
                zero,
                p,
                ps,
                succ,
            } => {
                let r = self.eval(scrutinee, env)?.as_nat()?;
                let s = self.eval(zero, env)?;
                if r == 0 {
                    return Ok(s);
                }
                let inner = env
                    .extend(p.clone(), SemVal::Nat(1))
                    .extend(ps.clone(), SemVal::Nat(r - 1));
                let t = self.eval(succ, &inner)?;
                sem_max(&s, &t)
            }
            C::PFold {
                scrutinee,
                zero,
                p,
                ps,
                w,
                succ,
            } => {
                let r = self.eval(scrutinee, env)?.as_nat()?;
                let s = self.eval(zero, env)?;
                let s_pot = s.pot()?.clone();
                let mut acc = s;
                for q in 0..r {
                    let inner = env
                        .extend(p.clone(), SemVal::Nat(1))
                        .extend(ps.clone(), SemVal::Nat(q))
                        .extend(w.clone(), SemVal::Pair(1, acc.pot()?.clone().into()));
                    let t = self.eval(succ, &inner)?;
                    let cost = add(add(2, acc.cost()?)?, t.cost()?)?;
                    acc = SemVal::pair(cost, sem_max(&s_pot, t.pot()?)?);
                }
                Ok(acc)
            }
        }
    }
}
