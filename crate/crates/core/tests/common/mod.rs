//! Test-side oracles, written independently of the library's evaluator.
#![allow(dead_code)]

use cplx_core::corpus;
use cplx_core::target::{ArithOp, RelOp};
use cplx_core::{parse, TargetExpr};

/// A materialized evaluation derivation. Side conditions of relation and
/// operator rules appear as leaves.
#[derive(Debug)]
pub struct Derivation {
    pub rule: &'static str,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn size(&self) -> u64 {
        1 + self.premises.iter().map(Derivation::size).sum::<u64>()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OVal {
    Int(i64),
    Bool(bool),
    List(Vec<i64>),
    Closure(String, TargetExpr, OEnv),
}

pub type OEnv = Vec<(String, OVal)>;

fn lookup(env: &OEnv, x: &str) -> OVal {
    env.iter()
        .rev()
        .find(|(n, _)| n == x)
        .map(|(_, v)| v.clone())
        .unwrap_or_else(|| panic!("oracle: unbound {x}"))
}

fn with(env: &OEnv, binds: Vec<(String, OVal)>) -> OEnv {
    let mut out = env.clone();
    out.extend(binds);
    out
}

fn leaf(rule: &'static str) -> Derivation {
    Derivation {
        rule,
        premises: vec![],
    }
}

/// Builds the derivation tree of `e` under `env` and returns it with the value.
pub struct Oracle {
    fresh: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        Oracle { fresh: 0 }
    }

    pub fn derive(&mut self, e: &TargetExpr, env: &OEnv) -> (OVal, Derivation) {
        use TargetExpr as T;
        match e {
            T::Var(x) => (lookup(env, x), leaf("var")),
            T::Int(n) => (OVal::Int(*n), leaf("const")),
            T::Bool(b) => (OVal::Bool(*b), leaf("const")),
            T::Nil => (OVal::List(vec![]), leaf("nil")),
            T::Lam { binder, body, .. } => (
                OVal::Closure(binder.clone(), (**body).clone(), env.clone()),
                leaf("lam"),
            ),
            T::Cons(h, t) => {
                let (hv, hd) = self.derive(h, env);
                let (tv, td) = self.derive(t, env);
                let (OVal::Int(n), OVal::List(mut ns)) = (hv, tv) else {
                    panic!("oracle: cons of non-int/list")
                };
                ns.insert(0, n);
                let d = Derivation {
                    rule: "cons",
                    premises: vec![hd, td],
                };
                (OVal::List(ns), d)
            }
            T::Rel(op, a, b) => {
                let (a, b, ad, bd) = self.ints(a, b, env);
                let holds = match op {
                    RelOp::Lt => a < b,
                    RelOp::Le => a <= b,
                    RelOp::Eq => a == b,
                };
                let d = Derivation {
                    rule: "rel",
                    premises: vec![ad, bd, leaf("side")],
                };
                (OVal::Bool(holds), d)
            }
            T::Arith(op, a, b) => {
                let (a, b, ad, bd) = self.ints(a, b, env);
                let n = match op {
                    ArithOp::Add => a + b,
                    ArithOp::Sub => a - b,
                    ArithOp::Mul => a * b,
                };
                let d = Derivation {
                    rule: "op",
                    premises: vec![ad, bd, leaf("side")],
                };
                (OVal::Int(n), d)
            }
            T::If(c, t, f) => {
                let (cv, cd) = self.derive(c, env);
                let branch = if cv == OVal::Bool(true) { t } else { f };
                let (v, bd) = self.derive(branch, env);
                let d = Derivation {
                    rule: "if",
                    premises: vec![cd, bd],
                };
                (v, d)
            }
            T::App(f, a) => {
                let (fv, fd) = self.derive(f, env);
                let OVal::Closure(x, body, cenv) = fv else {
                    panic!("oracle: applying non-closure")
                };
                let (av, ad) = self.derive(a, env);
                let (v, bd) = self.derive(&body, &with(&cenv, vec![(x, av)]));
                let d = Derivation {
                    rule: "app",
                    premises: vec![fd, ad, bd],
                };
                (v, d)
            }
            T::Case {
                scrutinee,
                nil_branch,
                head,
                tail,
                cons_branch,
            } => {
                let (sv, sd) = self.derive(scrutinee, env);
                let OVal::List(ns) = sv else {
                    panic!("oracle: case of non-list")
                };
                let (v, bd) = match ns.split_first() {
                    None => self.derive(nil_branch, env),
                    Some((n, rest)) => {
                        let inner = with(
                            env,
                            vec![
                                (head.clone(), OVal::Int(*n)),
                                (tail.clone(), OVal::List(rest.to_vec())),
                            ],
                        );
                        self.derive(cons_branch, &inner)
                    }
                };
                let d = Derivation {
                    rule: "case",
                    premises: vec![sd, bd],
                };
                (v, d)
            }
            T::Fold {
                scrutinee,
                nil_branch,
                head,
                tail,
                acc,
                step,
            } => {
                let (sv, sd) = self.derive(scrutinee, env);
                let OVal::List(ns) = sv else {
                    panic!("oracle: fold of non-list")
                };
                match ns.split_first() {
                    None => {
                        let (v, nd) = self.derive(nil_branch, env);
                        let d = Derivation {
                            rule: "fold-nil",
                            premises: vec![sd, nd],
                        };
                        (v, d)
                    }
                    Some((n, rest)) => {
                        // Re-run the fold on a fresh variable bound to the tail.
                        let y = format!("$oracle{}", self.fresh);
                        self.fresh += 1;
                        let env0 = with(env, vec![(y.clone(), OVal::List(rest.to_vec()))]);
                        let rec = TargetExpr::Fold {
                            scrutinee: Box::new(TargetExpr::var(y)),
                            nil_branch: nil_branch.clone(),
                            head: head.clone(),
                            tail: tail.clone(),
                            acc: acc.clone(),
                            step: step.clone(),
                        };
                        let (rv, rd) = self.derive(&rec, &env0);
                        let env1 = with(
                            env,
                            vec![
                                (head.clone(), OVal::Int(*n)),
                                (tail.clone(), OVal::List(rest.to_vec())),
                                (acc.clone(), rv),
                            ],
                        );
                        let (v, td) = self.derive(step, &env1);
                        let d = Derivation {
                            rule: "fold-cons",
                            premises: vec![sd, rd, td],
                        };
                        (v, d)
                    }
                }
            }
        }
    }

    fn ints(
        &mut self,
        a: &TargetExpr,
        b: &TargetExpr,
        env: &OEnv,
    ) -> (i64, i64, Derivation, Derivation) {
        let (av, ad) = self.derive(a, env);
        let (bv, bd) = self.derive(b, env);
        match (av, bv) {
            (OVal::Int(a), OVal::Int(b)) => (a, b, ad, bd),
            _ => panic!("oracle: arithmetic on non-integers"),
        }
    }
}

/// Derivation size and printed value of a closed program.
pub fn oracle_run(e: &TargetExpr) -> (String, u64) {
    let (v, d) = Oracle::new().derive(e, &Vec::new());
    let shown = match v {
        OVal::Int(n) => n.to_string(),
        OVal::Bool(b) => b.to_string(),
        OVal::List(ns) => format!(
            "[{}]",
            ns.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
        ),
        OVal::Closure(..) => "<closure>".to_string(),
    };
    (shown, d.size())
}

/// Every list over `{0, 1}` up to length 8, then descending lists up to 32.
pub fn corpus_lists() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for len in 0..=8usize {
        for bits in 0..1u32 << len {
            out.push((0..len).map(|i| ((bits >> i) & 1) as i64).collect());
        }
    }
    for len in 0..=32i64 {
        out.push((0..len).rev().collect());
    }
    out
}

/// The corpus programs applied to concrete arguments, as closed base-type
/// programs.
pub fn corpus_applications() -> Vec<(String, TargetExpr)> {
    let ins = corpus::INS.expr();
    let ins_sort = corpus::INS_SORT.expr();
    let map = corpus::MAP.expr();
    let list_fold = corpus::LIST_FOLD.expr();
    let double = parse("\\x:int. x + x").unwrap();
    let cons = parse("\\y:int. \\w:int*. y :: w").unwrap();
    let mut out = Vec::new();
    for xs in corpus_lists() {
        let lit = || TargetExpr::list(xs.clone());
        for x in [-1, 0, 1, 2] {
            out.push((
                format!("ins {x} {xs:?}"),
                TargetExpr::apps(ins.clone(), [TargetExpr::Int(x), lit()]),
            ));
        }
        out.push((
            format!("ins_sort {xs:?}"),
            TargetExpr::app(ins_sort.clone(), lit()),
        ));
        out.push((
            format!("map double {xs:?}"),
            TargetExpr::apps(map.clone(), [double.clone(), lit()]),
        ));
        for (fname, f) in [("ins", &ins), ("cons", &cons)] {
            out.push((
                format!("list_fold {fname} {xs:?} nil"),
                TargetExpr::apps(list_fold.clone(), [f.clone(), lit(), TargetExpr::Nil]),
            ));
        }
    }
    out
}
