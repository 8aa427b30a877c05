//! The translation ‖·‖ from target types and terms into the complexity
//! language.

use crate::cplx::ast::{self as c, FvCache};
use crate::cplx::{subst, CRef, CplxCtx, CplxTy, FullTy, PotTy};
use crate::target::{TargetExpr, TargetTy, TypeContext};
use std::collections::BTreeSet;

/// `⟨⟨b⟩⟩ = N` for base types, `⟨⟨σ → τ⟩⟩ = ⟨⟨σ⟩⟩ → ‖τ‖`.
pub fn pot_ty(t: &TargetTy) -> PotTy {
    match t {
        TargetTy::Arrow(a, b) => PotTy::arrow(pot_ty(a), translate_ty(b)),
        _ => PotTy::Nat,
    }
}

/// `‖τ‖ = N × ⟨⟨τ⟩⟩`.
pub fn translate_ty(t: &TargetTy) -> CplxTy {
    CplxTy::of(pot_ty(t))
}

pub fn translate_ctx(ctx: &TypeContext) -> CplxCtx {
    ctx.iter().fold(CplxCtx::new(), |acc, (x, t)| {
        acc.extend(x, FullTy::Cplx(translate_ty(t)))
    })
}

/// Translates a (typechecked) target term. Subterms used twice by a clause
/// are shared, so the result is a DAG of size linear in `e`.
pub fn translate(e: &TargetExpr) -> CRef {
    Translator::default().go(e)
}

#[derive(Default)]
struct Translator {
    fv: FvCache,
}

fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

impl Translator {
    fn go(&mut self, e: &TargetExpr) -> CRef {
        use TargetExpr as T;
        match e {
            T::Var(x) => c::var(x.clone()),
            T::Int(_) | T::Bool(_) => c::pair(c::nat(1), c::nat(1)),
            T::Nil => c::pair(c::nat(1), c::nat(0)),
            T::Rel(_, a, b) | T::Arith(_, a, b) => {
                let (a, b) = (self.go(a), self.go(b));
                c::pair(c::sum([c::nat(2), c::cost(a), c::cost(b)]), c::nat(1))
            }
            T::Cons(h, t) => {
                let (h, t) = (self.go(h), self.go(t));
                c::pair(
                    c::sum([c::nat(1), c::cost(h), c::cost(t.clone())]),
                    c::plus(c::nat(1), c::pot(t)),
                )
            }
            T::If(r, s, t) => {
                let r = self.go(r);
                let (s, t) = (self.go(s), self.go(t));
                c::dally(c::plus(c::nat(1), c::cost(r)), c::max(s, t))
            }
            T::Lam { binder, ty, body } => c::lam(binder.clone(), pot_ty(ty), self.go(body)),
            T::App(f, a) => c::app(self.go(f), self.go(a)),
            T::Case {
                scrutinee,
                nil_branch,
                head,
                tail,
                cons_branch,
            } => {
                let r = self.go(scrutinee);
                let s = self.go(nil_branch);
                let t = self.go(cons_branch);
                let (p, ps, t) = self.bind_head_tail(head, tail, None, t);
                c::dally(
                    c::plus(c::nat(1), c::cost(r.clone())),
                    c::pcase(c::pot(r), s, p, ps, t),
                )
            }
            T::Fold {
                scrutinee,
                nil_branch,
                head,
                tail,
                acc,
                step,
            } => {
                let r = self.go(scrutinee);
                let s = self.go(nil_branch);
                let t = self.go(step);
                let (p, ps, t) = self.bind_head_tail(head, tail, Some(acc), t);
                c::dally(
                    c::plus(c::nat(1), c::cost(r.clone())),
                    c::pfold(c::pot(r), s, p, ps, acc.clone(), t),
                )
            }
        }
    }

    /// Picks potential binders `p`, `ps` that capture nothing in `t` and
    /// rewrites `t[x, xs ↦ (1,p), (1,ps)]`, honouring shadowing by `xs`
    /// over `x` and by the accumulator over both.
    fn bind_head_tail(
        &mut self,
        x: &str,
        xs: &str,
        w: Option<&String>,
        t: CRef,
    ) -> (String, String, CRef) {
        let mut avoid: BTreeSet<String> = self
            .fv
            .get(&t)
            .iter()
            .filter(|v| *v != x && *v != xs)
            .cloned()
            .collect();
        avoid.extend(w.cloned());
        let p = fresh("p", &avoid);
        avoid.insert(p.clone());
        let ps = fresh("ps", &avoid);
        let mut bindings: Vec<(&str, CRef)> = Vec::new();
        if x != xs {
            bindings.push((x, c::pair(c::nat(1), c::var(p.clone()))));
        }
        bindings.push((xs, c::pair(c::nat(1), c::var(ps.clone()))));
        bindings.retain(|(v, _)| Some(*v) != w.map(String::as_str));
        let t = subst(&t, &bindings);
        (p, ps, t)
    }
}
