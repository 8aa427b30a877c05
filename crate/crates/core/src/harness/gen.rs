//! Random well-typed target terms.

use super::config::ProbeConfig;
use crate::target::{ArithOp, RelOp, TargetExpr, TargetTy, TypeContext};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Binder names are drawn from a small pool so that shadowing and
/// name clashes with the translation's potential binders are common.
const BINDERS: [&str; 8] = ["a", "b", "c", "p", "ps", "w", "x", "xs"];

/// Share of draws steered to case, fold and application nodes.
const BIAS: f64 = 0.3;

/// A well-typed term of type `ty` under `ctx`, using depth-bounded recursion.
pub fn gen_typed_term(
    seed: u64,
    depth: u32,
    ty: &TargetTy,
    ctx: &TypeContext,
    cfg: &ProbeConfig,
) -> TargetExpr {
    let mut g = TermGen::new(ChaCha8Rng::seed_from_u64(seed), cfg);
    g.term(ty, ctx, depth.max(1))
}

/// Generator state; reusable across draws from one random stream.
pub struct TermGen<'a, R: Rng> {
    pub rng: R,
    cfg: &'a ProbeConfig,
}

#[derive(Clone, Copy)]
enum Form {
    Var,
    Const,
    Arith,
    Rel,
    Cons,
    Lit,
    Lam,
    If,
    App,
    Case,
    Fold,
}

impl<'a, R: Rng> TermGen<'a, R> {
    pub fn new(rng: R, cfg: &'a ProbeConfig) -> Self {
        TermGen { rng, cfg }
    }

    pub fn int(&mut self) -> i64 {
        self.rng.random_range(self.cfg.int_min..=self.cfg.int_max)
    }

    pub fn int_list(&mut self, max_len: usize) -> Vec<i64> {
        let len = self.rng.random_range(0..=max_len);
        (0..len).map(|_| self.int()).collect()
    }

    fn binder(&mut self) -> String {
        BINDERS.choose(&mut self.rng).unwrap().to_string()
    }

    fn vars_of(&self, ty: &TargetTy, ctx: &TypeContext) -> Vec<String> {
        ctx.iter()
            .filter(|(_, t)| *t == ty)
            .map(|(x, _)| x.to_string())
            .collect()
    }

    fn arg_type(&mut self) -> TargetTy {
        match self.rng.random_range(0..4) {
            0 => TargetTy::Int,
            1 => TargetTy::IntList,
            2 => TargetTy::Bool,
            _ => TargetTy::arrow(TargetTy::Int, TargetTy::Int),
        }
    }

    /// A term of type `ty` under `ctx` of depth at most `depth`.
    pub fn term(&mut self, ty: &TargetTy, ctx: &TypeContext, depth: u32) -> TargetExpr {
        if depth <= 1 {
            return self.leaf(ty, ctx);
        }
        let vars = self.vars_of(ty, ctx);
        let form = if self.rng.random_bool(BIAS) {
            *[Form::Case, Form::Fold, Form::App]
                .choose(&mut self.rng)
                .unwrap()
        } else {
            let mut forms = vec![Form::If, Form::App, Form::Case, Form::Fold];
            if !vars.is_empty() {
                forms.push(Form::Var);
            }
            match ty {
                TargetTy::Int => forms.extend([Form::Const, Form::Arith, Form::Arith]),
                TargetTy::Bool => forms.extend([Form::Const, Form::Rel, Form::Rel]),
                TargetTy::IntList => forms.extend([Form::Const, Form::Lit, Form::Cons, Form::Cons]),
                TargetTy::Arrow(..) => forms.extend([Form::Lam, Form::Lam]),
            }
            *forms.choose(&mut self.rng).unwrap()
        };
        let d = depth - 1;
        match form {
            Form::Var => vars.choose(&mut self.rng).map(TargetExpr::var).unwrap(),
            Form::Const | Form::Lit => self.leaf(ty, &TypeContext::new()),
            Form::Arith => {
                let op = *ArithOp::ALL.choose(&mut self.rng).unwrap();
                let a = self.term(&TargetTy::Int, ctx, d);
                let b = self.term(&TargetTy::Int, ctx, d);
                TargetExpr::arith(op, a, b)
            }
            Form::Rel => {
                let op = *RelOp::ALL.choose(&mut self.rng).unwrap();
                let a = self.term(&TargetTy::Int, ctx, d);
                let b = self.term(&TargetTy::Int, ctx, d);
                TargetExpr::rel(op, a, b)
            }
            Form::Cons => {
                let h = self.term(&TargetTy::Int, ctx, d);
                let t = self.term(&TargetTy::IntList, ctx, d);
                TargetExpr::cons(h, t)
            }
            Form::Lam => {
                let TargetTy::Arrow(dom, cod) = ty else {
                    unreachable!("lambda drawn at a base type")
                };
                let x = self.binder();
                let inner = ctx.clone().bind(x.clone(), (**dom).clone());
                let body = self.term(cod, &inner, d);
                TargetExpr::lam(x, (**dom).clone(), body)
            }
            Form::If => {
                let c = self.term(&TargetTy::Bool, ctx, d);
                let t = self.term(ty, ctx, d);
                let e = self.term(ty, ctx, d);
                TargetExpr::if_(c, t, e)
            }
            Form::App => {
                let sigma = self.arg_type();
                let f = self.term(&TargetTy::arrow(sigma.clone(), ty.clone()), ctx, d);
                let a = self.term(&sigma, ctx, d);
                TargetExpr::app(f, a)
            }
            Form::Case => {
                let r = self.term(&TargetTy::IntList, ctx, d);
                let s = self.term(ty, ctx, d);
                let (h, t) = (self.binder(), self.binder());
                let inner = ctx
                    .clone()
                    .bind(h.clone(), TargetTy::Int)
                    .bind(t.clone(), TargetTy::IntList);
                let body = self.term(ty, &inner, d);
                TargetExpr::case(r, s, h, t, body)
            }
            Form::Fold => {
                let r = self.term(&TargetTy::IntList, ctx, d);
                let s = self.term(ty, ctx, d);
                let (h, t, w) = (self.binder(), self.binder(), self.binder());
                let inner = ctx
                    .clone()
                    .bind(h.clone(), TargetTy::Int)
                    .bind(t.clone(), TargetTy::IntList)
                    .bind(w.clone(), ty.clone());
                let body = self.term(ty, &inner, d);
                TargetExpr::fold(r, s, h, t, w, body)
            }
        }
    }

    /// A variable of the right type or a canonical value.
    fn leaf(&mut self, ty: &TargetTy, ctx: &TypeContext) -> TargetExpr {
        let vars = self.vars_of(ty, ctx);
        if !vars.is_empty() && self.rng.random_bool(0.5) {
            return TargetExpr::var(vars.choose(&mut self.rng).unwrap());
        }
        match ty {
            TargetTy::Int => TargetExpr::Int(self.int()),
            TargetTy::Bool => TargetExpr::Bool(self.rng.random()),
            TargetTy::IntList => {
                let items = self.int_list(self.cfg.max_list);
                TargetExpr::list(items)
            }
            TargetTy::Arrow(dom, cod) => {
                let x = self.binder();
                let inner = ctx.clone().bind(x.clone(), (**dom).clone());
                let body = self.leaf(cod, &inner);
                TargetExpr::lam(x, (**dom).clone(), body)
            }
        }
    }
}
