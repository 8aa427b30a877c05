use super::ast::{CRef, CplxExpr};
use crate::env::Env;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Potential types `γ ::= N | γ → τ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PotTy {
    Nat,
    Arrow(Box<PotTy>, Box<CplxTy>),
}

/// Complexity types `N × γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CplxTy {
    pub pot: PotTy,
}

/// Types of complexity expressions: potential types (including `N`) and
/// complexity types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FullTy {
    Pot(PotTy),
    Cplx(CplxTy),
}

impl PotTy {
    pub fn arrow(domain: PotTy, codomain: CplxTy) -> PotTy {
        PotTy::Arrow(Box::new(domain), Box::new(codomain))
    }
}

impl CplxTy {
    /// `⟨⟨γ⟩⟩ = N × γ`.
    pub fn of(pot: PotTy) -> CplxTy {
        CplxTy { pot }
    }
}

impl FullTy {
    pub const NAT: FullTy = FullTy::Pot(PotTy::Nat);

    pub fn cplx(pot: PotTy) -> FullTy {
        FullTy::Cplx(CplxTy::of(pot))
    }
}

impl fmt::Display for PotTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotTy::Nat => f.write_str("N"),
            PotTy::Arrow(a, b) => match **a {
                PotTy::Nat => write!(f, "N→({b})"),
                _ => write!(f, "({a})→({b})"),
            },
        }
    }
}

impl fmt::Display for CplxTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pot {
            PotTy::Nat => f.write_str("N×N"),
            _ => write!(f, "N×({})", self.pot),
        }
    }
}

impl fmt::Display for FullTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FullTy::Pot(p) => write!(f, "{p}"),
            FullTy::Cplx(c) => write!(f, "{c}"),
        }
    }
}

/// Typing context for complexity expressions.
pub type CplxCtx = Env<FullTy>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CTypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("Plus at non-Nat type {0}")]
    PlusNonNat(FullTy),
    #[error("Max at mismatched types {0} and {1}")]
    MaxMismatch(FullTy, FullTy),
    #[error("pair cost component has type {0}, expected N")]
    PairCost(FullTy),
    #[error("pair potential component has complexity type {0}")]
    PairPot(FullTy),
    #[error("projection of non-product type {0}")]
    ProjNonProduct(FullTy),
    #[error("star application of non-function complexity {0}")]
    AppNonFunction(FullTy),
    #[error("star application argument has type {found}, expected {expected}")]
    AppArgument { expected: FullTy, found: FullTy },
    #[error("lambda body has type {0}, expected a complexity type")]
    LamBody(FullTy),
    #[error("{0} scrutinee has type {1}, expected N")]
    ScrutineeNonNat(&'static str, FullTy),
    #[error(
        "{construct} branch has type {found}, expected a complexity type agreeing with {expected}"
    )]
    Branch {
        construct: &'static str,
        expected: FullTy,
        found: FullTy,
    },
    #[error("dally amount has type {0}, expected N")]
    DallyAmount(FullTy),
    #[error("dally target has type {0}, expected a complexity type")]
    DallyTarget(FullTy),
}

/// Syntax-directed typing of complexity expressions.
pub fn ctypecheck(ctx: &CplxCtx, e: &CRef) -> Result<FullTy, CTypeError> {
    Checker::default().infer(ctx, e)
}

#[derive(Default)]
struct Checker {
    memo: HashMap<(usize, usize), (CRef, CplxCtx, FullTy)>,
}

impl Checker {
    fn infer(&mut self, ctx: &CplxCtx, e: &CRef) -> Result<FullTy, CTypeError> {
        let shared = Arc::strong_count(e) > 1;
        let key = (Arc::as_ptr(e) as usize, ctx.identity());
        if shared {
            if let Some((_, _, ty)) = self.memo.get(&key) {
                return Ok(ty.clone());
            }
        }
        let ty = self.infer_node(ctx, e)?;
        if shared {
            self.memo.insert(key, (e.clone(), ctx.clone(), ty.clone()));
        }
        Ok(ty)
    }

    fn cplx(&mut self, ctx: &CplxCtx, e: &CRef) -> Result<Result<CplxTy, FullTy>, CTypeError> {
        Ok(match self.infer(ctx, e)? {
            FullTy::Cplx(c) => Ok(c),
            other => Err(other),
        })
    }

    fn infer_node(&mut self, ctx: &CplxCtx, e: &CRef) -> Result<FullTy, CTypeError> {
        use CplxExpr as C;
        match &**e {
            C::Var(x) => ctx
                .lookup(x)
                .cloned()
                .ok_or_else(|| CTypeError::Unbound(x.clone())),
            C::Nat(_) => Ok(FullTy::NAT),
            C::Plus(a, b) => {
                for side in [a, b] {
                    let t = self.infer(ctx, side)?;
                    if t != FullTy::NAT {
                        return Err(CTypeError::PlusNonNat(t));
                    }
                }
                Ok(FullTy::NAT)
            }
            C::Max(a, b) => {
                let ta = self.infer(ctx, a)?;
                let tb = self.infer(ctx, b)?;
                if ta == tb {
                    Ok(ta)
                } else {
                    Err(CTypeError::MaxMismatch(ta, tb))
                }
            }
            C::Pair(a, b) => {
                let ta = self.infer(ctx, a)?;
                if ta != FullTy::NAT {
                    return Err(CTypeError::PairCost(ta));
                }
                match self.infer(ctx, b)? {
                    FullTy::Pot(p) => Ok(FullTy::cplx(p)),
                    other => Err(CTypeError::PairPot(other)),
                }
            }
            C::Cost(a) => match self.cplx(ctx, a)? {
                Ok(_) => Ok(FullTy::NAT),
                Err(t) => Err(CTypeError::ProjNonProduct(t)),
            },
            C::Pot(a) => match self.cplx(ctx, a)? {
                Ok(c) => Ok(FullTy::Pot(c.pot)),
                Err(t) => Err(CTypeError::ProjNonProduct(t)),
            },
            C::Lam { binder, ty, body } => {
                let inner = ctx.extend(binder.clone(), FullTy::cplx(ty.clone()));
                match self.cplx(&inner, body)? {
                    Ok(c) => Ok(FullTy::cplx(PotTy::arrow(ty.clone(), c))),
                    Err(t) => Err(CTypeError::LamBody(t)),
                }
            }
            C::App(f, a) => {
                let (dom, cod) = match self.infer(ctx, f)? {
                    FullTy::Cplx(CplxTy {
                        pot: PotTy::Arrow(d, c),
                    }) => (*d, *c),
                    other => return Err(CTypeError::AppNonFunction(other)),
                };
                let ta = self.infer(ctx, a)?;
                let expected = FullTy::cplx(dom);
                if ta != expected {
                    return Err(CTypeError::AppArgument {
                        expected,
                        found: ta,
                    });
                }
                Ok(FullTy::Cplx(cod))
            }
            C::Dally(n, a) => {
                let tn = self.infer(ctx, n)?;
                if tn != FullTy::NAT {
                    return Err(CTypeError::DallyAmount(tn));
                }
                match self.cplx(ctx, a)? {
                    Ok(c) => Ok(FullTy::Cplx(c)),
                    Err(t) => Err(CTypeError::DallyTarget(t)),
                }
            }
            C::PCase {
                scrutinee,
                zero,
                p,
                ps,
                succ,
            } => {
                let inner = ctx
                    .extend(p.clone(), FullTy::NAT)
                    .extend(ps.clone(), FullTy::NAT);
                self.branches("pcase", ctx, scrutinee, zero, &inner, succ)
            }
            C::PFold {
                scrutinee,
                zero,
                p,
                ps,
                w,
                succ,
            } => {
                let zt = self.zero_branch("pfold", ctx, scrutinee, zero)?;
                let inner = ctx
                    .extend(p.clone(), FullTy::NAT)
                    .extend(ps.clone(), FullTy::NAT)
                    .extend(w.clone(), zt.clone());
                self.succ_branch("pfold", &inner, succ, zt)
            }
        }
    }

    fn zero_branch(
        &mut self,
        construct: &'static str,
        ctx: &CplxCtx,
        scrutinee: &CRef,
        zero: &CRef,
    ) -> Result<FullTy, CTypeError> {
        let ts = self.infer(ctx, scrutinee)?;
        if ts != FullTy::NAT {
            return Err(CTypeError::ScrutineeNonNat(construct, ts));
        }
        let zt = self.infer(ctx, zero)?;
        if !matches!(zt, FullTy::Cplx(_)) {
            return Err(CTypeError::Branch {
                construct,
                expected: zt.clone(),
                found: zt,
            });
        }
        Ok(zt)
    }

    fn succ_branch(
        &mut self,
        construct: &'static str,
        inner: &CplxCtx,
        succ: &CRef,
        zt: FullTy,
    ) -> Result<FullTy, CTypeError> {
        let st = self.infer(inner, succ)?;
        if st == zt {
            Ok(zt)
        } else {
            Err(CTypeError::Branch {
                construct,
                expected: zt,
                found: st,
            })
        }
    }

    fn branches(
        &mut self,
        construct: &'static str,
        ctx: &CplxCtx,
        scrutinee: &CRef,
        zero: &CRef,
        inner: &CplxCtx,
        succ: &CRef,
    ) -> Result<FullTy, CTypeError> {
        let zt = self.zero_branch(construct, ctx, scrutinee, zero)?;
        self.succ_branch(construct, inner, succ, zt)
    }
}
