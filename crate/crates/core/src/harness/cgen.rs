//! Random well-typed complexity terms and semantic probe values.

use crate::cplx::ast::{self as c, CRef};
use crate::cplx::{sem_max, CplxTy, FullTy, PotTy, SemError, SemFun, SemVal};
use rand::seq::IndexedRandom;
use rand::Rng;

const BINDERS: [&str; 6] = ["p", "ps", "w", "x", "y", "z"];

/// `N → N×N`, the function potential used by generated terms.
pub fn nat_fun() -> PotTy {
    PotTy::arrow(PotTy::Nat, CplxTy::of(PotTy::Nat))
}

pub struct CplxGen<R: Rng> {
    pub rng: R,
    pub max_nat: u64,
}

impl<R: Rng> CplxGen<R> {
    pub fn new(rng: R) -> Self {
        CplxGen { rng, max_nat: 4 }
    }

    fn binder(&mut self) -> String {
        BINDERS.choose(&mut self.rng).unwrap().to_string()
    }

    fn pot_ty(&mut self) -> PotTy {
        if self.rng.random_bool(0.75) {
            PotTy::Nat
        } else {
            nat_fun()
        }
    }

    /// A term of type `ty` under `ctx` (later entries shadow earlier ones).
    pub fn term(&mut self, ty: &FullTy, ctx: &[(String, FullTy)], depth: u32) -> CRef {
        let vars: Vec<&String> = ctx
            .iter()
            .enumerate()
            .filter(|(i, (x, t))| t == ty && !ctx[i + 1..].iter().any(|(y, _)| y == x))
            .map(|(_, (x, _))| x)
            .collect();
        if !vars.is_empty() && self.rng.random_bool(if depth <= 1 { 0.6 } else { 0.25 }) {
            return c::var((*vars.choose(&mut self.rng).unwrap()).clone());
        }
        if depth <= 1 {
            return self.leaf(ty, ctx);
        }
        let d = depth - 1;
        match ty {
            FullTy::Pot(PotTy::Nat) => match self.rng.random_range(0..6) {
                0 => c::nat(self.rng.random_range(0..=self.max_nat)),
                1 | 2 => c::plus(self.term(ty, ctx, d), self.term(ty, ctx, d)),
                3 => c::max(self.term(ty, ctx, d), self.term(ty, ctx, d)),
                4 => {
                    let g = self.pot_ty();
                    c::cost(self.term(&FullTy::cplx(g), ctx, d))
                }
                _ => c::pot(self.term(&FullTy::cplx(PotTy::Nat), ctx, d)),
            },
            FullTy::Pot(pot @ PotTy::Arrow(..)) => match self.rng.random_range(0..3) {
                0 => c::max(self.term(ty, ctx, d), self.term(ty, ctx, d)),
                _ => c::pot(self.term(&FullTy::cplx(pot.clone()), ctx, d)),
            },
            FullTy::Cplx(CplxTy { pot }) => {
                let choice = self.rng.random_range(0..8);
                match (choice, pot) {
                    (0, _) => c::pair(
                        self.term(&FullTy::NAT, ctx, d),
                        self.term(&FullTy::Pot(pot.clone()), ctx, d),
                    ),
                    (1, _) => c::max(self.term(ty, ctx, d), self.term(ty, ctx, d)),
                    (2, _) => c::dally(self.term(&FullTy::NAT, ctx, d), self.term(ty, ctx, d)),
                    (3, _) => {
                        let f = FullTy::cplx(PotTy::arrow(PotTy::Nat, CplxTy::of(pot.clone())));
                        c::app(
                            self.term(&f, ctx, d),
                            self.term(&FullTy::cplx(PotTy::Nat), ctx, d),
                        )
                    }
                    (4, _) => {
                        let r = self.scrutinee(ctx, d);
                        let s = self.term(ty, ctx, d);
                        let (p, ps) = (self.binder(), self.binder());
                        let mut inner = ctx.to_vec();
                        inner.push((p.clone(), FullTy::NAT));
                        inner.push((ps.clone(), FullTy::NAT));
                        let t = self.term(ty, &inner, d);
                        c::pcase(r, s, p, ps, t)
                    }
                    (5, _) => self.pfold(ty, ctx, d),
                    (_, PotTy::Arrow(dom, cod)) => {
                        let x = self.binder();
                        let mut inner = ctx.to_vec();
                        inner.push((x.clone(), FullTy::cplx((**dom).clone())));
                        let body = self.term(&FullTy::Cplx((**cod).clone()), &inner, d);
                        c::lam(x, (**dom).clone(), body)
                    }
                    _ => c::pair(
                        self.term(&FullTy::NAT, ctx, d),
                        self.term(&FullTy::Pot(pot.clone()), ctx, d),
                    ),
                }
            }
        }
    }

    /// Small natural-valued scrutinees keep `pfold` iteration counts low.
    fn scrutinee(&mut self, ctx: &[(String, FullTy)], depth: u32) -> CRef {
        if self.rng.random_bool(0.5) {
            c::nat(self.rng.random_range(0..=self.max_nat))
        } else {
            self.term(&FullTy::NAT, ctx, depth.min(2))
        }
    }

    /// A `pfold` of type `ty` whose scrutinee is drawn by `scrutinee`.
    pub fn pfold(&mut self, ty: &FullTy, ctx: &[(String, FullTy)], depth: u32) -> CRef {
        let r = self.scrutinee(ctx, depth);
        self.pfold_on(r, ty, ctx, depth)
    }

    pub fn pfold_on(
        &mut self,
        scrutinee: CRef,
        ty: &FullTy,
        ctx: &[(String, FullTy)],
        depth: u32,
    ) -> CRef {
        let s = self.term(ty, ctx, depth);
        let (p, ps, w) = (self.binder(), self.binder(), self.binder());
        let mut inner = ctx.to_vec();
        inner.push((p.clone(), FullTy::NAT));
        inner.push((ps.clone(), FullTy::NAT));
        inner.push((w.clone(), ty.clone()));
        let t = self.term(ty, &inner, depth);
        c::pfold(scrutinee, s, p, ps, w, t)
    }

    fn leaf(&mut self, ty: &FullTy, ctx: &[(String, FullTy)]) -> CRef {
        match ty {
            FullTy::Pot(PotTy::Nat) => c::nat(self.rng.random_range(0..=self.max_nat)),
            FullTy::Pot(pot) => c::pot(self.leaf(&FullTy::cplx(pot.clone()), ctx)),
            FullTy::Cplx(CplxTy { pot }) => match pot {
                PotTy::Nat => c::pair(self.leaf(&FullTy::NAT, ctx), self.leaf(&FullTy::NAT, ctx)),
                PotTy::Arrow(dom, cod) => {
                    let x = self.binder();
                    let mut inner = ctx.to_vec();
                    inner.push((x.clone(), FullTy::cplx((**dom).clone())));
                    let body = self.term(&FullTy::Cplx((**cod).clone()), &inner, 1);
                    c::lam(x, (**dom).clone(), body)
                }
            },
        }
    }

    /// A semantic value inhabiting `ty`.
    pub fn value(&mut self, ty: &FullTy) -> SemVal {
        match ty {
            FullTy::Pot(PotTy::Nat) => SemVal::Nat(self.rng.random_range(0..=self.max_nat)),
            FullTy::Pot(PotTy::Arrow(_, cod)) => {
                let out = self.value(&FullTy::Cplx((**cod).clone()));
                if self.rng.random_bool(0.5) {
                    SemVal::Fun(SemFun::new(move |_| Ok(out.clone())))
                } else {
                    let k = self.rng.random_range(0..=self.max_nat);
                    // grows with a natural argument, constant otherwise
                    SemVal::Fun(SemFun::new(move |arg| match (arg, &out) {
                        (SemVal::Nat(n), SemVal::Pair(c, p)) => match &**p {
                            SemVal::Nat(m) => Ok(SemVal::nat_pair(
                                c.checked_add(*n).ok_or(SemError::Overflow)?,
                                m.checked_add(*n + k).ok_or(SemError::Overflow)?,
                            )),
                            _ => Ok(out.clone()),
                        },
                        _ => Ok(out.clone()),
                    }))
                }
            }
            FullTy::Cplx(CplxTy { pot }) => {
                let c = self.rng.random_range(0..=self.max_nat);
                SemVal::pair(c, self.value(&FullTy::Pot(pot.clone())))
            }
        }
    }
}

/// Equality of denotations of type `ty`; functions are compared on
/// `probes` generated arguments, recursively.
pub fn probe_eq<R: Rng>(
    a: &SemVal,
    b: &SemVal,
    ty: &FullTy,
    gen: &mut CplxGen<R>,
    probes: usize,
) -> Result<bool, SemError> {
    match ty {
        FullTy::Pot(PotTy::Nat) => Ok(a.as_nat()? == b.as_nat()?),
        FullTy::Cplx(CplxTy { pot }) => Ok(a.cost()? == b.cost()?
            && probe_eq(a.pot()?, b.pot()?, &FullTy::Pot(pot.clone()), gen, probes)?),
        FullTy::Pot(PotTy::Arrow(dom, cod)) => {
            let cod = FullTy::Cplx((**cod).clone());
            for _ in 0..probes {
                let arg = gen.value(&FullTy::Pot((**dom).clone()));
                if !probe_eq(&a.apply(&arg)?, &b.apply(&arg)?, &cod, gen, probes)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `a ≤ b` in the order used by bounds: componentwise, pointwise on probes.
pub fn probe_le<R: Rng>(
    a: &SemVal,
    b: &SemVal,
    ty: &FullTy,
    gen: &mut CplxGen<R>,
    probes: usize,
) -> Result<bool, SemError> {
    match ty {
        FullTy::Pot(PotTy::Nat) => Ok(a.as_nat()? <= b.as_nat()?),
        FullTy::Cplx(CplxTy { pot }) => Ok(a.cost()? <= b.cost()?
            && probe_le(a.pot()?, b.pot()?, &FullTy::Pot(pot.clone()), gen, probes)?),
        FullTy::Pot(PotTy::Arrow(dom, cod)) => {
            let cod = FullTy::Cplx((**cod).clone());
            for _ in 0..probes {
                let arg = gen.value(&FullTy::Pot((**dom).clone()));
                if !probe_le(&a.apply(&arg)?, &b.apply(&arg)?, &cod, gen, probes)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `sem_max(a, b)` bounds both arguments, checked on probes.
pub fn max_bounds_both<R: Rng>(
    a: &SemVal,
    b: &SemVal,
    ty: &FullTy,
    gen: &mut CplxGen<R>,
    probes: usize,
) -> Result<bool, SemError> {
    let m = sem_max(a, b)?;
    Ok(probe_le(a, &m, ty, gen, probes)? && probe_le(b, &m, ty, gen, probes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx::{ctypecheck, CplxCtx};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_terms_typecheck() {
        let mut g = CplxGen::new(ChaCha8Rng::seed_from_u64(4));
        let tys = [
            FullTy::NAT,
            FullTy::cplx(PotTy::Nat),
            FullTy::cplx(nat_fun()),
            FullTy::Pot(nat_fun()),
        ];
        for _ in 0..300 {
            for ty in &tys {
                let e = g.term(ty, &[], 4);
                assert_eq!(ctypecheck(&CplxCtx::new(), &e).as_ref(), Ok(ty), "{e}");
            }
        }
    }

    #[test]
    fn max_is_an_upper_bound() {
        let mut g = CplxGen::new(ChaCha8Rng::seed_from_u64(9));
        for ty in [
            FullTy::NAT,
            FullTy::cplx(PotTy::Nat),
            FullTy::Pot(nat_fun()),
        ] {
            for _ in 0..50 {
                let (a, b) = (g.value(&ty), g.value(&ty));
                assert!(max_bounds_both(&a, &b, &ty, &mut g, 5).unwrap());
            }
        }
    }
}
