//! Property checks on the complexity semantics.

use super::cgen::{nat_fun, probe_eq, CplxGen};
use crate::cplx::ast::{self as c, CplxExpr};
use crate::cplx::{
    ctypecheck, denote_with_fuel, subst, CplxCtx, FullTy, PotTy, SemEnv, SemError, SemVal,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const FUEL: u64 = 2_000_000;
const MAX_DRAWS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertySummary {
    pub samples: usize,
    pub passed: usize,
    /// Draws discarded because denotation ran out of fuel or overflowed.
    pub redraws: u64,
    pub failures: Vec<String>,
}

impl PropertySummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed == self.samples
    }
}

fn sample_rng(seed: u64, sample: usize, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((sample as u64) << 8) | attempt as u64);
    rng
}

enum Outcome {
    Pass,
    Fail(String),
    Redraw,
}

fn run(samples: usize, seed: u64, mut one: impl FnMut(ChaCha8Rng) -> Outcome) -> PropertySummary {
    let mut summary = PropertySummary {
        samples,
        passed: 0,
        redraws: 0,
        failures: Vec::new(),
    };
    for k in 0..samples {
        let mut decided = false;
        for attempt in 0..MAX_DRAWS {
            match one(sample_rng(seed, k, attempt)) {
                Outcome::Pass => {
                    summary.passed += 1;
                    decided = true;
                }
                Outcome::Fail(msg) => {
                    summary.failures.push(format!("sample {k}: {msg}"));
                    decided = true;
                }
                Outcome::Redraw => summary.redraws += 1,
            }
            if decided {
                break;
            }
        }
        if !decided {
            summary.failures.push(format!(
                "sample {k}: no decidable draw in {MAX_DRAWS} attempts"
            ));
        }
    }
    summary
}

fn classify(err: SemError) -> Outcome {
    match err {
        SemError::FuelExhausted | SemError::Overflow => Outcome::Redraw,
        other => Outcome::Fail(other.to_string()),
    }
}

/// The zero branch of a `pfold` never costs more than the whole `pfold`,
/// over random typechecked instances with scrutinee in `0..=8`.
pub fn check_pfold_base(samples: usize, seed: u64) -> PropertySummary {
    run(samples, seed, |rng| {
        let mut gen = CplxGen::new(rng);
        let q = gen.rng.random_range(0..=8u64);
        let gamma = if gen.rng.random_bool(0.75) {
            PotTy::Nat
        } else {
            nat_fun()
        };
        let ty = FullTy::cplx(gamma);
        let e = gen.pfold_on(c::nat(q), &ty, &[], 4);
        if ctypecheck(&CplxCtx::new(), &e).as_ref() != Ok(&ty) {
            return Outcome::Fail(format!("generated term does not typecheck: {e}"));
        }
        let CplxExpr::PFold { zero, .. } = &*e else {
            unreachable!("pfold_on builds a pfold")
        };
        let costs = denote_with_fuel(zero, &SemEnv::new(), FUEL)
            .and_then(|s| s.cost())
            .and_then(|s| Ok((s, denote_with_fuel(&e, &SemEnv::new(), FUEL)?.cost()?)));
        match costs {
            Ok((s, whole)) if s <= whole => Outcome::Pass,
            Ok((s, whole)) => Outcome::Fail(format!("cost {s} of base exceeds {whole}: {e}")),
            Err(err) => classify(err),
        }
    })
}

/// `⟦t⟧ξ[x ↦ (a,b)] = ⟦t[x ↦ (a,y)]⟧ξ[y ↦ b]` for fresh `y`, with function
/// results compared on `probes` arguments.
pub fn check_subst_denote(samples: usize, seed: u64, probes: usize) -> PropertySummary {
    run(samples, seed, |rng| {
        let mut gen = CplxGen::new(rng);
        let gamma = if gen.rng.random_bool(0.7) {
            PotTy::Nat
        } else {
            nat_fun()
        };
        let result = match gen.rng.random_range(0..10) {
            0..=2 => FullTy::NAT,
            3..=7 => FullTy::cplx(PotTy::Nat),
            _ => FullTy::cplx(nat_fun()),
        };
        let x_ty = FullTy::cplx(gamma.clone());
        let t = gen.term(&result, &[("x".to_string(), x_ty.clone())], 4);
        let ctx = CplxCtx::new().extend("x", x_ty);
        if ctypecheck(&ctx, &t).as_ref() != Ok(&result) {
            return Outcome::Fail(format!("generated term does not typecheck: {t}"));
        }
        let a = gen.rng.random_range(0..=4u64);
        let b = gen.value(&FullTy::Pot(gamma));
        let lhs_env = SemEnv::new().extend("x", SemVal::pair(a, b.clone()));
        let t2 = subst(&t, &[("x", c::pair(c::nat(a), c::var("y0")))]);
        let rhs_env = SemEnv::new().extend("y0", b);
        let both = denote_with_fuel(&t, &lhs_env, FUEL)
            .and_then(|l| Ok((l, denote_with_fuel(&t2, &rhs_env, FUEL)?)))
            .and_then(|(l, r)| probe_eq(&l, &r, &result, &mut gen, probes));
        match both {
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::Fail(format!("denotations differ for {t}")),
            Err(err) => classify(err),
        }
    })
}
