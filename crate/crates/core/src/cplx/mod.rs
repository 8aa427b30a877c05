//! The complexity language: cost/potential expressions, their types, and
//! their denotational semantics.

pub mod ast;
mod print;
mod sem;
mod types;

pub use ast::{subst, CRef, CplxExpr};
pub use sem::{
    dally, denote, denote_with_fuel, sem_max, star_apply, SemEnv, SemError, SemFun, SemVal,
};
pub use types::{ctypecheck, CTypeError, CplxCtx, CplxTy, FullTy, PotTy};
