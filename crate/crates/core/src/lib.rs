//! Cost analysis for a higher-order functional language with structural
//! list recursion.
//!
//! Programs in the [`target`] language are run by a cost-instrumented
//! big-step evaluator ([`eval`]) and translated ([`translate`]) into the
//! [`cplx`] language of cost/potential recurrences, whose denotation bounds
//! the evaluation cost. The [`harness`] module checks that bound empirically.

pub mod corpus;
pub mod cplx;
pub mod env;
pub mod eval;
pub mod harness;
pub mod target;
pub mod translate;

pub use cplx::{ctypecheck, denote, CplxExpr, CplxTy, FullTy, PotTy, SemEnv, SemVal};
pub use env::Env;
pub use eval::{eval, value_size, EvalError, EvalResult, Value, ValueEnv, DEFAULT_BUDGET};
pub use target::{parse, parse_file, print, typecheck, TargetExpr, TargetTy, TypeContext};
pub use translate::{pot_ty, translate, translate_ctx, translate_ty};
