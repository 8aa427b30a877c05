//! `cplx`: typecheck, evaluate, translate and bound target programs.

use clap::{Args, Parser, Subcommand};
use cplx_core::cplx::{ctypecheck, denote_with_fuel, CplxCtx, SemEnv};
use cplx_core::harness::{
    check_closed_base, check_value_bounded, fuzz_campaign, tabulate, ArgSpec, CheckError,
    ProbeConfig, TabulateError, Verdict,
};
use cplx_core::{
    eval, parse, parse_file, translate, typecheck, EvalError, TargetExpr, TargetTy, TypeContext,
    ValueEnv, DEFAULT_BUDGET,
};
use std::fmt::Write as _;
use std::ops::Range;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_VERDICT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_RUNTIME: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cplx",
    version,
    about = "Cost analysis for a higher-order list language"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the type of a program.
    Typecheck { file: PathBuf },
    /// Evaluate a closed program and report its value and cost.
    Eval {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print the translated complexity term and its type.
    Translate { file: PathBuf },
    /// Tabulate the translated bound of a curried program.
    Bound {
        file: PathBuf,
        /// Argument complexity, in order: "(c,p)", "sweep" or "term:<expr>".
        #[arg(long = "arg")]
        args: Vec<String>,
        /// Inclusive range of the swept potential, e.g. 0..64.
        #[arg(long, default_value = "0..10")]
        sweep: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a closed program against its translated bound.
    Check {
        file: PathBuf,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Run a randomized soundness campaign.
    Fuzz {
        #[command(flatten)]
        probe: ProbeArgs,
    },
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Campaign size for `fuzz`; probes per arrow type for `check`.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 6)]
    depth: u32,
    #[arg(long = "max-list", default_value_t = 8)]
    max_list: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

impl ProbeArgs {
    fn config(&self) -> ProbeConfig {
        ProbeConfig {
            trials: self.trials,
            probes: self.trials,
            max_list: self.max_list,
            seed: self.seed,
            depth: self.depth,
            budget: self.budget,
            ..ProbeConfig::default()
        }
    }
}

/// A failed command: exit status and diagnostic.
struct Failure(u8, String);

fn input(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, msg.to_string())
}

fn from_eval(e: EvalError) -> Failure {
    match e {
        EvalError::BudgetExhausted { .. } => Failure(EXIT_BUDGET, e.to_string()),
        _ => Failure(EXIT_RUNTIME, e.to_string()),
    }
}

fn from_check(e: CheckError) -> Failure {
    match e {
        CheckError::Type(_) | CheckError::NotBase(_) => input(e),
        CheckError::Eval(ev) => from_eval(ev),
        CheckError::Sem(_) => Failure(EXIT_RUNTIME, e.to_string()),
    }
}

fn load(file: &PathBuf) -> Result<(TargetExpr, TargetTy), Failure> {
    let src =
        std::fs::read_to_string(file).map_err(|e| input(format!("{}: {e}", file.display())))?;
    let e = parse_file(&src).map_err(|e| input(format!("{}:{e}", file.display())))?;
    let ty = typecheck(&TypeContext::new(), &e)
        .map_err(|err| input(format!("{}: type error: {err}", file.display())))?;
    Ok((e, ty))
}

fn parse_range(s: &str) -> Result<Range<u64>, Failure> {
    let bad = || input(format!("invalid sweep range `{s}`, expected A..B"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..hi.saturating_add(1))
}

fn parse_arg(s: &str) -> Result<ArgSpec, Failure> {
    let s = s.trim();
    if s == "sweep" {
        return Ok(ArgSpec::Sweep);
    }
    if let Some(src) = s.strip_prefix("term:") {
        return parse(src)
            .map(ArgSpec::Term)
            .map_err(|e| input(format!("argument term: {e}")));
    }
    let bad = || {
        input(format!(
            "invalid argument `{s}`, expected (c,p), sweep or term:<expr>"
        ))
    };
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (c, p) = inner.split_once(',').ok_or_else(bad)?;
    Ok(ArgSpec::Fixed {
        cost: c.trim().parse().map_err(|_| bad())?,
        pot: p.trim().parse().map_err(|_| bad())?,
    })
}

fn bound(file: &PathBuf, args: &[String], sweep: &str, json: bool) -> Result<String, Failure> {
    let (e, ty) = load(file)?;
    let mut specs = args
        .iter()
        .map(|a| parse_arg(a))
        .collect::<Result<Vec<_>, _>>()?;
    if !specs.contains(&ArgSpec::Sweep) {
        specs.push(ArgSpec::Sweep);
    }
    let arity = ty.uncurry().0.len();
    if specs.len() > arity {
        return Err(input(format!(
            "program of type {ty} takes {arity} arguments, {} given",
            specs.len()
        )));
    }
    let table = tabulate(&e, &specs, parse_range(sweep)?).map_err(|err| match err {
        TabulateError::Sem(_) => Failure(EXIT_RUNTIME, err.to_string()),
        _ => input(err),
    })?;
    if !json {
        return Ok(table.to_string());
    }
    let mut out = String::new();
    for row in &table.rows {
        writeln!(
            out,
            "{}",
            serde_json::to_string(row).expect("rows serialize")
        )
        .unwrap();
    }
    Ok(out)
}

fn check(file: &PathBuf, probe: &ProbeArgs) -> Result<(String, bool), Failure> {
    let (e, ty) = load(file)?;
    let cfg = probe.config();
    cfg.validate().map_err(input)?;
    if ty.is_base() {
        let r = check_closed_base(&e, &cfg).map_err(from_check)?;
        let text = if probe.json {
            serde_json::json!({
                "cost": r.cost,
                "bound": r.bound_cost,
                "size": r.size,
                "pot": r.bound_pot.to_string(),
                "verdict": r.verdict,
            })
            .to_string()
        } else {
            r.to_string()
        };
        return Ok((text + "\n", r.verdict == Verdict::Pass));
    }
    let run = eval(&e, &ValueEnv::new(), cfg.budget).map_err(from_eval)?;
    let bound = denote_with_fuel(&translate(&e), &SemEnv::new(), cfg.fuel)
        .map_err(|err| Failure(EXIT_RUNTIME, err.to_string()))?;
    let cost_ok = run.cost <= bound.cost().unwrap_or(0);
    let pot = bound
        .pot()
        .map_err(|err| Failure(EXIT_RUNTIME, err.to_string()))?;
    let out = check_value_bounded(&run.value, pot, &ty, &cfg, cfg.seed);
    let verdict = if !cost_ok { Verdict::Fail } else { out.verdict };
    let text = if probe.json {
        serde_json::json!({
            "cost": run.cost,
            "bound": bound.cost().unwrap_or(0),
            "probes": out.probes,
            "verdict": verdict,
            "failure": out.failure,
        })
        .to_string()
    } else {
        let mut s = format!(
            "cost={} bound={} probes={} verdict={verdict}",
            run.cost,
            bound.cost().unwrap_or(0),
            out.probes
        );
        if let Some(f) = &out.failure {
            write!(s, " failure={f}").unwrap();
        }
        s
    };
    Ok((text + "\n", verdict == Verdict::Pass))
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.command {
        Command::Typecheck { file } => {
            let (_, ty) = load(&file)?;
            Ok((format!("{ty}\n"), 0))
        }
        Command::Eval { file, budget } => {
            let (e, _) = load(&file)?;
            let r = eval(&e, &ValueEnv::new(), budget).map_err(from_eval)?;
            Ok((format!("value = {}, cost = {}\n", r.value, r.cost), 0))
        }
        Command::Translate { file } => {
            let (e, _) = load(&file)?;
            let t = translate(&e);
            let ty = ctypecheck(&CplxCtx::new(), &t)
                .map_err(|err| Failure(EXIT_RUNTIME, format!("translated term: {err}")))?;
            Ok((format!("{t}\n: {ty}\n"), 0))
        }
        Command::Bound {
            file,
            args,
            sweep,
            json,
        } => Ok((bound(&file, &args, &sweep, json)?, 0)),
        Command::Check { file, probe } => {
            let (text, ok) = check(&file, &probe)?;
            Ok((text, if ok { 0 } else { EXIT_VERDICT }))
        }
        Command::Fuzz { probe } => {
            let cfg = probe.config();
            cfg.validate().map_err(input)?;
            let s = fuzz_campaign(&cfg);
            let text = if probe.json {
                s.to_json_lines()
            } else {
                s.to_lines()
            };
            Ok((text, if s.failed == 0 { 0 } else { EXIT_VERDICT }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
