mod common;

use cplx_core::cplx::{dally, denote, sem_max, FullTy, PotTy, SemVal};
use cplx_core::eval::apply_closure;
use cplx_core::harness::cgen::{max_bounds_both, nat_fun, probe_le, CplxGen};
use cplx_core::harness::{
    check_closed_base, check_value_bounded, eval_applied, rejudge, tabulate, worst_case_inputs,
    ArgSpec, ProbeConfig, Verdict,
};
use cplx_core::{
    corpus, eval, parse, translate, value_size, SemEnv, TargetExpr, TargetTy, Value, ValueEnv,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ins_app(x: i64, xs: &[i64]) -> TargetExpr {
    TargetExpr::apps(
        corpus::INS.expr(),
        [TargetExpr::Int(x), TargetExpr::list(xs.iter().copied())],
    )
}

#[test]
fn ins_three_into_short_list() {
    let e = ins_app(3, &[5, 2, 8]);
    let r = check_closed_base(&e, &ProbeConfig::default()).unwrap();
    let (value, cost) = common::oracle_run(&e);
    assert_eq!(value, "[3,5,2,8]");
    assert_eq!(r.cost, cost);
    assert_eq!(r.size, 4);
    assert!(r.cost <= r.bound_cost);
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn nil_bound_is_tight() {
    let r = check_closed_base(&TargetExpr::Nil, &ProbeConfig::default()).unwrap();
    assert_eq!((r.cost, r.bound_cost, r.size), (1, 1, 0));
    assert_eq!(r.bound_pot.as_nat().unwrap(), 0);
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn table_rows_dominate_worst_case_runs() {
    let cfg = ProbeConfig::default();
    let ins = corpus::INS.expr();
    let table = tabulate(
        &ins,
        &[ArgSpec::Fixed { cost: 1, pot: 1 }, ArgSpec::Sweep],
        0..13,
    )
    .unwrap();
    for row in &table.rows {
        for xs in worst_case_inputs(row.n as usize) {
            for x in [-1, 0, 1, 2, 100] {
                let r = eval_applied(
                    &ins,
                    vec![Value::Int(x), Value::List(xs.clone())],
                    cfg.budget,
                )
                .unwrap();
                assert!(
                    r.cost <= row.cost,
                    "ins {x} {xs:?}: {} > {}",
                    r.cost,
                    row.cost
                );
                assert!(value_size(&r.value, &TargetTy::IntList).unwrap() <= row.pot);
            }
        }
    }

    let sort = corpus::INS_SORT.expr();
    let table = tabulate(&sort, &[ArgSpec::Sweep], 0..13).unwrap();
    for row in &table.rows {
        for xs in worst_case_inputs(row.n as usize) {
            let r = eval_applied(&sort, vec![Value::List(xs.clone())], cfg.budget).unwrap();
            assert!(r.cost <= row.cost, "ins_sort {xs:?}");
            assert!(value_size(&r.value, &TargetTy::IntList).unwrap() <= row.pot);
        }
    }

    let map = corpus::MAP.expr();
    let double = parse("\\x:int. x + x").unwrap();
    let f = eval(&double, &ValueEnv::new(), cfg.budget).unwrap().value;
    let table = tabulate(&map, &[ArgSpec::Term(double), ArgSpec::Sweep], 0..13).unwrap();
    for row in &table.rows {
        for xs in worst_case_inputs(row.n as usize) {
            let r =
                eval_applied(&map, vec![f.clone(), Value::List(xs.clone())], cfg.budget).unwrap();
            assert!(r.cost <= row.cost, "map double {xs:?}");
            assert!(value_size(&r.value, &TargetTy::IntList).unwrap() <= row.pot);
        }
    }
}

#[test]
fn worst_case_inputs_shape() {
    assert_eq!(worst_case_inputs(0), vec![Vec::<i64>::new()]);
    assert_eq!(worst_case_inputs(3).len(), 8);
    assert_eq!(
        worst_case_inputs(12),
        vec![(0..12).rev().collect::<Vec<i64>>()]
    );
}

#[test]
fn double_is_bounded_on_fixed_probes() {
    let src = "\\x:int. x + x";
    let e = parse(src).unwrap();
    let cfg = ProbeConfig::default();
    let closure = eval(&e, &ValueEnv::new(), cfg.budget).unwrap().value;
    let Value::Closure(c) = &closure else {
        panic!("expected a closure")
    };
    let bound = denote(&translate(&e), &SemEnv::new()).unwrap();
    let pot = bound.pot().unwrap();
    let at_one = pot.apply(&SemVal::Nat(1)).unwrap();
    for z in [-3, 0, 7] {
        let run = apply_closure(c, Value::Int(z), cfg.budget).unwrap();
        assert_eq!(run.value, Value::Int(2 * z));
        assert!(run.cost <= at_one.cost().unwrap(), "probe {z}");
        assert!(at_one.pot().unwrap().as_nat().unwrap() >= 1);
    }
    let ty = TargetTy::arrow(TargetTy::Int, TargetTy::Int);
    let out = check_value_bounded(&closure, pot, &ty, &cfg, 17);
    assert_eq!(out.verdict, Verdict::Pass, "{:?}", out.failure);
    assert_eq!(out.probes, cfg.probes);
}

#[test]
fn list_values_against_potentials() {
    let cfg = ProbeConfig::default();
    let check = |xs: Vec<i64>, p| {
        check_value_bounded(
            &Value::List(xs),
            &SemVal::Nat(p),
            &TargetTy::IntList,
            &cfg,
            0,
        )
    };
    assert_eq!(check(vec![1, 2], 2).verdict, Verdict::Pass);
    let out = check(vec![1, 2, 3], 2);
    assert_eq!(out.verdict, Verdict::Fail);
    assert!(out.failure.is_some());
}

#[test]
fn function_programs_are_bounded() {
    let cfg = ProbeConfig {
        probes: 12,
        ..ProbeConfig::default()
    };
    for f in corpus::ALL {
        let e = f.expr();
        let ty = cplx_core::typecheck(&Default::default(), &e).unwrap();
        if ty.is_base() {
            continue;
        }
        let v = eval(&e, &ValueEnv::new(), cfg.budget).unwrap().value;
        let bound = denote(&translate(&e), &SemEnv::new()).unwrap();
        let out = check_value_bounded(&v, bound.pot().unwrap(), &ty, &cfg, 5);
        assert_eq!(out.verdict, Verdict::Pass, "{}: {:?}", f.name, out.failure);
        assert!(out.probes >= cfg.probes);
    }
}

#[test]
fn weakening_by_max_preserves_pass() {
    let cfg = ProbeConfig::default();
    for f in corpus::ALL {
        let e = f.expr();
        let ty = cplx_core::typecheck(&Default::default(), &e).unwrap();
        if ty.is_base() {
            let r = check_closed_base(&e, &cfg).unwrap();
            for other in [
                SemVal::nat_pair(0, 0),
                SemVal::nat_pair(1000, 3),
                SemVal::nat_pair(2, 1000),
            ] {
                let bound = SemVal::pair(r.bound_cost, r.bound_pot.clone());
                let widened = sem_max(&bound, &other).unwrap();
                assert_eq!(rejudge(&r, &widened).unwrap(), Verdict::Pass);
            }
            continue;
        }
        let v = eval(&e, &ValueEnv::new(), cfg.budget).unwrap().value;
        let bound = denote(&translate(&e), &SemEnv::new()).unwrap();
        let mut gen = CplxGen::new(ChaCha8Rng::seed_from_u64(9));
        let other = gen.value(&FullTy::Pot(cplx_core::pot_ty(&ty)));
        let widened = sem_max(bound.pot().unwrap(), &other).unwrap();
        let out = check_value_bounded(&v, &widened, &ty, &cfg, 5);
        assert_eq!(out.verdict, Verdict::Pass, "{}: {:?}", f.name, out.failure);
    }
}

#[test]
fn rejudge_detects_tighter_bound() {
    let e = parse("case (if true then nil else [0]) of ([0,0], [x,xs] nil)").unwrap();
    let r = check_closed_base(&e, &ProbeConfig::default()).unwrap();
    assert_eq!(rejudge(&r, &SemVal::nat_pair(9, 2)).unwrap(), Verdict::Pass);
    assert_eq!(rejudge(&r, &SemVal::nat_pair(8, 2)).unwrap(), Verdict::Fail);
    assert_eq!(rejudge(&r, &SemVal::nat_pair(9, 1)).unwrap(), Verdict::Fail);
}

#[test]
fn max_is_an_upper_bound() {
    let shapes = [
        FullTy::NAT,
        FullTy::cplx(PotTy::Nat),
        FullTy::cplx(nat_fun()),
        FullTy::Pot(nat_fun()),
    ];
    for seed in 0..200 {
        let mut gen = CplxGen::new(ChaCha8Rng::seed_from_u64(seed));
        for ty in &shapes {
            let a = gen.value(ty);
            let b = gen.value(ty);
            assert!(
                max_bounds_both(&a, &b, ty, &mut gen, 6).unwrap(),
                "seed {seed} at {ty:?}"
            );
            let m = sem_max(&a, &a).unwrap();
            assert!(probe_le(&m, &a, ty, &mut gen, 6).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn dally_composes(a in 0u64..1 << 20, b in 0u64..1 << 20, c in 0u64..1 << 20, p in 0u64..1 << 20) {
        let x = SemVal::nat_pair(c, p);
        let twice = dally(a, &dally(b, &x).unwrap()).unwrap();
        let once = dally(a + b, &x).unwrap();
        prop_assert_eq!(twice.first_order_eq(&once), Some(true));
        prop_assert_eq!(dally(0, &x).unwrap().first_order_eq(&x), Some(true));
    }

    #[test]
    fn dally_overflow_is_an_error(c in 1u64..1000) {
        prop_assert!(dally(u64::MAX, &SemVal::nat_pair(c, 0)).is_err());
    }

    #[test]
    fn max_on_naturals(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), d in any::<u64>()) {
        let m = sem_max(&SemVal::nat_pair(a, b), &SemVal::nat_pair(c, d)).unwrap();
        prop_assert_eq!(m.first_order_eq(&SemVal::nat_pair(a.max(c), b.max(d))), Some(true));
    }

    #[test]
    fn ins_matches_oracle(x in -9i64..10, xs in proptest::collection::vec(-9i64..10, 0..10)) {
        let e = ins_app(x, &xs);
        let r = check_closed_base(&e, &ProbeConfig::default()).unwrap();
        let (value, cost) = common::oracle_run(&e);
        prop_assert_eq!(r.cost, cost);
        prop_assert_eq!(r.size as usize, xs.len() + 1);
        prop_assert!(value.starts_with('['));
        prop_assert_eq!(r.verdict, Verdict::Pass);
    }
}
