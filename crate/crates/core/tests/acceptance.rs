//! Acceptance suite: one line per criterion with its verdict and timing.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use vosa_core::constructions::{
    boson_sugawara, cocycle_basis, fermion_vosa, g_fermion_system, super_construction, verify_odd_cocycle,
    vertex_module, virasoro_submodule_dims,
};
use vosa_core::fock::ghost_report;
use vosa_core::lie::{builtin, LieAlgebraData};
use vosa_core::vertex::{
    check_borcherds, check_bracket_from_ope, locality_order, virasoro_relations, Field, GeneratorSystem,
    LocalityOrder,
};
use vosa_core::{GradedModule, HalfInt, Parity, Scalar, StateVector};

type Outcome = Result<(), String>;

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_frac(n, d)
}

fn sl2() -> Arc<LieAlgebraData> {
    builtin("sl2").expect("built-in sl2")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(r: &vosa_core::vertex::CheckReport) -> Outcome {
    match r.failures().next() {
        None => Ok(()),
        Some(f) => Err(format!("{} failed: {}", f.relation, f.detail.clone().unwrap_or_default())),
    }
}

fn fermion_central_charge() -> Outcome {
    let inst = fermion_vosa(1).map_err(|e| e.to_string())?;
    let c = inst.central_charge();
    ensure(c == q(1, 2), || format!("c = {c}"))?;
    let l = inst.virasoro_field().map_err(|e| e.to_string())?;
    let r = virasoro_relations(inst.module(), &l, &c, h(8), 3);
    ensure(r.passed(), || format!("{:?}", r.detail))
}

fn locality_orders() -> Outcome {
    let inst = fermion_vosa(1).map_err(|e| e.to_string())?;
    let m = inst.module();
    let psi = Field::psi(0);
    let l = inst.virasoro_field().map_err(|e| e.to_string())?;
    let cases = [
        (&psi, &psi, LocalityOrder { order: 1, parity: Parity::Odd }),
        (&psi, &l, LocalityOrder { order: 2, parity: Parity::Even }),
        (&l, &l, LocalityOrder { order: 4, parity: Parity::Even }),
    ];
    for (a, b, expected) in cases {
        let got = locality_order(m, a, b, h(8)).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("({a}, {b}): {got:?}, expected {expected:?}"))?;
    }
    Ok(())
}

fn g_fermion_identities() -> Outcome {
    let gf = g_fermion_system(sl2()).map_err(|e| e.to_string())?;
    let g = gf.lie.dual_coxeter().map_err(|e| e.to_string())?;
    ensure(g == Scalar::from_int(2), || format!("g = {g}"))?;
    let c = gf.instance.central_charge();
    ensure(c == q(3, 2), || format!("c = {c}"))?;
    let m = gf.instance.module();
    let mut sum = StateVector::zero();
    for s in &gf.currents {
        sum.add(&s.act_vec(m, -1, &s.act_vec(m, -1, &m.vacuum())));
    }
    ensure(sum == gf.instance.omega.scaled(&Scalar::from_int(8)), || "Σ(S^a_-1)^2 Ω ≠ 8ω".into())?;
    report(&gf.check(h(4), 2).map_err(|e| e.to_string())?)
}

fn sugawara_charges() -> Outcome {
    for (level, expected) in [(1, q(1, 1)), (2, q(3, 2))] {
        let inst = boson_sugawara(sl2(), level).map_err(|e| e.to_string())?;
        let c = inst.central_charge();
        ensure(c == expected, || format!("level {level}: 2|ω|^2 = {c}"))?;
        report(&inst.check_sugawara(HalfInt::int(2), 2).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn supersymmetry_suite() -> Outcome {
    let sc = super_construction(sl2(), 1).map_err(|e| e.to_string())?;
    ensure(sc.fields.c == q(5, 2), || format!("c = {}", sc.fields.c))?;
    ensure(sc.fields.sqrt_d == Scalar::sqrt_int(3), || format!("√d = {}", sc.fields.sqrt_d))?;
    report(&sc.check(HalfInt::int(2), 2).map_err(|e| e.to_string())?)
}

fn module_weight() -> Outcome {
    let vm = vertex_module(sl2(), 1, 1).map_err(|e| e.to_string())?;
    ensure(vm.h == q(1, 4), || format!("h = {}", vm.h))?;
    let r = vm.check(HalfInt::int(2), 2).map_err(|e| e.to_string())?;
    report(&r)
}

fn minimal_submodule() -> Outcome {
    let inst = fermion_vosa(1).map_err(|e| e.to_string())?;
    let l = inst.virasoro_field().map_err(|e| e.to_string())?;
    let got: Vec<usize> = virasoro_submodule_dims(inst.module(), &l, 5).into_iter().map(|(_, d)| d).collect();
    let verma = GradedModule::virasoro_verma(q(1, 2), Scalar::zero(), true).map_err(|e| e.to_string())?;
    let expected: Vec<usize> = verma.irreducible_dims(HalfInt::int(5)).into_iter().map(|(_, d)| d).collect();
    ensure(got == expected, || format!("{got:?} vs {expected:?}"))?;
    ensure(got == vec![1, 0, 1, 1, 2, 2], || format!("{got:?}"))
}

fn borcherds() -> Outcome {
    let inst = fermion_vosa(1).map_err(|e| e.to_string())?;
    let m = inst.module().clone();
    let states: Vec<StateVector> = m
        .grades_up_to(h(4))
        .into_iter()
        .flat_map(|g| m.enumerate_basis(g).iter().cloned().map(StateVector::basis).collect::<Vec<_>>())
        .collect();
    for a in &states {
        for b in &states {
            for v in &states {
                let r = check_borcherds(&inst, a, b, v, h(4)).map_err(|e| e.to_string())?;
                ensure(r.passed(), || format!("a = {a:?}, b = {b:?}, v = {v:?}: {:?}", r.detail))?;
            }
        }
    }
    Ok(())
}

fn cocycles() -> Outcome {
    let b = cocycle_basis(12).map_err(|e| e.to_string())?;
    ensure(b.passed(), || format!("{b:?}"))?;
    for c in [q(0, 1), q(1, 2), q(5, 2)] {
        let r = verify_odd_cocycle(&c, h(11));
        ensure(r.passed(), || format!("c = {c}: {:?}", r.detail))?;
    }
    Ok(())
}

fn ghost_boundary() -> Outcome {
    let cs = [q(-1, 1), q(0, 1), q(1, 2), q(7, 10), q(3, 2)];
    let hs = [q(-1, 2), q(-1, 10), q(0, 1), q(1, 10), q(1, 2)];
    for c in &cs {
        for hh in &hs {
            let report = ghost_report(c.clone(), hh.clone(), HalfInt::int(8)).map_err(|e| e.to_string())?;
            let negative_at = |g: HalfInt| report.iter().find(|s| s.grade == g).is_some_and(|s| s.inertia.negative > 0);
            if hh.sign().map_err(|e| e.to_string())?.is_lt() {
                ensure(negative_at(h(1)), || format!("(c, h) = ({c}, {hh}): level 1/2 has no ghost"))?;
            }
            for n in 1..=8i64 {
                let norm = &(&Scalar::from_int(2 * n) * hh) + &(c * &q(n * (n * n - 1), 12));
                if norm.sign().map_err(|e| e.to_string())?.is_lt() {
                    ensure(negative_at(HalfInt::int(n)), || {
                        format!("(c, h) = ({c}, {hh}): L_-{n}Ω has norm {norm} but level {n} has no ghost")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn ope_cross_check() -> Outcome {
    let fermion = fermion_vosa(1).map_err(|e| e.to_string())?;
    let m = fermion.module().clone();
    let closure = GeneratorSystem::of_module(m.clone()).closure(HalfInt::int(2)).map_err(|e| e.to_string())?;
    let fields: Vec<Field> = closure.elements.iter().map(|e| e.field.clone()).collect();
    for a in &fields {
        for b in &fields {
            let r = check_bracket_from_ope(&m, a, b, HalfInt::int(2), 2).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{}: {:?}", r.relation, r.detail))?;
        }
    }
    let sc = super_construction(sl2(), 1).map_err(|e| e.to_string())?;
    let m = sc.instance.module().clone();
    let f = &sc.fields;
    let fields: Vec<Field> = [f.l.clone(), f.g.clone()]
        .into_iter()
        .chain(f.psi.iter().cloned())
        .chain(f.b.iter().cloned())
        .collect();
    for (i, a) in fields.iter().enumerate() {
        for b in &fields[i..] {
            let r = check_bracket_from_ope(&m, a, b, HalfInt::int(2), 2).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{}: {:?}", r.relation, r.detail))?;
        }
    }
    Ok(())
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 fermion central charge and Virasoro brackets", Duration::from_secs(10), fermion_central_charge),
        ("2 locality orders", Duration::from_secs(10), locality_orders),
        ("3 g-fermion identities", Duration::from_secs(30), g_fermion_identities),
        ("4 Sugawara central charges", Duration::from_secs(30), sugawara_charges),
        ("5 supersymmetry suite", Duration::from_secs(300), supersymmetry_suite),
        ("6 module (c, h)", Duration::from_secs(120), module_weight),
        ("7 minimal Virasoro submodule", Duration::from_secs(120), minimal_submodule),
        ("8 Borcherds associativity", Duration::from_secs(60), borcherds),
        ("9 cocycles", Duration::from_secs(5), cocycles),
        ("10 ghost boundary", Duration::from_secs(30), ghost_boundary),
        ("11 OPE bracket cross-check", Duration::from_secs(300), ope_cross_check),
    ];
    let only: Option<String> = std::env::args().nth(1).filter(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (name, limit, run) in criteria {
        if only.as_ref().is_some_and(|o| !name.starts_with(&format!("{o} "))) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {}s limit)", limit.as_secs()),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {name}: {verdict} [{:.2}s / {}s]", elapsed.as_secs_f64(), limit.as_secs());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
