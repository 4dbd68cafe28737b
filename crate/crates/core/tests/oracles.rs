use num_bigint::BigInt;
use num_rational::BigRational;
use vosa_core::constructions::*;
use vosa_core::lie::builtin;
use vosa_core::vertex::*;
use vosa_core::{GradedModule, HalfInt, ModeSymbol, Scalar, StateVector};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn psi_state(m: &GradedModule) -> StateVector {
    m.apply_mode(&ModeSymbol::psi(0, h(-1)), &m.vacuum()).unwrap()
}

#[test]
fn fermion_products_and_states() {
    let inst = fermion_vosa(1).unwrap();
    let m = inst.module().clone();
    let psi = Field::psi(0);
    let l = inst.virasoro_field().unwrap();
    assert_eq!(inst.central_charge(), Scalar::from_frac(1, 2));
    assert!(same_action(&m, &psi.nth_product(&psi, 0), &Field::identity(), h(4)));
    assert!(same_action(&m, &psi.nth_product(&psi, -1), &Field::zero(), h(4)));
    assert!(same_action(&m, &psi.nth_product(&psi, -2), &l.scaled(&Scalar::from_int(2)), h(4)));
    assert_eq!(state_of_field(&m, &psi).unwrap(), psi_state(&m));
    assert_eq!(state_of_field(&m, &l).unwrap(), inst.omega);
    assert!(inst.field_of_state(&StateVector::zero()).unwrap().is_zero());
}

#[test]
fn virasoro_modes_on_the_vacuum() {
    let inst = fermion_vosa(1).unwrap();
    let m = inst.module().clone();
    let l = inst.virasoro_field().unwrap();
    // L_n = L(n+1)
    let omega = l.act(&m, -1, &m.vacuum()).unwrap();
    assert_eq!(omega, inst.omega);
    assert!(l.act(&m, 2, &omega).unwrap().is_zero());
    assert_eq!(l.act(&m, 3, &omega).unwrap(), m.vacuum().scaled(&Scalar::from_frac(1, 4)));
    for n in 0..4 {
        assert!(l.act(&m, n, &m.vacuum()).unwrap().is_zero());
    }
}

#[test]
fn locality_orders_of_the_fermion_fields() {
    let inst = fermion_vosa(1).unwrap();
    let m = inst.module().clone();
    let psi = Field::psi(0);
    let l = inst.virasoro_field().unwrap();
    let order = |a: &Field, b: &Field| locality_order(&m, a, b, h(4)).unwrap();
    assert_eq!((order(&psi, &psi).order, order(&psi, &psi).parity.is_odd()), (1, true));
    assert_eq!((order(&psi, &l).order, order(&psi, &l).parity.is_odd()), (2, false));
    assert_eq!((order(&l, &l).order, order(&l, &l).parity.is_odd()), (4, false));

    let (_, ope) = ope_singular_part(&m, &l, &l, h(3)).unwrap();
    let expected = [
        Field::identity().scaled(&Scalar::from_frac(1, 4)),
        Field::zero(),
        l.scaled(&Scalar::from_int(2)),
        l.derivative(),
    ];
    assert_eq!(ope.len(), 4);
    for (t, e) in ope.iter().zip(&expected) {
        assert!(same_action(&m, &t.field, e, h(3)), "n = {}", t.n);
    }
    assert!(check_bracket_from_ope(&m, &l, &psi, h(3), 3).unwrap().passed());
}

#[test]
fn closures_of_small_generating_sets() {
    let inst = fermion_vosa(1).unwrap();
    let m = inst.module().clone();
    let psi_closure = generate_closure(&m, &[Field::psi(0)], h(4), 100_000).unwrap();
    assert!(psi_closure.spans_module());
    assert!(psi_closure.contains_state(&m, &inst.omega));
    let l = inst.virasoro_field().unwrap();
    let vir = generate_closure(&m, &[l], h(4), 100_000).unwrap();
    assert!(vir.contains_state(&m, &m.vacuum()));
    assert!(vir.contains_state(&m, &inst.omega));
    assert!(!vir.contains_state(&m, &psi_state(&m)));
    assert!(!vir.spans_module());
}

#[test]
fn fermion_axioms_and_constructed_violations() {
    let inst = fermion_vosa(1).unwrap();
    let report = check_vosa_axioms(&inst, h(8)).unwrap();
    assert!(report.all_pass(), "{report}");

    let doubled = VosaInstance::new(
        "doubled ω",
        GeneratorSystem::of_module(inst.module().clone()),
        inst.omega.scaled(&Scalar::from_int(2)),
    );
    let r = check_vosa_axioms(&doubled, h(2)).unwrap();
    assert!(!r.checks[3].passed(), "{r}");
    assert!(r.checks[3].relation.starts_with("axiom 4"));

    let mut system = GeneratorSystem::of_module(inst.module().clone());
    system.vacuum = psi_state(inst.module());
    let shifted = VosaInstance::new("shifted vacuum", system, inst.omega.clone());
    let r = check_vosa_axioms(&shifted, h(2)).unwrap();
    assert!(!r.checks[0].passed(), "{r}");
}

#[test]
fn associativity_on_the_fermion_vosa() {
    let inst = fermion_vosa(1).unwrap();
    let m = inst.module().clone();
    let psi = psi_state(&m);
    let targets: Vec<StateVector> = m
        .grades_up_to(h(2))
        .into_iter()
        .flat_map(|g| m.enumerate_basis(g).iter().cloned().collect::<Vec<_>>())
        .map(StateVector::basis)
        .collect();
    for v in &targets {
        for (a, b) in [(m.vacuum(), psi.clone()), (psi.clone(), psi.clone()), (inst.omega.clone(), psi.clone())] {
            let r = check_borcherds(&inst, &a, &b, v, h(2)).unwrap();
            assert!(r.passed(), "a = {a}, b = {b}, v = {v}: {:?}", r.detail);
        }
    }
}

#[test]
fn g_fermion_on_sl2() {
    let gf = g_fermion_system(builtin("sl2").unwrap()).unwrap();
    assert_eq!(gf.instance.central_charge(), Scalar::from_frac(3, 2));
    let r = gf.check(h(2), 2).unwrap();
    assert!(r.all_pass(), "{r}");
}

#[test]
fn sugawara_charges() {
    let lie = builtin("sl2").unwrap();
    for (level, c) in [(0, Scalar::zero()), (1, Scalar::one()), (2, Scalar::from_frac(3, 2))] {
        let inst = boson_sugawara(lie.clone(), level).unwrap();
        assert_eq!(inst.central_charge(), c, "level {level}");
    }
    let trivial = boson_sugawara(lie, 0).unwrap();
    assert_eq!(trivial.module().level_form(HalfInt::ONE).rank(), 0);
}

#[test]
fn closed_form_charges_and_weights() {
    let lie = builtin("sl2").unwrap();
    let c = central_charges(&lie, 1, 1).unwrap();
    assert_eq!((c.c_total, c.h), (Scalar::from_frac(5, 2), Scalar::from_frac(1, 4)));
    assert_eq!(central_charges(&lie, 2, 2).unwrap().h, Scalar::from_frac(1, 2));
    assert_eq!(central_charges(&lie, 0, 0).unwrap().c_total, Scalar::from_frac(3, 2));
    assert_eq!(central_charges(&lie, 3, 0).unwrap().h, Scalar::zero());
    assert!(central_charges(&lie, 1, 2).is_err());
    for level in 1..6 {
        let c = central_charges(&lie, level, 0).unwrap();
        assert_eq!(c.c_boson.sign().unwrap(), std::cmp::Ordering::Greater);
        assert_eq!((&c.c_boson - &Scalar::from_int(3)).sign().unwrap(), std::cmp::Ordering::Less);
    }
}

#[test]
fn tau2_coefficient_is_one_third() {
    let lie = builtin("sl2").unwrap();
    assert!(tau2_coefficient_holds(&lie, &Scalar::from_frac(1, 3)).unwrap());
    for k in [Scalar::zero(), Scalar::from_frac(1, 2), Scalar::one(), Scalar::from_frac(-1, 3)] {
        assert!(!tau2_coefficient_holds(&lie, &k).unwrap(), "{k}");
    }
}

#[test]
fn super_construction_with_zero_level() {
    let sc = super_construction(builtin("sl2").unwrap(), 0).unwrap();
    assert_eq!(sc.fields.c, Scalar::from_frac(3, 2));
    let r = sc.check(h(4), 2).unwrap();
    assert!(r.all_pass(), "{r}");
}

#[test]
fn cocycle_sequences() {
    let lin = cocycle_sequence(&q(1), &q(2), 8);
    let cube = cocycle_sequence(&q(1), &q(8), 8);
    let shape = cocycle_sequence(&q(0), &q(6), 8);
    for n in 1..=8i64 {
        let i = (n - 1) as usize;
        assert_eq!(lin[i], q(n));
        assert_eq!(cube[i], q(n * n * n));
        assert_eq!(shape[i], q(n * n * n - n));
    }
    assert!(cocycle_basis(12).unwrap().passed());
    let half = Scalar::from_frac(1, 2);
    assert!(verify_odd_cocycle(&half, h(12)).passed());
    assert!(verify_odd_cocycle(&Scalar::zero(), h(12)).passed());
    assert!(!verify_odd_cocycle_with(&half, h(12), |s| s * s).passed());
}
