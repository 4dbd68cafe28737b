use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use vosa_core::linalg::{inertia, rational_inertia, Matrix};
use vosa_core::{GradedModule, HalfInt, ModeSymbol, Scalar, StateVector};

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Sums of rational multiples of √r for a few square-free radicands, including `i`.
fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((small_rational(), prop::sample::select(vec![1i64, 2, 3, 5, 6, -1, -2])), 0..4).prop_map(
        |terms| {
            let mut acc = Scalar::zero();
            for (q, r) in terms {
                acc += &Scalar::sqrt_int(r).scale(&q);
            }
            acc
        },
    )
}

fn real_scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((small_rational(), prop::sample::select(vec![1i64, 2, 3, 6])), 0..3).prop_map(|terms| {
        let mut acc = Scalar::zero();
        for (q, r) in terms {
            acc += &Scalar::sqrt_int(r).scale(&q);
        }
        acc
    })
}

fn verma() -> std::sync::Arc<GradedModule> {
    GradedModule::ns_verma(Scalar::from_frac(7, 10), Scalar::from_frac(3, 5), false).unwrap()
}

fn state_at(m: &GradedModule, grade: HalfInt, coords: &[Scalar]) -> StateVector {
    let basis = m.enumerate_basis(grade);
    let n = basis.len();
    StateVector::from_coordinates(&basis, &coords.iter().cloned().cycle().take(n).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn real_scalars_invert(a in real_scalar()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(&a * &inv, Scalar::one());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn scalar_json_round_trips(a in scalar()) {
        let v = serde_json::to_value(&a).unwrap();
        let back: Scalar = serde_json::from_value(v).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn form_is_conjugate_symmetric(
        twice in 1i64..=5,
        x in prop::collection::vec(scalar(), 1..4),
        y in prop::collection::vec(scalar(), 1..4),
    ) {
        let m = verma();
        let g = HalfInt::from_twice(twice);
        let u = state_at(&m, g, &x);
        let v = state_at(&m, g, &y);
        prop_assert_eq!(m.inner_product(&u, &v), m.inner_product(&v, &u).conj());
    }

    #[test]
    fn modes_are_adjoint_to_their_negatives(
        twice in 0i64..=4,
        n in -2i64..=2,
        odd in any::<bool>(),
        x in prop::collection::vec(real_scalar(), 1..4),
        y in prop::collection::vec(real_scalar(), 1..4),
    ) {
        let m = verma();
        let mode = if odd { ModeSymbol::g(HalfInt::from_twice(2 * n + 1)) } else { ModeSymbol::l(n) };
        let g = HalfInt::from_twice(twice);
        let target = g - mode.index;
        prop_assume!(target >= HalfInt::ZERO);
        let u = state_at(&m, g, &x);
        let v = state_at(&m, target, &y);
        let lhs = m.inner_product(&m.apply_mode(&mode, &u).unwrap(), &v);
        let rhs = m.inner_product(&u, &m.apply_mode(&mode.adjoint(), &v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn modes_shift_the_grade(twice in 0i64..=4, n in -3i64..=3) {
        let m = verma();
        let g = HalfInt::from_twice(twice);
        for b in m.enumerate_basis(g).iter() {
            let out = m.apply_mode(&ModeSymbol::l(n), &StateVector::basis(b.clone())).unwrap();
            if let Some(h) = out.grade() {
                prop_assert_eq!(h, g - HalfInt::int(n));
            }
        }
    }

    #[test]
    fn fraction_free_inertia_matches_congruence(
        entries in prop::collection::vec(small_rational(), 21),
        n in 1usize..=6,
    ) {
        let mut m: Matrix<BigRational> = vec![vec![BigRational::from_integer(0.into()); n]; n];
        let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j)));
        for (k, (i, j)) in pairs.enumerate() {
            // sparse enough that zero pivots occur
            let x = if k % 3 == 0 { BigRational::from_integer(0.into()) } else { entries[k].clone() };
            m[i][j] = x.clone();
            m[j][i] = x;
        }
        prop_assert_eq!(rational_inertia(&m), inertia(&m).unwrap());
    }
}
