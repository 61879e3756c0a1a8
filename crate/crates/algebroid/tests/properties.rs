use algebroid::bialgebroid::{tensor_mul, RegularMha};
use algebroid::examples::{build_convolution_algebroid, build_crossed_product, build_function_algebroid, swap_action, FiniteGroupoid};
use algebroid::exact_linear::quotient_by;
use algebroid::integration::{check_lesssim, solve_partial_integrals, IntegralEquations, IntegralSide};
use algebroid::io::{map_from_json, map_to_json, vec_from_json, vec_to_json};
use algebroid::modification::{check_group_law, inner_modifier, modify};
use algebroid::{Field, LinearMap, Rational, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;

type Q = Rational;

fn rat() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Q::new(BigInt::from(p), BigInt::from(q)))
}

fn nonzero_rat() -> impl Strategy<Value = Q> {
    (1i64..=12, 1i64..=5, any::<bool>()).prop_map(|(p, q, neg)| Q::new(BigInt::from(if neg { -p } else { p }), BigInt::from(q)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    proptest::collection::vec((prop::sample::select(vec![1u64, 2, 3, 6]), rat(), rat()), 0..4).prop_map(|parts| Scalar::from_parts(parts).unwrap())
}

fn rats(n: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(rat(), n)
}

fn matrix(cod: usize, dom: usize) -> impl Strategy<Value = LinearMap<Q>> {
    rats(cod * dom).prop_map(move |v| LinearMap::from_fn(cod, dom, |r, c| v[r * dom + c].clone()))
}

fn p2_convolution() -> RegularMha<Q> {
    build_convolution_algebroid(&FiniteGroupoid::pair(2))
}

fn swap_crossed() -> RegularMha<Q> {
    let (c, h, act) = swap_action::<Q>();
    build_crossed_product(&c, &h, &act).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_arithmetic_round_trips(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) - b.clone(), a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        if let Some(bi) = b.inv() {
            prop_assert_eq!((a.clone() * b.clone()) / b.clone(), a.clone());
            prop_assert_eq!(b.clone() * bi, Scalar::from_i64(1));
        } else {
            prop_assert_eq!(b.clone(), Scalar::from_i64(0));
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        if a.is_positive() {
            prop_assert!(a.is_real());
        }
        let norm = a.clone() * a.conj();
        prop_assert!(norm.is_real());
    }

    #[test]
    fn real_scalars_have_a_sign_and_squares_are_nonnegative(parts in proptest::collection::vec((prop::sample::select(vec![1u64, 2, 3, 6]), rat()), 0..4)) {
        let x = Scalar::from_parts(parts.into_iter().map(|(d, q)| (d, q, Q::from_i64(0)))).unwrap();
        prop_assert!(x.sign().is_some());
        prop_assert!((x.clone() * x.clone()).is_positive());
        prop_assert_eq!(x.is_positive() && (-x.clone()).is_positive(), x == Scalar::from_i64(0));
    }

    #[test]
    fn composition_is_associative(f in matrix(3, 2), g in matrix(2, 4), h in matrix(4, 3)) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert_eq!(LinearMap::identity(3).compose(&f), f.clone());
        prop_assert_eq!(f.compose(&LinearMap::identity(2)), f);
    }

    #[test]
    fn solving_reproduces_the_image(f in matrix(3, 4), v in rats(4)) {
        let target = f.apply(&v);
        let x = f.solve(&target);
        prop_assert!(x.is_some());
        prop_assert_eq!(f.apply(&x.unwrap()), target);
    }

    #[test]
    fn quotient_section_is_a_right_inverse(relations in proptest::collection::vec(rats(5), 0..4), v in rats(5)) {
        let qs = quotient_by(5, &relations);
        let rank = LinearMap::from_columns(5, &relations).rank();
        prop_assert_eq!(qs.dim(), 5 - rank);
        let y = qs.project(&v);
        prop_assert_eq!(qs.project(&qs.section(&y)), y);
        prop_assert!(qs.projection_map().compose(&qs.section_map()).is_identity());
        for r in &relations {
            prop_assert!(qs.project(r).iter().all(|c| c == &Q::from_i64(0)));
        }
        prop_assert_eq!(qs.projection_map().kernel().len(), rank);
    }

    #[test]
    fn products_are_associative_and_star_reverses(a in rats(4), b in rats(4), c in rats(4)) {
        for m in [p2_convolution(), swap_crossed(), build_function_algebroid(&FiniteGroupoid::pair(2))] {
            let alg = &m.a;
            prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
            prop_assert_eq!(alg.star(&alg.mul(&a, &b)), alg.mul(&alg.star(&b), &alg.star(&a)));
            prop_assert_eq!(alg.star(&alg.star(&a)), a.clone());
        }
    }

    #[test]
    fn left_comultiplication_is_multiplicative(a in rats(4), b in rats(4)) {
        for m in [p2_convolution(), swap_crossed(), build_function_algebroid(&FiniteGroupoid::pair(2))] {
            let t = &m.tensors.target_b;
            let da = t.section(&m.delta_b.apply(&a));
            let db = t.section(&m.delta_b.apply(&b));
            let prod = t.project(&tensor_mul(&m.a, &da, &db));
            prop_assert_eq!(prod, m.delta_b.apply(&m.a.mul(&a, &b)), "{}", m.name);
        }
    }

    #[test]
    fn integral_characterizations_agree(coeffs in rats(2), noise in matrix(2, 4), scale in 0i64..3) {
        for m in [p2_convolution(), swap_crossed()] {
            let eq = IntegralEquations::new(&m).unwrap();
            for side in [IntegralSide::Left, IntegralSide::Right] {
                let (space, _) = solve_partial_integrals(&m, side).unwrap();
                let base = space.generic_element(7).unwrap();
                let x = base.scale(&coeffs[0]).add(&noise.scale(&Q::from_i64(scale)));
                let v = eq.verdicts(&x, side).unwrap();
                prop_assert!(v[0] == v[1] && v[1] == v[2], "{} {:?}: {:?}", m.name, side, v);
                prop_assert_eq!(v[0], space.contains(&x));
            }
        }
    }

    #[test]
    fn lesssim_recovers_the_multipliers(upsilon in rats(4), omega in rats(4)) {
        let m = p2_convolution();
        let r = check_lesssim(&m.a, &upsilon, &omega);
        if algebroid::integration::is_faithful(&m.a, &omega) {
            prop_assert!(r.all_pass(), "{:?}", r.failures());
        }
    }

    #[test]
    fn json_round_trips(v in proptest::collection::vec(scalar(), 0..6), f in matrix(2, 3)) {
        prop_assert_eq!(vec_from_json::<Scalar>(&vec_to_json(&v), "v").unwrap(), v);
        prop_assert_eq!(map_from_json::<Q>(&map_to_json(&f), "f").unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn inner_modifiers_form_a_group(u in proptest::collection::vec(nonzero_rat(), 2), v in proptest::collection::vec(nonzero_rat(), 2), u2 in proptest::collection::vec(nonzero_rat(), 2), v2 in proptest::collection::vec(nonzero_rat(), 2)) {
        let m = swap_crossed();
        let m1 = inner_modifier(&m, &u, &v).unwrap();
        let m2 = inner_modifier(&m, &u2, &v2).unwrap();
        let r = check_group_law(&m, &m1, &m2).unwrap();
        prop_assert!(r.all_pass(), "{:?}", r.failures());
        let md = modify(&m, &m1.compose(&m2)).unwrap();
        prop_assert!(md.report.all_pass(), "{:?}", md.report.failures());
    }
}
